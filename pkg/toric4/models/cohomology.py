from dataclasses import dataclass
from typing import Literal

from pydantic import BaseModel, ConfigDict
from sympy import Matrix, Rational

from toric4.models.ring import RingElem, RingSpec

BasisTag = Literal["smooth", "triangle", "pid"]


class DegreeGroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    degree: int
    rank: int
    torsion: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion)}


class CohomologyGroups(BaseModel):
    """H^0..H^4 as free rank over the coefficient ring plus cyclic torsion summands."""

    model_config = ConfigDict(frozen=True)

    ring: RingSpec
    degrees: tuple[DegreeGroup, ...]

    def group(self, degree: int) -> DegreeGroup:
        if 0 <= degree < len(self.degrees):
            return self.degrees[degree]
        return DegreeGroup(degree=degree, rank=0)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(g.rank for g in self.degrees)

    def torsion_order(self, degree: int) -> int:
        order = 1
        for t in self.group(degree).torsion:
            order *= t
        return order

    def to_dict(self) -> dict:
        return {"ring": self.ring.label, "degrees": [g.to_dict() for g in self.degrees]}


@dataclass(frozen=True)
class CupMatrix:
    entries: tuple[tuple[RingElem, ...], ...]
    ring: RingSpec
    basis_tag: BasisTag
    sign_freedom: bool

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> RingElem:
        return self.entries[i - 1][j - 1]

    def values(self) -> list[list]:
        return [[e.value for e in row] for row in self.entries]

    def as_matrix(self) -> Matrix:
        if self.ring.kind == "ZMOD":
            raise ValueError("a Z/m cup matrix has no rational form")
        return Matrix(self.values())

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(self.n) for j in range(self.n))

    def to_dict(self) -> dict:
        rows = [[e.to_json() for e in row] for row in self.entries]
        matrix = {"mod": self.ring.modulus, "entries": rows} if self.ring.kind == "ZMOD" else rows
        return {
            "theorem": self.basis_tag,
            "ring": self.ring.label,
            "n": self.n,
            "matrix": matrix,
            "sign_freedom": self.sign_freedom,
        }


@dataclass(frozen=True)
class TriangleCup:
    c: int
    k: int
    sign_freedom: bool = True

    def to_dict(self) -> dict:
        return {"theorem": "triangle", "k": self.k, "c": self.c, "sign_freedom": self.sign_freedom}


@dataclass(frozen=True)
class CongruenceInvariants:
    rank: int
    signature: int
    det_square_class: Rational

    def to_dict(self) -> dict:
        return {"rank": self.rank, "signature": self.signature, "det_square_class": str(self.det_square_class)}
