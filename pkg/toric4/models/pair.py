from typing import Literal, NamedTuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from sympy import igcd


class IntVec2(NamedTuple):
    a: int
    b: int

    def __neg__(self) -> "IntVec2":
        return IntVec2(-self.a, -self.b)

    def scaled(self, factor: int) -> "IntVec2":
        return IntVec2(factor * self.a, factor * self.b)

    def is_primitive(self) -> bool:
        return igcd(self.a, self.b) == 1

    def to_list(self) -> list[int]:
        return [int(self.a), int(self.b)]


class UnimodularMatrix2(BaseModel):
    """A 2x2 integer matrix with determinant +1 or -1."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[int, int], tuple[int, int]]

    @field_validator("entries")
    @classmethod
    def check_unimodular(cls, entries):
        (p, q), (r, s) = entries
        if p * s - q * r not in (1, -1):
            raise ValueError(f"determinant of {entries} is not +1 or -1")
        return entries

    @classmethod
    def identity(cls) -> "UnimodularMatrix2":
        return cls(entries=((1, 0), (0, 1)))

    @classmethod
    def from_rows(cls, rows) -> "UnimodularMatrix2":
        return cls(entries=(tuple(rows[0]), tuple(rows[1])))

    @property
    def det(self) -> int:
        (p, q), (r, s) = self.entries
        return p * s - q * r

    def apply(self, v: IntVec2) -> IntVec2:
        (p, q), (r, s) = self.entries
        return IntVec2(p * v.a + q * v.b, r * v.a + s * v.b)

    def __matmul__(self, other: "UnimodularMatrix2") -> "UnimodularMatrix2":
        (p, q), (r, s) = self.entries
        (p2, q2), (r2, s2) = other.entries
        return UnimodularMatrix2(
            entries=(
                (p * p2 + q * r2, p * q2 + q * s2),
                (r * p2 + s * r2, r * q2 + s * s2),
            )
        )

    def inverse(self) -> "UnimodularMatrix2":
        (p, q), (r, s) = self.entries
        d = self.det
        return UnimodularMatrix2(entries=((s * d, -q * d), (-r * d, p * d)))

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["NonPrimitive", "AdjacentDependent"]
    edges: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "edges": list(self.edges)}


class DegenerateCharacteristicPair(BaseModel):
    """Cyclically ordered primitive edge vectors on an m-gon; adjacent vectors may be parallel."""

    model_config = ConfigDict(frozen=True)

    vectors: tuple[IntVec2, ...]

    @model_validator(mode="after")
    def check_primitive(self):
        if len(self.vectors) < 3:
            raise ValueError("a polygon needs at least 3 edges")
        for i, v in enumerate(self.vectors, start=1):
            if not v.is_primitive():
                raise ValueError(f"edge {i} vector {tuple(v)} is not primitive")
        return self

    @property
    def m(self) -> int:
        return len(self.vectors)

    @property
    def n(self) -> int:
        return len(self.vectors) - 2

    def vector(self, i: int) -> IntVec2:
        """1-based cyclic access to lambda(E_i)."""
        return self.vectors[(i - 1) % self.m]

    def edges(self) -> list[list[int]]:
        return [v.to_list() for v in self.vectors]


class CharacteristicPair(DegenerateCharacteristicPair):
    """A characteristic pair on an m-gon: primitive vectors, adjacent ones independent."""

    @model_validator(mode="after")
    def check_adjacent_independent(self):
        m = len(self.vectors)
        for i in range(m):
            v, w = self.vectors[i], self.vectors[(i + 1) % m]
            if v.a * w.b - w.a * v.b == 0:
                raise ValueError(f"edges {i + 1} and {(i + 1) % m + 1} are linearly dependent")
        return self


class NormalizedPair(BaseModel):
    """A pair together with the relabeling and basis change that produced it.

    ``pair.vectors[k] == basis_change.apply(original[(k + rotation) % m])`` for
    0-based k.
    """

    model_config = ConfigDict(frozen=True)

    pair: CharacteristicPair
    basis_change: UnimodularMatrix2
    rotation: int
    flavor: Literal["smooth", "half"]
    shear: int = 0

    @model_validator(mode="after")
    def check_flavor(self):
        n = self.pair.n
        if not 0 <= self.rotation < self.pair.m:
            raise ValueError(f"rotation {self.rotation} outside [0, {self.pair.m})")
        if self.pair.vector(n + 1) != (1, 0):
            raise ValueError("lambda(E_{n+1}) must be (1,0)")
        last = self.pair.vector(n + 2)
        if self.flavor == "smooth" and last != (0, 1):
            raise ValueError("lambda(E_{n+2}) must be (0,1) for a smooth normalization")
        if self.flavor == "half" and last.a * last.b == 0:
            raise ValueError("a_{n+2} * b_{n+2} must be nonzero for a half normalization")
        return self
