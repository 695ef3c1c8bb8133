from dataclasses import dataclass
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import Matrix, Rational

from toric4.models.pair import DegenerateCharacteristicPair, IntVec2

ImageKind = Literal["edge", "vertex", "split"]


class OrderSurjection(BaseModel):
    """Order-preserving surjection rho: {1..m} -> {1..m'} on edge labels.

    Edge E_j survives onto E'_rho(j) when it is the last edge of its block;
    the others collapse to the vertex E'_{k-1} cap E'_k in front of E'_k.
    """

    model_config = ConfigDict(frozen=True)

    values: tuple[int, ...]

    @field_validator("values")
    @classmethod
    def check_surjective(cls, values):
        if not values or values[0] != 1:
            raise ValueError("rho must start at 1")
        for prev, cur in zip(values, values[1:]):
            if cur - prev not in (0, 1):
                raise ValueError(f"rho must be nondecreasing without gaps, got {list(values)}")
        if values[-1] < 3:
            raise ValueError(f"rho must cover at least 3 target edges, got {values[-1]}")
        return values

    @property
    def source_size(self) -> int:
        return len(self.values)

    @property
    def target_size(self) -> int:
        return self.values[-1]

    def __call__(self, j: int) -> int:
        return self.values[j - 1]

    def survivor(self, k: int) -> int:
        """s_k = max{j : rho(j) = k}."""
        return max(j for j, value in enumerate(self.values, start=1) if value == k)

    def image(self, j: int) -> tuple[ImageKind, tuple[int, ...]]:
        k = self(j)
        if j == self.survivor(k):
            return "edge", (k,)
        previous = (k - 2) % self.target_size + 1
        return "vertex", tuple(sorted((previous, k)))

    def to_dict(self) -> dict:
        return {"type": "contract", "rho": list(self.values)}


class BendMap(BaseModel):
    """Edge-bending delta_i: edge E_i of an m-gon becomes E'_i and E'_{i+1} of an (m+1)-gon."""

    model_config = ConfigDict(frozen=True)

    source_size: int
    index: int

    @property
    def target_size(self) -> int:
        return self.source_size + 1

    def image(self, j: int) -> tuple[ImageKind, tuple[int, ...]]:
        if j < self.index:
            return "edge", (j,)
        if j == self.index:
            return "split", (j, j + 1)
        return "edge", (j + 1,)

    def to_dict(self) -> dict:
        return {"type": "bend", "i": self.index}


class IdentityMap(BaseModel):
    model_config = ConfigDict(frozen=True)

    size: int

    @property
    def source_size(self) -> int:
        return self.size

    @property
    def target_size(self) -> int:
        return self.size

    def image(self, j: int) -> tuple[ImageKind, tuple[int, ...]]:
        return "edge", (j,)

    def to_dict(self) -> dict:
        return {"type": "identity", "size": self.size}


EdgeMap = Union[OrderSurjection, BendMap, IdentityMap]


class TorusHom2(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[int, int], tuple[int, int]]

    @classmethod
    def identity(cls) -> "TorusHom2":
        return cls(entries=((1, 0), (0, 1)))

    @classmethod
    def from_rows(cls, rows) -> "TorusHom2":
        return cls(entries=(tuple(rows[0]), tuple(rows[1])))

    def apply(self, v: IntVec2) -> IntVec2:
        (p, q), (r, s) = self.entries
        return IntVec2(p * v.a + q * v.b, r * v.a + s * v.b)

    def as_matrix(self) -> Matrix:
        return Matrix([list(row) for row in self.entries])

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


class CompatiblePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    edge_map: EdgeMap
    psi: TorusHom2
    source: DegenerateCharacteristicPair
    target: DegenerateCharacteristicPair


@dataclass(frozen=True)
class Lifting:
    """m' x m matrix covering a compatible pair; ``integral`` is False for a rational pullback."""

    matrix: Matrix
    integral: bool

    def to_rows(self) -> list[list]:
        return [
            [int(x) if self.integral else str(x) for x in self.matrix.row(r)]
            for r in range(self.matrix.rows)
        ]


@dataclass(frozen=True)
class NoLifting:
    column: int
    rational_solution: Optional[tuple[Rational, ...]]
    reason: str

    def to_dict(self) -> dict:
        solution = None if self.rational_solution is None else [str(c) for c in self.rational_solution]
        return {"lifting": None, "reason": self.reason, "column": self.column, "rational_solution": solution}


@dataclass(frozen=True)
class CompatibilityReport:
    violations: tuple[dict, ...]
    degenerate_vertices: tuple[int, ...] = ()

    @property
    def compatible(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "compatible": self.compatible,
            "violations": list(self.violations),
            "degenerate_vertices": list(self.degenerate_vertices),
        }


@dataclass(frozen=True)
class SubstitutionMap:
    """x_k -> sum_j matrix[k, j] y_j from SR[P'] to SR[P], extended multiplicatively."""

    matrix: Matrix

    @property
    def source_size(self) -> int:
        return self.matrix.cols

    @property
    def target_size(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class CellularIndexMap:
    """u'_k pulls back to u_{pulls[k-1]}; v' pulls back to v."""

    pulls: tuple[int, ...]

    def __call__(self, k: int) -> int:
        return self.pulls[k - 1]

    def to_dict(self) -> dict:
        mapping = {f"u'{k}": f"u{s}" for k, s in enumerate(self.pulls, start=1)}
        mapping["v'"] = "v"
        return mapping
