from dataclasses import dataclass, field
from typing import Sequence

from sympy import Rational

Monomial = tuple[int, int]


def allowed_monomials(m: int) -> list[Monomial]:
    """Degree-4 monomials y_i y_j (i <= j, 1-based) not killed by the face ideal of an m-gon."""
    found = set()
    for i in range(1, m + 1):
        found.add((i, i))
        j = i % m + 1
        found.add((min(i, j), max(i, j)))
    return sorted(found)


def is_allowed(m: int, i: int, j: int) -> bool:
    return i == j or (i - j) % m in (1, m - 1)


@dataclass(frozen=True)
class Deg2Class:
    """Sum of c_i y_i over the edge generators of SR[P]."""

    coefficients: tuple[Rational, ...]

    @classmethod
    def of(cls, values: Sequence) -> "Deg2Class":
        return cls(tuple(Rational(v) for v in values))

    @classmethod
    def generator(cls, m: int, i: int, scale=1) -> "Deg2Class":
        values = [Rational(0)] * m
        values[i - 1] = Rational(scale)
        return cls(tuple(values))

    @property
    def m(self) -> int:
        return len(self.coefficients)

    def coefficient(self, i: int) -> Rational:
        return self.coefficients[i - 1]

    def __add__(self, other: "Deg2Class") -> "Deg2Class":
        return Deg2Class(tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def scaled(self, factor) -> "Deg2Class":
        return Deg2Class(tuple(Rational(factor) * x for x in self.coefficients))

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coefficients]


@dataclass(frozen=True)
class Deg4Class:
    """Sparse combination of allowed monomials y_i y_j, keyed by (i, j) with i <= j."""

    m: int
    terms: dict = field(default_factory=dict)

    @classmethod
    def monomial(cls, m: int, i: int, j: int, scale=1) -> "Deg4Class":
        key = (min(i, j), max(i, j))
        if not is_allowed(m, *key):
            return cls(m, {})
        return cls(m, {key: Rational(scale)})

    def coefficient(self, i: int, j: int) -> Rational:
        return self.terms.get((min(i, j), max(i, j)), Rational(0))

    def __add__(self, other: "Deg4Class") -> "Deg4Class":
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, Rational(0)) + value
        return Deg4Class(self.m, {k: v for k, v in terms.items() if v != 0})

    def scaled(self, factor) -> "Deg4Class":
        return Deg4Class(self.m, {k: Rational(factor) * v for k, v in self.terms.items() if factor != 0})

    def to_dict(self) -> dict:
        return {f"y{i}y{j}": str(v) for (i, j), v in sorted(self.terms.items())}


@dataclass(frozen=True)
class Deg4Quotient:
    """Degree-4 part of SR[P]/J over Q, reduced to coordinates against y_{n+1} y_{n+2}.

    ``functional`` vanishes on every relation l_s y_t and takes the value 1
    on the generator monomial.
    """

    m: int
    monomials: tuple[Monomial, ...]
    rank: int
    functional: tuple[Rational, ...]
    generator: Monomial

    @property
    def dimension(self) -> int:
        return len(self.monomials) - self.rank
