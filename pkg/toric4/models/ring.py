from dataclasses import dataclass
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import Integer, Rational, igcd, mod_inverse


class RingSpec(BaseModel):
    """Coefficient ring: the integers, the rationals, or Z/m for m >= 2."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["Z", "Q", "ZMOD"]
    modulus: Optional[int] = None

    @model_validator(mode="after")
    def check_modulus(self):
        if self.kind == "ZMOD":
            if self.modulus is None or self.modulus < 2:
                raise ValueError(f"Z/m needs m >= 2, got {self.modulus}")
        elif self.modulus is not None:
            raise ValueError(f"{self.kind} takes no modulus")
        return self

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        value = text.strip().lower()
        if value == "z":
            return cls(kind="Z")
        if value == "q":
            return cls(kind="Q")
        if value.startswith("zmod:"):
            try:
                modulus = int(value.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad modulus in ring '{text}'")
            return cls(kind="ZMOD", modulus=modulus)
        raise ValueError(f"ring must be one of z, q, zmod:<m>; got '{text}'")

    @property
    def label(self) -> str:
        return f"Z/{self.modulus}" if self.kind == "ZMOD" else self.kind

    def element(self, value: Union[int, Rational]) -> "RingElem":
        value = Rational(value)
        if self.kind == "Z":
            if not value.is_integer:
                raise ValueError(f"{value} is not an integer")
            return RingElem(self, Integer(value))
        if self.kind == "Q":
            return RingElem(self, value)
        if value.q != 1:
            # a rational p/q lands in Z/m only when q is a unit
            return RingElem(self, (int(value.p) * mod_inverse(int(value.q), self.modulus)) % self.modulus)
        return RingElem(self, int(value) % self.modulus)

    def is_unit(self, value: int) -> bool:
        if self.kind == "Q":
            return value != 0
        if self.kind == "Z":
            return value in (1, -1)
        return igcd(value, self.modulus) == 1


@dataclass(frozen=True)
class RingElem:
    ring: RingSpec
    value: Union[int, Rational]

    def _lift(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise ValueError(f"cannot combine elements of {self.ring.label} and {other.ring.label}")
            return other
        return self.ring.element(other)

    def __add__(self, other) -> "RingElem":
        return self.ring.element(self.value + self._lift(other).value)

    def __sub__(self, other) -> "RingElem":
        return self.ring.element(self.value - self._lift(other).value)

    def __mul__(self, other) -> "RingElem":
        return self.ring.element(self.value * self._lift(other).value)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self) -> "RingElem":
        return self.ring.element(-self.value)

    def inverse(self) -> "RingElem":
        if not self.ring.is_unit(int(self.value) if self.ring.kind != "Q" else self.value):
            raise ZeroDivisionError(f"{self.value} is not a unit in {self.ring.label}")
        if self.ring.kind == "ZMOD":
            return RingElem(self.ring, mod_inverse(int(self.value), self.ring.modulus))
        return self.ring.element(1 / Rational(self.value))

    def to_json(self) -> Union[int, str]:
        if self.ring.kind == "Q":
            return str(self.value)
        return int(self.value)
