"""Exact dyadic rationals ``num / 2**log2den``.

Measurement phases and Walsh coefficients of Boolean functions always have
power-of-two denominators, so a dedicated type keeps everything exact and
makes the reduction mod 2 (the only thing the measurement angle sees) cheap.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=False)
class Dyadic:
    num: int
    log2den: int = 0

    def __post_init__(self):
        num, k = int(self.num), int(self.log2den)
        if k < 0:
            raise ValueError("log2den must be non-negative")
        if num == 0:
            k = 0
        else:
            while k > 0 and num % 2 == 0:
                num //= 2
                k -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "log2den", k)

    @classmethod
    def from_value(cls, value) -> "Dyadic":
        """Build from an int, a Fraction with power-of-two denominator, or a Dyadic."""
        if isinstance(value, Dyadic):
            return value
        fr = Fraction(value)
        den = fr.denominator
        if den & (den - 1):
            raise ValueError(f"{value!r} is not dyadic")
        return cls(fr.numerator, den.bit_length() - 1)

    @property
    def denominator(self) -> int:
        return 1 << self.log2den

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.denominator)

    def __float__(self) -> float:
        return self.num / self.denominator

    def is_integer(self) -> bool:
        return self.log2den == 0

    def _common(self, other: "Dyadic"):
        k = max(self.log2den, other.log2den)
        return self.num << (k - self.log2den), other.num << (k - other.log2den), k

    def __add__(self, other):
        other = Dyadic.from_value(other)
        a, b, k = self._common(other)
        return Dyadic(a + b, k)

    __radd__ = __add__

    def __sub__(self, other):
        other = Dyadic.from_value(other)
        a, b, k = self._common(other)
        return Dyadic(a - b, k)

    def __rsub__(self, other):
        return Dyadic.from_value(other) - self

    def __neg__(self):
        return Dyadic(-self.num, self.log2den)

    def __mul__(self, other):
        if isinstance(other, Dyadic):
            return Dyadic(self.num * other.num, self.log2den + other.log2den)
        if isinstance(other, int):
            return Dyadic(self.num * other, self.log2den)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.log2den == other.log2den
        try:
            return self.to_fraction() == Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __lt__(self, other):
        return self.to_fraction() < Dyadic.from_value(other).to_fraction()

    def mod2(self) -> "Dyadic":
        """Representative in [0, 2)."""
        return Dyadic(self.num % (2 << self.log2den), self.log2den)

    def __repr__(self):
        if self.log2den == 0:
            return f"Dyadic({self.num})"
        return f"Dyadic({self.num}/{self.denominator})"

    def __str__(self):
        return str(self.num) if self.log2den == 0 else f"{self.num}/{self.denominator}"

    def to_dict(self) -> dict:
        return {"num": self.num, "log2den": self.log2den}

    @classmethod
    def from_dict(cls, d: dict) -> "Dyadic":
        return cls(int(d["num"]), int(d["log2den"]))
