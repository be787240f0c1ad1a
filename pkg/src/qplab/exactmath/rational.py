"""Exact scalars: rationals, Gaussian rationals and residue classes."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

# Fraction keeps numerator/denominator coprime with a positive denominator
# after every operation, which is exactly the invariant we need.
BigRational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` into a reduced rational.

    Decimal and float syntax is rejected on purpose: values crossing an
    interface must stay exact.
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value) -> str:
    """Serialize as ``"num/den"`` in lowest terms (denominator always shown)."""
    value = as_rational(value)
    return f"{value.numerator}/{value.denominator}"


def rational_height(value) -> float:
    """log max(|num|, den) of a rational in lowest terms."""
    value = as_rational(value)
    return log_int(max(abs(value.numerator), value.denominator))


def log_int(n: int) -> float:
    """Natural log of a positive integer of any size."""
    n = int(n)
    if n <= 0:
        raise ValueError("log of non-positive integer")
    bits = n.bit_length()
    if bits < 1000:
        return math.log(n)
    shift = bits - 64
    return math.log(n >> shift) + shift * math.log(2)


@dataclass(frozen=True)
class GaussianRational:
    """An element re + im*i of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        return cls(as_rational(value), Fraction(0))

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational.coerce(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}*i"


I = GaussianRational(0, 1)


@dataclass(frozen=True)
class ResidueClass:
    """An integer modulo ``modulus``, always stored reduced into [0, modulus)."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ResidueClass):
            if other.modulus != self.modulus:
                raise ValueError("mismatched moduli")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ResidueClass(self.value + o, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return ResidueClass(-self.value, self.modulus)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ResidueClass(self.value - o, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ResidueClass(self.value * o, self.modulus)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1

    def inverse(self) -> ResidueClass:
        return ResidueClass(pow(self.value, -1, self.modulus), self.modulus)

    def signed(self) -> int:
        """Representative in (-n/2, n/2]; for n = 15 that is -7..7."""
        v = self.value
        return v - self.modulus if 2 * v > self.modulus else v

    def __int__(self):
        return self.value

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


def units_mod(n: int) -> frozenset[ResidueClass]:
    """The unit group (Z/nZ)^x as a set of residue classes."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return frozenset({ResidueClass(0, 1)})
    return frozenset(ResidueClass(r, n) for r in range(n) if math.gcd(r, n) == 1)
