"""
Exact arithmetic for the coefficient ring of the wavelet group.

Every translation part that can occur is a rational number whose
denominator is ``2^a * 3^b`` with ``a`` in ``{0, 1}``. ``TriadicHalf`` stores
such a number in lowest terms; ``LatticeVector`` is a pair of them holding
coordinates with respect to the lattice basis ``{u, v}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class QuarterDenominator(ArithmeticError):
    """Raised when a result would need a denominator divisible by 4."""

    pass


class TriadicParseError(ValueError):
    """Raised when text is not a triadic-half literal."""

    pass


@dataclass(frozen=True, slots=True)
class TriadicHalf:
    """
    The number ``num / (2^half * 3^pow3)``, always kept in canonical form.

    Construction normalizes: ``TriadicHalf(3, 1)`` is the integer 1 and
    ``TriadicHalf(2, 0, True)`` is 1 as well. Zero is ``(0, 0, False)``.
    """

    num: int
    pow3: int = 0
    half: bool = False

    def __post_init__(self) -> None:
        if self.pow3 < 0:
            raise ValueError("pow3 must be nonnegative")
        num, pow3, half = _normal_form(self.num, self.pow3, bool(self.half))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "pow3", pow3)
        object.__setattr__(self, "half", half)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> TriadicHalf:
        """
        Convert a rational number, checking its denominator.

        Raises:
            QuarterDenominator: If the denominator has a factor 4.
            ValueError: If the denominator has a prime factor other than
                2 and 3.
        """
        value = Fraction(value)
        den = value.denominator
        half = den % 2 == 0
        if half:
            den //= 2
            if den % 2 == 0:
                raise QuarterDenominator(f"{value} needs a factor 4")
        pow3 = 0
        while den % 3 == 0:
            den //= 3
            pow3 += 1
        if den != 1:
            raise ValueError(f"{value} is not a triadic half")
        return cls(value.numerator, pow3, half)

    @property
    def denominator(self) -> int:
        return (2 if self.half else 1) * 3**self.pow3

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.denominator)

    def is_integer(self) -> bool:
        return self.pow3 == 0 and not self.half

    def __float__(self) -> float:
        # int / int is correctly rounded, so this is the nearest double.
        return self.num / self.denominator

    def __add__(self, other: TriadicHalf | int) -> TriadicHalf:
        if type(other) is int:
            if other == 0:
                return self
            return _canonical(
                self.num + other * self.denominator, self.pow3, self.half
            )
        if not isinstance(other, TriadicHalf):
            return NotImplemented
        if other.num == 0:
            return self
        if self.num == 0:
            return other
        pow3 = max(self.pow3, other.pow3)
        half = self.half or other.half
        num = _lift(self, pow3, half) + _lift(other, pow3, half)
        return _canonical(num, pow3, half)

    __radd__ = __add__

    def __neg__(self) -> TriadicHalf:
        return _raw(-self.num, self.pow3, self.half)

    def __sub__(self, other: TriadicHalf | int) -> TriadicHalf:
        if type(other) is int:
            return self + (-other)
        if not isinstance(other, TriadicHalf):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> TriadicHalf:
        return (-self) + other

    def __mul__(self, other: TriadicHalf | int) -> TriadicHalf:
        if type(other) is int:
            if other == 1:
                return self
            if other == -1:
                return -self
            return _canonical(self.num * other, self.pow3, self.half)
        if not isinstance(other, TriadicHalf):
            return NotImplemented
        if self.half and other.half:
            raise QuarterDenominator(f"({self}) * ({other})")
        return _canonical(
            self.num * other.num,
            self.pow3 + other.pow3,
            self.half or other.half,
        )

    __rmul__ = __mul__

    def scale3(self, k: int) -> TriadicHalf:
        """Multiply by ``3^k``; ``k`` may be negative."""
        if k == 0 or self.num == 0:
            return self
        if k < 0:
            # a canonical num is prime to 3 once pow3 > 0
            if self.pow3 or self.num % 3:
                return _raw(self.num, self.pow3 - k, self.half)
            return _canonical(self.num, -k, self.half)
        if k <= self.pow3:
            return _raw(self.num, self.pow3 - k, self.half)
        return _raw(self.num * 3 ** (k - self.pow3), 0, self.half)

    def halve(self) -> TriadicHalf:
        if self.half:
            raise QuarterDenominator(f"half of {self}")
        return _canonical(self.num, self.pow3, True)

    def __str__(self) -> str:
        if self.pow3 == 0:
            return f"{self.num}/2" if self.half else str(self.num)
        power = "3" if self.pow3 == 1 else f"3^{self.pow3}"
        if self.half:
            return f"{self.num}/(2*{power})"
        return f"{self.num}/{power}"

    @classmethod
    def parse(cls, text: str) -> TriadicHalf:
        """
        Parse ``n``, ``n/d``, ``n/3^b`` or ``n/(2*3^b)``.

        The exponent may be left out when it is 1, as in ``n/(2*3)``.

        Raises:
            TriadicParseError: If the text is not one of these forms or the
                denominator is not ``2^a * 3^b`` with ``a <= 1``.
        """
        match = _LITERAL.fullmatch(text.replace(" ", ""))
        if match is None:
            raise TriadicParseError(f"not a triadic literal: {text!r}")
        num = int(match["num"])
        if match["den"] is not None:
            den = int(match["den"])
        elif match["exp"] is not None:
            den = 3 ** int(match["exp"])
        elif match["halved"] is not None:
            den = 2 * 3 ** int(match["hexp"] or 1)
        else:
            den = 1
        if den == 0:
            raise TriadicParseError(f"zero denominator: {text!r}")
        try:
            return cls.from_fraction(Fraction(num, den))
        except (QuarterDenominator, ValueError) as error:
            raise TriadicParseError(str(error)) from error


_LITERAL = re.compile(
    r"(?P<num>[+-]?\d+)"
    r"(?:/(?:(?P<den>\d+)|3\^(?P<exp>\d+)"
    r"|(?P<halved>\(2\*3(?:\^(?P<hexp>\d+))?\))))?"
)


def _normal_form(num: int, pow3: int, half: bool) -> tuple[int, int, bool]:
    if num == 0:
        return 0, 0, False
    if half and not num & 1:
        num >>= 1
        half = False
    while pow3 and not num % 3:
        num //= 3
        pow3 -= 1
    return num, pow3, half


def _raw(num: int, pow3: int, half: bool) -> TriadicHalf:
    """Build from components already in canonical form."""
    value = object.__new__(TriadicHalf)
    object.__setattr__(value, "num", num)
    object.__setattr__(value, "pow3", pow3)
    object.__setattr__(value, "half", half)
    return value


def _canonical(num: int, pow3: int, half: bool) -> TriadicHalf:
    return _raw(*_normal_form(num, pow3, half))


ZERO = TriadicHalf(0)
ONE = TriadicHalf(1)
HALF = TriadicHalf(1, 0, True)


def _lift(value: TriadicHalf, pow3: int, half: bool) -> int:
    num = value.num
    if pow3 != value.pow3:
        num *= 3 ** (pow3 - value.pow3)
    if half and not value.half:
        num *= 2
    return num


def th_add(x: TriadicHalf, y: TriadicHalf) -> TriadicHalf:
    """Exact sum in canonical form."""
    return x + y


def th_scale3(x: TriadicHalf, k: int) -> TriadicHalf:
    """Multiply by ``3^k``."""
    return x.scale3(k)


def to_float(x: TriadicHalf) -> float:
    """Nearest double-precision value."""
    return float(x)


Matrix2: type = tuple[tuple[int, int], tuple[int, int]]
IDENTITY: Matrix2 = ((1, 0), (0, 1))


@dataclass(frozen=True, slots=True)
class LatticeVector:
    """Coordinates ``(a, b)`` of ``a*u + b*v``."""

    a: TriadicHalf = ZERO
    b: TriadicHalf = ZERO

    @classmethod
    def of(cls, a: TriadicHalf | int | str, b: TriadicHalf | int | str):
        return cls(_as_triadic(a), _as_triadic(b))

    def __add__(self, other: LatticeVector) -> LatticeVector:
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        return LatticeVector(self.a + other.a, self.b + other.b)

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(self.a - other.a, self.b - other.b)

    def __neg__(self) -> LatticeVector:
        return LatticeVector(-self.a, -self.b)

    def __mul__(self, k: int | TriadicHalf) -> LatticeVector:
        return LatticeVector(self.a * k, self.b * k)

    __rmul__ = __mul__

    def scale3(self, k: int) -> LatticeVector:
        if k == 0:
            return self
        return LatticeVector(self.a.scale3(k), self.b.scale3(k))

    def halve(self) -> LatticeVector:
        return LatticeVector(self.a.halve(), self.b.halve())

    def transform(self, mat: Matrix2) -> LatticeVector:
        """Apply an integer matrix acting on lattice coordinates."""
        if mat == IDENTITY or self.is_zero():
            return self
        (m00, m01), (m10, m11) = mat
        na, nb, pow3, half = self.numerators()
        return LatticeVector(
            _canonical(na * m00 + nb * m01, pow3, half),
            _canonical(na * m10 + nb * m11, pow3, half),
        )

    def numerators(self) -> tuple[int, int, int, bool]:
        """
        Both coordinates over their common denominator ``2^half 3^pow3``.

        Returns:
            tuple: ``(na, nb, pow3, half)``.
        """
        a, b = self.a, self.b
        pow3 = max(a.pow3, b.pow3)
        half = a.half or b.half
        return _lift(a, pow3, half), _lift(b, pow3, half), pow3, half

    def is_zero(self) -> bool:
        return self.a.num == 0 and self.b.num == 0

    def is_integral(self) -> bool:
        return self.a.is_integer() and self.b.is_integer()

    @property
    def level(self) -> int:
        """Largest power of 3 in the two denominators."""
        return max(self.a.pow3, self.b.pow3)

    def half_pattern(self) -> tuple[bool, bool]:
        return self.a.half, self.b.half

    def floats(self) -> tuple[float, float]:
        return float(self.a), float(self.b)

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"


def _as_triadic(value: TriadicHalf | int | str | Fraction) -> TriadicHalf:
    if isinstance(value, TriadicHalf):
        return value
    if isinstance(value, str):
        return TriadicHalf.parse(value)
    return TriadicHalf.from_fraction(Fraction(value))


LATTICE_ZERO = LatticeVector()
