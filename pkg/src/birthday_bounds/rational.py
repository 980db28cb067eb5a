"""Exact rationals, certified enclosures and directed-rounding renderers.

Every non-rational quantity in this package is carried as an
:class:`Enclosure` of two exact :class:`~fractions.Fraction` endpoints.
Decimal output is always produced with an explicit rounding direction so
that a printed lower bound is never above the value it stands for.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Rational",
    "RoundingDirection",
    "Enclosure",
    "DomainError",
    "as_rational",
    "truncate_directed",
    "render_decimal",
    "parse_decimal",
    "render_log2_exponent",
]

Rational = Fraction


class DomainError(ValueError):
    """An argument lies outside the region where an operation is defined."""


class RoundingDirection(enum.Enum):
    DOWN = "down"
    UP = "up"

    def flip(self) -> RoundingDirection:
        return RoundingDirection.UP if self is RoundingDirection.DOWN else RoundingDirection.DOWN


DOWN = RoundingDirection.DOWN
UP = RoundingDirection.UP


def as_rational(x: int | Fraction | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` certified to contain some real quantity."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure: lo={self.lo} > hi={self.hi}")

    @classmethod
    def exact(cls, x: int | Fraction) -> Enclosure:
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, (int, Fraction)):
            return NotImplemented
        return self.lo <= x <= self.hi

    def complement(self) -> Enclosure:
        """Enclosure of ``1 - q`` given this enclosure of ``q``."""
        return Enclosure(1 - self.hi, 1 - self.lo)

    def scale(self, c: Fraction) -> Enclosure:
        """Enclosure of ``c * q`` for a nonnegative exact ``c``."""
        if c < 0:
            raise DomainError("scale factor must be nonnegative")
        return Enclosure(self.lo * c, self.hi * c)

    def contains_enclosure(self, other: Enclosure) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


def _round_int(num: int, den: int, direction: RoundingDirection) -> int:
    # floor/ceil of num/den for den > 0
    if direction is DOWN:
        return num // den
    return -((-num) // den)


def truncate_directed(x: Fraction, scale: int, direction: RoundingDirection) -> Fraction:
    """Round ``x`` onto the grid ``10**-scale`` in the given direction.

    >>> truncate_directed(Fraction(1, 3), 5, RoundingDirection.UP)
    Fraction(16667, 50000)
    """
    if scale < 1:
        raise DomainError("scale must be >= 1")
    x = as_rational(x)
    unit = 10**scale
    return Fraction(_round_int(x.numerator * unit, x.denominator, direction), unit)


def render_decimal(x: Fraction, digits: int, direction: RoundingDirection) -> str:
    """Fixed-point string with exactly ``digits`` fractional digits.

    The printed value is ``<= x`` for DOWN and ``>= x`` for UP.
    """
    if digits < 1:
        raise DomainError("digits must be >= 1")
    x = as_rational(x)
    q = _round_int(x.numerator * 10**digits, x.denominator, direction)
    sign = "-" if q < 0 else ""
    whole, frac = divmod(abs(q), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def parse_decimal(s: str) -> Fraction:
    """Exact value of a plain decimal string such as ``"-0.0271377"``."""
    return Fraction(s)


def _log2_bits_at_scale(y: Fraction, nbits: int, scale: int) -> int | None:
    """First ``nbits`` binary digits of ``log2(y)`` for ``1 < y < 2``.

    Repeated squaring on a directed interval held at decimal ``scale``.
    Returns None when the scale is too coarse to decide some bit.
    """
    lo = truncate_directed(y, scale, DOWN)
    hi = truncate_directed(y, scale, UP)
    bits = 0
    for _ in range(nbits):
        lo = truncate_directed(lo * lo, scale, DOWN)
        hi = truncate_directed(hi * hi, scale, UP)
        bits <<= 1
        if lo >= 2:
            bits |= 1
            lo = truncate_directed(lo / 2, scale, DOWN)
            hi = truncate_directed(hi / 2, scale, UP)
        elif hi >= 2:
            return None
    return bits


def render_log2_exponent(x: Fraction, frac_digits: int, direction: RoundingDirection) -> str:
    """Decimal string of ``e`` such that ``x`` is reported as ``2**-e``.

    ``direction`` refers to ``x``: DOWN asks for a certified lower bound
    ``2**-e <= x`` (so ``e`` is rounded up), UP for ``2**-e >= x``.
    """
    x = as_rational(x)
    if not 0 < x < 1:
        raise DomainError(f"log2 exponent needs 0 < x < 1, got {x}")
    if frac_digits < 1:
        raise DomainError("frac_digits must be >= 1")

    # x = 2**-a * y with 1 <= y < 2
    a = x.denominator.bit_length() - x.numerator.bit_length()
    y = x * 2**a
    if y < 1:
        a += 1
        y *= 2
    e_dir = direction.flip()
    if y == 1:
        return render_decimal(Fraction(a), frac_digits, e_dir)

    nbits = math.ceil(frac_digits * math.log2(10)) + 8
    for _ in range(8):
        # absolute error grows by at most 2*sqrt(2) per squaring
        scale = nbits * 46 // 100 + frac_digits + 12
        bits = None
        while bits is None:
            bits = _log2_bits_at_scale(y, nbits, scale)
            scale *= 2
        # log2(y) lies in [bits, bits + 1] / 2**nbits
        e_lo = a - Fraction(bits + 1, 2**nbits)
        e_hi = a - Fraction(bits, 2**nbits)
        target = e_hi if e_dir is UP else e_lo
        out = render_decimal(target, frac_digits, e_dir)
        # accept once both ends of the bracket round to the same grid point
        if out == render_decimal(e_lo if e_dir is UP else e_hi, frac_digits, e_dir):
            return out
        nbits += nbits // 2
    return out
