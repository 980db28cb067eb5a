"""Bernoulli numbers and Faulhaber power sums, exactly.

Convention: ``B^1 = +1/2`` (the "second" Bernoulli numbers). With this sign
Faulhaber's formula ``p(k, m) = ((k + B)^(m+1) - B^(m+1)) / (m + 1)``,
expanded formally in powers of ``B``, gives ``1^m + 2^m + ... + k^m``.
Porting note: most libraries (sympy before 1.12, scipy) default to
``B_1 = -1/2``; the two conventions differ only at index 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .rational import DomainError

__all__ = ["bernoulli", "bernoulli_table", "FaulhaberPoly", "faulhaber_poly", "power_sum"]

_table: list[Fraction] = [Fraction(1)]
_lock = threading.Lock()


def _extend_to(m: int) -> None:
    with _lock:
        # "B^n = (B - 1)^n" for n > 1: the B^n terms cancel and the
        # remaining relation is solved for B^(n-1).
        for n in range(len(_table) + 1, m + 2):
            s = sum(
                (comb(n, j) * (-1 if (n - j) % 2 else 1) * _table[j] for j in range(n - 1)),
                Fraction(0),
            )
            _table.append(s / n)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number ``B^m`` with ``B^1 = 1/2``; memoized."""
    if m < 0:
        raise DomainError("Bernoulli index must be >= 0")
    if m >= len(_table):
        _extend_to(m)
    return _table[m]


def bernoulli_table(max_index: int) -> tuple[Fraction, ...]:
    """``(B^0, ..., B^max_index)``."""
    bernoulli(max_index)
    return tuple(_table[: max_index + 1])


@dataclass(frozen=True)
class FaulhaberPoly:
    """``p(k, m) = sum(c_j * k**j for j in 1..m+1)``.

    ``coefficients[j - 1]`` holds ``c_j``; there is no constant term.
    """

    m: int
    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return self.m + 1

    def __call__(self, k: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = (acc + c) * k
        return acc


@lru_cache(maxsize=None)
def faulhaber_poly(m: int) -> FaulhaberPoly:
    if m < 1:
        raise DomainError("power-sum exponent must be >= 1")
    coeffs = tuple(
        Fraction(comb(m + 1, j)) * bernoulli(m + 1 - j) / (m + 1) for j in range(1, m + 2)
    )
    return FaulhaberPoly(m, coeffs)


def power_sum(k: int, m: int) -> Fraction:
    """``1**m + 2**m + ... + k**m`` via Faulhaber's formula."""
    if k < 0:
        raise DomainError("k must be >= 0")
    value = faulhaber_poly(m)(k)
    assert value.denominator == 1
    return value
