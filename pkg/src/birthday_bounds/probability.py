"""Certified enclosures of the collision probability beta(k, n) and of pi(k, n).

An enclosure ``[L, U]`` of ``-ln pi`` turns into ``beta`` bounds through
``beta = 1 - exp(-(-ln pi))``: ``beta > 1 - exp(-L)`` and ``beta < 1 - exp(-U)``.
The exponential is bracketed by alternating Taylor partial sums, valid for
``0 <= y < 1``; larger arguments are halved ``s`` times and the bracket is
squared back up, which preserves direction since both ends lie in ``[0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rational import DOWN, UP, DomainError, Enclosure, truncate_directed
from .tail import (
    DEFAULT_MAX_N,
    LnEnclosureResult,
    PrecisionUnreachable,
    auto_select_N,
    ln_pi_enclosure,
)

__all__ = [
    "DEFAULT_MAX_M",
    "ExpEnclosure",
    "BetaEnclosureResult",
    "exp_neg_enclosure",
    "exp_neg_enclosure_detail",
    "beta_enclosure",
    "beta_enclosure_m1",
]

DEFAULT_MAX_M = 10_001
GUARD_DIGITS = 10


@dataclass(frozen=True)
class ExpEnclosure:
    enclosure: Enclosure
    M: int
    s: int


@dataclass(frozen=True)
class BetaEnclosureResult:
    k: int
    n: int
    ln_result: LnEnclosureResult | None
    beta: Enclosure
    pi: Enclosure
    M_used: int
    s_used: int
    improved_lower: bool = False


def _taylor_bracket(y: Fraction, M: int) -> tuple[Fraction, Fraction]:
    # sum_{m=0}^{M} (-y)^m/m! < e^{-y} < sum_{m=0}^{M+1} (-y)^m/m!  (M odd, 0 <= y < 1)
    term = Fraction(1)
    total = Fraction(1)
    for m in range(1, M + 1):
        term = term * -y / m
        total += term
    return total, total + term * -y / (M + 1)


def _halvings(x: Fraction) -> int:
    s = 0
    while x >= 1:
        x /= 2
        s += 1
    return s


def exp_neg_enclosure_detail(x: Fraction, M: int, truncation_scale: int) -> ExpEnclosure:
    x = Fraction(x)
    if x < 0:
        raise DomainError("exp_neg_enclosure needs x >= 0")
    if M < 1 or M % 2 == 0:
        raise DomainError(f"M must be an odd positive integer, got {M}")
    if x == 0:
        return ExpEnclosure(Enclosure.exact(1), M, 0)
    s = _halvings(x)
    lo, hi = _taylor_bracket(x / 2**s, M)
    if s:
        lo = truncate_directed(lo, truncation_scale, DOWN)
        hi = truncate_directed(hi, truncation_scale, UP)
        for _ in range(s):
            lo = truncate_directed(lo * lo, truncation_scale, DOWN)
            hi = truncate_directed(hi * hi, truncation_scale, UP)
    return ExpEnclosure(Enclosure(max(lo, Fraction(0)), min(hi, Fraction(1))), M, s)


def exp_neg_enclosure(x: Fraction, M: int, truncation_scale: int) -> Enclosure:
    """Enclosure of ``exp(-x)`` for ``x >= 0`` using the odd-order Taylor sandwich."""
    return exp_neg_enclosure_detail(x, M, truncation_scale).enclosure


def _exp_to_width(
    x: Fraction, width: Fraction, digits: int, max_M: int
) -> ExpEnclosure:
    """Raise ``M`` (3, 7, 15, ...) until the ``exp(-x)`` bracket is narrower than ``width``."""
    scale = digits + GUARD_DIGITS + _halvings(x)
    M = 3
    while True:
        res = exp_neg_enclosure_detail(x, M, scale)
        if res.enclosure.width < width:
            return res
        if M >= max_M:
            raise PrecisionUnreachable(
                f"precision unreachable: exp(-{float(x):.6g}) needs M > {max_M}; "
                "use the exact product oracle instead"
            )
        M = min(2 * M + 1, max_M)


def beta_enclosure(
    k: int,
    n: int,
    N: int | str | None = "auto",
    target_digits: int = 10,
    *,
    improved_lower: bool = False,
    max_N: int = DEFAULT_MAX_N,
    max_M: int = DEFAULT_MAX_M,
) -> BetaEnclosureResult:
    """Certified enclosure of the birthday-collision probability.

    With ``N="auto"`` the series length is chosen so that the returned width
    is below ``10**-target_digits``. With an explicit ``N`` the width is
    whatever that ``N`` allows; ``M`` is still raised until the exponential
    contributes less than ``10**-(target_digits + 2)`` per endpoint.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if target_digits < 1:
        raise DomainError("target_digits must be >= 1")
    if k <= 1:
        return BetaEnclosureResult(k, n, None, Enclosure.exact(0), Enclosure.exact(1), 0, 0)
    if k > n:
        return BetaEnclosureResult(k, n, None, Enclosure.exact(1), Enclosure.exact(0), 0, 0)

    if N is None or N == "auto":
        N = auto_select_N(k, n, Fraction(1, 10 ** (target_digits + 4)), max_N=max_N)
    ln = ln_pi_enclosure(k, n, int(N))
    L = ln.improved_lower if improved_lower else ln.lower

    exp_width = Fraction(1, 10 ** (target_digits + 2))
    from_lower = _exp_to_width(L, exp_width, target_digits, max_M)
    from_upper = _exp_to_width(ln.upper, exp_width, target_digits, max_M)
    beta = Enclosure(1 - from_lower.enclosure.hi, 1 - from_upper.enclosure.lo)
    return BetaEnclosureResult(
        k=k,
        n=n,
        ln_result=ln,
        beta=beta,
        pi=beta.complement(),
        M_used=max(from_lower.M, from_upper.M),
        s_used=max(from_lower.s, from_upper.s),
        improved_lower=improved_lower,
    )


def beta_enclosure_m1(k: int, n: int) -> Enclosure:
    """Closed-form bounds from ``N = 2`` and a first-order exponential bracket.

    ``x - x**2 < beta < x + (k - 1/2)**3 / (6 n**2 (1 - (k - 1/2)/n))`` with
    ``x = k (k - 1) / 2n``.
    """
    ln = ln_pi_enclosure(k, n, 2)
    x = ln.lower
    return Enclosure(x - x * x, ln.upper)
