"""Two-sided enclosure of ``-ln pi(k, n)`` from a truncated power-sum series.

Expanding ``ln(1 - i/n)`` and swapping the sums gives

    -ln pi(k, n) = sum_{m >= 1} p(k-1, m) / (m n^m)

The first ``N - 1`` terms are a strict lower bound. The neglected tail is
below ``eps(k, n, N) = (k - 1/2)^(N+1) / (N (N+1) (1 - (k - 1/2)/n) n^N)``,
which follows from bounding each power sum by an integral of
``(x + 1/2)^m`` and summing the resulting geometric series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bernoulli import power_sum
from .rational import DomainError

__all__ = [
    "DEFAULT_MAX_N",
    "PrecisionUnreachable",
    "LnEnclosureResult",
    "ln_series_lower",
    "epsilon_tail",
    "improvement_term",
    "ln_pi_enclosure",
    "auto_select_N",
]

DEFAULT_MAX_N = 10_000
# below k - 1 <= ratio * N, summing i**m directly beats Faulhaber's O(N**2) rationals
DIRECT_SUM_RATIO = 4


class PrecisionUnreachable(ArithmeticError):
    """The requested width cannot be reached under the configured cap."""


@dataclass(frozen=True)
class LnEnclosureResult:
    k: int
    n: int
    N: int
    lower: Fraction
    epsilon: Fraction
    improved_lower: Fraction

    @property
    def upper(self) -> Fraction:
        return self.lower + self.epsilon

    @property
    def width(self) -> Fraction:
        return self.epsilon


def _check(k: int, n: int, N: int) -> None:
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if k < 2:
        raise DomainError(f"k must be >= 2 for the series bound, got {k}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if k > n:
        raise DomainError(f"tail bound inapplicable: k - 1/2 >= n (k={k}, n={n})")


def ln_series_lower(k: int, n: int, N: int) -> Fraction:
    """``sum_{m=1}^{N-1} p(k-1, m) / (m n^m)``, a strict lower bound on ``-ln pi``."""
    _check(k, n, N)
    if k - 1 <= DIRECT_SUM_RATIO * N:
        sums = _direct_power_sums(k - 1, N - 1)
    else:
        sums = (power_sum(k - 1, m) for m in range(1, N))
    total = Fraction(0)
    n_pow = 1
    for m, p in enumerate(sums, start=1):
        n_pow *= n
        total += Fraction(int(p), m * n_pow)
    return total


def _direct_power_sums(k: int, max_m: int):
    """Yield ``p(k, m)`` for ``m = 1..max_m`` by running powers of ``1..k``."""
    powers = list(range(1, k + 1))
    bases = powers[:]
    for _ in range(max_m):
        yield sum(powers)
        powers = [p * b for p, b in zip(powers, bases)]


def epsilon_tail(k: int, n: int, N: int) -> Fraction:
    _check(k, n, N)
    # (k - 1/2) = h/2 with h = 2k - 1; clear the halves
    h = 2 * k - 1
    num = h ** (N + 1) * 2 * n
    den = N * (N + 1) * 2 ** (N + 1) * (2 * n - h) * n**N
    return Fraction(num, den)


def improvement_term(k: int, n: int, N: int) -> Fraction:
    """Lower bound on the first neglected term, from ``p(k-1, N) >= (k-1)^(N+1)/(N+1)``."""
    _check(k, n, N)
    return Fraction((k - 1) ** (N + 1), N * (N + 1) * n**N)


def ln_pi_enclosure(k: int, n: int, N: int) -> LnEnclosureResult:
    lower = ln_series_lower(k, n, N)
    return LnEnclosureResult(
        k=k,
        n=n,
        N=N,
        lower=lower,
        epsilon=epsilon_tail(k, n, N),
        improved_lower=lower + improvement_term(k, n, N),
    )


def _log_epsilon(k: int, n: int, N: int) -> float:
    h = 2 * k - 1
    return (
        (N + 1) * math.log(h)
        + math.log(2 * n)
        - math.log(N * (N + 1))
        - (N + 1) * math.log(2)
        - math.log(2 * n - h)
        - N * math.log(n)
    )


def auto_select_N(
    k: int, n: int, target_width: Fraction, max_N: int = DEFAULT_MAX_N
) -> int:
    """Smallest ``N >= 2`` with ``epsilon_tail(k, n, N) < target_width``.

    ``epsilon_tail`` is strictly decreasing in ``N`` (consecutive ratio
    ``(k - 1/2)/n * N/(N+2) < 1``), so a float estimate is used to jump
    close and the answer is then pinned by exact comparisons.
    """
    _check(k, n, 2)
    target_width = Fraction(target_width)
    if target_width <= 0:
        raise DomainError("target width must be positive")

    def ok(N: int) -> bool:
        return epsilon_tail(k, n, N) < target_width

    def unreachable() -> PrecisionUnreachable:
        return PrecisionUnreachable(
            f"precision unreachable: tail bound needs N > {max_N} for k={k}, n={n}; "
            "use the exact product oracle (exact_pi / `exact` subcommand) instead"
        )

    log_target = math.log(target_width.numerator) - math.log(target_width.denominator)
    lo, hi = 2, 2
    while hi <= max_N and _log_epsilon(k, n, hi) >= log_target:
        lo, hi = hi, hi * 2
    hi = min(hi, max_N)
    while lo < hi:
        mid = (lo + hi) // 2
        if _log_epsilon(k, n, mid) < log_target:
            hi = mid
        else:
            lo = mid + 1
    N = lo
    while not ok(N):
        N += 1
        if N > max_N:
            raise unreachable()
    while N > 2 and ok(N - 1):
        N -= 1
    return N
