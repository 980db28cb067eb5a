"""Ground-truth oracles and the small application formulas built on pi(k, n).

``exact_pi`` multiplies the ``k - 1`` factors ``(1 - i/n)`` exactly and is
the reference every enclosure is tested against. ``enclosed_pi_product``
does the same product with directed truncation, for mid-sized ``k`` where
the exact denominator ``n**(k-1)`` gets unwieldy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .probability import beta_enclosure
from .rational import DOWN, UP, DomainError, Enclosure, truncate_directed

__all__ = [
    "DEFAULT_EXACT_CAP",
    "SizeLimitError",
    "OrbitProbabilities",
    "exact_pi",
    "exact_beta",
    "enclosed_pi_product",
    "expected_collisions",
    "binom_pi_factor",
    "binom_identity_factor",
    "orbit_size_probabilities",
]

DEFAULT_EXACT_CAP = 10_000


class SizeLimitError(ArithmeticError):
    """The exact oracle was asked for a product above its size cap."""


def _check_kn(k: int, n: int) -> None:
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")


def exact_pi(k: int, n: int, cap: int = DEFAULT_EXACT_CAP) -> Fraction:
    """Probability that ``k`` uniform samples from ``n`` values are all distinct."""
    _check_kn(k, n)
    if k <= 1:
        return Fraction(1)
    if k > n:
        return Fraction(0)
    if k > cap:
        raise SizeLimitError(
            f"exact_pi capped at k <= {cap} (got k={k}); use enclosed_pi_product or beta_enclosure"
        )
    num = 1
    for i in range(1, k):
        num *= n - i
    return Fraction(num, n ** (k - 1))


def exact_beta(k: int, n: int, cap: int = DEFAULT_EXACT_CAP) -> Fraction:
    return 1 - exact_pi(k, n, cap)


def enclosed_pi_product(k: int, n: int, digits: int) -> Enclosure:
    """Enclosure of ``pi(k, n)`` of width below ``10**-digits`` in ``O(k)`` truncated products."""
    _check_kn(k, n)
    if k > n:
        raise DomainError(f"enclosed_pi_product needs k <= n (k={k}, n={n})")
    if k <= 1:
        return Enclosure.exact(1)
    scale = digits + len(str(k)) + 5
    lo = hi = Fraction(1)
    for i in range(1, k):
        factor = Fraction(n - i, n)
        lo = truncate_directed(lo * truncate_directed(factor, scale, DOWN), scale, DOWN)
        hi = truncate_directed(hi * truncate_directed(factor, scale, UP), scale, UP)
    return Enclosure(max(lo, Fraction(0)), min(hi, Fraction(1)))


def expected_collisions(k: int, n: int) -> Fraction:
    """Expected number of colliding pairs, ``C(k, 2) / n``."""
    _check_kn(k, n)
    return Fraction(k * (k - 1), 2 * n)


def binom_identity_factor(k: int, n: int) -> Fraction:
    """``C(n, k) * k! / n**k``, which equals ``pi(k, n)`` exactly."""
    _check_kn(k, n)
    return Fraction(comb(n, k) * factorial(k), n**k)


def binom_pi_factor(
    k: int, n: int, target_digits: int = 12, cap: int = DEFAULT_EXACT_CAP
) -> Enclosure:
    """Enclosure of the factor relating ``C(n, k)`` to ``n**k / k!``.

    Exact below the oracle cap; above it the series-based pi enclosure is
    used, which stays cheap while ``k`` is well below ``n``.
    """
    _check_kn(k, n)
    if k > n:
        raise DomainError(f"binom_pi_factor needs k <= n (k={k}, n={n})")
    if k <= cap:
        return Enclosure.exact(exact_pi(k, n, cap))
    return beta_enclosure(k, n, "auto", target_digits).pi


@dataclass(frozen=True)
class OrbitProbabilities:
    """Orbit-size law of a fixed point ``x`` under a uniformly random map on ``n`` points.

    The orbit is the set of distinct values ``x, f(x), f(f(x)), ...``
    visited before the first repeat. ``p_size_at_least_k`` is ``pi(k, n)``;
    ``p_size_greater_k`` is ``pi(k + 1, n)``.
    """

    n: int
    k: int
    p_exact_size_k: Fraction | Enclosure
    p_size_greater_k: Fraction | Enclosure
    p_size_at_least_k: Fraction | Enclosure

    @property
    def exact(self) -> bool:
        return isinstance(self.p_exact_size_k, Fraction)


def orbit_size_probabilities(
    k: int, n: int, target_digits: int = 12, cap: int = DEFAULT_EXACT_CAP
) -> OrbitProbabilities:
    _check_kn(k, n)
    if not 1 <= k <= n:
        raise DomainError(f"orbit probabilities need 1 <= k <= n (k={k}, n={n})")
    ratio = Fraction(k, n)
    if k + 1 <= cap:
        pi_k = exact_pi(k, n, cap)
        return OrbitProbabilities(n, k, pi_k * ratio, exact_pi(k + 1, n, cap), pi_k)
    pi_k = beta_enclosure(k, n, "auto", target_digits).pi
    pi_next = beta_enclosure(k + 1, n, "auto", target_digits).pi
    return OrbitProbabilities(n, k, pi_k.scale(ratio), pi_next, pi_k)
