"""Certified arbitrary-precision bounds on the birthday-collision probability."""

from .bernoulli import FaulhaberPoly, bernoulli, bernoulli_table, faulhaber_poly, power_sum
from .oracles import (
    OrbitProbabilities,
    SizeLimitError,
    binom_pi_factor,
    enclosed_pi_product,
    exact_beta,
    exact_pi,
    expected_collisions,
    orbit_size_probabilities,
)
from .probability import (
    BetaEnclosureResult,
    beta_enclosure,
    beta_enclosure_m1,
    exp_neg_enclosure,
)
from .rational import (
    DomainError,
    Enclosure,
    Rational,
    RoundingDirection,
    render_decimal,
    render_log2_exponent,
    truncate_directed,
)
from .tail import (
    LnEnclosureResult,
    PrecisionUnreachable,
    auto_select_N,
    epsilon_tail,
    ln_pi_enclosure,
    ln_series_lower,
)

__version__ = "0.1.0"

__all__ = [
    "BetaEnclosureResult",
    "DomainError",
    "Enclosure",
    "FaulhaberPoly",
    "LnEnclosureResult",
    "OrbitProbabilities",
    "PrecisionUnreachable",
    "Rational",
    "RoundingDirection",
    "SizeLimitError",
    "auto_select_N",
    "bernoulli",
    "bernoulli_table",
    "beta_enclosure",
    "beta_enclosure_m1",
    "binom_pi_factor",
    "enclosed_pi_product",
    "epsilon_tail",
    "exact_beta",
    "exact_pi",
    "exp_neg_enclosure",
    "expected_collisions",
    "faulhaber_poly",
    "ln_pi_enclosure",
    "ln_series_lower",
    "orbit_size_probabilities",
    "power_sum",
    "render_decimal",
    "render_log2_exponent",
    "truncate_directed",
]
