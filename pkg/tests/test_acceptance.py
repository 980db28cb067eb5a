"""Exit criteria. Each test's docstring is its one-line report label.

Run ``pytest tests/test_acceptance.py`` to see one PASS/FAIL line per
criterion in the terminal summary.
"""

import io
import itertools
import random
import time
from collections import Counter
from fractions import Fraction

from birthday_bounds import (
    RoundingDirection,
    bernoulli,
    beta_enclosure,
    beta_enclosure_m1,
    exp_neg_enclosure,
    expected_collisions,
    faulhaber_poly,
    ln_pi_enclosure,
    power_sum,
    render_decimal,
    render_log2_exponent,
    truncate_directed,
)
from birthday_bounds.cli import run
from birthday_bounds.oracles import exact_beta, exact_pi

F = Fraction
DOWN = RoundingDirection.DOWN
UP = RoundingDirection.UP

GRID = [(k, n) for n in (365, 1000, 2**20) for k in range(2, 201) if k <= n]


def cli(*argv):
    out = io.StringIO()
    start = time.perf_counter()
    code = run(list(argv), stdout=out, stderr=io.StringIO())
    elapsed = time.perf_counter() - start
    assert code == 0, argv
    pairs = dict(line.split("=", 1) for line in out.getvalue().splitlines())
    return pairs, elapsed


def within_ulp(printed: str, reference: str) -> bool:
    digits = len(reference.split(".")[1])
    assert len(printed.split(".")[1]) == digits
    return abs(F(printed) - F(reference)) <= F(1, 10**digits)


def truncated(value: str, digits: int) -> str:
    return render_decimal(F(value), digits, DOWN)


def test_ac1_example_1():
    """AC1 Example 1: k=5, n=365 ln-enclosure and beta digits"""
    out, t_rat = cli("bound", "--k", "5", "--n", "365", "--N", "2", "--digits", "7", "--format", "rational")
    assert out["ln_lower"] == "2/73"
    assert F(out["ln_upper"]) == F(2, 73) + F(243, 2105320)

    out, t2 = cli("bound", "--k", "5", "--n", "365", "--N", "2", "--digits", "7")
    assert within_ulp(out["beta_lower"], "0.0270253")
    assert within_ulp(out["beta_upper"], "0.0271377")

    out, t4 = cli("bound", "--k", "5", "--n", "365", "--N", "4", "--digits", "7")
    for key in ("beta_lower", "beta_upper"):
        assert within_ulp(out[key], "0.0271355")
    # the source truncates; both endpoints truncate to the same 7 digits
    fine, _ = cli("bound", "--k", "5", "--n", "365", "--N", "4", "--digits", "12")
    for key in ("beta_lower", "beta_upper"):
        assert truncated(fine[key], 7) == "0.0271355"
    assert max(t_rat, t2, t4) < 0.1


def test_ac2_example_2():
    """AC2 Example 2: k=73, n=365 (epsilon erratum 121945/204984)"""
    out, t_rat = cli("bound", "--k", "73", "--n", "365", "--N", "2", "--digits", "7", "--format", "rational")
    assert out["ln_lower"] == "36/5"
    # printed in the source as 121945/255792; the tail formula and the
    # printed decimal 0.9995882 both require 121945/204984
    assert out["ln_epsilon"] == "121945/204984"

    out, t2 = cli("bound", "--k", "73", "--n", "365", "--N", "2", "--digits", "7")
    assert within_ulp(out["beta_lower"], "0.9992534")
    assert within_ulp(out["beta_upper"], "0.9995882")

    out, t8 = cli("bound", "--k", "73", "--n", "365", "--N", "8", "--digits", "7")
    for key in ("beta_lower", "beta_upper"):
        assert within_ulp(out[key], "0.9995608")
    # the source truncates; both endpoints truncate to the same 7 digits
    fine, _ = cli("bound", "--k", "73", "--n", "365", "--N", "8", "--digits", "12")
    for key in ("beta_lower", "beta_upper"):
        assert truncated(fine[key], 7) == "0.9995608"
    assert max(t_rat, t2, t8) < 0.1


def test_ac3_example_6():
    """AC3 Example 6: k=2^32, n=2^128, N=3, 60 log2 digits"""
    out, elapsed = cli(
        "bound", "--k", "2^32", "--n", "2^128", "--N", "3", "--digits", "60", "--format", "log2"
    )
    lower = out["beta_lower"].removeprefix("2^-")
    upper = out["beta_upper"].removeprefix("2^-")
    assert within_ulp(lower, "65.000000000335903615025079603904203942942489665995829764250752")
    assert within_ulp(upper, "65.000000000335903615025079603904203942942489665995829764250713")
    assert elapsed < 5


def test_ac4_classic_fixtures():
    """AC4 beta(23,365) > 1/2 and expected collisions at 28 exceed 1"""
    assert exact_beta(23, 365) > F(1, 2)
    assert beta_enclosure(23, 365, "auto", 10).beta.lo > F(1, 2)
    assert expected_collisions(28, 365) == F(756, 730)
    assert expected_collisions(28, 365) > 1


def test_ac5_oracle_sweep():
    """AC5 auto-precision enclosure contains exact beta on the k<=200 sweep"""
    start = time.perf_counter()
    bad = []
    for k, n in GRID:
        res = beta_enclosure(k, n, "auto", 12)
        beta = exact_beta(k, n)
        if beta not in res.beta or res.beta.width >= F(1, 10**12):
            bad.append((k, n))
    assert not bad
    assert time.perf_counter() - start < 60


def test_ac6_bernoulli_faulhaber():
    """AC6 Bernoulli golden values, Faulhaber m=3..7, power sums vs loop"""
    golden = {1: F(1, 2), 2: F(1, 6), 3: 0, 4: F(-1, 30), 5: 0, 6: F(1, 42)}
    assert all(bernoulli(m) == v for m, v in golden.items())
    table = {
        3: [0, F(1, 4), F(1, 2), F(1, 4)],
        4: [F(-1, 30), 0, F(1, 3), F(1, 2), F(1, 5)],
        5: [0, F(-1, 12), 0, F(5, 12), F(1, 2), F(1, 6)],
        6: [F(1, 42), 0, F(-1, 6), 0, F(1, 2), F(1, 2), F(1, 7)],
        7: [0, F(1, 12), 0, F(-7, 24), 0, F(7, 12), F(1, 2), F(1, 8)],
    }
    for m, coeffs in table.items():
        assert list(faulhaber_poly(m).coefficients) == coeffs
    for m in range(1, 51):
        running = 0
        for k in range(0, 201):
            running += k**m
            assert power_sum(k, m) == running


def test_ac7_1_direct_bound():
    """AC7(1) exact beta < k(k-1)/2n on the sweep grid"""
    violations = [(k, n) for k, n in GRID if not exact_beta(k, n) < F(k * (k - 1), 2 * n)]
    # k = 2 gives beta = 1/n = k(k-1)/2n exactly, so the strict form cannot hold there
    assert not violations, f"strict inequality fails at {violations}"


def test_ac7_2_inverse_e_comparison():
    """AC7(2) M=1 lower bound vs (1 - 1/e) k(k-1)/2n"""
    e_inv = exp_neg_enclosure(F(1), 15, 40)
    checked = 0
    for k, n in GRID:
        x = F(k * (k - 1), 2 * n)
        if x <= e_inv.lo:
            lower = beta_enclosure_m1(k, n).lo
            assert lower >= (1 - e_inv.hi) * x
            # and on the safe side, which certifies the real-number claim
            assert lower >= (1 - e_inv.lo) * x
            checked += 1
    assert checked > 0


def test_ac7_3_improved_lower():
    """AC7(3) improved lower bound is sharper and still contains the oracle"""
    for k, n in GRID:
        ln = ln_pi_enclosure(k, n, 3)
        assert ln.improved_lower > ln.lower
        res = beta_enclosure(k, n, 3, 12, improved_lower=True)
        assert exact_beta(k, n) in res.beta


def _orbit_law(n):
    counts = Counter()
    for f in itertools.product(range(n), repeat=n):
        seen, x = set(), 0
        while x not in seen:
            seen.add(x)
            x = f[x]
        counts[len(seen)] += 1
    return counts


def test_ac8_orbit_enumeration():
    """AC8 orbit-size law matches exhaustive enumeration for n=2,3,4"""
    for n in (2, 3, 4):
        counts = _orbit_law(n)
        for k in range(1, n + 1):
            assert F(counts[k], n**n) == exact_pi(k, n) * F(k, n)
        assert sum(exact_pi(k, n) * F(k, n) for k in range(1, n + 1)) == 1


def test_ac9_directed_rounding():
    """AC9 directed-rounding soundness on 10^4 rationals and 10^3 log2 inputs"""
    rng = random.Random(9)
    for _ in range(10_000):
        x = F(rng.randint(-(10**15), 10**15), rng.randint(1, 10**15))
        d = rng.randint(1, 25)
        lo, hi = truncate_directed(x, d, DOWN), truncate_directed(x, d, UP)
        assert lo <= x <= hi and hi - lo <= F(2, 10**d)
        assert F(render_decimal(x, d, DOWN)) <= x <= F(render_decimal(x, d, UP))
    for _ in range(1_000):
        den = rng.randint(2, 10**6)
        x = F(rng.randint(1, den - 1), den)
        digits = rng.randint(1, 3)
        direction = rng.choice((DOWN, UP))
        e = F(render_log2_exponent(x, digits, direction))
        # 2^(-p/q) vs a/b  <=>  b^q vs a^q 2^p
        lhs = x.denominator**e.denominator
        rhs = x.numerator**e.denominator * 2**e.numerator
        assert lhs <= rhs if direction is DOWN else lhs >= rhs
