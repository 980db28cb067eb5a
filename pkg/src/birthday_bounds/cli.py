"""Command-line front end: ``birthday-bounds <subcommand> [options]``.

Output is ``key=value`` lines. Lower bounds are always rounded down and
upper bounds up, so printed intervals remain certified.

Exit codes: 0 success, 2 invalid input, 3 inapplicable parameters or a
precision/size cap was hit.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

from .bernoulli import bernoulli, power_sum
from .oracles import (
    SizeLimitError,
    binom_pi_factor,
    exact_beta,
    exact_pi,
    expected_collisions,
    orbit_size_probabilities,
)
from .probability import beta_enclosure
from .rational import DOWN, UP, DomainError, Enclosure, render_decimal, render_log2_exponent
from .tail import DEFAULT_MAX_N, PrecisionUnreachable

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INAPPLICABLE = 3

MAX_N_ENV = "BIRTHDAY_BOUNDS_MAX_N"
# refuse to materialize integers larger than this many bits
MAX_INT_BITS = 1 << 24

_INT_EXPR = re.compile(r"(\d+)(?:\^(\d+))?")


class InvalidInput(ValueError):
    pass


def parse_int_expr(s: str) -> int:
    """Parse ``DECIMAL`` or ``DECIMAL^DECIMAL`` into an exact integer."""
    m = _INT_EXPR.match(s)
    if m is None:
        raise InvalidInput(f"cannot parse integer expression {s!r} at position 0: expected a digit")
    if m.end() != len(s):
        pos = m.end()
        raise InvalidInput(
            f"cannot parse integer expression {s!r} at position {pos}: unexpected {s[pos]!r}"
            + (" (only one '^' allowed)" if s[pos] == "^" else "")
        )
    base = int(m.group(1))
    if m.group(2) is None:
        return base
    exp = int(m.group(2))
    if base > 1 and exp * base.bit_length() > MAX_INT_BITS:
        raise InvalidInput(f"integer expression {s!r} is too large")
    return base**exp


def _int_arg(s: str) -> int:
    try:
        return parse_int_expr(s)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(s: str) -> int:
    v = _int_arg(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _series_length(s: str) -> int | str:
    if s == "auto":
        return s
    v = _int_arg(s)
    if v < 2:
        raise argparse.ArgumentTypeError(f"N must be 'auto' or an integer >= 2, got {v}")
    return v


def _max_n() -> int:
    raw = os.environ.get(MAX_N_ENV)
    if not raw:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"{MAX_N_ENV} must be an integer, got {raw!r}") from None
    if value < 2:
        raise InvalidInput(f"{MAX_N_ENV} must be >= 2, got {value}")
    return value


def _fmt(x: Fraction, digits: int, direction, fmt: str) -> str:
    if fmt == "rational":
        return str(x)
    if fmt == "log2" and 0 < x < 1:
        return "2^-" + render_log2_exponent(x, digits, direction)
    if fmt == "log2":
        return str(x)
    return render_decimal(x, digits, direction)


def _emit_enclosure(out: list[str], name: str, enc: Enclosure, digits: int, fmt: str) -> None:
    out.append(f"{name}_lower={_fmt(enc.lo, digits, DOWN, fmt)}")
    out.append(f"{name}_upper={_fmt(enc.hi, digits, UP, fmt)}")


def _log2_target_digits(k: int, n: int, frac_digits: int) -> int:
    # absolute digits needed so a relative error of ~10**-frac_digits survives;
    # beta >= (1 - 1/e) * min(1, k(k-1)/2n)
    x = expected_collisions(k, n)
    leading = 0 if x >= 1 else len(str(x.denominator)) - len(str(x.numerator)) + 1
    return frac_digits + leading + 3


def _cmd_bound(args: argparse.Namespace, out: list[str]) -> None:
    k, n = args.k, args.n
    if k >= 2 and 2 * k - 1 >= 2 * n:
        raise DomainError(
            f"bound inapplicable: k - 1/2 >= n (k={k}, n={n}); "
            "beta = 1 by pigeonhole, see the `exact` subcommand"
        )
    digits = args.digits
    target = _log2_target_digits(k, n, digits) if args.format == "log2" and k >= 2 else digits
    res = beta_enclosure(
        k, n, args.N, target, improved_lower=args.improved_lower, max_N=_max_n()
    )
    ln = res.ln_result
    out.append(f"N={ln.N if ln else '-'}")
    out.append(f"M={res.M_used}")
    if ln is not None and args.format != "log2":
        lower = ln.improved_lower if args.improved_lower else ln.lower
        out.append(f"ln_lower={_fmt(lower, digits, DOWN, args.format)}")
        if args.format == "rational":
            out.append(f"ln_epsilon={ln.epsilon}")
        out.append(f"ln_upper={_fmt(ln.upper, digits, UP, args.format)}")
    _emit_enclosure(out, "beta", res.beta, digits, args.format)


def _cmd_exact(args: argparse.Namespace, out: list[str]) -> None:
    beta = exact_beta(args.k, args.n)
    out.append(f"beta={beta}")
    out.append(f"pi={exact_pi(args.k, args.n)}")
    if args.format != "rational":
        _emit_enclosure(out, "beta", Enclosure.exact(beta), args.digits, args.format)


def _cmd_expected(args: argparse.Namespace, out: list[str]) -> None:
    value = expected_collisions(args.k, args.n)
    out.append(f"expected={value}")
    if args.format == "decimal":
        out.append(f"expected_lower={render_decimal(value, args.digits, DOWN)}")
        out.append(f"expected_upper={render_decimal(value, args.digits, UP)}")


def _cmd_bernoulli(args: argparse.Namespace, out: list[str]) -> None:
    out.append(f"B^{args.m}={bernoulli(args.m)}")


def _cmd_powersum(args: argparse.Namespace, out: list[str]) -> None:
    out.append(f"p={power_sum(args.k, args.m)}")


def _cmd_binom_factor(args: argparse.Namespace, out: list[str]) -> None:
    enc = binom_pi_factor(args.k, args.n, args.digits)
    _emit_enclosure(out, "factor", enc, args.digits, args.format)


def _cmd_orbit(args: argparse.Namespace, out: list[str]) -> None:
    res = orbit_size_probabilities(args.k, args.n, args.digits)
    for name in ("p_exact_size_k", "p_size_greater_k", "p_size_at_least_k"):
        value = getattr(res, name)
        enc = value if isinstance(value, Enclosure) else Enclosure.exact(value)
        if args.format == "rational" and enc.is_exact:
            out.append(f"{name}={enc.lo}")
        else:
            _emit_enclosure(out, name, enc, args.digits, args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birthday-bounds",
        description="Certified bounds on the birthday-collision probability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, need_n: bool = True) -> None:
        p.add_argument("--k", type=_int_arg, required=True, help="number of samples (e.g. 2^32)")
        if need_n:
            p.add_argument("--n", type=_positive, required=True, help="sample-space size")
        p.add_argument("--digits", type=_positive, default=10)
        p.add_argument("--format", choices=("decimal", "rational", "log2"), default="decimal")

    p = sub.add_parser("bound", help="certified beta enclosure from the tail-bounded series")
    common(p)
    p.add_argument("--N", type=_series_length, default="auto", help="series length or 'auto'")
    p.add_argument("--improved-lower", action="store_true", help="use the sharpened lower bound")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("exact", help="exact rational beta and pi from the product formula")
    common(p)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("expected", help="expected number of colliding pairs k(k-1)/2n")
    common(p)
    p.set_defaults(func=_cmd_expected)

    p = sub.add_parser("bernoulli", help="exact Bernoulli number B^m (B^1 = +1/2)")
    p.add_argument("--m", type=_int_arg, required=True)
    p.set_defaults(func=_cmd_bernoulli)

    p = sub.add_parser("powersum", help="exact 1^m + ... + k^m")
    p.add_argument("--k", type=_int_arg, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.set_defaults(func=_cmd_powersum)

    p = sub.add_parser("binom-factor", help="enclosure of C(n,k) k! / n^k")
    common(p)
    p.set_defaults(func=_cmd_binom_factor)

    p = sub.add_parser("orbit", help="orbit-size probabilities under a random map")
    common(p)
    p.set_defaults(func=_cmd_orbit)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list[str] = []
    try:
        args.func(args, out)
    except InvalidInput as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except (DomainError, PrecisionUnreachable, SizeLimitError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INAPPLICABLE
    stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
