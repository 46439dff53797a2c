"""Command-line interface.

Exit status: 0 all proven or skipped, 1 usage or domain error, 2 a claim was
violated, 3 something was inconclusive (and nothing violated).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from .binomial import BinomialLaw, BinomialParams
from .bounds import BoundKind, evaluate_bound, tce_upper_bound_integer_mean
from .errors import DomainError, PrecisionExhausted
from .harness import (
    GridSpec,
    catalog_ids,
    exit_status,
    explore_mad_ratio,
    run_claim_sweep,
    write_csv,
)
from .harness.claims import CATALOG
from .harness.grid import lambda_grid
from .harness.records import record_row
from .interval import DEFAULT_BITS, DEFAULT_CAP_BITS, PrecisionPolicy, ProbInterval, Relation, Verdict, certify
from .orders import check_hazard_rate_order, check_likelihood_ratio_order
from .poisson import (
    PoissonParams,
    certify_integer_mean_median,
    certify_integer_mean_tce,
    certify_stirling,
    certify_theorem_bound,
    poisson_mad,
    poisson_pmf,
    poisson_tail,
    poisson_tce,
)
from .rational import format_enclosure, format_fraction, format_significant, parse_rational

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_INCONCLUSIVE = 0, 1, 2, 3
INTERVAL_DIGITS = 20


@dataclass(frozen=True)
class CliConfig:
    precision_bits: int = DEFAULT_BITS
    precision_cap_bits: int = DEFAULT_CAP_BITS
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        if self.precision_bits > self.precision_cap_bits:
            raise DomainError("--precision-bits must not exceed --precision-cap-bits")
        if self.output_format not in ("csv", "plain"):
            raise DomainError(f"unknown output format {self.output_format!r}")

    @property
    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(self.precision_bits, self.precision_cap_bits)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exact_line(q: Fraction) -> str:
    return f"{format_fraction(q)} ({format_significant(q, 12)})"


def _interval_text(iv: ProbInterval) -> str:
    return format_enclosure(iv.lo, iv.hi, INTERVAL_DIGITS)


def _verdict_status(verdict: Verdict) -> int:
    return {Verdict.VIOLATED: EXIT_VIOLATED, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(verdict, EXIT_OK)


def _split_quantity(text: str) -> tuple[str, int | None]:
    name, _, arg = text.partition(":")
    if not arg:
        return name, None
    try:
        return name, int(arg)
    except ValueError:
        raise DomainError(f"quantity argument must be an integer: {text!r}") from None


def _config(args) -> CliConfig:
    return CliConfig(
        precision_bits=args.precision_bits,
        precision_cap_bits=args.precision_cap_bits,
        output_format=getattr(args, "format", "csv"),
        output_path=getattr(args, "output", None),
    )


# subcommands ------------------------------------------------------------------------


EXACT_QUANTITIES = ("pmf:k", "tail:k", "mad", "tce:k", "exceed", "median-check")


def cmd_exact(args) -> int:
    params = BinomialParams(args.n, args.p)
    law = BinomialLaw(params)
    name, k = _split_quantity(args.quantity)
    needs_k = {"pmf", "tail", "tce"}
    if (name in needs_k) != (k is not None) or name not in needs_k | {"mad", "exceed", "median-check"}:
        raise DomainError(f"unknown quantity {args.quantity!r}; choose from {', '.join(EXACT_QUANTITIES)}")
    if name == "median-check":
        print("true" if law.median_lower_check() else "false")
        return EXIT_OK
    value = {
        "pmf": lambda: law.pmf(k),
        "tail": lambda: law.tail(k),
        "tce": lambda: law.tce(k),
        "mad": law.mad,
        "exceed": law.mean_exceedance_prob,
    }[name]()
    print(_exact_line(value))
    return EXIT_OK


BOUND_KINDS = {"veraar": BoundKind.VERAAR_EQ1, "gm": BoundKind.GREENBERG_MOHRI_EQ2, "rt": BoundKind.RIGOLLET_TONG_EQ3, "theorem1": BoundKind.THEOREM1}


def cmd_bound(args) -> int:
    config = _config(args)
    params = BinomialParams(args.n, args.p)
    law = BinomialLaw(params)
    if args.kind == "tce-int":
        tce_value = law.tce(params.exceedance_index) if params.np_is_integer else None
        tce_upper_bound_integer_mean(params)  # raises the domain error for non-integer np
        cert = certify(
            lambda bits: (ProbInterval.exact(tce_value, bits), tce_upper_bound_integer_mean(params, bits)),
            Relation.LT,
            config.policy,
        )
        print(f"interval: {_interval_text(cert.right)}")
        print(f"tce: {_exact_line(tce_value)}")
        print(f"verdict: {cert.verdict}")
        return _verdict_status(cert.verdict)
    kind = BOUND_KINDS[args.kind]
    sharp = args.sharp and kind is BoundKind.THEOREM1
    evaluate_bound(kind, params, sharp=sharp, precision_bits=config.precision_bits)  # domain check first
    tail = law.mean_exceedance_prob()
    relation = Relation.GT if kind.strict else Relation.GE
    cert = certify(
        lambda bits: (ProbInterval.exact(tail, bits), evaluate_bound(kind, params, sharp=sharp, precision_bits=bits)),
        relation,
        config.policy,
    )
    print(f"interval: {_interval_text(cert.right)}")
    print(f"tail: {_exact_line(tail)}")
    print(f"verdict: {cert.verdict}")
    return _verdict_status(cert.verdict)


POISSON_QUANTITIES = ("pmf:k", "tail:k", "mad", "tce:k", "bound", "tce-check", "median-check", "stirling")


def cmd_poisson(args) -> int:
    config = _config(args)
    params = PoissonParams(args.lam, args.epsilon)
    name, k = _split_quantity(args.quantity)
    simple = {"pmf": poisson_pmf, "tail": poisson_tail, "tce": poisson_tce}
    if name in simple:
        if k is None:
            raise DomainError(f"{name} needs an index, e.g. {name}:1")
        print(f"interval: {_interval_text(simple[name](params, k))}")
        return EXIT_OK
    if k is not None:
        raise DomainError(f"{name} takes no index")
    if name == "mad":
        print(f"interval: {_interval_text(poisson_mad(params))}")
        return EXIT_OK
    if name == "bound":
        cert = certify_theorem_bound(params, config.policy)
        print(f"interval: {_interval_text(cert.right)}")
        print(f"tail: {_interval_text(cert.left)} (k={params.exceedance_index})")
    elif name == "tce-check":
        cert = certify_integer_mean_tce(params.lam, config.policy)
        print(f"tce: {_interval_text(cert.left)}")
        print(f"interval: {_interval_text(cert.right)}")
    elif name == "median-check":
        cert = certify_integer_mean_median(params.lam, config.policy)
        print(f"tail: {_interval_text(cert.left)}")
    elif name == "stirling":
        if not params.lambda_is_integer:
            raise DomainError(f"stirling needs an integer lambda, got {params.lam}")
        cert = certify_stirling(params.lam.numerator, config.policy)
        print(f"lhs: {_interval_text(cert.left)}")
    else:
        raise DomainError(f"unknown quantity {args.quantity!r}; choose from {', '.join(POISSON_QUANTITIES)}")
    print(f"verdict: {cert.verdict}")
    return _verdict_status(cert.verdict)


def _grid_from_args(args, config: CliConfig) -> GridSpec:
    if args.lambda_grid:
        lams = tuple(parse_rational(x) for x in args.lambda_grid.split(",") if x.strip())
    else:
        lams = lambda_grid(args.lambda_den_cap, args.lambda_max)
    return GridSpec(
        n_min=args.n_min,
        n_max=args.n_max,
        p_den_cap=args.p_den_cap,
        lambda_grid=lams,
        stirling_max=args.stirling_max,
        policy=config.policy,
    )


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def cmd_sweep(args) -> int:
    config = _config(args)
    try:
        grid = _grid_from_args(args, config)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    result = run_claim_sweep(grid, args.claim, jobs=args.jobs)
    with _output(config.output_path) as out:
        if config.output_format == "csv":
            write_csv(result.records, out, digits=args.digits)
        else:
            for r in result.records:
                row = record_row(r, digits=args.digits or 12)
                out.write(f"{row[0]:<20} n={row[1]:<4} {row[8]:<9} {row[2]:<12} {row[6]:<15} margin={row[7]}\n")
    for line in result.summary.lines():
        print(line, file=sys.stderr)
    return exit_status(result.summary)


def cmd_orders(args) -> int:
    left, right = BinomialParams(args.n, args.p), BinomialParams(args.n, args.q)
    reports = [check_likelihood_ratio_order(left, right), check_hazard_rate_order(left, right)]
    if args.include_zero:
        reports.append(check_hazard_rate_order(left, right, include_zero=True))
    labels = ["likelihood-ratio", "hazard-rate", "hazard-rate (k>=0)"]
    for label, rep in zip(labels, reports):
        status = "holds" if rep.holds else f"fails (witness k={rep.witness_k})"
        print(f"{label}: {status}")
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATED


def cmd_explore_pb(args) -> int:
    result = explore_mad_ratio(args.max_len, args.den_cap, args.perturbation_depth)
    with _output(args.output) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["row", "probs", "mad", "variance", "ratio_squared", "ratio", "ratio_ge_1"])

        def emit(tag, row):
            ratio = row.ratio(96)
            writer.writerow(
                [
                    tag,
                    " ".join(format_fraction(p) for p in row.probs),
                    format_fraction(row.mad),
                    format_fraction(row.variance),
                    format_fraction(row.ratio_squared),
                    format_enclosure(ratio.lo, ratio.hi, 12),
                    "true" if row.at_least_one else "false",
                ]
            )

        for row in result.rows:
            emit("data", row)
        emit("minimum", result.minimum)
    print("exploratory output: no bound is claimed", file=sys.stderr)
    return EXIT_OK


def cmd_claims(args) -> int:
    for cid in catalog_ids():
        c = CATALOG[cid]
        print(f"{cid:<20} {c.family:<13} {c.anchor:<40} {c.description}")
    return EXIT_OK


# parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="binotail", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def precision(p):
        p.add_argument("--precision-bits", type=int, default=DEFAULT_BITS)
        p.add_argument("--precision-cap-bits", type=int, default=DEFAULT_CAP_BITS)

    p = sub.add_parser("exact", help="exact binomial functional")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_rational_arg, required=True, help="a/b or an exact decimal")
    p.add_argument("--quantity", required=True, help=", ".join(EXACT_QUANTITIES))
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bound", help="certified lower bound against the exact tail")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_rational_arg, required=True)
    p.add_argument("--kind", required=True, choices=[*BOUND_KINDS, "tce-int"])
    p.add_argument("--sharp", action="store_true", help="theorem1 only: use v + 1 - 2p under the root")
    precision(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("poisson", help="certified Poisson functional or claim")
    p.add_argument("--lambda", dest="lam", type=_rational_arg, required=True)
    p.add_argument("--quantity", required=True, help=", ".join(POISSON_QUANTITIES))
    p.add_argument("--epsilon", type=_rational_arg, default=Fraction(1, 2**64))
    precision(p)
    p.set_defaults(func=cmd_poisson)

    p = sub.add_parser("sweep", help="grid sweep of one claim or ALL, as CSV")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--p-den-cap", type=int, default=24)
    p.add_argument("--lambda-grid", default=None, help="comma-separated rationals; overrides the generated grid")
    p.add_argument("--lambda-den-cap", type=int, default=6)
    p.add_argument("--lambda-max", type=_rational_arg, default=Fraction(12))
    p.add_argument("--stirling-max", type=int, default=200)
    p.add_argument("--claim", default="ALL")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "plain"), default="csv")
    p.add_argument("--digits", type=int, default=None, help="compact rendering at this many significant digits")
    p.add_argument("--jobs", type=int, default=1)
    precision(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("orders", help="likelihood-ratio and hazard-rate order of Bin(n,p) vs Bin(n,q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_rational_arg, required=True)
    p.add_argument("--q", type=_rational_arg, required=True)
    p.add_argument("--include-zero", action="store_true")
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser("explore-pb", help="exploratory MAD ratio search over Poisson-binomial laws")
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--den-cap", type=int, default=6)
    p.add_argument("--perturbation-depth", type=int, default=6)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_explore_pb)

    p = sub.add_parser("claims", help="list the claim catalog")
    p.set_defaults(func=cmd_claims)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, PrecisionExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
