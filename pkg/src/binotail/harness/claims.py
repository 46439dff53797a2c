"""Catalog of machine-checkable claims and the grid sweep driver.

Each claim evaluates one grid point (a binomial law, a pair of laws, a
Poisson mean, ...) and returns one or more :class:`VerificationRecord`.
Points outside a claim's hypothesis are recorded as DOMAIN_SKIPPED.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable

from ..binomial import BinomialLaw, BinomialParams, tce_factorized
from ..bounds import (
    QUARTER,
    Ordering,
    theorem1_bound,
    tce_upper_bound_integer_mean,
    verify_quarter_threshold,
)
from ..errors import DomainError
from ..interval import PrecisionPolicy, ProbInterval, Relation, Verdict, certify, interval_sqrt
from ..orders import (
    check_hazard_rate_order,
    check_likelihood_ratio_order,
    check_tce_monotone_in_p,
    conditional_tail_dominance,
    MonotonicityViolation,
)
from .. import poisson as poi
from .grid import GridSpec
from .poibin import poisson_binomial_weights
from .records import OrderPair, StirlingPoint, SweepSummary, TceMonotoneCase, VerificationRecord, summarize

HALF = Fraction(1, 2)


class UnknownClaimError(DomainError):
    pass


@dataclass(frozen=True)
class Claim:
    claim_id: str
    family: str  # binomial | pair | tce-monotone | poisson | stirling
    anchor: str
    description: str
    check: Callable


CATALOG: dict[str, Claim] = {}


def claim(claim_id: str, family: str, anchor: str, description: str):
    def register(fn):
        CATALOG[claim_id] = Claim(claim_id, family, anchor, description, fn)
        return fn

    return register


def _exact(claim_id, params, left: Fraction, right: Fraction, relation: Relation, note="") -> VerificationRecord:
    cert = certify(lambda bits: (ProbInterval.exact(left, bits), ProbInterval.exact(right, bits)), relation)
    return VerificationRecord.from_certificate(claim_id, params, cert, exact=left, note=note)


# binomial point claims ------------------------------------------------------------


def _theorem1(claim_id: str, sharp: bool):
    def check(law: BinomialLaw, policy: PrecisionPolicy):
        params = law.params
        if not params.in_core_domain:
            return [VerificationRecord.skipped(claim_id, params)]
        tail = law.mean_exceedance_prob()
        cert = certify(
            lambda bits: (ProbInterval.exact(tail, bits), theorem1_bound(params, sharp, bits)),
            Relation.GE,
            policy,
        )
        return [VerificationRecord.from_certificate(claim_id, params, cert, exact=tail)]

    return check


claim(
    "THM1_RELAXED",
    "binomial",
    "main theorem",
    "P[X >= np] >= sqrt(v)/(2 sqrt2 (1 + sqrt(v+1))) on the core domain",
)(_theorem1("THM1_RELAXED", sharp=False))
claim(
    "THM1_SHARP",
    "binomial",
    "main theorem before the final relaxation",
    "P[X >= np] >= sqrt(v)/(2 sqrt2 (1 + sqrt(v+1-2p))) on the core domain",
)(_theorem1("THM1_SHARP", sharp=True))


@claim("GM_EQ2", "binomial", "Greenberg-Mohri constant bound", "P[X >= np] > 1/4 strictly when p >= 1/n")
def _gm(law, policy):
    params = law.params
    if params.p < Fraction(1, params.n):
        return [VerificationRecord.skipped("GM_EQ2", params)]
    return [_exact("GM_EQ2", params, law.mean_exceedance_prob(), QUARTER, Relation.GT)]


@claim("RT_EQ3", "binomial", "Rigollet-Tong bound", "P[X >= np] >= min(p, 1/4) when p <= 1/2")
def _rt(law, policy):
    params = law.params
    if params.p > HALF:
        return [VerificationRecord.skipped("RT_EQ3", params)]
    return [_exact("RT_EQ3", params, law.mean_exceedance_prob(), min(params.p, QUARTER), Relation.GE)]


def _veraar_value(law: BinomialLaw) -> Fraction:
    m = law.mad()
    return m * m / (4 * law.params.variance)


@claim("VERAAR_EQ1", "binomial", "Cauchy-Schwarz moment bound", "P[X >= np] >= (1/4) mad^2 / variance")
def _veraar(law, policy):
    return [_exact("VERAAR_EQ1", law.params, law.mean_exceedance_prob(), _veraar_value(law), Relation.GE)]


@claim(
    "VERAAR_QUARTER",
    "binomial",
    "moment bound never exceeds 1/4",
    "(1/4) mad^2 / variance <= 1/4; equality points are logged with note 'equality'",
)
def _veraar_quarter(law, policy):
    value = _veraar_value(law)
    note = "equality" if value == QUARTER else ""
    return [_exact("VERAAR_QUARTER", law.params, value, QUARTER, Relation.LE, note)]


@claim("KAAS_MEDIAN", "binomial", "Kaas-Buhrman median bound", "P[X >= floor(np)] >= 1/2")
def _kaas(law, policy):
    params = law.params
    return [_exact("KAAS_MEDIAN", params, law.tail(floor(params.mean)), HALF, Relation.GE)]


@claim("LEMMA_MEDIAN_INT", "binomial", "median at an integer mean", "P[X >= np] > 1/2 when np is an integer")
def _lemma_median(law, policy):
    params = law.params
    if not params.np_is_integer:
        return [VerificationRecord.skipped("LEMMA_MEDIAN_INT", params)]
    return [_exact("LEMMA_MEDIAN_INT", params, law.mean_exceedance_prob(), HALF, Relation.GT)]


@claim("LEMMA_TCE_INT", "binomial", "TCE bound at an integer mean", "E[X | X >= np] < np + sqrt(v) when np is an integer")
def _lemma_tce(law, policy):
    params = law.params
    if not params.np_is_integer:
        return [VerificationRecord.skipped("LEMMA_TCE_INT", params)]
    value = law.tce(params.mean.numerator)
    cert = certify(
        lambda bits: (ProbInterval.exact(value, bits), tce_upper_bound_integer_mean(params, bits)),
        Relation.LT,
        policy,
    )
    return [VerificationRecord.from_certificate("LEMMA_TCE_INT", params, cert, exact=value)]


@claim("LEMMA_MAD_LB", "binomial", "Berend-Kontorovich MAD lower bound", "mad^2 >= v/2 on the core domain")
def _lemma_mad_lb(law, policy):
    params = law.params
    if not params.in_core_domain:
        return [VerificationRecord.skipped("LEMMA_MAD_LB", params)]
    m = law.mad()
    return [_exact("LEMMA_MAD_LB", params, m * m, params.variance / 2, Relation.GE)]


@claim("LEMMA_MAD_CS", "binomial", "MAD at most the standard deviation", "mad^2 <= v")
def _lemma_mad_cs(law, policy):
    m = law.mad()
    return [_exact("LEMMA_MAD_CS", law.params, m * m, law.params.variance, Relation.LE)]


@claim("IDENTITY_4", "binomial", "MAD / tail / TCE identity", "mad/2 = P[X >= np] (E[X | X >= np] - np), exactly")
def _identity(law, policy):
    params = law.params
    idx = params.exceedance_index
    rhs = law.mean_exceedance_prob() * (law.tce(idx) - params.mean)
    return [_exact("IDENTITY_4", params, law.mad() / 2, rhs, Relation.EQ)]


@claim("POSITIVE_PART", "binomial", "positive part equals half the MAD", "E[max(0, X - np)] = mad/2, exactly")
def _positive_part(law, policy):
    params = law.params
    return [_exact("POSITIVE_PART", params, law.positive_part_mean(params.mean), law.mad() / 2, Relation.EQ)]


@claim(
    "TCE_FACTORIZATION",
    "binomial",
    "artifact cross-check",
    "direct-sum TCE equals n p P[Bin(n-1,p) >= k-1] / P[X >= k] at k = exceedance index",
)
def _tce_factorization(law, policy):
    params = law.params
    idx = params.exceedance_index
    return [_exact("TCE_FACTORIZATION", params, law.tce(idx), tce_factorized(params, idx), Relation.EQ)]


@claim(
    "QUARTER_THRESHOLD",
    "binomial",
    "main bound crosses 1/4 at variance 8",
    "relaxed main bound is >, =, < 1/4 exactly as np(1-p) is >, =, < 8",
)
def _quarter(law, policy):
    params = law.params
    if not params.in_core_domain:
        return [VerificationRecord.skipped("QUARTER_THRESHOLD", params)]
    ordering, cert = verify_quarter_threshold(params, policy)
    rec = VerificationRecord(
        "QUARTER_THRESHOLD",
        params,
        cert.verdict,
        value=cert.left,
        bound=cert.right,
        margin=None if ordering is Ordering.EQUAL or cert.verdict is not Verdict.PROVEN else cert.margin,
        note=ordering.name,
    )
    return [rec]


def proof_chain_audit(params: BinomialParams, policy: PrecisionPolicy = PrecisionPolicy()) -> list[VerificationRecord]:
    """Check every link of the main-bound argument at a non-integer-mean core point.

    A: P[X >= np] = (mad/2) / (E[X | X >= k+1] - np), exactly
    B: (mad/2)/(T - np) >= sqrt(v/2)/(2 (T - np))   (MAD lower bound)
    C: E[X | X >= k+1] <= E[Y | Y >= k+1] with Y ~ Bin(n, (k+1)/n)
    D: E[Y | Y >= k+1] < (k+1) + sqrt((k+1)(1 - (k+1)/n))
    E: d + sqrt((k+1)(1 - (k+1)/n)) <= 1 + sqrt(v + 1 - 2p), where d = ceil(np) - np
       and (k+1)(1 - (k+1)/n) = v + d(1 - 2p) - d^2/n exactly
    F: sharp bound >= relaxed bound
    """
    if not params.in_core_domain:
        raise DomainError(f"proof chain requires the core domain; got n={params.n}, p={params.p}")
    if params.np_is_integer:
        raise DomainError(f"proof chain covers non-integer np only; got np={params.mean}")
    law = BinomialLaw(params)
    n, p, v, mu = params.n, params.p, params.variance, params.mean
    c = params.exceedance_index
    d = c - mu
    q = Fraction(c, n)
    shifted = BinomialLaw(BinomialParams(n, q))
    tail = law.mean_exceedance_prob()
    t_p = law.tce(c)
    t_q = shifted.tce(c)
    half_mad = law.mad() / 2
    records = []

    records.append(_exact("PROOF_CHAIN_A", params, tail, half_mad / (t_p - mu), Relation.EQ))

    cert = certify(
        lambda bits: (
            ProbInterval.exact(half_mad / (t_p - mu), bits),
            interval_sqrt(ProbInterval.exact(v / 8, bits)) / (t_p - mu),
        ),
        Relation.GE,
        policy,
    )
    records.append(VerificationRecord.from_certificate("PROOF_CHAIN_B", params, cert, exact=half_mad / (t_p - mu)))

    records.append(_exact("PROOF_CHAIN_C", params, t_p, t_q, Relation.LE, note=f"q={q}"))

    y_var = c * (1 - q)
    cert = certify(
        lambda bits: (ProbInterval.exact(t_q, bits), c + interval_sqrt(ProbInterval.exact(y_var, bits))),
        Relation.LT,
        policy,
    )
    records.append(VerificationRecord.from_certificate("PROOF_CHAIN_D", params, cert, exact=t_q))

    if y_var != v + d * (1 - 2 * p) - d * d / n:
        records.append(VerificationRecord("PROOF_CHAIN_E", params, Verdict.VIOLATED, note="ceil-complement identity fails"))
    else:
        cert = certify(
            lambda bits: (
                d + interval_sqrt(ProbInterval.exact(y_var, bits)),
                1 + interval_sqrt(ProbInterval.exact(v + 1 - 2 * p, bits)),
            ),
            Relation.LE,
            policy,
        )
        records.append(VerificationRecord.from_certificate("PROOF_CHAIN_E", params, cert, note=f"d={d}"))

    cert = certify(
        lambda bits: (theorem1_bound(params, True, bits), theorem1_bound(params, False, bits)),
        Relation.GE,
        policy,
    )
    records.append(VerificationRecord.from_certificate("PROOF_CHAIN_F", params, cert))
    return records


@claim("PROOF_CHAIN", "binomial", "main theorem, every inequality link", "links A-F of the main-bound argument at non-integer np")
def _proof_chain(law, policy):
    params = law.params
    if not params.in_core_domain or params.np_is_integer:
        return [VerificationRecord.skipped("PROOF_CHAIN", params)]
    return proof_chain_audit(params, policy)


@claim("PB_HOMOGENEOUS", "binomial", "artifact cross-check", "Poisson-binomial law with equal p_i equals Bin(n, p)")
def _pb_homogeneous(law, policy):
    params = law.params
    # both tables share the scale b**n for p = a/b, so integer weights compare exactly
    weights, scale = poisson_binomial_weights([params.p] * params.n)
    same = scale == law.scale and weights == tuple(law.weights)
    return [VerificationRecord("PB_HOMOGENEOUS", params, Verdict.PROVEN if same else Verdict.VIOLATED, margin=Fraction(0) if same else None)]


# pair claims ----------------------------------------------------------------------


def _order_record(claim_id, pair, report):
    if report.holds:
        return VerificationRecord(claim_id, pair, Verdict.PROVEN)
    return VerificationRecord(claim_id, pair, Verdict.VIOLATED, note=f"witness k={report.witness_k}")


@claim("ORDER_LR", "pair", "likelihood ratio order", "Bin(n,p) <=_lr Bin(n,q) for p < q")
def _order_lr(left, right, policy):
    return [_order_record("ORDER_LR", OrderPair(left, right), check_likelihood_ratio_order(left, right))]


@claim("ORDER_HR", "pair", "hazard rate order", "Bin(n,p) <=_hr Bin(n,q) for p < q, k in [1, n-1]")
def _order_hr(left, right, policy):
    return [_order_record("ORDER_HR", OrderPair(left, right), check_hazard_rate_order(left, right))]


@claim("ORDER_HR_K0", "pair", "hazard rate order, extended", "hazard-rate inequality also at k = 0 (reported separately)")
def _order_hr_k0(left, right, policy):
    return [_order_record("ORDER_HR_K0", OrderPair(left, right), check_hazard_rate_order(left, right, include_zero=True))]


@claim("ORDER_LR_IMPLIES_HR", "pair", "lr implies hr", "whenever lr order holds, hr order holds")
def _order_implication(left, right, policy):
    pair = OrderPair(left, right)
    lr = check_likelihood_ratio_order(left, right)
    hr = check_hazard_rate_order(left, right)
    if lr.holds and not hr.holds:
        return [VerificationRecord("ORDER_LR_IMPLIES_HR", pair, Verdict.VIOLATED, note=f"hr witness k={hr.witness_k}")]
    return [VerificationRecord("ORDER_LR_IMPLIES_HR", pair, Verdict.PROVEN, note="" if lr.holds else "lr fails; vacuous")]


@claim(
    "COND_TAIL",
    "pair",
    "conditional tails increase in p",
    "P[X_p >= k+t | X_p >= k] <= P[X_q >= k+t | X_q >= k] for all k, t",
)
def _cond_tail(left, right, policy):
    pair = OrderPair(left, right)
    witness = conditional_tail_dominance(left, right)
    if witness is None:
        return [VerificationRecord("COND_TAIL", pair, Verdict.PROVEN)]
    return [VerificationRecord("COND_TAIL", pair, Verdict.VIOLATED, note=f"witness k={witness[0]} t={witness[1]}")]


@claim("TCE_MONOTONE", "tce-monotone", "TCE increases in p", "E[X_p | X_p >= k] non-decreasing in p, each k in [0, n]")
def _tce_monotone(n, k, p_grid, policy):
    case = TceMonotoneCase(n, k)
    try:
        values = check_tce_monotone_in_p(n, k, p_grid)
    except MonotonicityViolation as exc:
        return [VerificationRecord("TCE_MONOTONE", case, Verdict.VIOLATED, note=str(exc))]
    gaps = [b[1] - a[1] for a, b in zip(values, values[1:])]
    return [VerificationRecord("TCE_MONOTONE", case, Verdict.PROVEN, margin=min(gaps) if gaps else None)]


# poisson claims ---------------------------------------------------------------------


@claim("POI_THM_S3", "poisson", "Poisson mean-exceedance bound", "P[P >= lam] >= 2 e^-(lam - floor(lam) + 1) sqrt(lam)/(1 + sqrt(lam+1))")
def _poi_thm(params, policy):
    return [VerificationRecord.from_certificate("POI_THM_S3", params, poi.certify_theorem_bound(params, policy))]


def _consistency(claim_id, params, first: ProbInterval, second: ProbInterval, note=""):
    verdict = Verdict.PROVEN if first.intersects(second) else Verdict.VIOLATED
    return VerificationRecord(claim_id, params, verdict, value=first, bound=second, note=note)


@claim("POI_MAD_CLOSED", "poisson", "Poisson MAD closed form", "2 lam pmf(floor(lam)) meets the truncated direct sum of |k - lam| pmf(k)")
def _poi_mad(params, policy):
    bits = policy.bits
    return [_consistency("POI_MAD_CLOSED", params, poi.mad_at(params.lam, bits), poi.mad_direct_at(params.lam, bits))]


@claim("POI_TCE_ROUTES", "poisson", "artifact cross-check", "factorized and direct-sum Poisson TCE enclosures intersect at k = ceil(lam)")
def _poi_tce_routes(params, policy):
    bits, k = policy.bits, params.exceedance_index
    return [
        _consistency("POI_TCE_ROUTES", params, poi.tce_at(params.lam, k, bits), poi.tce_direct_at(params.lam, k, bits), note=f"k={k}")
    ]


@claim("POI_NORMALIZATION", "poisson", "artifact cross-check", "truncated mass sum plus remainder bound covers 1")
def _poi_norm(params, policy):
    iv = poi.normalization_at(params.lam, policy.bits)
    verdict = Verdict.PROVEN if iv.contains(1) else Verdict.VIOLATED
    return [VerificationRecord("POI_NORMALIZATION", params, verdict, value=iv, bound=ProbInterval.exact(1, policy.bits))]


@claim("POI_TCE_INT", "poisson", "Poisson TCE bound at an integer mean", "E[P | P >= lam] <= lam + sqrt(lam) for integer lam")
def _poi_tce_int(params, policy):
    if not params.lambda_is_integer:
        return [VerificationRecord.skipped("POI_TCE_INT", params)]
    return [VerificationRecord.from_certificate("POI_TCE_INT", params, poi.certify_integer_mean_tce(params.lam, policy))]


@claim("POI_MEDIAN_INT", "poisson", "Poisson median at an integer mean", "P[P >= lam] >= 1/2 for integer lam")
def _poi_median(params, policy):
    if not params.lambda_is_integer:
        return [VerificationRecord.skipped("POI_MEDIAN_INT", params)]
    return [VerificationRecord.from_certificate("POI_MEDIAN_INT", params, poi.certify_integer_mean_median(params.lam, policy))]


@claim("POI_TCE_STEP", "poisson", "Poisson TCE increases in the mean", "E[P_lam | P_lam >= k] <= E[P_k | P_k >= k], k = ceil(lam), non-integer lam")
def _poi_tce_step(params, policy):
    if params.lambda_is_integer:
        return [VerificationRecord.skipped("POI_TCE_STEP", params)]
    return [VerificationRecord.from_certificate("POI_TCE_STEP", params, poi.certify_tce_step(params, policy))]


@claim("POI_STIRLING", "stirling", "Stirling-type factorial bound", "m! <= e m^(m+1/2) e^-m")
def _poi_stirling(m, policy):
    return [VerificationRecord.from_certificate("POI_STIRLING", StirlingPoint(m), poi.certify_stirling(m, policy), note="(m! e^(m-1))^2 vs m^(2m+1)")]


# sweep driver -------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    records: tuple[VerificationRecord, ...]
    summary: SweepSummary


def catalog_ids() -> list[str]:
    return list(CATALOG)


def get_claim(claim_id: str) -> Claim:
    try:
        return CATALOG[claim_id]
    except KeyError:
        raise UnknownClaimError(f"unknown claim {claim_id!r}; catalog: {', '.join(CATALOG)}") from None


def _tasks(claim: Claim, grid: GridSpec) -> list:
    if claim.family == "binomial":
        return [(p.n, p.p) for p in grid.binomial_points()]
    if claim.family == "pair":
        return [(a.n, a.p, b.p) for a, b in grid.pairs()]
    if claim.family == "tce-monotone":
        return [(n, k) for n in grid.ns() for k in range(n + 1)]
    if claim.family == "poisson":
        return list(grid.lambda_grid)
    if claim.family == "stirling":
        return list(range(1, grid.stirling_max + 1))
    raise AssertionError(claim.family)


def _evaluate(claim_id: str, task, grid: GridSpec) -> list[VerificationRecord]:
    c = CATALOG[claim_id]
    policy = grid.policy
    if c.family == "binomial":
        return c.check(BinomialLaw(BinomialParams(*task)), policy)
    if c.family == "pair":
        n, p, q = task
        return c.check(BinomialParams(n, p), BinomialParams(n, q), policy)
    if c.family == "tce-monotone":
        return c.check(task[0], task[1], grid.p_values, policy)
    if c.family == "poisson":
        return c.check(poi.PoissonParams(task), policy)
    return c.check(task, policy)


def _evaluate_chunk(args) -> list[VerificationRecord]:
    claim_id, tasks, grid = args
    out = []
    for task in tasks:
        out.extend(_evaluate(claim_id, task, grid))
    return out


def run_claim_sweep(grid: GridSpec, claim_id: str, jobs: int = 1) -> SweepResult:
    """Evaluate one claim (or "ALL") over the grid in deterministic order."""
    ids = catalog_ids() if claim_id == "ALL" else [get_claim(claim_id).claim_id]
    records: list[VerificationRecord] = []
    for cid in ids:
        tasks = _tasks(CATALOG[cid], grid)
        if jobs <= 1 or len(tasks) < 2:
            records.extend(_evaluate_chunk((cid, tasks, grid)))
            continue
        size = max(1, len(tasks) // (jobs * 8))
        chunks = [(cid, tasks[i : i + size], grid) for i in range(0, len(tasks), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_evaluate_chunk, chunks):
                records.extend(part)
    return SweepResult(tuple(records), summarize(records))
