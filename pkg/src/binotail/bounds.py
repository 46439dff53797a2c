"""Closed-form lower bounds on P[Bin(n, p) >= np], as certified enclosures.

Rational bounds come back as degenerate intervals.  Irrational ones are
evaluated with the variance ``v = np(1-p)`` formed exactly first, so the only
rounding happens at square roots and divisions.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .binomial import BinomialLaw, BinomialParams
from .errors import DomainError
from .interval import (
    DEFAULT_BITS,
    Certificate,
    PrecisionPolicy,
    ProbInterval,
    Relation,
    Verdict,
    certify,
    interval_sqrt,
)

QUARTER = Fraction(1, 4)
QUARTER_THRESHOLD = 8


class BoundKind(enum.Enum):
    VERAAR_EQ1 = "veraar"
    GREENBERG_MOHRI_EQ2 = "gm"
    RIGOLLET_TONG_EQ3 = "rt"
    THEOREM1 = "theorem1"
    THEOREM1_SHARP = "theorem1-sharp"
    POISSON_S3 = "poisson"

    def applies(self, params) -> bool:
        """Exact validity predicate for the bound at ``params``."""
        if self is BoundKind.POISSON_S3:
            return hasattr(params, "lam")
        if not isinstance(params, BinomialParams):
            return False
        if self is BoundKind.VERAAR_EQ1:
            return True
        if self is BoundKind.GREENBERG_MOHRI_EQ2:
            return params.p >= Fraction(1, params.n)
        if self is BoundKind.RIGOLLET_TONG_EQ3:
            return params.p <= Fraction(1, 2)
        return params.in_core_domain

    @property
    def strict(self) -> bool:
        return self is BoundKind.GREENBERG_MOHRI_EQ2


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def veraar_bound(params: BinomialParams, precision_bits: int = DEFAULT_BITS) -> ProbInterval:
    """(1/4) * mad**2 / variance, exact."""
    m = BinomialLaw(params).mad()
    return ProbInterval.exact(m * m / (4 * params.variance), precision_bits)


def greenberg_mohri_bound(params: BinomialParams, precision_bits: int = DEFAULT_BITS) -> ProbInterval:
    """The constant 1/4; the tail must exceed it strictly when p >= 1/n."""
    if not BoundKind.GREENBERG_MOHRI_EQ2.applies(params):
        raise DomainError(f"Greenberg-Mohri bound requires p >= 1/n; got n={params.n}, p={params.p}")
    return ProbInterval.exact(QUARTER, precision_bits)


def rigollet_tong_bound(params: BinomialParams, precision_bits: int = DEFAULT_BITS) -> ProbInterval:
    if not BoundKind.RIGOLLET_TONG_EQ3.applies(params):
        raise DomainError(f"Rigollet-Tong bound requires p <= 1/2; got p={params.p}")
    return ProbInterval.exact(min(params.p, QUARTER), precision_bits)


def _require_core(params: BinomialParams, what: str):
    if not params.in_core_domain:
        raise DomainError(
            f"{what} requires n >= 2 and 1/n <= p <= 1 - 1/n; got n={params.n}, p={params.p}"
        )


def theorem1_bound(
    params: BinomialParams, sharp: bool = False, precision_bits: int = DEFAULT_BITS
) -> ProbInterval:
    """sqrt(v) / (2 sqrt 2 (1 + sqrt(v + 1))), or with ``v + 1 - 2p`` when ``sharp``.

    The prefactor is folded into the numerator as sqrt(v/8), which keeps the
    value exact at v = 8.
    """
    _require_core(params, "main binomial bound")
    v = params.variance
    inner = v + 1 - 2 * params.p if sharp else v + 1
    num = interval_sqrt(ProbInterval.exact(v / 8, precision_bits))
    den = 1 + interval_sqrt(ProbInterval.exact(inner, precision_bits))
    return num / den


def quarter_function(x, precision_bits: int = DEFAULT_BITS) -> ProbInterval:
    """f(x) = sqrt(x) / (1 + sqrt(x + 1)) for rational x >= 0."""
    x = ProbInterval.exact(x, precision_bits)
    return interval_sqrt(x) / (1 + interval_sqrt(x + 1))


def quarter_threshold_check(params: BinomialParams) -> Ordering:
    """Exact comparison of np(1-p) against 8.

    Predicts whether the relaxed main bound lies above, at, or below 1/4.
    """
    _require_core(params, "quarter threshold check")
    v = params.variance
    if v > QUARTER_THRESHOLD:
        return Ordering.GREATER
    if v < QUARTER_THRESHOLD:
        return Ordering.LESS
    return Ordering.EQUAL


def verify_quarter_threshold(params: BinomialParams, policy: PrecisionPolicy = PrecisionPolicy()):
    """Certify the predicted ordering against the enclosure of the relaxed bound.

    Returns ``(ordering, certificate)``; the certificate's left side is the
    bound enclosure and its right side the constant 1/4.
    """
    ordering = quarter_threshold_check(params)
    relation = {Ordering.GREATER: Relation.GT, Ordering.LESS: Relation.LT, Ordering.EQUAL: Relation.EQ}[ordering]

    def evaluate(bits):
        return theorem1_bound(params, sharp=False, precision_bits=bits), ProbInterval.exact(QUARTER, bits)

    if ordering is Ordering.EQUAL:
        # equality cannot be separated by intervals; require enclosure of 1/4
        bound = theorem1_bound(params, sharp=False, precision_bits=policy.bits)
        verdict = Verdict.PROVEN if bound.contains(QUARTER) else Verdict.VIOLATED
        return ordering, Certificate(verdict, bound, ProbInterval.exact(QUARTER, policy.bits), relation, policy.bits)
    return ordering, certify(evaluate, relation, policy)


def tce_upper_bound_integer_mean(params: BinomialParams, precision_bits: int = DEFAULT_BITS) -> ProbInterval:
    """np + sqrt(np(1-p)) for integer np."""
    if not params.np_is_integer:
        raise DomainError(f"integer-mean TCE bound requires np to be an integer; got np={params.mean}")
    root = interval_sqrt(ProbInterval.exact(params.variance, precision_bits))
    return params.mean + root


def evaluate_bound(kind: BoundKind, params, sharp: bool = False, precision_bits: int = DEFAULT_BITS) -> ProbInterval:
    if kind is BoundKind.VERAAR_EQ1:
        return veraar_bound(params, precision_bits)
    if kind is BoundKind.GREENBERG_MOHRI_EQ2:
        return greenberg_mohri_bound(params, precision_bits)
    if kind is BoundKind.RIGOLLET_TONG_EQ3:
        return rigollet_tong_bound(params, precision_bits)
    if kind is BoundKind.THEOREM1:
        return theorem1_bound(params, sharp=sharp, precision_bits=precision_bits)
    if kind is BoundKind.THEOREM1_SHARP:
        return theorem1_bound(params, sharp=True, precision_bits=precision_bits)
    from .poisson import poisson_theorem_bound

    return poisson_theorem_bound(params, precision_bits)
