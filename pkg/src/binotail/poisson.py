"""Certified enclosures of Poisson tail functionals.

Every Poisson quantity here is ``e**-lam`` times an exact rational, so each
enclosure costs one exponential enclosure plus exact rational sums.  The
``*_at`` functions evaluate at a fixed working precision (used by the
certification loop); the public functions refine until the enclosure width
is at most ``params.epsilon``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial, floor
from typing import Callable

from .errors import DomainError, PrecisionExhausted
from .interval import (
    DEFAULT_CAP_BITS,
    Certificate,
    PrecisionPolicy,
    ProbInterval,
    Relation,
    Verdict,
    certify,
    exp_interval,
    interval_sqrt,
)
from .rational import to_rational

DEFAULT_EPSILON = Fraction(1, 2**64)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PoissonParams:
    lam: Fraction
    epsilon: Fraction = field(default=DEFAULT_EPSILON)

    def __post_init__(self):
        lam, eps = to_rational(self.lam), to_rational(self.epsilon)
        if lam <= 0:
            raise DomainError(f"lambda must be positive, got {lam}")
        if eps <= 0:
            raise DomainError(f"epsilon must be positive, got {eps}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "epsilon", eps)

    @property
    def lambda_is_integer(self) -> bool:
        return self.lam.denominator == 1

    @property
    def floor(self) -> int:
        return floor(self.lam)

    @property
    def ceil(self) -> int:
        return ceil(self.lam)

    @property
    def exceedance_index(self) -> int:
        """Integer k with {P >= lam} = {P >= k}."""
        return self.ceil


def _power_over_factorial(lam: Fraction, k: int) -> Fraction:
    return lam**k / factorial(k)


def _partial_exp_sum(lam: Fraction, k: int) -> Fraction:
    """sum_{j < k} lam**j / j!, exactly."""
    total = Fraction(0)
    term = Fraction(1)
    for j in range(k):
        total += term
        term = term * lam / (j + 1)
    return total


def truncation_index(lam: Fraction) -> int:
    """K = ceil(4 lam) + 40; beyond K successive masses shrink by at least 1/2."""
    return ceil(4 * lam) + 40


def _start_bits(epsilon: Fraction) -> int:
    return max(64, (epsilon.denominator // epsilon.numerator).bit_length() + 16)


def refine(compute: Callable[[int], ProbInterval], epsilon: Fraction, cap_bits: int = DEFAULT_CAP_BITS) -> ProbInterval:
    """Evaluate ``compute`` at doubling precision until its width is <= epsilon."""
    bits = _start_bits(epsilon)
    while True:
        iv = compute(bits)
        if iv.width <= epsilon:
            return iv
        if bits >= cap_bits:
            raise PrecisionExhausted(f"width {float(iv.width):.3g} > epsilon after {bits} bits")
        bits = min(2 * bits, cap_bits)


# fixed-precision evaluators --------------------------------------------------


def pmf_at(lam: Fraction, k: int, bits: int) -> ProbInterval:
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    return exp_interval(-lam, bits) * _power_over_factorial(lam, k)


def tail_at(lam: Fraction, k: int, bits: int) -> ProbInterval:
    if k <= 0:
        return ProbInterval.exact(1, bits)
    below = exp_interval(-lam, bits) * _partial_exp_sum(lam, k)
    return (1 - below).clamp(0, 1)


def mad_at(lam: Fraction, bits: int) -> ProbInterval:
    m = floor(lam)
    return exp_interval(-lam, bits) * (2 * lam * _power_over_factorial(lam, m))


def _truncated(lam: Fraction, weight, start: int, bits: int) -> ProbInterval:
    """sum_{j >= start} weight(j) P[P_lam = j] with a geometric tail bound.

    ``weight(j)`` must satisfy 0 <= weight(j) <= j for j > K.
    """
    big_k = truncation_index(lam)
    head = Fraction(0)
    term = _power_over_factorial(lam, start)
    for j in range(start, big_k + 1):
        head += weight(j) * term
        term = term * lam / (j + 1)
    e = exp_interval(-lam, bits)
    # sum_{j>K} j P[j] = lam P[P >= K] <= 2 lam P[K] <= 2 K P[K]  (K >= 2 lam)
    remainder = 2 * big_k * _power_over_factorial(lam, big_k)
    return e * head + ProbInterval(Fraction(0), remainder, bits) * e


def mad_direct_at(lam: Fraction, bits: int) -> ProbInterval:
    """Truncated direct sum of |j - lam| P[j] with a rigorous remainder."""
    return _truncated(lam, lambda j: abs(j - lam), 0, bits)


def normalization_at(lam: Fraction, bits: int) -> ProbInterval:
    """Truncated sum of the masses plus remainder; must cover 1."""
    return _truncated(lam, lambda j: 1, 0, bits)


def tce_at(lam: Fraction, k: int, bits: int) -> ProbInterval:
    """E[P | P >= k] via sum_{j>=k} j P[j] = lam P[P >= k-1]."""
    if k <= 0:
        return ProbInterval.exact(lam, bits)
    return lam * tail_at(lam, k - 1, bits) / tail_at(lam, k, bits)


def tce_direct_at(lam: Fraction, k: int, bits: int) -> ProbInterval:
    if k <= 0:
        return ProbInterval.exact(lam, bits)
    return _truncated(lam, lambda j: j, k, bits) / tail_at(lam, k, bits)


def theorem_bound_at(lam: Fraction, bits: int) -> ProbInterval:
    exponent = lam - floor(lam) + 1
    root = interval_sqrt(ProbInterval.exact(lam, bits))
    den = 1 + interval_sqrt(ProbInterval.exact(lam + 1, bits))
    return 2 * exp_interval(-exponent, bits) * root / den


# public operations -----------------------------------------------------------


def poisson_pmf(params: PoissonParams, k: int) -> ProbInterval:
    return refine(lambda bits: pmf_at(params.lam, k, bits), params.epsilon)


def poisson_tail(params: PoissonParams, k: int) -> ProbInterval:
    """P[P_lam >= k] as 1 minus the finite lower sum."""
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    return refine(lambda bits: tail_at(params.lam, k, bits), params.epsilon)


def poisson_mad(params: PoissonParams) -> ProbInterval:
    """E|P_lam - lam| = 2 lam e**-lam lam**m / m!, m = floor(lam)."""
    return refine(lambda bits: mad_at(params.lam, bits), params.epsilon)


def poisson_mad_direct(params: PoissonParams) -> ProbInterval:
    return refine(lambda bits: mad_direct_at(params.lam, bits), params.epsilon)


def poisson_tce(params: PoissonParams, k: int) -> ProbInterval:
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    return refine(lambda bits: tce_at(params.lam, k, bits), params.epsilon)


def poisson_tce_direct(params: PoissonParams, k: int) -> ProbInterval:
    return refine(lambda bits: tce_direct_at(params.lam, k, bits), params.epsilon)


def poisson_theorem_bound(params: PoissonParams, precision_bits: int | None = None) -> ProbInterval:
    """2 e**-(lam - floor(lam) + 1) sqrt(lam) / (1 + sqrt(lam + 1))."""
    if precision_bits is not None:
        return theorem_bound_at(params.lam, precision_bits)
    return refine(lambda bits: theorem_bound_at(params.lam, bits), params.epsilon)


# certified checks --------------------------------------------------------------


def _require_integer(lam) -> int:
    lam = to_rational(lam)
    if lam.denominator != 1 or lam < 1:
        raise DomainError(f"expected a positive integer mean, got {lam}")
    return lam.numerator


def certify_integer_mean_tce(lambda_int, policy: PrecisionPolicy = PrecisionPolicy()) -> Certificate:
    """E[P_m | P_m >= m] <= m + sqrt(m)."""
    m = _require_integer(lambda_int)
    lam = Fraction(m)
    return certify(
        lambda bits: (tce_at(lam, m, bits), m + interval_sqrt(ProbInterval.exact(m, bits))),
        Relation.LE,
        policy,
    )


def certify_integer_mean_median(lambda_int, policy: PrecisionPolicy = PrecisionPolicy()) -> Certificate:
    """P[P_m >= m] >= 1/2."""
    m = _require_integer(lambda_int)
    return certify(lambda bits: (tail_at(Fraction(m), m, bits), ProbInterval.exact(HALF, bits)), Relation.GE, policy)


def poisson_integer_mean_tce_check(lambda_int, epsilon=DEFAULT_EPSILON, cap_bits: int = DEFAULT_CAP_BITS) -> Verdict:
    """Verdict for the integer-mean TCE bound together with its median premise.

    PROVEN only when both are proven; VIOLATED if either is violated.
    """
    policy = PrecisionPolicy(min(_start_bits(to_rational(epsilon)), cap_bits), cap_bits)
    verdicts = {
        certify_integer_mean_tce(lambda_int, policy).verdict,
        certify_integer_mean_median(lambda_int, policy).verdict,
    }
    for v in (Verdict.VIOLATED, Verdict.INCONCLUSIVE):
        if v in verdicts:
            return v
    return Verdict.PROVEN


def certify_theorem_bound(params: PoissonParams, policy: PrecisionPolicy = PrecisionPolicy()) -> Certificate:
    """Tail at the exceedance index against the displayed lower bound."""
    k = params.exceedance_index
    lam = params.lam
    return certify(lambda bits: (tail_at(lam, k, bits), theorem_bound_at(lam, bits)), Relation.GE, policy)


def certify_tce_step(params: PoissonParams, policy: PrecisionPolicy = PrecisionPolicy()) -> Certificate:
    """E[P_lam | P_lam >= k] <= E[P_k | P_k >= k] with k = ceil(lam)."""
    k = params.ceil
    lam = params.lam
    return certify(lambda bits: (tce_at(lam, k, bits), tce_at(Fraction(k), k, bits)), Relation.LE, policy)


def certify_stirling(m: int, policy: PrecisionPolicy = PrecisionPolicy()) -> Certificate:
    """m! <= e m**(m + 1/2) e**-m, checked as (m! e**(m-1))**2 <= m**(2m+1)."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise DomainError(f"Stirling check needs a positive integer, got {m!r}")
    fact = factorial(m)
    rhs = m ** (2 * m + 1)

    def evaluate(bits):
        left = fact * exp_interval(m - 1, bits)
        return left * left, ProbInterval.exact(rhs, bits)

    return certify(evaluate, Relation.LE, policy)


def stirling_check(m: int, policy: PrecisionPolicy = PrecisionPolicy()) -> Verdict:
    return certify_stirling(m, policy).verdict
