"""Exact Poisson-binomial laws and an exploratory MAD search.

The explorer only reports the smallest ratio E|S - ES| / sqrt(Var S / 2) it
finds over a deterministic family of probability vectors.  It makes no claim
that any bound holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from math import lcm
from typing import Iterable

from ..errors import DomainError
from ..interval import ProbInterval, interval_sqrt
from ..rational import to_rational
from .grid import reduced_fractions

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PoissonBinomialLaw:
    probs: tuple[Fraction, ...]
    pmf_table: tuple[Fraction, ...]

    @property
    def mean(self) -> Fraction:
        return sum(self.probs, Fraction(0))

    @property
    def variance(self) -> Fraction:
        return sum((p * (1 - p) for p in self.probs), Fraction(0))

    @cached_property
    def mad(self) -> Fraction:
        mu = self.mean
        return sum((abs(k - mu) * w for k, w in enumerate(self.pmf_table)), Fraction(0))


def _checked(probs: Iterable) -> tuple[Fraction, ...]:
    ps = tuple(to_rational(p) for p in probs)
    if not ps:
        raise DomainError("need at least one success probability")
    for p in ps:
        if not 0 < p < 1:
            raise DomainError(f"every p_i must lie in (0, 1), got {p}")
    return ps


def poisson_binomial_weights(probs: Iterable) -> tuple[tuple[int, ...], int]:
    """Integer weights w_k and scale D**n with P[S = k] = w_k / D**n.

    D is the common denominator of the p_i; the Bernoulli laws are convolved
    as integer pairs (D - a_i, a_i).
    """
    ps = _checked(probs)
    den = lcm(*(p.denominator for p in ps))
    table = [1]
    for p in ps:
        a = p.numerator * (den // p.denominator)
        b = den - a
        nxt = [0] * (len(table) + 1)
        for k, w in enumerate(table):
            nxt[k] += w * b
            nxt[k + 1] += w * a
        table = nxt
    return tuple(table), den ** len(ps)


def poisson_binomial_pmf(probs: Iterable) -> PoissonBinomialLaw:
    """Law of a sum of independent Bernoulli(p_i), by sequential convolution."""
    ps = _checked(probs)
    weights, scale = poisson_binomial_weights(ps)
    return PoissonBinomialLaw(ps, tuple(Fraction(w, scale) for w in weights))


@dataclass(frozen=True)
class MadRatioRow:
    probs: tuple[Fraction, ...]
    mad: Fraction
    variance: Fraction
    ratio_squared: Fraction  # mad**2 / (variance / 2)

    @property
    def at_least_one(self) -> bool:
        return self.ratio_squared >= 1

    def ratio(self, bits: int = 64) -> ProbInterval:
        return interval_sqrt(ProbInterval.exact(self.ratio_squared, bits))


@dataclass(frozen=True)
class Exploration:
    rows: tuple[MadRatioRow, ...]

    @property
    def minimum(self) -> MadRatioRow:
        return min(self.rows, key=lambda r: (r.ratio_squared, len(r.probs), r.probs))


def probability_family(max_len: int, den_cap: int, perturbation_depth: int = 6) -> list[tuple[Fraction, ...]]:
    """Sorted vectors of reduced fractions plus perturbations of (1/2, 1/2).

    The law of a sum does not depend on the order of its terms, so vectors
    are enumerated as non-decreasing tuples.
    """
    grid = reduced_fractions(den_cap)
    seen = set()
    for length in range(1, max_len + 1):
        for combo in combinations_with_replacement(grid, length):
            seen.add(combo)
    for j in range(2, perturbation_depth + 2):
        d = Fraction(1, 2**j)
        for combo in ((HALF - d, HALF + d), (HALF, HALF + d), (HALF - d, HALF)):
            seen.add(tuple(sorted(combo)))
    return sorted(seen, key=lambda v: (len(v), v))


def explore_mad_ratio(max_len: int = 5, den_cap: int = 6, perturbation_depth: int = 6) -> Exploration:
    rows = []
    for probs in probability_family(max_len, den_cap, perturbation_depth):
        law = poisson_binomial_pmf(probs)
        v = law.variance
        rows.append(MadRatioRow(probs, law.mad, v, law.mad**2 / (v / 2)))
    return Exploration(tuple(rows))
