"""Exact binomial functionals.

All quantities are computed over the rationals.  For ``p = a/b`` the
probability mass at ``k`` is ``w_k / b**n`` with integer weights
``w_k = C(n, k) a**k (b - a)**(n - k)``; the weights are produced by the
running-product recurrence

    w_{k+1} = w_k * (n - k) * a / ((k + 1) * (b - a))

in exact integer arithmetic, so the expensive rational normalisation is done
only once per returned value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor

from .errors import DomainError, NullEventError
from .rational import to_rational

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BinomialParams:
    """Parameters of Bin(n, p) with ``p`` held as an exact rational in (0, 1)."""

    n: int
    p: Fraction

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        p = to_rational(self.p)
        if not 0 < p < 1:
            raise DomainError(f"p must lie in the open interval (0, 1), got {p}")
        object.__setattr__(self, "p", p)

    @property
    def mean(self) -> Fraction:
        return self.n * self.p

    @property
    def variance(self) -> Fraction:
        return self.n * self.p * (1 - self.p)

    @property
    def np_is_integer(self) -> bool:
        return self.mean.denominator == 1

    @property
    def in_core_domain(self) -> bool:
        """n >= 2 and 1/n <= p <= 1 - 1/n."""
        low = Fraction(1, self.n)
        return self.n >= 2 and low <= self.p <= 1 - low

    @property
    def exceedance_index(self) -> int:
        """Smallest integer k with {X >= np} = {X >= k}."""
        if self.np_is_integer:
            return self.mean.numerator
        return ceil(self.mean)


@dataclass(frozen=True)
class CeilDecomposition:
    value: Fraction
    ceil: int
    frac_complement: Fraction


def ceil_decompose(x) -> CeilDecomposition:
    """Split ``x > 0`` into its ceiling and the complement ``ceil(x) - x``."""
    x = to_rational(x)
    if x <= 0:
        raise DomainError(f"ceil_decompose requires x > 0, got {x}")
    c = ceil(x)
    return CeilDecomposition(value=x, ceil=c, frac_complement=c - x)


class BinomialLaw:
    """Immutable exact law of Bin(n, p).

    The weight table is built once per instance; the module-level functions
    build a fresh instance per call so that they stay pure.
    """

    def __init__(self, params: BinomialParams):
        self.params = params
        self.n = params.n
        self._a = params.p.numerator
        self._b = params.p.denominator

    @cached_property
    def weights(self) -> tuple[int, ...]:
        n, a, b = self.n, self._a, self._b
        c = b - a
        w = c**n
        out = [w]
        for k in range(n):
            w = w * (n - k) * a // ((k + 1) * c)
            out.append(w)
        return tuple(out)

    @cached_property
    def scale(self) -> int:
        return self._b**self.n

    @cached_property
    def _suffix(self) -> tuple[int, ...]:
        # _suffix[k] = sum_{j >= k} w_j, with a trailing zero at index n + 1
        acc = 0
        out = [0] * (self.n + 2)
        for k in range(self.n, -1, -1):
            acc += self.weights[k]
            out[k] = acc
        return tuple(out)

    @cached_property
    def _first_moment_suffix(self) -> tuple[int, ...]:
        acc = 0
        out = [0] * (self.n + 2)
        for k in range(self.n, -1, -1):
            acc += k * self.weights[k]
            out[k] = acc
        return tuple(out)

    def _clip(self, k: int) -> int:
        return min(max(k, 0), self.n + 1)

    def pmf(self, k: int) -> Fraction:
        if not 0 <= k <= self.n:
            raise DomainError(f"k must lie in [0, {self.n}], got {k}")
        return Fraction(self.weights[k], self.scale)

    def pmf_table(self) -> list[Fraction]:
        return [Fraction(w, self.scale) for w in self.weights]

    def tail(self, k: int) -> Fraction:
        return Fraction(self._suffix[self._clip(k)], self.scale)

    def upper_partial_mean(self, k: int) -> Fraction:
        """sum_{j >= k} j * P[X = j]."""
        return Fraction(self._first_moment_suffix[self._clip(k)], self.scale)

    def tce(self, k: int) -> Fraction:
        idx = self._clip(k)
        den = self._suffix[idx]
        if den == 0:
            raise NullEventError(f"P[X >= {k}] = 0 for n={self.n}; conditional mean undefined")
        return Fraction(self._first_moment_suffix[idx], den)

    def mean_exceedance_prob(self) -> Fraction:
        mu = self.params.mean
        if mu.denominator == 1:
            return self.tail(mu.numerator)
        # k < np < k + 1, so {X >= np} = {X >= k + 1}
        k = floor(mu)
        return self.tail(k + 1)

    def mad(self) -> Fraction:
        # |k - na/b| = |k b - n a| / b
        n, a, b = self.n, self._a, self._b
        na = n * a
        total = sum(abs(k * b - na) * w for k, w in enumerate(self.weights))
        return Fraction(total, b * self.scale)

    def positive_part_mean(self, threshold) -> Fraction:
        t = to_rational(threshold)
        total = Fraction(0)
        start = max(floor(t) + 1, 0)
        for k in range(start, self.n + 1):
            total += (k - t) * self.weights[k]
        return total / self.scale

    def median_lower_check(self) -> bool:
        return self.tail(floor(self.params.mean)) >= HALF


def pmf(params: BinomialParams, k: int) -> Fraction:
    return BinomialLaw(params).pmf(k)


def pmf_table(params: BinomialParams) -> list[Fraction]:
    return BinomialLaw(params).pmf_table()


def tail(params: BinomialParams, k: int) -> Fraction:
    """P[X >= k]; equals 1 for k <= 0 and 0 for k > n."""
    return BinomialLaw(params).tail(k)


def mean_exceedance_prob(params: BinomialParams) -> Fraction:
    """P[X >= np], decided exactly on whether np is an integer."""
    return BinomialLaw(params).mean_exceedance_prob()


def mad(params: BinomialParams) -> Fraction:
    """Mean absolute deviation E|X - np|."""
    return BinomialLaw(params).mad()


def positive_part_mean(params: BinomialParams, threshold) -> Fraction:
    """E[max(0, X - threshold)]."""
    return BinomialLaw(params).positive_part_mean(threshold)


def tce(params: BinomialParams, k: int) -> Fraction:
    """Tail conditional expectation E[X | X >= k] for an integer index ``k``.

    Raises :class:`NullEventError` when P[X >= k] = 0.
    """
    if isinstance(k, Fraction) or not isinstance(k, int):
        raise DomainError(f"tce takes an integer index, got {k!r}; pass np or ceil(np) explicitly")
    return BinomialLaw(params).tce(k)


def upper_partial_mean_factorized(params: BinomialParams, k: int) -> Fraction:
    """sum_{j >= k} j P[X = j] via the identity  n p P[Bin(n-1, p) >= k-1].

    An independent route to the numerator of :func:`tce`.
    """
    n, p = params.n, params.p
    if n == 1:
        shorter_tail = Fraction(1) if k - 1 <= 0 else Fraction(0)
    else:
        shorter_tail = tail(BinomialParams(n - 1, p), k - 1)
    return n * p * shorter_tail


def tce_factorized(params: BinomialParams, k: int) -> Fraction:
    den = tail(params, k)
    if den == 0:
        raise NullEventError(f"P[X >= {k}] = 0 for n={params.n}; conditional mean undefined")
    return upper_partial_mean_factorized(params, k) / den


def median_lower_check(params: BinomialParams) -> bool:
    """Whether P[X >= floor(np)] >= 1/2, i.e. floor(np) does not exceed a median."""
    return BinomialLaw(params).median_lower_check()
