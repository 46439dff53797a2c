"""Likelihood-ratio and hazard-rate order between Bin(n, p) and Bin(n, q).

Every defining ratio inequality is checked in cross-multiplied form on the
integer weight tables, so no division happens and zero tails need no special
casing: an index where both sides vanish is satisfied trivially.  The weight
tables of the two laws differ from the true masses by positive constants,
which cancel in each cross-multiplied inequality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .binomial import BinomialLaw, BinomialParams
from .errors import DomainError, NullEventError


class OrderKind(enum.Enum):
    LIKELIHOOD_RATIO = "lr"
    HAZARD_RATE = "hr"


@dataclass(frozen=True)
class OrderCheckReport:
    left: BinomialParams
    right: BinomialParams
    order_kind: OrderKind
    holds: bool
    witness_k: int | None = None

    def __post_init__(self):
        if self.holds != (self.witness_k is None):
            raise ValueError("a report holds exactly when it carries no witness")


class MonotonicityViolation(AssertionError):
    """A tail conditional expectation decreased along an increasing p grid."""


def _check_pair(left: BinomialParams, right: BinomialParams):
    if left.n != right.n:
        raise DomainError(f"order checks need a common n; got {left.n} and {right.n}")
    if left.p > right.p:
        raise DomainError(f"expected left.p <= right.p; got {left.p} > {right.p}")


def check_likelihood_ratio_order(left: BinomialParams, right: BinomialParams) -> OrderCheckReport:
    """Whether P[X=k]/P[Y=k] is non-increasing in k, i.e. X <=_lr Y."""
    _check_pair(left, right)
    x, y = BinomialLaw(left).weights, BinomialLaw(right).weights
    for k in range(left.n):
        if x[k] * y[k + 1] < x[k + 1] * y[k]:
            return OrderCheckReport(left, right, OrderKind.LIKELIHOOD_RATIO, False, k)
    return OrderCheckReport(left, right, OrderKind.LIKELIHOOD_RATIO, True)


def _suffix(weights) -> list[int]:
    out = [0] * (len(weights) + 1)
    for k in range(len(weights) - 1, -1, -1):
        out[k] = out[k + 1] + weights[k]
    return out


def check_hazard_rate_order(
    left: BinomialParams, right: BinomialParams, include_zero: bool = False
) -> OrderCheckReport:
    """Whether P[X>=k]/P[X>=k+1] >= P[Y>=k]/P[Y>=k+1] for k in [1, n-1].

    ``include_zero`` adds the index k = 0, which the usual definition omits.
    """
    _check_pair(left, right)
    sx = _suffix(BinomialLaw(left).weights)
    sy = _suffix(BinomialLaw(right).weights)
    start = 0 if include_zero else 1
    for k in range(start, left.n):
        if sx[k] * sy[k + 1] < sx[k + 1] * sy[k]:
            return OrderCheckReport(left, right, OrderKind.HAZARD_RATE, False, k)
    return OrderCheckReport(left, right, OrderKind.HAZARD_RATE, True)


def conditional_tail_dominance(left: BinomialParams, right: BinomialParams) -> tuple[int, int] | None:
    """First (k, t) with P[X >= k+t | X >= k] > P[Y >= k+t | Y >= k], or None.

    Checks every 0 <= k <= n and 1 <= t <= n - k, cross-multiplied.
    """
    _check_pair(left, right)
    sx = _suffix(BinomialLaw(left).weights)
    sy = _suffix(BinomialLaw(right).weights)
    n = left.n
    for k in range(n + 1):
        for t in range(1, n - k + 1):
            if sx[k + t] * sy[k] > sy[k + t] * sx[k]:
                return k, t
    return None


def check_tce_monotone_in_p(n: int, k: int, p_grid) -> list[tuple[Fraction, Fraction]]:
    """(p, E[X_p | X_p >= k]) along a strictly increasing grid.

    Raises :class:`MonotonicityViolation` if the sequence ever decreases.
    """
    if not 0 <= k <= n:
        raise DomainError(f"k must lie in [0, {n}], got {k}")
    grid = [BinomialParams(n, p).p for p in p_grid]
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise DomainError("p_grid must be strictly increasing")
    out = []
    for p in grid:
        try:
            value = BinomialLaw(BinomialParams(n, p)).tce(k)
        except NullEventError as exc:
            raise NullEventError(f"null conditioning event at p={p}: {exc}") from exc
        if out and value < out[-1][1]:
            raise MonotonicityViolation(
                f"E[X | X >= {k}] decreased from {out[-1][1]} at p={out[-1][0]} to {value} at p={p} (n={n})"
            )
        out.append((p, value))
    return out
