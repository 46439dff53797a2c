"""Outward-rounded interval arithmetic on dyadic rationals.

A :class:`ProbInterval` encloses one real number.  Endpoints are Fractions;
every arithmetic step rounds the lower endpoint down and the upper endpoint
up to a multiple of ``2**-precision_bits``.  Exact rationals enter as
degenerate intervals and stay exact until the first rounding step.

Because the rounding grids for ``b`` and ``2b`` bits are nested and all
operations are inclusion-isotone, re-running a computation at higher
precision yields a nested (never wider) enclosure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable

from .errors import DomainError
from .rational import to_rational

DEFAULT_BITS = 128
DEFAULT_CAP_BITS = 2048


def _is_on_grid(q: Fraction, bits: int) -> bool:
    d = q.denominator
    return d & (d - 1) == 0 and d.bit_length() - 1 <= bits


def round_down(q: Fraction, bits: int) -> Fraction:
    if _is_on_grid(q, bits):
        return q
    return Fraction((q.numerator << bits) // q.denominator, 1 << bits)


def round_up(q: Fraction, bits: int) -> Fraction:
    if _is_on_grid(q, bits):
        return q
    return Fraction(-((-q.numerator << bits) // q.denominator), 1 << bits)


@dataclass(frozen=True)
class ProbInterval:
    lo: Fraction
    hi: Fraction
    precision_bits: int = DEFAULT_BITS

    def __post_init__(self):
        lo, hi = to_rational(self.lo), to_rational(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        if self.precision_bits < 1:
            raise ValueError("precision_bits must be positive")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def exact(cls, q, precision_bits: int = DEFAULT_BITS) -> "ProbInterval":
        q = to_rational(q)
        return cls(q, q, precision_bits)

    @classmethod
    def enclose(cls, lo, hi, precision_bits: int = DEFAULT_BITS) -> "ProbInterval":
        """Interval with ``lo`` rounded down and ``hi`` rounded up to the grid."""
        return cls(
            round_down(to_rational(lo), precision_bits),
            round_up(to_rational(hi), precision_bits),
            precision_bits,
        )

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, q) -> bool:
        q = to_rational(q)
        return self.lo <= q <= self.hi

    def intersects(self, other: "ProbInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def within(self, other: "ProbInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def at_precision(self, bits: int) -> "ProbInterval":
        return ProbInterval.enclose(self.lo, self.hi, bits)

    def clamp(self, lo, hi) -> "ProbInterval":
        """Intersect with a range known to contain the true value."""
        lo, hi = to_rational(lo), to_rational(hi)
        new_lo, new_hi = max(self.lo, lo), min(self.hi, hi)
        if new_lo > new_hi:
            raise ValueError(f"{self} does not meet [{lo}, {hi}]")
        return ProbInterval(new_lo, new_hi, self.precision_bits)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "ProbInterval":
        if isinstance(other, ProbInterval):
            return other
        return ProbInterval.exact(other, self.precision_bits)

    def _result(self, other: "ProbInterval", lo, hi) -> "ProbInterval":
        bits = max(self.precision_bits, other.precision_bits)
        return ProbInterval.enclose(lo, hi, bits)

    def __neg__(self):
        return ProbInterval(-self.hi, -self.lo, self.precision_bits)

    def __add__(self, other):
        o = self._coerce(other)
        return self._result(o, self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return self._result(o, self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.lo >= 0 and o.lo >= 0:
            return self._result(o, self.lo * o.lo, self.hi * o.hi)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return self._result(o, min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"divisor interval [{o.lo}, {o.hi}] contains zero")
        quotients = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return self._result(o, min(quotients), max(quotients))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are supported")
        if self.lo < 0:
            raise DomainError("power of an interval with a negative endpoint")
        result = ProbInterval.exact(1, self.precision_bits)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def sqrt(self) -> "ProbInterval":
        return interval_sqrt(self)

    def __repr__(self):
        return f"ProbInterval({float(self.lo)!r}..{float(self.hi)!r}, bits={self.precision_bits})"


def interval_sqrt(x: ProbInterval) -> ProbInterval:
    """Outward-rounded enclosure of [sqrt(lo), sqrt(hi)].

    Exact whenever an endpoint is the square of a dyadic on the grid.
    """
    if x.lo < 0:
        raise DomainError(f"square root of an interval with negative lower endpoint {x.lo}")
    bits = x.precision_bits
    scale = 1 << (2 * bits)
    lo_scaled = x.lo.numerator * scale // x.lo.denominator
    hi_scaled = -(-x.hi.numerator * scale // x.hi.denominator)
    lo_root = isqrt(lo_scaled)
    hi_root = isqrt(hi_scaled)
    if hi_root * hi_root < hi_scaled:
        hi_root += 1
    return ProbInterval(Fraction(lo_root, 1 << bits), Fraction(hi_root, 1 << bits), bits)


def _exp_series(num: int, den: int, work_bits: int) -> tuple[int, int]:
    """Fixed-point enclosure of exp(num/den) for 0 <= num/den <= 1.

    Returns integers (lo, hi) with lo <= exp(x) * 2**work_bits <= hi.  Terms
    are accumulated with floor (resp. ceiling) division; once the term ratio
    x/(j+1) is at most 1/2 the tail is bounded by twice the next term.
    """
    one = 1 << work_bits
    t_lo = t_hi = one
    s_lo = s_hi = 0
    j = 0
    while True:
        s_lo += t_lo
        s_hi += t_hi
        j += 1
        t_lo = t_lo * num // (den * j)
        t_hi = -(-t_hi * num // (den * j))
        if t_hi <= 1:
            s_hi += 2 * t_hi
            break
    return s_lo, s_hi


def exp_interval(x, precision_bits: int = DEFAULT_BITS) -> ProbInterval:
    """Certified enclosure of e**x for a rational ``x``."""
    x = to_rational(x)
    if x == 0:
        return ProbInterval.exact(1, precision_bits)
    if x < 0:
        return (1 / exp_interval(-x, precision_bits + 4)).at_precision(precision_bits)
    whole = x.numerator // x.denominator
    frac = x - whole
    # guard bits cover the growth of e**whole and the rounding of ~log2(whole) products
    work = precision_bits + 16 + 2 * whole.bit_length() + (3 * whole) // 2
    scale = Fraction(1, 1 << work)
    lo, hi = _exp_series(frac.numerator, frac.denominator, work)
    result = ProbInterval(lo * scale, hi * scale, work)
    if whole:
        e_lo, e_hi = _exp_series(1, 1, work)
        e = ProbInterval(e_lo * scale, e_hi * scale, work)
        result = result * e**whole
    return result.at_precision(precision_bits)


# certification ------------------------------------------------------------


class Verdict(enum.Enum):
    PROVEN = "PROVEN"
    VIOLATED = "VIOLATED"
    INCONCLUSIVE = "INCONCLUSIVE"
    DOMAIN_SKIPPED = "DOMAIN_SKIPPED"

    def __str__(self):
        return self.value


class Relation(enum.Enum):
    """Claimed relation ``left REL right`` between two enclosed reals."""

    GE = ">="
    GT = ">"
    LE = "<="
    LT = "<"
    EQ = "=="


def decide(left: ProbInterval, right: ProbInterval, relation: Relation) -> Verdict | None:
    """Verdict implied by the enclosures, or None when they cannot separate."""
    if relation is Relation.GE:
        if left.lo >= right.hi:
            return Verdict.PROVEN
        if left.hi < right.lo:
            return Verdict.VIOLATED
    elif relation is Relation.GT:
        if left.lo > right.hi:
            return Verdict.PROVEN
        if left.hi <= right.lo:
            return Verdict.VIOLATED
    elif relation is Relation.LE:
        if left.hi <= right.lo:
            return Verdict.PROVEN
        if left.lo > right.hi:
            return Verdict.VIOLATED
    elif relation is Relation.LT:
        if left.hi < right.lo:
            return Verdict.PROVEN
        if left.lo >= right.hi:
            return Verdict.VIOLATED
    else:
        if left.is_exact and right.is_exact and left.lo == right.lo:
            return Verdict.PROVEN
        if not left.intersects(right):
            return Verdict.VIOLATED
    return None


def margin(left: ProbInterval, right: ProbInterval, relation: Relation) -> Fraction:
    """Guaranteed slack of the relation; non-negative whenever it is proven."""
    if relation in (Relation.GE, Relation.GT):
        return left.lo - right.hi
    if relation in (Relation.LE, Relation.LT):
        return right.lo - left.hi
    return -abs(left.midpoint - right.midpoint)


@dataclass(frozen=True)
class PrecisionPolicy:
    bits: int = DEFAULT_BITS
    cap_bits: int = DEFAULT_CAP_BITS

    def __post_init__(self):
        if not 1 <= self.bits <= self.cap_bits:
            raise ValueError("need 1 <= precision bits <= precision cap")

    def schedule(self):
        bits = self.bits
        while True:
            yield bits
            if bits >= self.cap_bits:
                return
            bits = min(2 * bits, self.cap_bits)


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    left: ProbInterval
    right: ProbInterval
    relation: Relation
    bits: int

    @property
    def margin(self) -> Fraction:
        return margin(self.left, self.right, self.relation)


def certify(
    evaluate: Callable[[int], tuple[ProbInterval, ProbInterval]],
    relation: Relation,
    policy: PrecisionPolicy = PrecisionPolicy(),
) -> Certificate:
    """Decide ``left REL right``, doubling precision until the enclosures separate.

    ``evaluate(bits)`` returns the two enclosures at the given precision.  If
    the cap is reached without a decision the verdict is INCONCLUSIVE.
    """
    for bits in policy.schedule():
        left, right = evaluate(bits)
        verdict = decide(left, right, relation)
        if verdict is not None:
            return Certificate(verdict, left, right, relation, bits)
    return Certificate(Verdict.INCONCLUSIVE, left, right, relation, bits)
