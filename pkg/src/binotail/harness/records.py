"""Verification records, sweep summaries and the CSV report format."""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, TextIO

from ..binomial import BinomialParams
from ..interval import Certificate, ProbInterval, Verdict
from ..poisson import PoissonParams
from ..rational import format_bound, format_enclosure, format_rational

CSV_HEADER = ("claim_id", "n", "p", "exact", "bound_lo", "bound_hi", "verdict", "margin", "dist")


@dataclass(frozen=True)
class OrderPair:
    left: BinomialParams
    right: BinomialParams


@dataclass(frozen=True)
class TceMonotoneCase:
    n: int
    k: int


@dataclass(frozen=True)
class StirlingPoint:
    m: int


@dataclass(frozen=True)
class VerificationRecord:
    claim_id: str
    params: object
    verdict: Verdict
    exact: Fraction | None = None
    value: ProbInterval | None = None
    bound: ProbInterval | None = None
    margin: Fraction | None = None
    note: str = ""

    def __post_init__(self):
        if self.verdict is Verdict.PROVEN and self.margin is not None and self.margin < 0:
            raise ValueError(f"{self.claim_id}: proven record with negative margin {self.margin}")

    @classmethod
    def skipped(cls, claim_id: str, params) -> "VerificationRecord":
        return cls(claim_id, params, Verdict.DOMAIN_SKIPPED)

    @classmethod
    def from_certificate(cls, claim_id: str, params, cert: Certificate, exact=None, note="") -> "VerificationRecord":
        """Record whose claimed relation is ``cert.left REL cert.right``.

        The right side is reported as the bound; the left side as the exact
        value when one is given, otherwise as an enclosure.
        """
        value = None if exact is not None else cert.left
        return cls(claim_id, params, cert.verdict, exact, value, cert.right, cert.margin, note)

    @property
    def columns(self) -> tuple[str, str, str]:
        """(dist, n, point) columns for the report."""
        p = self.params
        if isinstance(p, BinomialParams):
            return "binomial", str(p.n), format_rational(p.p)
        if isinstance(p, PoissonParams):
            return "poisson", "", format_rational(p.lam)
        if isinstance(p, OrderPair):
            return "binomial", str(p.left.n), f"{format_rational(p.left.p)}<{format_rational(p.right.p)}"
        if isinstance(p, TceMonotoneCase):
            return "binomial", str(p.n), f"k={p.k}"
        if isinstance(p, StirlingPoint):
            return "stirling", str(p.m), ""
        if isinstance(p, tuple):
            return "poisson-binomial", str(len(p)), " ".join(format_rational(x) for x in p)
        return "", "", str(p)


@dataclass(frozen=True)
class SweepSummary:
    counts: dict
    min_margin: Fraction | None
    argmin: VerificationRecord | None

    @property
    def violated(self) -> int:
        return self.counts.get(Verdict.VIOLATED, 0)

    @property
    def inconclusive(self) -> int:
        return self.counts.get(Verdict.INCONCLUSIVE, 0)

    def lines(self) -> list[str]:
        parts = [f"{v.value}={self.counts.get(v, 0)}" for v in Verdict]
        out = ["summary: " + " ".join(parts)]
        if self.argmin is not None:
            dist, n, point = self.argmin.columns
            out.append(
                f"min margin: {format_enclosure(self.min_margin, self.min_margin, 12)} "
                f"at {self.argmin.claim_id} n={n} point={point} ({dist})"
            )
        return out


def summarize(records: Iterable[VerificationRecord]) -> SweepSummary:
    counts: Counter = Counter()
    best = None
    for r in records:
        counts[r.verdict] += 1
        if r.margin is None or r.verdict is Verdict.DOMAIN_SKIPPED:
            continue
        if best is None or r.margin < best.margin:
            best = r
    return SweepSummary(dict(counts), None if best is None else best.margin, best)


def exit_status(summary: SweepSummary) -> int:
    """0 all proven/skipped, 2 any violation, 3 inconclusive without violation."""
    if summary.violated:
        return 2
    if summary.inconclusive:
        return 3
    return 0


def _render(q: Fraction | None, digits: int | None) -> str:
    if q is None:
        return ""
    text = format_rational(q)
    if digits is None or len(text) <= digits + 2:
        return text
    return format_enclosure(q, q, digits)


def _render_interval(iv: ProbInterval, digits: int | None) -> str:
    if digits is None:
        return f"{format_rational(iv.lo)}..{format_rational(iv.hi)}"
    return format_enclosure(iv.lo, iv.hi, digits)


def record_row(r: VerificationRecord, digits: int | None = None) -> list[str]:
    dist, n, point = r.columns
    if r.exact is not None:
        exact = _render(r.exact, digits)
    elif r.value is not None:
        exact = _render_interval(r.value, digits)
    else:
        exact = ""
    if r.bound is None:
        lo = hi = ""
    elif digits is None:
        lo, hi = format_rational(r.bound.lo), format_rational(r.bound.hi)
    else:
        lo = _render(r.bound.lo, digits) if r.bound.is_exact else format_bound(r.bound.lo, digits, upward=False)
        hi = _render(r.bound.hi, digits) if r.bound.is_exact else format_bound(r.bound.hi, digits, upward=True)
    return [r.claim_id, n, point, exact, lo, hi, r.verdict.value, _render(r.margin, digits), dist]


def write_csv(records: Iterable[VerificationRecord], stream: TextIO, digits: int | None = None) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(record_row(r, digits))
