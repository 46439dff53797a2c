"""Tightness of each lower bound against the exact mean-exceedance probability."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import TextIO

from ..binomial import BinomialLaw, BinomialParams
from ..bounds import QUARTER, BoundKind, Ordering, evaluate_bound, quarter_threshold_check
from ..interval import ProbInterval
from ..rational import format_rational, format_significant
from .grid import GridSpec

BINOMIAL_KINDS = (
    BoundKind.VERAAR_EQ1,
    BoundKind.GREENBERG_MOHRI_EQ2,
    BoundKind.RIGOLLET_TONG_EQ3,
    BoundKind.THEOREM1,
    BoundKind.THEOREM1_SHARP,
)


@dataclass(frozen=True)
class TightnessRow:
    params: BinomialParams
    tail: Fraction
    bounds: dict  # BoundKind -> ProbInterval, only for kinds whose hypothesis holds

    def ratio(self, kind: BoundKind) -> Fraction | None:
        """hi(bound) / exact tail; conservative toward the bound."""
        iv = self.bounds.get(kind)
        return None if iv is None else iv.hi / self.tail

    @property
    def best(self) -> BoundKind | None:
        if not self.bounds:
            return None
        return max(self.bounds, key=lambda k: (self.bounds[k].hi, BINOMIAL_KINDS.index(k)))


@dataclass(frozen=True)
class TightnessReport:
    rows: tuple[TightnessRow, ...]
    quarter_mismatches: tuple[BinomialParams, ...]


def _above_quarter(iv: ProbInterval) -> Ordering | None:
    if iv.lo > QUARTER:
        return Ordering.GREATER
    if iv.hi < QUARTER:
        return Ordering.LESS
    if iv.contains(QUARTER):
        return Ordering.EQUAL
    return None


def tightness_report(grid: GridSpec) -> TightnessReport:
    """Per-point comparison of every applicable bound with the exact tail.

    Also cross-checks that the relaxed main bound exceeds 1/4 exactly where
    np(1-p) > 8; points where the enclosure disagrees with the exact
    prediction are collected as mismatches.
    """
    bits = grid.policy.bits
    rows = []
    mismatches = []
    for params in grid.binomial_points():
        law = BinomialLaw(params)
        bounds = {k: evaluate_bound(k, params, precision_bits=bits) for k in BINOMIAL_KINDS if k.applies(params)}
        rows.append(TightnessRow(params, law.mean_exceedance_prob(), bounds))
        relaxed = bounds.get(BoundKind.THEOREM1)
        if relaxed is not None:
            predicted = quarter_threshold_check(params)
            observed = _above_quarter(relaxed)
            consistent = observed is predicted or (predicted is not Ordering.EQUAL and observed is Ordering.EQUAL)
            # an unresolved enclosure only counts as a mismatch when it excludes the prediction
            if not consistent:
                mismatches.append(params)
    return TightnessReport(tuple(rows), tuple(mismatches))


def write_tightness_csv(report: TightnessReport, stream: TextIO, digits: int = 12) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    header = ["n", "p", "tail"]
    for k in BINOMIAL_KINDS:
        header += [f"{k.value}_mid", f"{k.value}_ratio"]
    header.append("best")
    writer.writerow(header)
    for row in report.rows:
        out = [str(row.params.n), format_rational(row.params.p), format_significant(row.tail, digits)]
        for k in BINOMIAL_KINDS:
            iv = row.bounds.get(k)
            if iv is None:
                out += ["", ""]
            else:
                out += [format_significant(iv.midpoint, digits), format_significant(row.ratio(k), digits)]
        out.append(row.best.value if row.best else "")
        writer.writerow(out)
