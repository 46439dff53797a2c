from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator

from ..binomial import BinomialParams
from ..interval import PrecisionPolicy
from ..poisson import PoissonParams


def reduced_fractions(den_cap: int) -> list[Fraction]:
    """All a/b in (0, 1) with b <= den_cap, sorted by value."""
    if den_cap < 2:
        return []
    values = {Fraction(a, b) for b in range(2, den_cap + 1) for a in range(1, b) if gcd(a, b) == 1}
    return sorted(values)


def lambda_grid(den_cap: int, max_value) -> tuple[Fraction, ...]:
    """All a/b in (0, max_value] with b <= den_cap, sorted by value."""
    top = Fraction(max_value)
    values = set()
    for b in range(1, den_cap + 1):
        a = 1
        while Fraction(a, b) <= top:
            values.add(Fraction(a, b))
            a += 1
    return tuple(sorted(values))


@dataclass(frozen=True)
class GridSpec:
    n_min: int = 2
    n_max: int = 200
    p_den_cap: int = 24
    lambda_grid: tuple[Fraction, ...] = field(default_factory=lambda: lambda_grid(6, 12))
    stirling_max: int = 200
    policy: PrecisionPolicy = field(default_factory=PrecisionPolicy)

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError(f"need 1 <= n_min <= n_max, got [{self.n_min}, {self.n_max}]")
        if self.p_den_cap < 2:
            raise ValueError("p_den_cap must be at least 2")
        object.__setattr__(self, "lambda_grid", tuple(sorted(Fraction(x) for x in self.lambda_grid)))

    @property
    def p_values(self) -> list[Fraction]:
        return reduced_fractions(self.p_den_cap)

    def ns(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def binomial_points(self) -> Iterator[BinomialParams]:
        ps = self.p_values
        for n in self.ns():
            for p in ps:
                yield BinomialParams(n, p)

    def pairs(self) -> Iterator[tuple[BinomialParams, BinomialParams]]:
        ps = self.p_values
        for n in self.ns():
            for i, p in enumerate(ps):
                for q in ps[i + 1 :]:
                    yield BinomialParams(n, p), BinomialParams(n, q)

    def poisson_points(self) -> Iterator[PoissonParams]:
        for lam in self.lambda_grid:
            yield PoissonParams(lam)
