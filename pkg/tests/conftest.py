import sys
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def convolve_oracle(n, p):
    """n-fold convolution of the single-trial law (1-p, p); independent of the recurrence."""
    p = Fraction(p)
    table = [Fraction(1)]
    for _ in range(n):
        nxt = [Fraction(0)] * (len(table) + 1)
        for k, w in enumerate(table):
            nxt[k] += w * (1 - p)
            nxt[k + 1] += w * p
        table = nxt
    return table


@pytest.fixture
def oracle():
    return convolve_oracle


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
