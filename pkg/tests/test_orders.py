from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from binotail import BinomialParams, DomainError, check_hazard_rate_order, check_likelihood_ratio_order, check_tce_monotone_in_p, tail
from binotail.orders import MonotonicityViolation, OrderCheckReport, OrderKind, conditional_tail_dominance

from strategies import probabilities

F = Fraction


def pair(n, p, q):
    return BinomialParams(n, F(p)), BinomialParams(n, F(q))


@pytest.mark.parametrize("n,p,q", [(2, F(1, 4), F(1, 2)), (1, F(1, 3), F(2, 3)), (2, F(1, 2), F(1, 2))])
def test_lr_examples(n, p, q):
    rep = check_likelihood_ratio_order(*pair(n, p, q))
    assert rep.holds and rep.witness_k is None and rep.order_kind is OrderKind.LIKELIHOOD_RATIO


def test_hr_ratios_at_k1():
    x, y = pair(2, F(1, 4), F(1, 2))
    assert (tail(x, 1), tail(x, 2)) == (F(7, 16), F(1, 16))
    assert (tail(y, 1), tail(y, 2)) == (F(3, 4), F(1, 4))
    assert tail(x, 1) / tail(x, 2) == 7 and tail(y, 1) / tail(y, 2) == 3
    assert check_hazard_rate_order(x, y).holds


def test_hr_single_trial():
    assert check_hazard_rate_order(*pair(1, F(1, 3), F(2, 3))).holds


def test_reversed_pair_is_rejected():
    with pytest.raises(DomainError):
        check_likelihood_ratio_order(*pair(3, F(1, 2), F(1, 4)))


def test_mismatched_n():
    with pytest.raises(DomainError):
        check_likelihood_ratio_order(BinomialParams(2, F(1, 2)), BinomialParams(3, F(1, 2)))
    with pytest.raises(DomainError):
        check_hazard_rate_order(BinomialParams(2, F(1, 2)), BinomialParams(3, F(1, 2)))


def test_report_invariant():
    x, y = pair(2, F(1, 4), F(1, 2))
    with pytest.raises(ValueError):
        OrderCheckReport(x, y, OrderKind.HAZARD_RATE, True, 1)


@given(st.integers(1, 25), probabilities(), probabilities())
def test_lr_implies_hr_and_conditional_dominance(n, p, q):
    p, q = sorted((p, q))
    x, y = BinomialParams(n, p), BinomialParams(n, q)
    lr = check_likelihood_ratio_order(x, y)
    hr = check_hazard_rate_order(x, y, include_zero=True)
    assert lr.holds
    assert hr.holds
    assert conditional_tail_dominance(x, y) is None


class TestTceMonotone:
    def test_n2_k1(self):
        values = check_tce_monotone_in_p(2, 1, [F(1, 4), F(1, 2), F(3, 4)])
        assert [v for _, v in values] == sorted(v for _, v in values)
        assert values[1] == (F(1, 2), F(4, 3))

    def test_top_point(self):
        assert {v for _, v in check_tce_monotone_in_p(1, 1, [F(1, 5), F(1, 2), F(4, 5)])} == {1}

    def test_k0_is_mean(self):
        assert check_tce_monotone_in_p(2, 0, [F(1, 4), F(1, 2)]) == [(F(1, 4), F(1, 2)), (F(1, 2), F(1))]

    def test_rejects_unsorted_grid(self):
        with pytest.raises(DomainError):
            check_tce_monotone_in_p(3, 1, [F(1, 2), F(1, 4)])

    def test_violation_type(self):
        assert issubclass(MonotonicityViolation, AssertionError)
