from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from binotail import (
    BinomialLaw,
    BinomialParams,
    DomainError,
    NullEventError,
    ceil_decompose,
    mad,
    mean_exceedance_prob,
    median_lower_check,
    pmf,
    pmf_table,
    positive_part_mean,
    tail,
    tce,
    tce_factorized,
)
from binotail.binomial import upper_partial_mean_factorized

from conftest import convolve_oracle
from strategies import binomial_params

F = Fraction
half = F(1, 2)


def B(n, p):
    return BinomialParams(n, F(p))


class TestParams:
    def test_accepts_strings_exactly(self):
        assert B(10, "0.1").p == F(1, 10)

    @pytest.mark.parametrize("p", [0, 1, F(3, 2), F(-1, 3)])
    def test_rejects_p_outside_open_unit_interval(self, p):
        with pytest.raises(DomainError):
            BinomialParams(3, p)

    def test_rejects_n_zero(self):
        with pytest.raises(DomainError):
            BinomialParams(0, half)

    def test_rejects_nan(self):
        with pytest.raises(DomainError):
            BinomialParams(3, float("nan"))

    def test_derived_fields(self):
        params = B(32, half)
        assert params.mean == 16 and params.variance == 8
        assert params.np_is_integer and params.exceedance_index == 16
        assert B(3, half).exceedance_index == 2

    def test_core_domain(self):
        assert B(2, half).in_core_domain
        assert not B(1, half).in_core_domain
        assert not B(10, F(1, 20)).in_core_domain
        assert B(10, F(1, 10)).in_core_domain and B(10, F(9, 10)).in_core_domain


class TestPmf:
    def test_examples(self):
        assert pmf(B(1, half), 0) == half
        assert pmf(B(2, half), 1) == half

    def test_against_convolution(self):
        assert pmf(B(5, F(1, 3)), 2) == convolve_oracle(5, F(1, 3))[2] == F(80, 243)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            pmf(B(3, half), 4)
        with pytest.raises(DomainError):
            pmf(B(3, half), -1)

    @given(binomial_params(max_n=25))
    def test_matches_oracle_and_closed_form(self, params):
        table = pmf_table(params)
        assert table == convolve_oracle(params.n, params.p)
        k = params.n // 2
        p = params.p
        assert table[k] == comb(params.n, k) * p**k * (1 - p) ** (params.n - k)
        assert sum(table) == 1


class TestTail:
    @pytest.mark.parametrize(
        "n,p,k,expected",
        [(2, half, 1, F(3, 4)), (2, F(1, 4), 1, F(7, 16)), (2, half, 3, 0), (2, half, 0, 1), (2, half, -5, 1)],
    )
    def test_examples(self, n, p, k, expected):
        assert tail(B(n, p), k) == expected

    @given(binomial_params(), st.integers(-2, 45))
    def test_is_suffix_sum(self, params, k):
        table = convolve_oracle(params.n, params.p)
        assert tail(params, k) == sum(table[max(k, 0):], F(0))


class TestMeanExceedance:
    @pytest.mark.parametrize("n,p,expected", [(1, half, half), (2, half, F(3, 4)), (3, half, half)])
    def test_examples(self, n, p, expected):
        assert mean_exceedance_prob(B(n, p)) == expected

    @given(binomial_params())
    def test_definition(self, params):
        table = pmf_table(params)
        direct = sum((w for k, w in enumerate(table) if k >= params.mean), F(0))
        assert mean_exceedance_prob(params) == direct


class TestMad:
    @pytest.mark.parametrize("n,p,expected", [(2, half, half), (1, F(1, 3), F(4, 9))])
    def test_examples(self, n, p, expected):
        assert mad(B(n, p)) == expected

    def test_positive_part_identity_at_n4(self):
        params = B(4, half)
        assert mad(params) == 2 * positive_part_mean(params, 2)

    @given(binomial_params())
    def test_direct_definition(self, params):
        table = pmf_table(params)
        assert mad(params) == sum((abs(k - params.mean) * w for k, w in enumerate(table)), F(0))


class TestPositivePart:
    def test_examples(self):
        assert positive_part_mean(B(2, half), 1) == F(1, 4)
        assert positive_part_mean(B(2, half), 2) == 0
        assert positive_part_mean(B(3, F(1, 3)), 1) == mad(B(3, F(1, 3))) / 2

    @given(binomial_params())
    def test_half_mad_at_the_mean(self, params):
        assert positive_part_mean(params, params.mean) == mad(params) / 2


class TestTce:
    @pytest.mark.parametrize("k,expected", [(1, F(4, 3)), (2, F(2)), (0, F(1))])
    def test_examples(self, k, expected):
        assert tce(B(2, half), k) == expected

    def test_null_event(self):
        with pytest.raises(NullEventError):
            tce(B(2, half), 3)

    def test_rejects_non_integer_threshold(self):
        with pytest.raises(DomainError):
            tce(B(2, half), F(1, 2))

    @given(binomial_params(max_n=30), st.data())
    def test_factorization(self, params, data):
        k = data.draw(st.integers(0, params.n))
        assert tce(params, k) == tce_factorized(params, k)
        law = BinomialLaw(params)
        assert law.upper_partial_mean(k) == upper_partial_mean_factorized(params, k)

    @given(binomial_params(max_n=30), st.data())
    def test_lies_between_threshold_and_n(self, params, data):
        k = data.draw(st.integers(0, params.n))
        assert max(k, params.mean) <= tce(params, k) <= params.n


class TestMedian:
    @pytest.mark.parametrize("n,p", [(2, half), (3, half), (10, F(1, 10))])
    def test_examples(self, n, p):
        assert median_lower_check(B(n, p)) is True

    def test_n10_tail_value(self):
        assert tail(B(10, F(1, 10)), 1) == 1 - F(9, 10) ** 10


class TestCeil:
    @pytest.mark.parametrize("x,c,d", [(F(3, 2), 2, half), (2, 2, 0), (F(7, 3), 3, F(2, 3))])
    def test_examples(self, x, c, d):
        dec = ceil_decompose(x)
        assert (dec.ceil, dec.frac_complement) == (c, d)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            ceil_decompose(0)

    @given(st.fractions(min_value=F(1, 1000), max_value=1000))
    def test_reconstructs(self, x):
        dec = ceil_decompose(x)
        assert dec.ceil - dec.frac_complement == x and 0 <= dec.frac_complement < 1
