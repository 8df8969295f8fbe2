from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from hyperbell.powerseries import (
    FormalSeries,
    HypergeomSpec,
    IntegralityViolation,
    extract_weighted,
    hypergeom_exp_sequence,
    hypergeom_series,
    oracle_bell,
    oracle_restricted,
    oracle_restricted_stirling,
    oracle_stirling,
    series_exp,
    series_log,
    series_mul,
    series_pow,
)
from hyperbell.sequences import classical_stirling_sum, extended_bell, restricted_bell, stirling_ext

F = Fraction


def e_series(N, scale=1):
    return FormalSeries(F(scale**n, factorial(n)) for n in range(N + 1))


def naive_exp(f):
    """exp(f) = sum_k f^k / k!, truncated; deliberately avoids series_exp."""
    N = f.order
    total = [F(0)] * (N + 1)
    power = [F(1)] + [F(0)] * N
    for k in range(N + 1):
        for n in range(N + 1):
            total[n] += power[n] / factorial(k)
        power = [sum(power[i] * f[n - i] for i in range(n + 1)) for n in range(N + 1)]
    return FormalSeries(total)


# -- hypergeom_series --------------------------------------------------------------


def test_hypergeom_series_examples():
    assert hypergeom_series(HypergeomSpec((1,)), 3).coeffs == (1, 1, F(1, 4), F(1, 36))
    assert hypergeom_series(HypergeomSpec(), 4).coeffs == (1, 1, F(1, 2), F(1, 6), F(1, 24))
    assert hypergeom_series(HypergeomSpec((1, 2)), 2).coeffs == (1, F(1, 2), F(1, 24))


def test_hypergeom_series_matches_quoted_form():
    # 0F2(1,2;z) = sum z^n / ((n+1)(n!)^3)
    s = hypergeom_series(HypergeomSpec((1, 2)), 12)
    assert all(s[n] == F(1, (n + 1) * factorial(n) ** 3) for n in range(13))


def test_spec_validation():
    with pytest.raises(ValueError):
        HypergeomSpec((0, 1))
    assert HypergeomSpec.ones(3).weight(4) == factorial(4) ** 4


# -- series_mul ----------------------------------------------------------------


def test_series_mul_examples():
    assert series_mul(FormalSeries([1, 1, 0]), FormalSeries([1, -1, 0])).coeffs == (1, 0, -1)
    assert series_mul(e_series(3), e_series(3)).coeffs == (1, 2, 2, F(4, 3))


def test_series_mul_order_mismatch():
    with pytest.raises(ValueError):
        series_mul(FormalSeries([1, 2]), FormalSeries([1, 2, 3]))


def test_weighted_product_of_0f1_with_itself():
    # weighted coefficients of 0F1 * 0F1 at weight (n!)^2: sum_r C(n,r)^2 = C(2n,n)
    f = hypergeom_series(HypergeomSpec((1,)), 2)
    prod = series_mul(f, f)
    assert [prod[n] * factorial(n) ** 2 for n in range(3)] == [1, 2, 6]


@pytest.mark.parametrize("L", [0, 1, 2, 3])
def test_weighted_product_rule(L):
    """d_L(n) = sum_r C(n,r)^(L+1) a(r) c(n-r), checked by brute force."""
    N = 12
    a = [3 * n * n - 2 * n + 1 for n in range(N + 1)]
    c = [(-1) ** n * (n + 5) for n in range(N + 1)]
    w = [factorial(n) ** (L + 1) for n in range(N + 1)]
    f = FormalSeries(F(a[n], w[n]) for n in range(N + 1))
    g = FormalSeries(F(c[n], w[n]) for n in range(N + 1))
    prod = series_mul(f, g)
    for n in range(N + 1):
        d = sum(comb(n, r) ** (L + 1) * a[r] * c[n - r] for r in range(n + 1))
        assert prod[n] * w[n] == d


# -- exp / log ------------------------------------------------------------------


def test_series_exp_examples():
    z = FormalSeries([0, 1, 0, 0, 0])
    assert series_exp(z).coeffs == e_series(4).coeffs
    assert series_exp(FormalSeries([0, 0, 0])).coeffs == (1, 0, 0)
    bell = series_exp(e_series(6) - FormalSeries.constant(1, 6))
    assert [bell[n] * factorial(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_series_exp_requires_zero_constant():
    with pytest.raises(ValueError):
        series_exp(FormalSeries([1, 1]))


def test_series_log_examples():
    assert series_log(FormalSeries.constant(1, 4)).coeffs == (0,) * 5
    assert series_log(e_series(5)).coeffs == (0, 1, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        series_log(FormalSeries([2, 1]))


def test_log_of_b1_series_is_0f1_minus_one():
    N = 5
    b1 = FormalSeries(F(extended_bell(1, n), factorial(n) ** 2) for n in range(N + 1))
    F01 = hypergeom_series(HypergeomSpec((1,)), N)
    assert series_log(b1) == F01 - FormalSeries.constant(1, N)


def test_series_exp_matches_naive_power_sum():
    f = hypergeom_series(HypergeomSpec((1, 1)), 10) - FormalSeries.constant(1, 10)
    assert series_exp(f) == naive_exp(f)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=50)


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=20, max_size=20))
def test_exp_log_round_trip(tail):
    f = FormalSeries([0] + tail)
    assert f.order == 20
    assert series_log(series_exp(f)) == f


def test_series_pow_matches_repeated_product():
    f = FormalSeries([0, 1, F(1, 3), 2, -1, F(5, 7)])
    acc = FormalSeries.constant(1, 5)
    for e in range(7):
        assert series_pow(f, e) == acc
        acc = series_mul(acc, f)


# -- weighted extraction --------------------------------------------------------------


def test_extract_weighted_examples():
    b1 = hypergeom_exp_sequence(HypergeomSpec((1,)), 6)
    assert b1 == [1, 1, 3, 16, 131, 1496, 22482]
    f2 = hypergeom_exp_sequence(HypergeomSpec((1, 2)), 7)
    assert f2 == [1, 1, 4, 37, 641, 18276, 789377, 48681011]
    s = FormalSeries([3, -1, 7])
    assert extract_weighted(s, [1, 1, 1]) == [3, -1, 7]


def test_extract_weighted_reports_index():
    with pytest.raises(IntegralityViolation) as info:
        extract_weighted(FormalSeries([1, F(1, 2), F(1, 3)]), [1, 4, 2])
    assert info.value.index == 2
    assert info.value.value == F(2, 3)


def test_f2_next_term():
    # f_2(8) has no reference value; computed here and by the naive exp
    spec = HypergeomSpec((1, 2))
    f = hypergeom_series(spec, 8) - FormalSeries.constant(1, 8)
    naive = naive_exp(f)
    assert naive[8] * spec.weight(8) == hypergeom_exp_sequence(spec, 8)[8] == 4101601933


# -- oracles -----------------------------------------------------------------


def test_oracle_stirling_examples():
    assert oracle_stirling(1, 2, 5) == [0, 0, 2, 9, 34, 125]
    assert oracle_stirling(2, 3, 5) == [0, 0, 0, 36, 864, 17500]
    for l in range(1, 8):
        got = oracle_stirling(0, l, 12)
        assert got[:l] == [0] * l
        assert got[l:] == [classical_stirling_sum(n, l) for n in range(l, 13)]


def test_oracle_restricted_examples():
    assert oracle_restricted(0, 1, 8) == [1, 0, 1, 1, 4, 11, 41, 162, 715]
    assert oracle_restricted(1, 2, 6) == [1, 0, 0, 1, 1, 1, 201]
    assert oracle_restricted(2, 1, 5) == [1, 0, 1, 1, 109, 1001]


def test_oracle_restricted_stirling_examples():
    for l in range(1, 5):
        assert oracle_restricted_stirling(0, 0, l, 10) == oracle_stirling(0, l, 10)
    assert oracle_restricted_stirling(0, 1, 1, 4) == [0, 0, 1, 1, 1]
    assert oracle_restricted_stirling(0, 1, 2, 4) == [0, 0, 0, 0, 3]


def test_oracle_bell_equals_recursion():
    for L in range(5):
        assert oracle_bell(L, 30) == [extended_bell(L, n) for n in range(31)]


def test_oracle_stirling_equals_recursion():
    for L in range(4):
        for l in range(1, 9):
            assert oracle_stirling(L, l, 16) == [stirling_ext(L, n, l) for n in range(17)]


def test_oracle_restricted_equals_recursion():
    for L in range(3):
        for p in range(4):
            assert oracle_restricted(L, p, 12) == [restricted_bell(L, p, n) for n in range(13)]


def test_restricted_stirling_row_sums():
    N = 10
    for L in range(3):
        for p in range(3):
            cols = [oracle_restricted_stirling(L, p, l, N) for l in range(1, N + 1)]
            for n in range(1, N + 1):
                assert sum(col[n] for col in cols) == restricted_bell(L, p, n)


def test_all_ones_specs_are_integral():
    for L in range(4):
        hypergeom_exp_sequence(HypergeomSpec.ones(L), 20)


def test_non_integral_spec_raises():
    with pytest.raises(IntegralityViolation) as info:
        hypergeom_exp_sequence(HypergeomSpec((2,)), 5)
    assert info.value.index == 2
    assert info.value.value == F(5, 2)
