import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from cesaro_lab.cesaro import (
    CesaroMatrix,
    ParameterDomainError,
    check_alpha,
    entry,
    entry_general_beta,
    entry_symbolic,
    mqm_star_entry,
    qm_star_entry,
    row_sum_formula,
    self_test,
    truncate,
)
from cesaro_lab.exactnum import ALPHA, I, J, RationalFunction, ratfun_identity
from cesaro_lab.interrupters import CornerInterrupter, fixture_q_order3

from oracles import gamma_entry

alphas = st.fractions(min_value=Fraction(-11, 12), max_value=10, max_denominator=12)


def test_entry_examples():
    assert entry(3, 0, 2, 0) == Fraction(3, 5)
    assert entry(3, 0, 0, 0) == 1
    assert entry(3, Fraction(7, 3), 1, 2) == 0
    assert entry(1, 1, 2, 1) == Fraction(1, 4)


def test_domain_errors():
    with pytest.raises(ParameterDomainError):
        entry(3, -1, 0, 0)
    with pytest.raises(ParameterDomainError):
        entry(0, 0, 0, 0)
    with pytest.raises(ParameterDomainError):
        entry(2, 0, -1, 0)
    with pytest.raises(TypeError):
        check_alpha(0.5)
    with pytest.raises(ParameterDomainError):
        entry_general_beta(-1.0, 2.0, 0, 0)
    with pytest.raises(ParameterDomainError):
        entry_general_beta(0.0, 0.0, 0, 0)


def test_general_beta_examples():
    assert entry_general_beta(0.0, 3.0, 2, 0) == pytest.approx(0.6, abs=1e-12)
    assert entry_general_beta(0.0, 1.0, 4, 4) == pytest.approx(0.2, abs=1e-12)
    # direct Gamma ratios at 50 digits as the reference
    with mpmath.workdps(50):
        a, b, i, j = mpmath.mpf("0.5"), mpmath.mpf("2.5"), 3, 1
        ref = b * mpmath.gamma(i + a + 1) * mpmath.gamma(i - j + b) / (mpmath.gamma(i - j + 1) * mpmath.gamma(i + a + b + 1))
    assert entry_general_beta(0.5, 2.5, 3, 1) == pytest.approx(float(ref), abs=1e-10)
    assert entry_general_beta(0.5, 2.5, 1, 3) == 0.0


def test_truncations():
    assert truncate(CesaroMatrix(3, 0), 1).rows == ((1,),)
    assert truncate(CesaroMatrix(3, 0), 3).rows[2] == (Fraction(3, 5), Fraction(3, 10), Fraction(1, 10))
    assert truncate(CesaroMatrix(2, 0), 2).rows == ((1, 0), (Fraction(2, 3), Fraction(1, 3)))
    assert truncate(CesaroMatrix(1, 0), 2).rows == ((1, 0), (Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(ParameterDomainError):
        truncate(CesaroMatrix(1, 0), 0)


def test_order3_row_one_at_zero():
    # the order-3 product formula at alpha = 0, i = 1
    assert truncate(CesaroMatrix(3, 0), 2).rows[1] == (Fraction(3, 4), Fraction(1, 4))


def test_self_test_and_low_order_formulas():
    assert self_test()
    explicit3 = RationalFunction(3 * (I + 1 - J) * (I + 2 - J), factors=[I + 1 + ALPHA, I + 2 + ALPHA, I + 3 + ALPHA])
    assert ratfun_identity(entry_symbolic(3), explicit3)
    assert not ratfun_identity(entry_symbolic(2), explicit3)


@pytest.mark.parametrize("k, alpha, i, j", [
    (1, Fraction(0), 3, 1), (2, Fraction(1, 2), 4, 2), (3, Fraction(5, 2), 1, 0),
    (3, Fraction(-3, 4), 5, 3), (4, Fraction(2, 3), 6, 1), (5, Fraction(9), 7, 7),
])
def test_entry_matches_gamma_ratio(k, alpha, i, j):
    assert entry(k, alpha, i, j) == gamma_entry(k, alpha, i, j)


def test_row_sums_at_zero():
    for k in range(1, 6):
        m = CesaroMatrix(k, 0)
        for i in range(101):
            assert m.row_sum(i) == 1


@given(st.integers(1, 5), alphas, st.integers(0, 30))
def test_row_sum_formula(k, alpha, i):
    assert CesaroMatrix(k, alpha).row_sum(i) == row_sum_formula(k, alpha, i)


@settings(max_examples=500)
@given(st.integers(1, 6), alphas, st.integers(0, 200), st.integers(0, 200))
def test_lower_triangular_and_positive(k, alpha, i, j):
    v = entry(k, alpha, i, j)
    if j > i:
        assert v == 0
    else:
        assert v > 0


@settings(max_examples=500)
@given(st.integers(1, 6), alphas, st.integers(0, 60), st.integers(0, 60))
def test_general_beta_matches_exact(k, alpha, i, j):
    exact = entry(k, alpha, i, j)
    approx = entry_general_beta(float(alpha), float(k), i, j)
    if exact == 0:
        assert approx == 0.0
    else:
        assert math.isclose(approx, float(exact), rel_tol=1e-10)


@given(st.integers(1, 4), alphas, st.integers(0, 12), st.integers(0, 12))
def test_mqm_with_identity_corner_is_row_inner_product(k, alpha, i, j):
    m = CesaroMatrix(k, alpha)
    q = CornerInterrupter.identity(k)
    brute = sum((m.entry(i, u) * m.entry(j, u) for u in range(min(i, j) + 1)), Fraction(0))
    assert mqm_star_entry(m, q, i, j) == brute


@given(alphas, st.integers(0, 15), st.integers(0, 15))
def test_mqm_symmetric(alpha, i, j):
    m = CesaroMatrix(3, alpha)
    q = fixture_q_order3(alpha)
    assert mqm_star_entry(m, q, i, j) == mqm_star_entry(m, q, j, i)


def test_mqm_and_qm_examples():
    m1 = CesaroMatrix(3, 1)
    assert mqm_star_entry(m1, fixture_q_order3(1), 0, 0) == Fraction(5, 8)
    m0 = CesaroMatrix(3, 0)
    assert mqm_star_entry(m0, fixture_q_order3(0), 0, 0) == 1
    ident = CornerInterrupter.identity(3)
    a = Fraction(2, 7)
    ma = CesaroMatrix(3, a)
    assert mqm_star_entry(ma, ident, 0, 1) == ma.entry(0, 0) * ma.entry(1, 0)
    assert qm_star_entry(fixture_q_order3(0), m0, 0, 0) == 1
    assert qm_star_entry(fixture_q_order3(a), ma, 5, 3) == 0
    assert qm_star_entry(fixture_q_order3(1), m1, 4, 4) == Fraction(1, 56)
