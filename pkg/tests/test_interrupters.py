from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cesaro_lab.cesaro import CesaroMatrix, ParameterDomainError
from cesaro_lab.exactnum import UniPoly
from cesaro_lab.interrupters import (
    HELD_OUT,
    CornerInterrupter,
    DiagonalInterrupter,
    InterrupterPair,
    fixture_q_order3,
    fixture_q_order3_symbolic,
    p_entry,
    solve_corner,
    symbolic_corner,
    verify_consistency,
)
from cesaro_lab.telescope import closed_form_entry

from oracles import dense_mqm

x = UniPoly.x()
alphas = st.fractions(min_value=Fraction(-11, 12), max_value=10, max_denominator=12)
ALPHA_ONE_CORNER = ((10, -9, 3), (-9, 10, -3), (3, -3, 2))


def test_p_entry_examples():
    assert p_entry(3, 0, 0) == Fraction(1, 20)
    assert p_entry(1, 0, 0) == Fraction(1, 2)
    assert all(p_entry(3, Fraction(1, 3), n) < 1 for n in (0, 10, 10**6))
    with pytest.raises(ValueError):
        p_entry(3, 0, -1)
    assert DiagonalInterrupter(3, 0).entry(0) == Fraction(1, 20)


@settings(max_examples=200)
@given(st.integers(1, 5), alphas, st.integers(0, 1000))
def test_p_entry_increasing_and_below_one(k, alpha, n):
    here, nxt = p_entry(k, alpha, n), p_entry(k, alpha, n + 1)
    assert 0 < here < nxt < 1


def test_fixture_values():
    assert fixture_q_order3(0) == CornerInterrupter.identity(3)
    assert fixture_q_order3(1).block == ALPHA_ONE_CORNER
    assert fixture_q_order3(Fraction(-1, 2)).block[0][0] == Fraction(19, 128)
    assert fixture_q_order3(Fraction(-1, 2)).block[0][0] == Fraction(19, 4) * Fraction(15, 8) / 60


@settings(max_examples=50)
@given(alphas)
def test_fixture_symmetric(alpha):
    blk = fixture_q_order3(alpha).block
    assert all(blk[r][c] == blk[c][r] for r in range(3) for c in range(3))


def test_corner_validation_and_growth():
    with pytest.raises(ValueError):
        CornerInterrupter(2, ((1, 2), (3, 1)))
    with pytest.raises(ValueError):
        CornerInterrupter(2, ((1,),))
    q = fixture_q_order3(1)
    big = q.grown(5)
    assert big.size == 5 and big.entry(4, 4) == 1 and big.entry(3, 0) == 0 and big.entry(0, 1) == -9
    assert q.entry(7, 7) == 1 and q.entry(7, 6) == 0
    pair = InterrupterPair(q, DiagonalInterrupter(3, 1))
    assert pair.p.entry(0) == p_entry(3, 1, 0)


@given(alphas)
def test_order1_corner_is_one_plus_alpha(alpha):
    assert solve_corner(1, alpha).block == ((1 + alpha,),)


def test_solved_corner_examples():
    assert solve_corner(3, 1).block == ALPHA_ONE_CORNER
    assert solve_corner(3, 0) == CornerInterrupter.identity(3)
    assert solve_corner(1, Fraction(2, 3)).block == ((Fraction(5, 3),),)
    with pytest.raises(ValueError):
        solve_corner(3, 1, 0)


def test_solve_is_deterministic():
    first = solve_corner(4, Fraction(3, 7))
    second = solve_corner(4, Fraction(3, 7))
    assert first == second and first.block == second.block


def test_order2_corner_closed_form():
    for alpha in (Fraction(0), Fraction(1, 2), Fraction(3)):
        a = alpha
        blk = solve_corner(2, alpha).block
        assert blk[0][0] == (a + 1) * (a + 2) * (2 * a + 3) / 6
        assert blk[0][1] == -a * (a + 1) * (a + 2) / 3
        assert blk[1][1] == (a + 2) * (2 * a * a - a + 3) / 6


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(-3, 4), Fraction(5)])
def test_identity_against_dense_product(alpha):
    n = 12
    m = CesaroMatrix(3, alpha)
    rows = [[m.entry(r, c) for c in range(n)] for r in range(n)]
    dense = dense_mqm(rows, fixture_q_order3(alpha).block, n)
    assert dense == [[closed_form_entry(3, alpha, r, c) for c in range(n)] for r in range(n)]


def test_verify_examples():
    rep = verify_consistency(3, Fraction(1, 2), fixture_q_order3(Fraction(1, 2)), n_check=40, provenance="fixture")
    assert rep.verified and rep.status == "verified" and rep.mismatch is None
    bad = verify_consistency(3, 1, CornerInterrupter.identity(3), n_check=5, provenance="identity")
    assert not bad.verified
    assert (bad.mismatch.i, bad.mismatch.j) == (0, 0)
    assert bad.mismatch.lhs == Fraction(1, 16) and bad.mismatch.rhs == Fraction(5, 8)
    assert verify_consistency(1, 2, solve_corner(1, 2), n_check=40).verified
    assert verify_consistency(2, 1, solve_corner(2, 1), n_check=40).verified


def test_verify_rejects_foreign_diagonal():
    with pytest.raises(ValueError):
        verify_consistency(3, 1, fixture_q_order3(1), DiagonalInterrupter(3, 2), n_check=2)


def test_first_mismatch_is_row_major_first():
    q = CornerInterrupter(3, ((1, 0, 0), (0, 1, 0), (0, 0, 2)))
    rep = verify_consistency(3, 0, q, n_check=6)
    # the corner only differs from the identity at (2, 2), which first affects row 2
    assert (rep.mismatch.i, rep.mismatch.j) == (2, 2)


@settings(max_examples=10)
@given(alphas)
def test_solved_corner_equals_fixture(alpha):
    assert solve_corner(3, alpha) == fixture_q_order3(alpha)


def test_symbolic_corner_order3_matches_fixture():
    sym = symbolic_corner(3)
    fix = fixture_q_order3_symbolic()
    assert all(sym[r][c] == fix[r][c] for r in range(3) for c in range(3))
    assert Fraction(-1, 2) in HELD_OUT


def test_printed_q_formulas():
    q = fixture_q_order3_symbolic()
    base = (1 + x) * (2 + x) * (3 + x)
    assert q[0][0] == (10 + 12 * x + 3 * x**2) * base * Fraction(1, 60)
    assert q[0][1] == q[1][0] == -(x * (11 + 4 * x) * base) * Fraction(1, 40)
    assert q[0][2] == x * (3 + 2 * x) * base * Fraction(1, 40)
    assert q[1][1] == (5 - x + 15 * x**2 + 6 * x**3) * (2 + x) * (3 + x) * Fraction(1, 30)
    assert q[1][2] == -(x * base * (1 + 4 * x)) * Fraction(1, 40)
    assert q[2][2] == (20 - 6 * x + 7 * x**2 + 6 * x**3 + 3 * x**4) * (3 + x) * Fraction(1, 60)


def test_qm_star_rows_match_explicit_x_table():
    from cesaro_lab.cesaro import qm_star_entry

    def den(jj, a):
        return 20 * (jj + 1 + a) * (jj + 2 + a) * (jj + a + 3)

    for a in (Fraction(1, 2), Fraction(2)):
        q, m = fixture_q_order3(a), CesaroMatrix(3, a)
        for jj in range(0, 8):
            x0 = (10 * jj**2 + (15 * a + 30) * jj + 20 + 24 * a + 6 * a**2) * (1 + a) * (2 + a) * (3 + a) / den(jj, a)
            x1 = ((10 - 20 * a) * jj**2 + (10 - 50 * a - 30 * a**2) * jj - 33 * a - 45 * a**2 - 12 * a**3) \
                * (2 + a) * (3 + a) / den(jj, a)
            x2 = ((20 + 10 * a**2) * jj**2 + (-20 + 30 * a + 35 * a**2 + 15 * a**3) * jj
                  + 18 * a + 39 * a**2 + 27 * a**3 + 6 * a**4) * (3 + a) / den(jj, a)
            assert [qm_star_entry(q, m, r, jj) for r in range(3)] == [x0, x1, x2]


def test_parameter_domain():
    with pytest.raises(ParameterDomainError):
        solve_corner(3, -1)
    with pytest.raises(ParameterDomainError):
        DiagonalInterrupter(0, 0)
