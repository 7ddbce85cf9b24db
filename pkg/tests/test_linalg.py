from fractions import Fraction

from hypothesis import given, strategies as st

from cesaro_lab.exactnum import UniPoly, det, leading_principal_minors, principal_minors, solve_lower
from cesaro_lab.exactnum.linalg import transpose

from oracles import permutation_det

entries = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_leibniz(m):
    assert det(m) == permutation_det(m)


def test_det_over_polynomials():
    x = UniPoly.x()
    m = [[x + 1, x], [x, x + 1]]
    assert det(m) == 2 * x + 1
    assert det([]) == 1


def test_minor_sets():
    m = [[Fraction(10), Fraction(-9), Fraction(3)], [Fraction(-9), Fraction(10), Fraction(-3)], [Fraction(3), Fraction(-3), Fraction(2)]]
    assert leading_principal_minors(m) == [10, 19, 20]
    pm = principal_minors(m)
    assert len(pm) == 7
    assert pm[(0, 2)] == 11 and pm[(1, 2)] == 11 and pm[(2,)] == 2


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_solve_lower(pair):
    low, rhs = pair
    n = len(low)
    low = [[(low[r][c] if c < r else (abs(low[r][c]) + 1 if c == r else Fraction(0))) for c in range(n)] for r in range(n)]
    sol = solve_lower(low, rhs)
    back = [[sum((low[r][s] * sol[s][c] for s in range(n)), Fraction(0)) for c in range(n)] for r in range(n)]
    assert back == [[Fraction(v) for v in row] for row in rhs]
    assert transpose(transpose(rhs)) == [list(r) for r in rhs]
