from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cesaro_lab.exactnum import UniPoly, poly_gcd, poly_lcm, squarefree_decomposition, squarefree_part

x = UniPoly.x()
small = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def test_arithmetic_and_division():
    p = (x - 1) * (x + 2) * (2 * x + 1)
    q, r = divmod(p, x - 1)
    assert r.is_zero() and q == (x + 2) * (2 * x + 1)
    with pytest.raises(ArithmeticError):
        p.exact_div(x - 3)
    assert p(Fraction(-1, 2)) == 0
    assert p.sign_at(10) == 1 and p.sign_at(0) == -1


def test_gcd_and_lcm():
    a = (x - 1) ** 2 * (x + 3)
    b = (x - 1) * (x**2 - 2)
    assert poly_gcd(a, b) == x - 1
    assert poly_lcm([a, b]) == ((x - 1) ** 2 * (x + 3) * (x**2 - 2)).monic()


def test_squarefree_decomposition():
    p = 3 * (x - 1) * x**2 * (x + 1) ** 2 * (x**2 - 2) ** 3
    parts = dict((m, f) for f, m in squarefree_decomposition(p))
    assert parts[1] == x - 1
    assert parts[2] == x * (x + 1)
    assert parts[3] == x**2 - 2
    assert squarefree_part(p) == ((x - 1) * x * (x + 1) * (x**2 - 2)).monic()


def test_shift_and_primitive():
    p = (x + 1) ** 3
    assert p.shift(-1) == x**3
    assert (Fraction(1, 6) * x - Fraction(1, 4)).primitive_integer() == [-3, 2]


@given(st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=1, max_size=4))
def test_gcd_divides_both(ra, rb):
    a, b = UniPoly.from_roots(ra), UniPoly.from_roots(rb)
    g = poly_gcd(a, b)
    assert (a % g).is_zero() and (b % g).is_zero()
    common = set(ra) & set(rb)
    assert g.degree == sum(min(ra.count(r), rb.count(r)) for r in common)


@given(st.lists(small, min_size=1, max_size=6), small)
def test_sign_at_matches_evaluation(roots, at):
    p = UniPoly.from_roots(roots, lead=-2)
    v = p(at)
    assert p.sign_at(at) == (v > 0) - (v < 0)
