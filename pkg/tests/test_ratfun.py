from fractions import Fraction

from hypothesis import given, strategies as st

from cesaro_lab.exactnum import ALPHA, T, MultiPoly, RationalFunction, ratfun_identity

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_partial_fractions():
    lhs = RationalFunction(1, factors=[T + 1]) - RationalFunction(1, factors=[T + 2])
    rhs = RationalFunction(1, factors=[T + 1, T + 2])
    assert ratfun_identity(lhs, rhs)


def test_cancellation_against_expanded_denominator():
    assert ratfun_identity(RationalFunction(ALPHA**2 - 1, ALPHA - 1), RationalFunction(ALPHA + 1))


def test_distinct_functions():
    assert not ratfun_identity(RationalFunction(1, factors=[T + 1]), RationalFunction(1, factors=[T + 2]))


def test_both_denominator_forms_rejected():
    import pytest

    with pytest.raises(ValueError):
        RationalFunction(1, T + 1, factors=[T + 2])
    with pytest.raises(ZeroDivisionError):
        RationalFunction(1, MultiPoly())


def test_evaluate_and_subs():
    f = RationalFunction(T, factors=[T + ALPHA + 1, T + 2])
    assert f.evaluate(t=1, alpha=0) == Fraction(1, 6)
    assert ratfun_identity(f.subs(t=0), RationalFunction(0))


def _linear(c):
    return T + ALPHA * c[0] + c[1]


ratfuns = st.builds(
    lambda num, facs: RationalFunction(MultiPoly({(1, 0, 0, 0): num[0], (0, 0, 0, 1): num[1], (0, 0, 0, 0): num[2]}),
                                       factors=[_linear(c) for c in facs]),
    st.tuples(rationals, rationals, rationals),
    st.lists(st.tuples(st.integers(-2, 2), st.integers(1, 4)), max_size=3),
)


@given(ratfuns, ratfuns, ratfuns)
def test_identity_is_an_equivalence(f, g, h):
    assert ratfun_identity(f, f)
    assert ratfun_identity(f, g) == ratfun_identity(g, f)
    # g' is g rewritten: multiplied through by an extra common factor
    g2 = RationalFunction(g.num * (T + 7), factors=list(g.factors) + [T + 7])
    assert ratfun_identity(g, g2)
    if ratfun_identity(f, g) and ratfun_identity(g, h):
        assert ratfun_identity(f, h)
    assert ratfun_identity(f + g - g, f)


@given(ratfuns, ratfuns)
def test_factored_and_expanded_sums_agree(f, g):
    expanded = RationalFunction(f.num, f.den) + RationalFunction(g.num, g.den)
    assert ratfun_identity(f + g, expanded)
