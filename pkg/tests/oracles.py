"""Independent reference computations used only by the tests.

Each oracle takes a different route from the package code: sympy Gamma
simplification for entries, dense truncated products for M Q M*, the
Faddeev-LeVerrier characteristic polynomial for semidefiniteness, and
cofactor expansion for determinants.
"""

from fractions import Fraction
from itertools import permutations

import sympy


def gamma_entry(k, alpha, i, j):
    """Entry from the Gamma-ratio definition, simplified exactly by sympy."""
    if j > i:
        return Fraction(0)
    a = sympy.Rational(alpha.numerator, alpha.denominator) if isinstance(alpha, Fraction) else sympy.Integer(alpha)
    expr = (
        k * sympy.gamma(i + a + 1) * sympy.gamma(i - j + k)
        / (sympy.gamma(i - j + 1) * sympy.gamma(i + a + k + 1))
    )
    val = sympy.nsimplify(sympy.gammasimp(expr))
    return Fraction(int(val.p), int(val.q))


def dense_mqm(m_rows, q_block, n):
    """(M Q M^T) on the first n indices from dense n x n matrices; Q has an identity tail."""
    c = len(q_block)
    q = [[(q_block[a][b] if a < c and b < c else Fraction(int(a == b))) for b in range(n)] for a in range(n)]
    mq = [[sum((m_rows[r][s] * q[s][t] for s in range(n)), Fraction(0)) for t in range(n)] for r in range(n)]
    return [[sum((mq[r][t] * m_rows[u][t] for t in range(n)), Fraction(0)) for u in range(n)] for r in range(n)]


def permutation_det(m):
    """Leibniz formula; only for small matrices."""
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Fraction(1)
        for r in range(n):
            term *= m[r][perm[r]]
        total += -term if inv % 2 else term
    return total


def charpoly(m):
    """Coefficients c_0..c_n of det(x I - m) by Faddeev-LeVerrier, c_n = 1."""
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for step in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = mk
        mk = [[sum((m[r][s] * prev[s][t] for s in range(n)), Fraction(0)) for t in range(n)] for r in range(n)]
        for r in range(n):
            mk[r][r] += coeffs[n - step + 1]
        am = [[sum((m[r][s] * mk[s][t] for s in range(n)), Fraction(0)) for t in range(n)] for r in range(n)]
        coeffs[n - step] = -sum(am[r][r] for r in range(n)) / step
    return coeffs


def is_psd_by_descartes(m):
    """A symmetric matrix has only real eigenvalues, so it is PSD iff p(-x) has no sign change.

    p(-x) with every coefficient of one sign (zeros ignored) has no positive
    root by Descartes, i.e. p has no negative root.
    """
    c = charpoly(m)
    signed = [coef * (-1) ** p for p, coef in enumerate(c)]
    nonzero = [s for s in signed if s != 0]
    return all(s > 0 for s in nonzero) or all(s < 0 for s in nonzero)


def is_pd_by_descartes(m):
    return is_psd_by_descartes(m) and charpoly(m)[0] != 0
