"""Exact scalars, polynomials, rational functions and real-root isolation.

Rational scalars are plain :class:`fractions.Fraction` values.
"""

from fractions import Fraction

from .linalg import det, leading_principal_minors, principal_minors, solve_lower
from .multipoly import ALPHA, I, J, T, VARIABLES, MultiPoly, poly_equal
from .ratfun import RationalFunction, ratfun_identity
from .roots import (
    Domain,
    RealRoot,
    RootIsolation,
    SignPiece,
    isolate_roots,
    isolate_union,
    strip_integer_roots,
    parse_domain,
    sign_at_root,
    sign_between_roots,
)
from .unipoly import UniPoly, poly_gcd, poly_lcm, squarefree_decomposition, squarefree_part

BigRational = Fraction

__all__ = [
    "ALPHA",
    "BigRational",
    "Domain",
    "Fraction",
    "I",
    "J",
    "MultiPoly",
    "RationalFunction",
    "RealRoot",
    "RootIsolation",
    "SignPiece",
    "T",
    "UniPoly",
    "VARIABLES",
    "det",
    "isolate_roots",
    "isolate_union",
    "strip_integer_roots",
    "leading_principal_minors",
    "parse_domain",
    "poly_equal",
    "poly_gcd",
    "poly_lcm",
    "principal_minors",
    "ratfun_identity",
    "sign_at_root",
    "sign_between_roots",
    "solve_lower",
    "squarefree_decomposition",
    "squarefree_part",
]
