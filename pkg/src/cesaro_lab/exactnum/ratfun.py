"""Quotients of :class:`MultiPoly` with optionally factored denominators."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from .multipoly import MultiPoly, Scalar


def _product(factors: Iterable[MultiPoly]) -> MultiPoly:
    out = MultiPoly.const(1)
    for f in factors:
        out = out * f
    return out


class RationalFunction:
    """``num / den`` over the rationals.

    When built from linear factors the denominator keeps its factor list, and
    sums and identity checks work on the multiset of factors instead of the
    expanded product.  No cancellation is ever attempted; equality is decided
    by cross-multiplication.
    """

    __slots__ = ("num", "factors", "_den")

    def __init__(self, num, den=1, factors: Optional[Iterable[MultiPoly]] = None):
        self.num = MultiPoly.coerce(num)
        if factors is not None:
            if MultiPoly.coerce(den) != 1:
                raise ValueError("give either an expanded denominator or a factor list, not both")
            self.factors: Optional[Tuple[MultiPoly, ...]] = tuple(MultiPoly.coerce(f) for f in factors)
            den = _product(self.factors)
        else:
            self.factors = None
        den = MultiPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator is identically zero")
        self._den = den

    @classmethod
    def from_factors(cls, num, factors: Iterable[MultiPoly], scale: Scalar = 1) -> "RationalFunction":
        """``num / (scale * prod(factors))``; ``scale`` is folded into the numerator."""
        scale = Fraction(scale)
        if scale == 0:
            raise ZeroDivisionError("zero scale")
        return cls(MultiPoly.coerce(num) * (1 / scale), factors=list(factors))

    @property
    def den(self) -> MultiPoly:
        return self._den

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def coerce(value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        return RationalFunction(MultiPoly.coerce(value), factors=())

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if self.factors is not None and other.factors is not None:
            mine, theirs = Counter(self.factors), Counter(other.factors)
            union = mine | theirs
            num = self.num * _product((union - mine).elements()) + other.num * _product((union - theirs).elements())
            return RationalFunction(num, factors=sorted(union.elements(), key=lambda f: f.canonical()))
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        if self.factors is not None:
            return RationalFunction(-self.num, factors=self.factors)
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        if self.factors is not None and other.factors is not None:
            return RationalFunction(self.num * other.num, factors=self.factors + other.factors)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def subs(self, **values) -> "RationalFunction":
        num = self.num.subs(**values)
        if self.factors is not None:
            return RationalFunction(num, factors=[f.subs(**values) for f in self.factors])
        return RationalFunction(num, self.den.subs(**values))

    def evaluate(self, **values: Scalar) -> Fraction:
        den = self.den.evaluate(**values)
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at {values}")
        return self.num.evaluate(**values) / den

    def __str__(self) -> str:
        if self.factors is not None:
            den = "*".join(f"({f})" for f in self.factors) or "1"
        else:
            den = f"({self.den})"
        return f"({self.num}) / {den}"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def ratfun_identity(f: RationalFunction, g: RationalFunction) -> bool:
    """True iff ``f.num * g.den - g.num * f.den`` is the zero polynomial."""
    f = RationalFunction.coerce(f)
    g = RationalFunction.coerce(g)
    if f.factors is not None and g.factors is not None:
        mine, theirs = Counter(f.factors), Counter(g.factors)
        common = mine & theirs
        lhs = f.num * _product((theirs - common).elements())
        rhs = g.num * _product((mine - common).elements())
        return lhs == rhs
    return f.num * g.den == g.num * f.den


RationalLike = Union[RationalFunction, MultiPoly, int, Fraction]
