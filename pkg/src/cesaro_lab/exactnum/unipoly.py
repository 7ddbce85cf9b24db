"""Dense univariate polynomials over the rationals (the variable is α)."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Sequence, Tuple, Union

Number = Union[int, Fraction]


class UniPoly:
    """Polynomial ``c[0] + c[1] x + ... + c[n] x^n`` with Fraction coefficients.

    Trailing zeros are stripped on construction, so the leading coefficient is
    nonzero unless the polynomial is zero (empty coefficient tuple).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c: Number) -> "UniPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "UniPoly":
        out = cls([lead])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    # -- inspection ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Number) -> int:
        if not self.coeffs:
            return 0
        sign = int_eval_sign(self.primitive_integer(), Fraction(x))
        return sign if self.coeffs[-1] > 0 else -sign

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def coerce(value) -> "UniPoly":
        if isinstance(value, UniPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return UniPoly([value])
        return NotImplemented

    def __add__(self, other):
        other = UniPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = UniPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        other = UniPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for p, a in enumerate(self.coeffs):
            if a:
                for q, b in enumerate(other.coeffs):
                    out[p + q] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: "UniPoly"):
        other = UniPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.lc
        dd = other.degree
        for p in range(len(rem) - 1, dd - 1, -1):
            c = rem[p]
            if c:
                f = c / lead
                quot[p - dd] = f
                for q, b in enumerate(other.coeffs):
                    rem[p - dd + q] -= f * b
        return UniPoly(quot), UniPoly(rem[:dd] if dd > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        other = UniPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- algebra ------------------------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly(p * c for p, c in enumerate(self.coeffs) if p)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def primitive_integer(self) -> List[int]:
        """Integer coefficients with content 1 and positive leading coefficient."""
        if self.is_zero():
            return []
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        sgn = 1 if ints[-1] > 0 else -1
        return [sgn * c // g for c in ints]

    def shift(self, a: Number) -> "UniPoly":
        """The polynomial ``x -> p(x + a)``."""
        out = UniPoly()
        lin = UniPoly([a, 1])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for p in range(self.degree, -1, -1):
            c = self.coeffs[p]
            if not c:
                continue
            mono = "" if p == 0 else ("α" if p == 1 else f"α^{p}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self) -> str:
        return f"UniPoly({self})"


# -- integer polynomial kernels (coefficient lists, low degree first) --------------

def int_content(a: Sequence[int]) -> int:
    return reduce(gcd, a, 0)


def int_primitive(a: Sequence[int]) -> List[int]:
    """Divide by the content and make the leading coefficient positive."""
    g = int_content(a)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def int_prem(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Remainder of |lc(b)|^(deg a - deg b + 1) * a by b; a positive multiple of rem(a, b)."""
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    scale = abs(lead)
    sign = 1 if lead > 0 else -1
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        shift = len(rem) - 1 - db
        # rem <- |lead| * rem - sign * c * x^shift * b
        rem = [scale * x for x in rem]
        f = sign * c
        for q, bq in enumerate(b):
            rem[shift + q] -= f * bq
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def int_gcd(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Primitive gcd by the primitive pseudo-remainder sequence."""
    a, b = int_primitive(a), int_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = int_prem(a, b)
        a, b = b, int_primitive(r)
    return a


def int_eval_sign(a: Sequence[int], x: Fraction) -> int:
    """Sign of a(x) for a rational x, using homogeneous integer Horner."""
    p, q = x.numerator, x.denominator
    acc = 0
    qpow = 1
    for c in reversed(a):
        acc = acc * p + c * qpow
        qpow *= q
    # acc = q^deg * a(p/q) with q > 0
    return (acc > 0) - (acc < 0)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    g = int_gcd(a.primitive_integer(), b.primitive_integer())
    return UniPoly(g).monic()


def squarefree_decomposition(f: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Yun's algorithm: ``f = lc * prod(g_m ** m)`` with monic, squarefree, coprime ``g_m``.

    Only factors of positive degree are returned.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    if f.degree < 1:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    m = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, m))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        m += 1
    return out


def squarefree_part(f: UniPoly) -> UniPoly:
    if f.degree < 1:
        return UniPoly([1])
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def poly_lcm(polys: Sequence[UniPoly]) -> UniPoly:
    out = UniPoly([1])
    for p in polys:
        if p.is_zero() or p.degree < 1:
            continue
        out = (out * p).exact_div(poly_gcd(out, p)).monic()
    return out
