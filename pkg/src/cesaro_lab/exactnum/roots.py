"""Exact real-root isolation with Sturm sequences.

Roots are located on a :class:`Domain` (an interval with rational endpoints,
right end possibly ``+inf``).  Rational roots are reported exactly; every
irrational root is bracketed by an open isolating interval of width at most
1/1024 whose closure avoids all other reported roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .unipoly import UniPoly, int_eval_sign, int_prem, poly_gcd, squarefree_decomposition, squarefree_part

MAX_WIDTH = Fraction(1, 1024)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Domain:
    """Interval ``lo..hi``; ``None`` stands for an infinite end."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo is None and self.lo_closed or self.hi is None and self.hi_closed:
            raise ValueError("an infinite end cannot be closed")

    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def contains(self, x: Number) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def __str__(self) -> str:
        left = ("[" if self.lo_closed else "(") + ("-inf" if self.lo is None else str(self.lo))
        right = ("inf" if self.hi is None else str(self.hi)) + ("]" if self.hi_closed else ")")
        return f"{left},{right}"


_DOMAIN_RE = re.compile(r"^\s*([\[(])\s*([^,]+?)\s*,\s*([^,]+?)\s*([\])])\s*$")


def parse_domain(text: str) -> Domain:
    """Parse ``"(-1,10]"``, ``"[0,inf)"`` and the like."""
    m = _DOMAIN_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse domain {text!r}")
    lb, lo, hi, rb = m.groups()

    def end(s: str):
        if s.lstrip("+-").lower() in ("inf", "infinity", "∞"):
            return None
        return Fraction(s)

    lo_v, hi_v = end(lo), end(hi)
    if lo_v is None and not lo.startswith("-"):
        raise ValueError("left end cannot be +inf")
    if hi_v is None and hi.startswith("-"):
        raise ValueError("right end cannot be -inf")
    if (lo_v is None and lb == "[") or (hi_v is None and rb == "]"):
        raise ValueError("an infinite end must be open")
    return Domain(lo_v, hi_v, lo_closed=lb == "[", hi_closed=rb == "]")


@dataclass(frozen=True)
class RealRoot:
    """A real algebraic number located by a rational bracket.

    Rational values have ``lo == hi``.  Otherwise the number is the unique
    root of the squarefree ``poly`` inside the open interval ``(lo, hi)``.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    poly: Optional[UniPoly] = field(default=None, compare=False)

    @classmethod
    def point(cls, x: Number, multiplicity: int = 1) -> "RealRoot":
        x = Fraction(x)
        return cls(x, x, multiplicity)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError("root is irrational; use the isolating interval")
        return self.lo

    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    def refine(self) -> "RealRoot":
        """Halve the isolating interval (a rational midpoint root becomes exact)."""
        if self.is_exact:
            return self
        mid = (self.lo + self.hi) / 2
        seq = sturm_sequence(self.poly)
        at_mid = int_eval_sign(seq[0], mid)
        if at_mid == 0:
            return RealRoot(mid, mid, self.multiplicity)
        at_hi = int_eval_sign(seq[0], self.hi)
        # one simple root inside: a sign change on (mid, hi) places it there
        if at_hi != 0:
            left = at_mid == at_hi
        else:
            left = count_roots_in(seq, self.lo, mid) == 1
        if left:
            return RealRoot(self.lo, mid, self.multiplicity, self.poly)
        return RealRoot(mid, self.hi, self.multiplicity, self.poly)

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        return f"root of {self.poly} in ({self.lo}, {self.hi})"


@dataclass(frozen=True)
class RootIsolation:
    """All real roots of a polynomial on a domain, sorted increasingly."""

    domain: Domain
    roots: Tuple[RealRoot, ...]

    @property
    def rational_roots(self) -> List[Tuple[Fraction, int]]:
        return [(r.value, r.multiplicity) for r in self.roots if r.is_exact]

    @property
    def intervals(self) -> List[RealRoot]:
        return [r for r in self.roots if not r.is_exact]


@dataclass(frozen=True)
class SignPiece:
    """A point (``lo is hi``) or an open/half-open stretch between consecutive roots."""

    lo: Optional[RealRoot]
    hi: Optional[RealRoot]
    lo_closed: bool
    hi_closed: bool
    sign: int
    sample: Optional[Fraction]

    @property
    def is_point(self) -> bool:
        return self.lo is not None and self.lo is self.hi


# -- Sturm machinery -----------------------------------------------------
# Sequences are kept as integer coefficient lists.  Each remainder is a
# positive multiple of the Euclidean one, so sign variations are unchanged.

IntSeq = Tuple[Tuple[int, ...], ...]


def _positive_part(a: List[int]) -> List[int]:
    g = 0
    for c in a:
        g = gcd(g, c)
    return [c // g for c in a] if g > 1 else a


@lru_cache(maxsize=512)
def sturm_sequence(f: UniPoly) -> IntSeq:
    ints = f.primitive_integer()
    deriv = [p * c for p, c in enumerate(ints) if p]
    seq = [ints, _positive_part(deriv)]
    while seq[-1] and len(seq[-1]) > 1:
        rem = int_prem(seq[-2], seq[-1])
        if not rem:
            break
        seq.append(_positive_part([-c for c in rem]))
    return tuple(tuple(p) for p in seq if p)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: IntSeq, x: Optional[Number], at_minus_inf: bool = False) -> int:
    if x is None:
        signs = [_sign(p[-1]) * ((-1) ** (len(p) - 1) if at_minus_inf else 1) for p in seq]
    else:
        x = Fraction(x)
        signs = [int_eval_sign(p, x) for p in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(seq: IntSeq, a: Optional[Number], b: Optional[Number]) -> int:
    """Distinct roots of the squarefree ``seq[0]`` in ``(a, b]`` (``None`` = infinite end)."""
    return sign_variations(seq, a, at_minus_inf=True) - sign_variations(seq, b)


def cauchy_bound(f: UniPoly) -> Fraction:
    lead = abs(f.lc)
    return 1 + max((abs(c) / lead for c in f.coeffs[:-1]), default=Fraction(0))


def _snap_rational(f: UniPoly, root: RealRoot) -> RealRoot:
    """Return the exact root if the isolated root of ``f`` is rational.

    A rational root p/q of a primitive integer polynomial has q dividing the
    leading coefficient L; once the bracket is narrower than 1/(2 L^2) the
    best approximation of its midpoint with denominator <= L is the only
    candidate.
    """
    lead = f.primitive_integer()[-1]
    limit = Fraction(1, 2 * lead * lead)
    while not root.is_exact and root.hi - root.lo >= limit:
        root = root.refine()
    if root.is_exact:
        return root
    cand = ((root.lo + root.hi) / 2).limit_denominator(lead)
    if root.lo < cand < root.hi and f(cand) == 0:
        return RealRoot.point(cand, root.multiplicity)
    return root


def _isolate_squarefree(f: UniPoly, multiplicity: int, domain: Domain) -> List[RealRoot]:
    seq = sturm_sequence(f)
    bound = cauchy_bound(f)
    lo = domain.lo if domain.lo is not None else -bound
    hi = domain.hi if domain.hi is not None else bound
    if domain.lo is not None and domain.hi is None:
        hi = max(bound, lo + 1)
    if domain.lo is None and domain.hi is not None:
        lo = min(-bound, hi - 1)
    out: List[RealRoot] = []
    if domain.lo_closed and int_eval_sign(seq[0], lo) == 0:
        out.append(RealRoot.point(lo, multiplicity))
    if hi <= lo:
        return out
    stack = [(lo, hi, count_roots_in(seq, lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            if int_eval_sign(seq[0], b) == 0:
                out.append(RealRoot.point(b, multiplicity))
                continue
            root = RealRoot(a, b, multiplicity, f)
            while not root.is_exact and root.hi - root.lo > MAX_WIDTH:
                root = root.refine()
            out.append(_snap_rational(f, root))
            continue
        m = (a + b) / 2
        left = count_roots_in(seq, a, m)
        stack.append((a, m, left))
        stack.append((m, b, n - left))
    return [r for r in out if not r.is_exact or domain.contains(r.value)]


def _closure_overlaps(a: RealRoot, b: RealRoot) -> bool:
    return not (a.hi < b.lo or b.hi < a.lo)


def _separate(roots: List[RealRoot], domain: Domain) -> List[RealRoot]:
    """Refine brackets until closures are disjoint and strictly inside the domain."""
    roots = list(roots)
    changed = True
    while changed:
        changed = False
        for idx, r in enumerate(roots):
            if r.is_exact:
                continue
            clash = (domain.lo is not None and r.lo <= domain.lo) or (domain.hi is not None and r.hi >= domain.hi)
            if not clash:
                clash = any(_closure_overlaps(r, other) for k, other in enumerate(roots) if k != idx)
            if clash:
                roots[idx] = r.refine()
                changed = True
    return sorted(roots, key=lambda r: (r.lo, r.hi))


# small integer roots are split off before any Sturm work
INTEGER_SEARCH = 64


def _split_integer_roots(f: UniPoly, domain: Domain) -> Tuple[List[int], UniPoly]:
    """Integer roots of the squarefree ``f`` in ``[-64, 64]`` and the cofactor."""
    ints = f.primitive_integer()
    bound = min(INTEGER_SEARCH, int(cauchy_bound(f)) + 1)
    found = []
    for r in range(-bound, bound + 1):
        if len(ints) < 2:
            break
        # synthetic division by (x - r); a zero remainder means r is a root
        quot = [0] * (len(ints) - 1)
        acc = 0
        for idx in range(len(ints) - 1, 0, -1):
            acc = acc * r + ints[idx]
            quot[idx - 1] = acc
        if acc * r + ints[0] == 0:
            found.append(r)
            ints = quot
    return [r for r in found if domain.contains(r)], UniPoly(ints)


def isolate_roots(p: UniPoly, domain: Domain) -> RootIsolation:
    """Isolate every real root of ``p`` in ``domain`` with its multiplicity.

    Small integer roots are found by trial division first; the cofactor is
    isolated by Sturm bisection and any remaining rational root is snapped to
    its exact value.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    if domain.is_empty():
        return RootIsolation(domain, ())
    roots: List[RealRoot] = []
    for factor, mult in squarefree_decomposition(p):
        found, rest = _split_integer_roots(factor, domain)
        roots.extend(RealRoot.point(r, mult) for r in found)
        if rest.degree > 0:
            roots.extend(_isolate_squarefree(rest, mult, domain))
    return RootIsolation(domain, tuple(_separate(roots, domain)))


def strip_integer_roots(f: UniPoly) -> Tuple[Dict[int, int], UniPoly]:
    """Integer roots of ``f`` in ``[-64, 64]`` with multiplicities, and the cofactor."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    found: Dict[int, int] = {}
    rest = f
    while rest.degree > 0:
        roots, cof = _split_integer_roots(rest, Domain(None, None))
        if not roots:
            break
        for r in roots:
            found[r] = found.get(r, 0) + 1
        rest = cof
    return found, rest


def _same_root(a: RealRoot, b: RealRoot) -> Optional[bool]:
    """Whether two overlapping brackets hold the same number (None: cannot tell yet)."""
    if a.is_exact and b.is_exact:
        return a.value == b.value
    if a.is_exact or b.is_exact:
        exact, other = (a, b) if a.is_exact else (b, a)
        if not other.lo < exact.value < other.hi:
            return False
        # the bracket isolates a single root of its polynomial
        return int_eval_sign(sturm_sequence(other.poly)[0], exact.value) == 0
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo >= hi:
        return None
    g = poly_gcd(a.poly, b.poly)
    if g.degree < 1:
        return False
    seq = sturm_sequence(g)
    inside = count_roots_in(seq, lo, hi) - (int_eval_sign(seq[0], hi) == 0)
    # each bracket isolates one root of its polynomial, so a common root in both is the root
    return inside > 0 if inside > 0 else None


def _merge_roots(roots: List[RealRoot]) -> List[RealRoot]:
    out: List[RealRoot] = []
    for r in sorted(roots, key=lambda x: (x.lo, x.hi)):
        merged = False
        idx = 0
        while idx < len(out):
            other = out[idx]
            if not _closure_overlaps(r, other):
                idx += 1
                continue
            same = _same_root(r, other)
            if same:
                if r.is_exact or (not other.is_exact and r.hi - r.lo < other.hi - other.lo):
                    out[idx] = r
                merged = True
                break
            if same is None:
                # refine the wider bracket and look again
                if not r.is_exact and (other.is_exact or r.hi - r.lo >= other.hi - other.lo):
                    r = r.refine()
                else:
                    out[idx] = other.refine()
                idx = 0
                continue
            idx += 1
        if not merged:
            out.append(r)
    return out


def isolate_union(polys: Sequence[UniPoly], domain: Domain) -> RootIsolation:
    """Distinct real roots of the product of ``polys`` on ``domain`` (multiplicity 1).

    Integer roots are split off each polynomial first.  The cofactors are
    isolated one at a time and coinciding roots merged by a gcd test, so no
    large product or lcm is ever formed.
    """
    points = set()
    roots: List[RealRoot] = []
    seen = set()
    for p in polys:
        if p.is_zero():
            raise ValueError("cannot isolate the roots of the zero polynomial")
        if p.degree < 1:
            continue
        found, rest = strip_integer_roots(p)
        points.update(r for r in found if domain.contains(r))
        if rest.degree < 1 or domain.is_empty():
            continue
        rest = squarefree_part(rest)
        if rest in seen:
            continue
        seen.add(rest)
        roots.extend(RealRoot(r.lo, r.hi, 1, r.poly) for r in isolate_roots(rest, domain).roots)
    roots.extend(RealRoot.point(r) for r in sorted(points))
    return RootIsolation(domain, tuple(_separate(_merge_roots(roots), domain)))


def sign_at_root(q: UniPoly, root: RealRoot) -> int:
    """Exact sign of ``q`` at a (possibly irrational) root."""
    if root.is_exact:
        return q.sign_at(root.value)
    if q.is_zero():
        return 0
    g = poly_gcd(root.poly, q)
    if g.degree > 0 and count_roots_in(sturm_sequence(g), root.lo, root.hi) > 0:
        return 0
    q_sqf = squarefree_part(q) if q.degree > 0 else q
    while True:
        if q.degree < 1:
            return _sign(q.lc)
        if q(root.lo) != 0 and count_roots_in(sturm_sequence(q_sqf), root.lo, root.hi) == 0:
            return q.sign_at(root.lo)
        root = root.refine()
        if root.is_exact:
            return q.sign_at(root.value)


def _right_edge(r: RealRoot) -> Fraction:
    return r.hi


def _left_edge(r: RealRoot) -> Fraction:
    return r.lo


def _sample_between(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def partition(isolation: RootIsolation) -> List[Tuple[Optional[RealRoot], Optional[RealRoot], bool, bool, Optional[Fraction]]]:
    """Split the domain into root points and the open stretches between them.

    Each entry is ``(lo, hi, lo_closed, hi_closed, sample)``; points have
    ``lo is hi`` and ``sample`` set only when the point is rational.
    """
    dom = isolation.domain
    if dom.is_empty():
        return []
    if dom.lo is not None and dom.lo == dom.hi:
        pt = isolation.roots[0] if isolation.roots else RealRoot.point(dom.lo)
        return [(pt, pt, True, True, dom.lo)]
    pieces = []
    lo_root = None if dom.lo is None else RealRoot.point(dom.lo)
    lo_closed = dom.lo_closed
    lo_edge = dom.lo
    roots = list(isolation.roots)
    if roots and dom.lo is not None and roots[0].is_exact and roots[0].value == dom.lo:
        first = roots.pop(0)
        pieces.append((first, first, True, True, first.value))
        lo_root, lo_closed = first, False
    for r in roots:
        pieces.append((lo_root, r, lo_closed, False, _sample_between(lo_edge, _left_edge(r))))
        pieces.append((r, r, True, True, r.value if r.is_exact else None))
        lo_root, lo_closed, lo_edge = r, False, _right_edge(r)
    hi_root = None if dom.hi is None else RealRoot.point(dom.hi)
    if pieces and pieces[-1][0] is pieces[-1][1] and dom.hi is not None and pieces[-1][0].is_exact \
            and pieces[-1][0].value == dom.hi:
        return pieces
    if dom.hi is not None and lo_edge is not None and lo_edge == dom.hi:
        return pieces
    pieces.append((lo_root, hi_root, lo_closed, dom.hi_closed, _sample_between(lo_edge, dom.hi)))
    return pieces


def sign_between_roots(p: UniPoly, isolation: RootIsolation, domain: Optional[Domain] = None) -> List[SignPiece]:
    """Signs of ``p`` on the pieces cut out by its isolated roots."""
    if domain is not None and domain != isolation.domain:
        raise ValueError("isolation was computed on a different domain")
    out = []
    for lo, hi, lc, hc, sample in partition(isolation):
        if lo is not None and lo is hi:
            out.append(SignPiece(lo, hi, True, True, sign_at_root(p, lo), sample))
        else:
            # a closed domain end that is not a root shares the sign of the open stretch
            out.append(SignPiece(lo, hi, lc, hc, p.sign_at(sample), sample))
    return out
