"""Interrupter pairs (Q, P) with M* P M = M Q M*.

P is diagonal with entries prod_{m=1}^{k} (n + m + α) / (n + k + m + α).  Q is
the identity except for a symmetric c x c top-left corner, solved from the
c x c block of the identity, where the identity tail contributes nothing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

from .cesaro import CesaroMatrix, check_alpha, check_order, mqm_star_entry
from .exactnum import UniPoly, solve_lower
from .exactnum.linalg import transpose
from .telescope import closed_form_entry

log = logging.getLogger(__name__)

Block = Tuple[Tuple[Fraction, ...], ...]
RhsProvider = Callable[[int, Fraction, int, int], Fraction]


def p_entry(k: int, alpha, n: int) -> Fraction:
    check_order(k)
    alpha = check_alpha(alpha)
    if n < 0:
        raise ValueError("diagonal index must be nonnegative")
    out = Fraction(1)
    for m in range(1, k + 1):
        out *= (n + m + alpha) / (n + k + m + alpha)
    return out


@dataclass(frozen=True)
class DiagonalInterrupter:
    order: int
    alpha: Fraction

    def __post_init__(self):
        check_order(self.order)
        object.__setattr__(self, "alpha", check_alpha(self.alpha))

    def entry(self, n: int) -> Fraction:
        return p_entry(self.order, self.alpha, n)


@dataclass(frozen=True)
class CornerInterrupter:
    """Identity operator with its top-left ``size x size`` block replaced."""

    size: int
    block: Block

    def __post_init__(self):
        block = tuple(tuple(Fraction(x) for x in row) for row in self.block)
        if self.size < 1 or len(block) != self.size or any(len(r) != self.size for r in block):
            raise ValueError(f"corner must be {self.size}x{self.size}")
        for a in range(self.size):
            for b in range(a):
                if block[a][b] != block[b][a]:
                    raise ValueError(f"corner not symmetric at ({a}, {b})")
        object.__setattr__(self, "block", block)

    @classmethod
    def identity(cls, size: int) -> "CornerInterrupter":
        return cls(size, tuple(tuple(Fraction(int(a == b)) for b in range(size)) for a in range(size)))

    def entry(self, a: int, b: int) -> Fraction:
        if a < self.size and b < self.size:
            return self.block[a][b]
        return Fraction(int(a == b))

    def grown(self, size: int) -> "CornerInterrupter":
        """Same operator described with a larger corner."""
        return CornerInterrupter(size, tuple(tuple(self.entry(a, b) for b in range(size)) for a in range(size)))


@dataclass(frozen=True)
class InterrupterPair:
    q: CornerInterrupter
    p: DiagonalInterrupter


# -- the explicit order-3 corner --------------------------------------------

def _order3_formulas() -> List[List[UniPoly]]:
    a = UniPoly.x()
    base = (a + 1) * (a + 2) * (a + 3)
    q00 = (3 * a * a + 12 * a + 10) * base * Fraction(1, 60)
    q01 = -(a * (4 * a + 11) * base) * Fraction(1, 40)
    q02 = a * (2 * a + 3) * base * Fraction(1, 40)
    q11 = (6 * a**3 + 15 * a * a - a + 5) * (a + 2) * (a + 3) * Fraction(1, 30)
    q12 = -(a * base * (4 * a + 1)) * Fraction(1, 40)
    q22 = (3 * a**4 + 6 * a**3 + 7 * a * a - 6 * a + 20) * (a + 3) * Fraction(1, 60)
    return [[q00, q01, q02], [q01, q11, q12], [q02, q12, q22]]


def fixture_q_order3_symbolic() -> List[List[UniPoly]]:
    """The explicit order-3 corner as polynomials in α."""
    return _order3_formulas()


def fixture_q_order3(alpha) -> CornerInterrupter:
    """The explicit order-3 corner evaluated at a rational α."""
    alpha = check_alpha(alpha)
    return CornerInterrupter(3, tuple(tuple(p(alpha) for p in row) for row in _order3_formulas()))


# -- solving for the corner -------------------------------------------------

def solve_corner(k: int, alpha, size: Optional[int] = None, rhs: RhsProvider = closed_form_entry) -> CornerInterrupter:
    """Unique symmetric corner with M_c Q_c M_c^T = S_c.

    ``S_c`` holds the closed-form entries of M* P M for i, j < c.  M_c is
    lower triangular with a nonzero diagonal, so two triangular solves give
    Q_c = M_c^{-1} S_c M_c^{-T}.
    """
    check_order(k)
    alpha = check_alpha(alpha)
    c = k if size is None else size
    if c < 1:
        raise ValueError("corner size must be at least 1")
    m = CesaroMatrix(k, alpha)
    mc = [[m.entry(a, b) for b in range(c)] for a in range(c)]
    s = [[rhs(k, alpha, a, b) for b in range(c)] for a in range(c)]
    y = solve_lower(mc, s)  # M_c^{-1} S_c
    qc = solve_lower(mc, transpose(y))  # M_c^{-1} (M_c^{-1} S_c)^T
    return CornerInterrupter(c, tuple(tuple(row) for row in qc))


@dataclass(frozen=True)
class Mismatch:
    i: int
    j: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class IdentityReport:
    order: int
    alpha: Fraction
    n_check: int
    verified: bool
    provenance: str
    corner_size: int
    mismatch: Optional[Mismatch] = None
    escalations: Tuple[str, ...] = field(default=())

    @property
    def status(self) -> str:
        return "verified" if self.verified else "mismatch"


def verify_consistency(
    k: int,
    alpha,
    q: CornerInterrupter,
    p: Optional[DiagonalInterrupter] = None,
    n_check: int = 40,
    provenance: str = "solved",
    rhs: RhsProvider = closed_form_entry,
) -> IdentityReport:
    """Compare (M Q M*)_ij with the closed form of (M* P M)_ij for i, j <= n_check.

    Scans in row-major order and stops at the first mismatch.
    """
    alpha = check_alpha(alpha)
    if p is not None and (p.order != k or p.alpha != alpha):
        raise ValueError("diagonal interrupter belongs to a different operator")
    m = CesaroMatrix(k, alpha)
    for i in range(n_check + 1):
        for j in range(n_check + 1):
            lhs = mqm_star_entry(m, q, i, j)
            rhs_val = rhs(k, alpha, i, j)
            if lhs != rhs_val:
                return IdentityReport(k, alpha, n_check, False, provenance, q.size, Mismatch(i, j, lhs, rhs_val))
    return IdentityReport(k, alpha, n_check, True, provenance, q.size)


# -- corners as polynomials in α ----------------------------------------------

class SymbolicCornerError(ArithmeticError):
    """Interpolated corner entries failed validation at held-out α values."""


HELD_OUT = (Fraction(1, 3), Fraction(-1, 2), Fraction(23, 7))


def degree_bound(k: int) -> int:
    return 2 * k + 2


def _newton_interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> UniPoly:
    n = len(xs)
    coef = list(ys)
    for level in range(1, n):
        for idx in range(n - 1, level - 1, -1):
            coef[idx] = (coef[idx] - coef[idx - 1]) / (xs[idx] - xs[idx - level])
    poly = UniPoly([coef[-1]])
    for idx in range(n - 2, -1, -1):
        poly = poly * UniPoly([-xs[idx], 1]) + coef[idx]
    return poly


@lru_cache(maxsize=None)
def symbolic_corner(k: int, size: Optional[int] = None) -> Tuple[Tuple[UniPoly, ...], ...]:
    """Corner entries as polynomials in α, reconstructed by exact interpolation.

    Solves at 2d + 2 integer samples (d = 2k + 2), interpolates each entry and
    checks the result at three held-out values.
    """
    c = k if size is None else size
    d = degree_bound(k)
    xs = [Fraction(s) for s in range(2 * d + 2)]
    samples = [solve_corner(k, x, c).block for x in xs]
    rows = []
    for a in range(c):
        row = []
        for b in range(c):
            if b < a:
                row.append(rows[b][a])
                continue
            row.append(_newton_interpolate(xs, [blk[a][b] for blk in samples]))
        rows.append(row)
    for x in HELD_OUT:
        blk = solve_corner(k, x, c).block
        for a in range(c):
            for b in range(c):
                if rows[a][b](x) != blk[a][b]:
                    raise SymbolicCornerError(f"order {k}: corner entry ({a}, {b}) is not a polynomial of degree <= {2 * d + 1}")
    return tuple(tuple(r) for r in rows)
