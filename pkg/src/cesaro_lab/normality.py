"""Supraposinormality, posinormality and the hyponormality sufficient condition.

* The identity M* P M = M Q M* is checked entry by entry on a finite window.
* Q positive definite and invertible (with P positive and invertible) gives
  posinormality and coposinormality.
* Q >= I >= P >= 0 is sufficient for hyponormality.  P <= I always holds for
  the diagonal family used here, so the question reduces to Q - I >= 0 on
  the corner, decided with all principal minors.

α-ranges are exact: the boundary points are roots of minor polynomials,
isolated with Sturm sequences.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .cesaro import CesaroMatrix, check_alpha, check_order
from .exactnum import ALPHA, T, Domain, RealRoot, UniPoly, det, isolate_union, sign_at_root
from .exactnum.linalg import principal_minors, submatrix
from .exactnum.roots import partition
from .interrupters import (
    CornerInterrupter,
    IdentityReport,
    SymbolicCornerError,
    fixture_q_order3,
    fixture_q_order3_symbolic,
    solve_corner,
    symbolic_corner,
    verify_consistency,
)
from .telescope import series_brackets

log = logging.getLogger(__name__)

PD = "positive-definite"
PSD = "positive-semidefinite"
INDEFINITE = "indefinite"

HYPONORMAL_LABEL = "sufficient-condition range (Q >= I >= P >= 0)"
POSINORMAL_LABEL = "Q and P positive and invertible"
INCONCLUSIVE = "inconclusive (sufficient condition only)"
IN_RANGE = "sufficient condition holds"

DEFAULT_DOMAIN = Domain(Fraction(-1), Fraction(10), lo_closed=False, hi_closed=True)


# -- PSD certificates ----------------------------------------------------------

@dataclass(frozen=True)
class PsdCertificate:
    dimension: int
    minors: Dict[Tuple[int, ...], Fraction]
    verdict: str


def psd_certificate(matrix: Sequence[Sequence[Fraction]]) -> PsdCertificate:
    """Classify a symmetric rational matrix from all of its principal minors."""
    n = len(matrix)
    minors = principal_minors(matrix)
    leading = [minors[tuple(range(s))] for s in range(1, n + 1)]
    if all(v > 0 for v in leading):
        verdict = PD
    elif all(v >= 0 for v in minors.values()):
        verdict = PSD
    else:
        verdict = INDEFINITE
    return PsdCertificate(n, minors, verdict)


def _shifted(block, shift) -> List[List]:
    return [[x - shift if a == b else x for b, x in enumerate(row)] for a, row in enumerate(block)]


def default_corner(k: int, alpha, size: Optional[int] = None) -> Tuple[CornerInterrupter, str]:
    if k == 3 and size in (None, 3):
        return fixture_q_order3(alpha), "fixture"
    return solve_corner(k, alpha, size), "solved"


def corner_psd(k: int, alpha, shift: int = 1, size: Optional[int] = None) -> PsdCertificate:
    """Certificate for corner(Q) - shift * I at a fixed rational α."""
    q, _ = default_corner(k, alpha, size)
    return psd_certificate(_shifted(q.block, shift))


# -- symbolic minors -------------------------------------------------------------

class Minor(NamedTuple):
    indices: Tuple[int, ...]
    poly: UniPoly

    @property
    def is_leading(self) -> bool:
        return self.indices == tuple(range(len(self.indices)))


def corner_polys(k: int, size: Optional[int] = None) -> List[List[UniPoly]]:
    check_order(k)
    if k == 3 and size in (None, 3):
        return fixture_q_order3_symbolic()
    return [list(r) for r in symbolic_corner(k, size)]


def q_minors_symbolic(k: int, shift: int = 0, size: Optional[int] = None) -> List[Minor]:
    """All principal minors of corner(Q) - shift * I as polynomials in α, smallest first."""
    block = _shifted(corner_polys(k, size), shift)
    n = len(block)
    return [
        Minor(idx, det(submatrix(block, idx)))
        for s in range(1, n + 1)
        for idx in combinations(range(n), s)
    ]


def p_below_identity(k: int) -> bool:
    """0 < P < I for every α > -1 and n >= 0, checked factor by factor.

    Each ratio (n + m + α) / (n + k + m + α) has numerator above m - 1 >= 0 and
    a denominator larger by a positive constant.
    """
    check_order(k)
    n = T  # stands in for the diagonal index
    for m in range(1, k + 1):
        gap = (n + k + m + ALPHA) - (n + m + ALPHA)
        floor = (n + m + ALPHA).subs(t=0, alpha=-1)
        if not (gap.is_constant() and gap.constant_value() > 0 and floor.constant_value() >= 0):
            return False
    return True


def shifted_minors_regression() -> bool:
    a = UniPoly.x()
    det2_expected = (a - 1) * a * a * (a + 1) * UniPoly([2308, 1860, 521, 60, 3]) * Fraction(1, 2880)
    det3_expected = (a - 2) * (a - 1) ** 2 * a**3 * (a + 1) ** 2 * (a + 2) * Fraction(1, 8640)
    minors = {m.indices: m.poly for m in q_minors_symbolic(3, shift=1)}
    return minors[(0, 1)] == det2_expected and minors[(0, 1, 2)] == det3_expected


def order3_determinant_regression() -> bool:
    a = UniPoly.x()
    det2_expected = (1 + a) * (2 + a) ** 2 * (3 + a) ** 2 * (4 + a) * UniPoly([20, 15, 3]) * Fraction(1, 2880)
    det3_expected = (1 + a) * (2 + a) ** 2 * (3 + a) ** 3 * (4 + a) ** 2 * (5 + a) * Fraction(1, 8640)
    minors = {m.indices: m.poly for m in q_minors_symbolic(3)}
    return minors[(0, 1)] == det2_expected and minors[(0, 1, 2)] == det3_expected


# -- α-range reports ------------------------------------------------------------------

@dataclass(frozen=True)
class RangePiece:
    lo: Optional[RealRoot]
    hi: Optional[RealRoot]
    lo_closed: bool
    hi_closed: bool

    @property
    def is_point(self) -> bool:
        return self.lo is not None and self.hi is not None and self.lo == self.hi and self.lo.is_exact

    def __str__(self) -> str:
        def show(r: Optional[RealRoot], inf: str) -> str:
            if r is None:
                return inf
            return str(r.value) if r.is_exact else f"~{r.approx():.6g}"

        if self.is_point:
            return "{" + show(self.lo, "") + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{show(self.lo, '-inf')}, {show(self.hi, 'inf')}{right}"


CONDITIONS: Dict[str, Callable[[List[int]], bool]] = {
    "all-positive": lambda signs: all(s > 0 for s in signs),
    "all-nonnegative": lambda signs: all(s >= 0 for s in signs),
}


@dataclass(frozen=True)
class AlphaRangeReport:
    domain: Domain
    label: str
    condition: str
    pieces: Tuple[RangePiece, ...]
    unbounded: bool = False
    polys: Tuple[UniPoly, ...] = field(default=(), compare=False)

    def display_pieces(self) -> List[str]:
        out = [str(p) for p in self.pieces]
        if self.unbounded and out:
            last = self.pieces[-1]
            out[-1] = str(RangePiece(last.lo, None, last.lo_closed, False))
        return out

    def __str__(self) -> str:
        return " ∪ ".join(self.display_pieces()) or "∅"

    def contains(self, alpha) -> bool:
        alpha = Fraction(alpha)
        if not self.domain.contains(alpha):
            return False
        return _condition_at(self.polys, CONDITIONS[self.condition], RealRoot.point(alpha))


def _condition_at(polys: Sequence[UniPoly], predicate, point: RealRoot) -> bool:
    return predicate([sign_at_root(p, point) for p in polys])


def semialgebraic_range(polys: Sequence[UniPoly], condition: str, domain: Domain, label: str) -> AlphaRangeReport:
    """The subset of ``domain`` where the sign condition on ``polys`` holds, exactly."""
    polys = tuple(polys)
    predicate = CONDITIONS[condition]
    if domain.is_empty():
        return AlphaRangeReport(domain, label, condition, (), False, polys)
    pieces = _range_pieces(polys, predicate, domain)
    unbounded = False
    if domain.hi is None:
        unbounded = bool(pieces) and pieces[-1].hi is None
    elif pieces and pieces[-1].hi is not None and pieces[-1].hi.is_exact and pieces[-1].hi.value == domain.hi \
            and pieces[-1].hi_closed:
        beyond = _range_pieces(polys, predicate, Domain(domain.hi, None))
        unbounded = len(beyond) == 1 and beyond[0].lo is not None and beyond[0].lo.value == domain.hi \
            and beyond[0].hi is None
    return AlphaRangeReport(domain, label, condition, tuple(pieces), unbounded, polys)


def _range_pieces(polys, predicate, domain: Domain) -> List[RangePiece]:
    iso = isolate_union([p for p in polys if not p.is_zero()], domain)
    items = partition(iso)
    flags = []
    for lo, hi, lo_closed, hi_closed, sample in items:
        if lo is not None and lo is hi:
            flags.append(_condition_at(polys, predicate, lo))
        else:
            flags.append(_condition_at(polys, predicate, RealRoot.point(sample)))
    out: List[RangePiece] = []
    run_start = None
    for idx, ok in enumerate(flags + [False]):
        if ok and run_start is None:
            run_start = idx
        elif not ok and run_start is not None:
            first, last = items[run_start], items[idx - 1]
            out.append(RangePiece(first[0], last[1], first[2], last[3]))
            run_start = None
    return out


def posinormal_coposinormal_range(k: int, domain: Domain = DEFAULT_DOMAIN, size: Optional[int] = None) -> AlphaRangeReport:
    """α where every leading principal minor of corner(Q) is positive."""
    leading = [m.poly for m in q_minors_symbolic(k, size=size) if m.is_leading]
    if not p_below_identity(k):
        return AlphaRangeReport(domain, POSINORMAL_LABEL, "all-positive", ())
    return semialgebraic_range(leading, "all-positive", domain, POSINORMAL_LABEL)


def hyponormality_range(k: int, domain: Domain = DEFAULT_DOMAIN, size: Optional[int] = None) -> AlphaRangeReport:
    """α where corner(Q) - I is positive semidefinite (all principal minors >= 0)."""
    minors = [m.poly for m in q_minors_symbolic(k, shift=1, size=size)]
    if not p_below_identity(k):
        return AlphaRangeReport(domain, HYPONORMAL_LABEL, "all-nonnegative", ())
    return semialgebraic_range(minors, "all-nonnegative", domain, HYPONORMAL_LABEL)


# -- identity verification ----------------------------------------------------------------

def verify_supraposinormal(k: int, alpha, n_check: int = 40, corner: str = "auto") -> IdentityReport:
    """Build (Q, P) and check M* P M = M Q M* on the (n_check + 1)^2 window.

    ``corner`` is ``"auto"`` (explicit corner for order 3, solved otherwise),
    ``"fixture"``, ``"solved"`` or ``"identity"``.  A solved corner of size k
    that fails is retried once with size k + 1 and the escalation recorded.
    """
    check_order(k)
    alpha = check_alpha(alpha)
    if corner == "auto":
        corner = "fixture" if k == 3 else "solved"
    if corner == "fixture":
        if k != 3:
            raise ValueError("the explicit corner exists for order 3 only")
        return verify_consistency(k, alpha, fixture_q_order3(alpha), n_check=n_check, provenance="fixture")
    if corner == "identity":
        return verify_consistency(k, alpha, CornerInterrupter.identity(k), n_check=n_check, provenance="identity")
    if corner != "solved":
        raise ValueError(f"unknown corner mode {corner!r}")
    report = verify_consistency(k, alpha, solve_corner(k, alpha), n_check=n_check, provenance="solved")
    if report.verified:
        return report
    note = f"corner size {k} failed at ({report.mismatch.i}, {report.mismatch.j}); retried with size {k + 1}"
    log.warning("order %d, alpha %s: %s", k, alpha, note)
    retry = verify_consistency(k, alpha, solve_corner(k, alpha, k + 1), n_check=n_check, provenance="solved")
    return IdentityReport(
        retry.order, retry.alpha, retry.n_check, retry.verified, retry.provenance, retry.corner_size,
        retry.mismatch, (note,),
    )


# -- finite sections --------------------------------------------------------------------

@dataclass(frozen=True)
class DefectReport:
    order: int
    alpha: Fraction
    section: int
    terms: int
    min_eigenvalue: float
    max_bracket_width: Fraction
    sufficient_condition: bool
    flag: str
    eigenvalues: Tuple[float, ...] = ()


def section_defect_brackets(k: int, alpha, n: int, terms: int):
    """Entry brackets of the n x n section of A*A - AA*: (lower, upper) matrices."""
    alpha = check_alpha(alpha)
    m = CesaroMatrix(k, alpha)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    ata = series_brackets(k, alpha, pairs, terms, kind="ata", two_sided=True)
    lower = [[Fraction(0)] * n for _ in range(n)]
    upper = [[Fraction(0)] * n for _ in range(n)]
    for i, j in pairs:
        aat = sum((m.entry(i, u) * m.entry(j, u) for u in range(min(i, j) + 1)), Fraction(0))
        lo, hi = ata[(i, j)]
        lower[i][j] = lower[j][i] = lo - aat
        upper[i][j] = upper[j][i] = hi - aat
    return lower, upper


def finite_section_defect(k: int, alpha, n: int = 8, terms: int = 100_000) -> DefectReport:
    """Minimum eigenvalue of the midpoint n x n section of A*A - AA*.

    A*A entries are infinite series and are enclosed by rigorous brackets;
    AA* entries are finite sums and exact.  The eigenvalue is a floating
    estimate: evidence, not proof.  No sign is asserted outside the range
    where the sufficient condition holds.
    """
    check_order(k)
    alpha = check_alpha(alpha)
    if n < 1 or terms < 1:
        raise ValueError("section size and term count must be positive")
    lower, upper = section_defect_brackets(k, alpha, n, terms)
    mid = np.array([[float((lo + hi) / 2) for lo, hi in zip(lr, ur)] for lr, ur in zip(lower, upper)])
    width = max(hi - lo for lr, ur in zip(lower, upper) for lo, hi in zip(lr, ur))
    eig = np.linalg.eigvalsh(mid)
    holds = corner_psd(k, alpha).verdict in (PD, PSD)
    return DefectReport(
        k, alpha, n, terms, float(eig[0]), width, holds, IN_RANGE if holds else INCONCLUSIVE, tuple(float(e) for e in eig)
    )


__all__ = [
    "AlphaRangeReport",
    "DEFAULT_DOMAIN",
    "DefectReport",
    "INCONCLUSIVE",
    "Minor",
    "PsdCertificate",
    "RangePiece",
    "SymbolicCornerError",
    "corner_psd",
    "finite_section_defect",
    "hyponormality_range",
    "order3_determinant_regression",
    "p_below_identity",
    "posinormal_coposinormal_range",
    "psd_certificate",
    "q_minors_symbolic",
    "semialgebraic_range",
    "shifted_minors_regression",
    "verify_supraposinormal",
]
