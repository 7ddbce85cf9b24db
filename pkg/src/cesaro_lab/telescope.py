"""Telescoping closed forms for the entries of M* P M.

For j >= i the (i, j) entry of M* P M is the series over t >= 0 of

    k^2 prod_{m=1}^{k-1} (j - i + m + t) prod_{m=1}^{k-1} (t + m) / prod_{m=1}^{2k} (j + t + m + α).

The solver finds s(t) = N(t) / prod_{m=1}^{D} (j + t + m + α), D = 2k - 1 and
deg N = D - 1, with s(t) - s(t+1) equal to the summand.  The coefficients of N
are polynomials in i, j, α, found by matching powers of t.  Since deg N < D,
s(t) -> 0 and the series equals s(0).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from .cesaro import check_alpha, check_order
from .exactnum import ALPHA, I, J, T, MultiPoly, RationalFunction, ratfun_identity

log = logging.getLogger(__name__)

# partial sums up to this many terms are added exactly; longer ones are rounded outward
EXACT_TERMS = 256
_PRECISION_BITS = 96


class AnsatzFailure(ArithmeticError):
    """The telescoping ansatz did not reproduce the summand."""

    def __init__(self, order: int, degree: int, message: str = ""):
        self.order = order
        self.degree = degree
        super().__init__(message or f"order {order}: no telescoping form with numerator degree {degree}")


def _linear_factors(k: int, count: int, shift: int = 0) -> List[MultiPoly]:
    return [J + T + m + ALPHA for m in range(1 + shift, count + 1 + shift)]


def summand_symbolic(k: int) -> RationalFunction:
    """Series summand with i, j, α, t all symbolic."""
    check_order(k)
    num = MultiPoly.const(k * k)
    for m in range(1, k):
        num = num * (J - I + m + T) * (T + m)
    return RationalFunction(num, factors=_linear_factors(k, 2 * k))


def summand(k: int, i: int, j: int) -> RationalFunction:
    """Summand for fixed indices ``i <= j``; symbolic in t and α."""
    if i > j:
        raise ValueError(f"summand needs i <= j (got i={i}, j={j}); swap the indices")
    return summand_symbolic(k).subs(i=i, j=j)


@dataclass(frozen=True)
class TelescopeForm:
    """s(t) = sum_m coefficients[m] t^m / prod_{m=1}^{D} (j + t + m + α)."""

    order: int
    coefficients: Tuple[MultiPoly, ...]
    denominator_count: int

    @property
    def numerator_degree(self) -> int:
        return len(self.coefficients) - 1

    def numerator(self) -> MultiPoly:
        out = MultiPoly()
        for m, c in enumerate(self.coefficients):
            out = out + c * T**m
        return out

    def factors(self) -> List[MultiPoly]:
        return _linear_factors(self.order, self.denominator_count)

    def s(self) -> RationalFunction:
        return RationalFunction(self.numerator(), factors=self.factors())

    def s_shifted(self, by: int = 1) -> RationalFunction:
        return self.s().subs(t=T + by)

    def at_zero(self) -> RationalFunction:
        """s(0) as a rational function of i, j, α."""
        return self.s().subs(t=0)

    def evaluate(self, alpha, i: int, j: int, t: int) -> Fraction:
        return self.s().evaluate(alpha=alpha, i=i, j=j, t=t)

    def degree_guard(self) -> bool:
        """Numerator degree in t is below the denominator degree, so s(t) -> 0."""
        return self.numerator().degree("t") < self.denominator_count


def _shift_operator_column(power: int, count: int) -> Dict[int, MultiPoly]:
    """t-coefficients of t^p (t + A + D + 1) - (t + 1)^p (t + A + 1), with A = j + α."""
    a = J + ALPHA
    out: Dict[int, MultiPoly] = {}

    def add(deg: int, value: MultiPoly) -> None:
        out[deg] = out.get(deg, MultiPoly()) + value

    add(power + 1, MultiPoly.const(1))
    add(power, a + count + 1)
    for r in range(power + 1):
        binom = comb(power, r)
        add(r + 1, MultiPoly.const(-binom))
        add(r, -binom * (a + 1))
    return {d: v for d, v in out.items() if not v.is_zero()}


def solve_telescope_ansatz(k: int, extra: int = 0) -> TelescopeForm:
    """Solve with D = 2k - 1 + extra denominator factors and numerator degree D - 1."""
    check_order(k)
    count = 2 * k - 1 + extra
    degree = count - 1
    target = summand_symbolic(k).num
    for m in range(2 * k + 1, count + 2):
        target = target * (T + J + ALPHA + m)
    rhs = target.coefficients("t")
    columns = [_shift_operator_column(p, count) for p in range(degree + 1)]
    coeffs: List[MultiPoly] = [MultiPoly()] * (degree + 1)
    for m in range(degree, -1, -1):
        acc = rhs.get(m, MultiPoly())
        for higher in range(m + 1, degree + 1):
            term = columns[higher].get(m)
            if term is not None and not coeffs[higher].is_zero():
                acc = acc - coeffs[higher] * term
        diag = columns[m].get(m, MultiPoly()).constant_value()
        coeffs[m] = acc / diag
    form = TelescopeForm(k, tuple(coeffs), count)
    difference = form.s() - form.s_shifted(1)
    if not ratfun_identity(difference, summand_symbolic(k)):
        raise AnsatzFailure(k, degree)
    return form


@lru_cache(maxsize=None)
def solve_telescope(k: int, max_extra: int = 1) -> TelescopeForm:
    """Closed form for order k, escalating the ansatz if the default shape fails."""
    last: AnsatzFailure | None = None
    for extra in range(max_extra + 1):
        try:
            form = solve_telescope_ansatz(k, extra)
        except AnsatzFailure as exc:
            last = exc
            log.warning("telescope ansatz failed for order %d at numerator degree %d", k, exc.degree)
            continue
        if extra:
            log.warning("order %d needed an escalated telescope ansatz (+%d)", k, extra)
        return form
    assert last is not None
    raise last


@lru_cache(maxsize=256)
def _closed_form_in_ij(k: int, alpha: Fraction) -> Tuple[MultiPoly, int]:
    form = solve_telescope(k)
    return form.coefficients[0].subs(alpha=alpha), form.denominator_count


def closed_form_entry(k: int, alpha, i: int, j: int) -> Fraction:
    """Exact (i, j) entry of M* P M, symmetric in i and j."""
    check_order(k)
    alpha = check_alpha(alpha)
    lo, hi = min(i, j), max(i, j)
    num, count = _closed_form_in_ij(k, alpha)
    den = Fraction(1)
    for m in range(1, count + 1):
        den *= hi + m + alpha
    return num.evaluate(i=lo, j=hi) / den


# -- independent numerical oracle ----------------------------------------

def batched_partial_sums(
    k: int,
    alpha: Fraction,
    pairs: Sequence[Tuple[int, int]],
    terms: int,
    kind: str = "mpm",
) -> Dict[Tuple[int, int], Tuple[Fraction, Fraction]]:
    """Rigorous enclosures of the first ``terms`` terms of several series at once.

    ``kind="mpm"`` sums the (M* P M)_ij series, ``kind="ata"`` the (A* A)_ij
    series.  Both run over u = max(i, j) + t.  Short sums are exact; long sums
    round each term down and up on a 2^-96 grid so the bounds stay small.
    """
    if kind not in ("mpm", "ata"):
        raise ValueError(f"unknown series kind {kind!r}")
    p, q = alpha.numerator, alpha.denominator
    exact = terms <= EXACT_TERMS
    norm = [(min(a, b), max(a, b)) for a, b in pairs]
    starts = sorted({hi for _, hi in norm})
    lows = sorted({lo for lo, _ in norm} | set(starts))
    scale = k * k * q ** (2 * k)
    lower: Dict[Tuple[int, int], int | Fraction] = {pr: (Fraction(0) if exact else 0) for pr in norm}
    upper: Dict[Tuple[int, int], int] = {pr: 0 for pr in norm}
    if not norm:
        return {}
    first, last = min(starts), max(starts) + terms
    for u in range(first, last):
        if kind == "mpm":
            den = 1
            for m in range(1, 2 * k + 1):
                den *= q * (u + m) + p
        else:
            d = 1
            for m in range(1, k + 1):
                d *= q * (u + m) + p
            den = d * d
        falling = {}
        for idx in lows:
            if idx <= u:
                v = 1
                for m in range(1, k):
                    v *= u - idx + m
                falling[idx] = v
        for pr in norm:
            lo, hi = pr
            if not hi <= u < hi + terms:
                continue
            num = scale * falling[lo] * falling[hi]
            if exact:
                lower[pr] += Fraction(num, den)
            else:
                quo, rem = divmod(num << _PRECISION_BITS, den)
                lower[pr] += quo
                upper[pr] += quo + (rem != 0)
    out = {}
    for pr in norm:
        if exact:
            out[pr] = (lower[pr], lower[pr])
        else:
            out[pr] = (Fraction(lower[pr], 1 << _PRECISION_BITS), Fraction(upper[pr], 1 << _PRECISION_BITS))
    return {(a, b): out[(min(a, b), max(a, b))] for a, b in pairs}


def tail_upper_bound(k: int, alpha: Fraction, start: int, terms: int) -> Fraction:
    """Bound on sum_{t >= terms} of either series, via the decreasing majorant
    k^2 (x + d)^{2k-2} / x^{2k}, x = t + start + 1 + α, d = max(2k - 1 - α, 0),
    compared with its integral from t = terms - 1."""
    d = max(2 * k - 1 - alpha, Fraction(0))
    x0 = terms + start + alpha
    total = Fraction(0)
    for r in range(2 * k - 1):
        total += comb(2 * k - 2, r) * d**r / ((r + 1) * x0 ** (r + 1))
    return k * k * total


def tail_lower_bound(k: int, alpha: Fraction, start: int, terms: int) -> Fraction:
    """Bound from below via the minorant k^2 (t + 1)^{2k-2} / (t + c)^{2k}, c = start + 2k + α.

    The minorant decreases once t > (k - 1) c - k; before that point the
    bound is just 0.
    """
    c = start + 2 * k + alpha
    if terms <= (k - 1) * c - k:
        return Fraction(0)
    g = c - 1
    x1 = terms + c
    total = Fraction(0)
    for r in range(2 * k - 1):
        total += comb(2 * k - 2, r) * (-g) ** r / ((r + 1) * x1 ** (r + 1))
    return max(k * k * total, Fraction(0))


def series_brackets(
    k: int, alpha, pairs: Iterable[Tuple[int, int]], terms: int, kind: str = "mpm", two_sided: bool = False
) -> Dict[Tuple[int, int], Tuple[Fraction, Fraction]]:
    check_order(k)
    alpha = check_alpha(alpha)
    if terms < 1:
        raise ValueError("need at least one term")
    pairs = list(pairs)
    partial = batched_partial_sums(k, alpha, pairs, terms, kind)
    out = {}
    for pr, (low, high) in partial.items():
        start = max(pr)
        upper = high + tail_upper_bound(k, alpha, start, terms)
        lower = low + tail_lower_bound(k, alpha, start, terms) if two_sided else low
        out[pr] = (lower, upper)
    return out


def partial_sum_bracket(k: int, alpha, i: int, j: int, terms: int, two_sided: bool = False) -> Tuple[Fraction, Fraction]:
    """Enclose the (M* P M)_ij series without using the closed form.

    ``lower`` is the partial sum of ``terms`` terms (exact up to 256 terms,
    rounded down beyond) and ``upper`` adds a majorant tail.  With
    ``two_sided`` the lower end also receives a minorant tail.
    """
    return series_brackets(k, alpha, [(i, j)], terms, "mpm", two_sided)[(i, j)]


# -- explicit order-3 form ---------------------------------------------------

def _order3_quadratic() -> MultiPoly:
    a, i, j = ALPHA, I, J
    return 20 + 24 * a + 6 * a**2 - 6 * i - 3 * a * i + i**2 + 30 * j + 15 * a * j - 5 * i * j + 10 * j**2


def fixture_order3_coefficients() -> Tuple[MultiPoly, ...]:
    """The explicit order-3 numerator coefficients, constant term first (e, d, c, b, a)."""
    a, i, j = ALPHA, I, J
    lead = MultiPoly.const(9)
    cubic = 9 * (8 + 2 * a - i + 3 * j)
    quad = 3 * (71 - 15 * i + i**2 + 57 * j - 5 * i * j + 10 * j**2 + 42 * a + 6 * a**2 - 3 * a * i + 15 * a * j)
    lin = Fraction(3, 2) * (
        180 - 48 * i + 6 * i**2 + 236 * j - 36 * i * j + i**2 * j + 90 * j**2 - 5 * i * j**2 + 10 * j**3
        + 188 * a + 60 * a**2 + 6 * a**3 - 24 * a * i - 3 * a**2 * i
        + a * i**2 + 144 * a * j + 21 * a**2 * j - 8 * a * i * j + 25 * a * j**2
    )
    const = Fraction(3, 10) * (4 + j + a) * (5 + j + a) * _order3_quadratic()
    return (const, lin, quad, cubic, lead)


def fixture_order3_s0() -> RationalFunction:
    """The explicit simplified order-3 entry for j >= i."""
    return RationalFunction(Fraction(3, 10) * _order3_quadratic(), factors=[J + m + ALPHA for m in (1, 2, 3)])


def order3_telescope_regression() -> Dict[str, bool]:
    """Compare the solved order-3 form with the explicit one, coefficient by coefficient."""
    form = solve_telescope(3)
    expected = fixture_order3_coefficients()
    names = "edcba"
    out = {name: form.coefficients[m] == expected[m] for m, name in enumerate(names)} if form.numerator_degree == 4 \
        else {name: False for name in names}
    out["s0"] = ratfun_identity(form.at_zero(), fixture_order3_s0())
    return out
