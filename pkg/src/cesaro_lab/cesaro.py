"""Generalized Cesàro matrices of integer order k (exact) and real order β (float).

For integer order the Gamma-ratio definition collapses to the product form

    m_ij = k * prod_{m=1}^{k-1} (i - j + m) / prod_{m=1}^{k} (i + m + α),   0 <= j <= i,

and zero above the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, List, Tuple, Union

import mpmath

from .exactnum import ALPHA, I, J, MultiPoly, RationalFunction, ratfun_identity

if TYPE_CHECKING:
    from .interrupters import CornerInterrupter

Rational = Union[int, Fraction]


class ParameterDomainError(ValueError):
    """A parameter lies outside the region where the operator is defined."""


def check_alpha(alpha) -> Fraction:
    if isinstance(alpha, float):
        raise TypeError("exact computations take int or Fraction alpha, not float")
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ParameterDomainError(f"alpha must exceed -1, got {alpha}")
    return alpha


def check_order(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ParameterDomainError(f"order must be a positive integer, got {k!r}")
    return k


@lru_cache(maxsize=1 << 16)
def _entry(k: int, alpha: Fraction, i: int, j: int) -> Fraction:
    if j > i:
        return Fraction(0)
    num = k
    for m in range(1, k):
        num *= i - j + m
    den = Fraction(1)
    for m in range(1, k + 1):
        den *= i + m + alpha
    return num / den


def entry(k: int, alpha: Rational, i: int, j: int) -> Fraction:
    """Exact (i, j) entry of the order-k matrix."""
    check_order(k)
    alpha = check_alpha(alpha)
    if i < 0 or j < 0:
        raise ParameterDomainError("indices must be nonnegative")
    return _entry(k, alpha, i, j)


def entry_general_beta(alpha: float, beta: float, i: int, j: int) -> float:
    """Entry of the real-order matrix from the Gamma-ratio definition.

    Works with log-Gamma at 40 significant digits, so the double result is
    correctly rounded up to a few ulps even when i is large.
    """
    if not alpha > -1:
        raise ParameterDomainError(f"alpha must exceed -1, got {alpha}")
    if not beta > 0:
        raise ParameterDomainError(f"beta must be positive, got {beta}")
    if i < 0 or j < 0:
        raise ParameterDomainError("indices must be nonnegative")
    if j > i:
        return 0.0
    with mpmath.workdps(40):
        a = mpmath.mpf(alpha)
        b = mpmath.mpf(beta)
        log_val = (
            mpmath.loggamma(i + a + 1)
            - mpmath.loggamma(i - j + 1)
            + mpmath.loggamma(i - j + b)
            - mpmath.loggamma(i + a + b + 1)
        )
        return float(b * mpmath.exp(log_val))


def entry_symbolic(k: int) -> RationalFunction:
    """The lower-triangle entry as a rational function of α, i, j."""
    num = MultiPoly.const(k)
    for m in range(1, k):
        num = num * (I - J + m)
    return RationalFunction(num, factors=[I + m + ALPHA for m in range(1, k + 1)])


def _explicit_low_orders() -> List[RationalFunction]:
    return [
        RationalFunction(1, factors=[I + 1 + ALPHA]),
        RationalFunction(2 * (I + 1 - J), factors=[I + 1 + ALPHA, I + 2 + ALPHA]),
        RationalFunction(3 * (I + 1 - J) * (I + 2 - J), factors=[I + 1 + ALPHA, I + 2 + ALPHA, I + 3 + ALPHA]),
    ]


def self_test() -> bool:
    """Check the product form against the explicit order 1, 2, 3 formulas."""
    return all(ratfun_identity(entry_symbolic(k), f) for k, f in enumerate(_explicit_low_orders(), start=1))


@dataclass(frozen=True)
class TruncatedMatrix:
    size: int
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]


@dataclass(frozen=True)
class CesaroMatrix:
    """Order-k generalized Cesàro matrix with parameter α > -1, entries on demand."""

    order: int
    alpha: Fraction

    def __post_init__(self):
        check_order(self.order)
        object.__setattr__(self, "alpha", check_alpha(self.alpha))

    def __getitem__(self, idx: Tuple[int, int]) -> Fraction:
        i, j = idx
        return _entry(self.order, self.alpha, i, j)

    def entry(self, i: int, j: int) -> Fraction:
        return _entry(self.order, self.alpha, i, j)

    def row_sum(self, i: int) -> Fraction:
        return sum((self.entry(i, j) for j in range(i + 1)), Fraction(0))

    def truncate(self, n: int) -> TruncatedMatrix:
        return truncate(self, n)


def truncate(m: CesaroMatrix, n: int) -> TruncatedMatrix:
    """Exact top-left n x n block."""
    if n < 1:
        raise ParameterDomainError("truncation size must be at least 1")
    return TruncatedMatrix(n, tuple(tuple(m.entry(i, j) for j in range(n)) for i in range(n)))


def qm_star_entry(q: "CornerInterrupter", m: CesaroMatrix, i: int, j: int) -> Fraction:
    """(Q M*)_ij; rows past the corner are rows of M* itself."""
    if i >= q.size:
        return m.entry(j, i)
    return sum((q.block[i][b] * m.entry(j, b) for b in range(q.size)), Fraction(0))


def mqm_star_entry(m: CesaroMatrix, q: "CornerInterrupter", i: int, j: int) -> Fraction:
    """(M Q M*)_ij as a finite sum: corner part plus identity-tail inner product."""
    c = q.size
    left = [m.entry(i, a) for a in range(min(c, i + 1))]
    right = [m.entry(j, b) for b in range(min(c, j + 1))]
    total = Fraction(0)
    for a, ma in enumerate(left):
        if not ma:
            continue
        row = q.block[a]
        for b, mb in enumerate(right):
            if row[b]:
                total += ma * row[b] * mb
    for u in range(c, min(i, j) + 1):
        total += m.entry(i, u) * m.entry(j, u)
    return total


def row_sum_formula(k: int, alpha: Rational, i: int) -> Fraction:
    """prod_{m=1}^{k} (i + m) / (i + m + α): the closed form of a row sum."""
    alpha = check_alpha(alpha)
    out = Fraction(1)
    for m in range(1, k + 1):
        out *= Fraction(i + m) / (i + m + alpha)
    return out

