"""Sparse multivariate polynomials over the rationals.

The variable universe is fixed to ``(alpha, i, j, t)``.  A polynomial is a map
from exponent 4-tuples to nonzero :class:`fractions.Fraction` coefficients,
kept sorted so that equal polynomials have identical representations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

VARIABLES = ("alpha", "i", "j", "t")
_DISPLAY = {"alpha": "α", "i": "i", "j": "j", "t": "t"}
_INDEX = {name: pos for pos, name in enumerate(VARIABLES)}

Exponents = Tuple[int, int, int, int]
Scalar = Union[int, Fraction]

_ZERO_EXP: Exponents = (0, 0, 0, 0)


def _var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}") from None


class MultiPoly:
    """Immutable polynomial in ``alpha, i, j, t`` with rational coefficients."""

    __slots__ = ("_terms", "_key", "_hash")

    def __init__(self, terms: Union[Mapping[Exponents, Scalar], Iterable[Tuple[Exponents, Scalar]], None] = None):
        acc: Dict[Exponents, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exps, coeff in items:
                exps = tuple(int(e) for e in exps)
                if len(exps) != 4 or min(exps) < 0:
                    raise ValueError(f"bad exponent tuple {exps!r}")
                acc[exps] = acc.get(exps, Fraction(0)) + Fraction(coeff)
        self._set(acc)

    def _set(self, acc: Dict[Exponents, Fraction]) -> None:
        self._terms = {e: c for e, c in acc.items() if c}
        self._key = tuple(sorted(self._terms.items()))
        self._hash = None

    @classmethod
    def _raw(cls, acc: Dict[Exponents, Fraction]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj._set(acc)
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        return cls._raw({_ZERO_EXP: Fraction(value)})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        exps = [0, 0, 0, 0]
        exps[_var_index(name)] = 1
        return cls._raw({tuple(exps): Fraction(1)})

    @staticmethod
    def coerce(value: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return MultiPoly.const(value)
        return NotImplemented

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        return dict(self._terms)

    def canonical(self) -> Tuple[Tuple[Exponents, Fraction], ...]:
        """Sorted term tuple; the identity of the polynomial."""
        return self._key

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXP for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for exps in self._terms:
            used.update(VARIABLES[p] for p, e in enumerate(exps) if e)
        return tuple(v for v in VARIABLES if v in used)

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable.  The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e) for e in self._terms)
        pos = _var_index(name)
        return max(e[pos] for e in self._terms)

    def coefficients(self, name: str) -> Dict[int, "MultiPoly"]:
        """Split into ``{power: coefficient}`` with respect to one variable."""
        pos = _var_index(name)
        groups: Dict[int, Dict[Exponents, Fraction]] = {}
        for exps, c in self._terms.items():
            rest = list(exps)
            rest[pos] = 0
            groups.setdefault(exps[pos], {})[tuple(rest)] = c
        return {p: MultiPoly._raw(g) for p, g in sorted(groups.items())}

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return MultiPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly._raw({e: c * other for e, c in self._terms.items()})
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                acc[e] = acc.get(e, 0) + c1 * c2
        return MultiPoly._raw(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key)
        return self._hash

    # -- substitution -------------------------------------------------
    def subs(self, **values: Union["MultiPoly", Scalar]) -> "MultiPoly":
        """Substitute numbers or polynomials for variables."""
        if not values:
            return self
        targets = {_var_index(name): MultiPoly.coerce(v) for name, v in values.items()}
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(pos: int, e: int) -> MultiPoly:
            key = (pos, e)
            if key not in powers:
                powers[key] = targets[pos] ** e
            return powers[key]

        numeric = {p: v.constant_value() for p, v in targets.items() if v.is_constant()}
        result: Dict[Exponents, Fraction] = {}
        symbolic_terms = []
        for exps, c in self._terms.items():
            kept = list(exps)
            coeff = c
            pending = []
            for pos, e in enumerate(exps):
                if e and pos in targets:
                    kept[pos] = 0
                    if pos in numeric:
                        coeff *= numeric[pos] ** e
                    else:
                        pending.append((pos, e))
            if not coeff:
                continue
            if pending:
                symbolic_terms.append((tuple(kept), coeff, pending))
            else:
                key = tuple(kept)
                result[key] = result.get(key, 0) + coeff
        total = MultiPoly._raw(result)
        for kept, coeff, pending in symbolic_terms:
            term = MultiPoly._raw({kept: coeff})
            for pos, e in pending:
                term = term * power(pos, e)
            total = total + term
        return total

    def evaluate(self, **values: Scalar) -> Fraction:
        """Evaluate at numeric values; every variable present must be supplied."""
        missing = [v for v in self.variables() if v not in values]
        if missing:
            raise ValueError(f"missing values for {missing}")
        vals = [Fraction(values.get(name, 0)) for name in VARIABLES]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    def to_unipoly(self, name: str = "alpha"):
        """Convert a polynomial in a single variable to :class:`UniPoly`."""
        from .unipoly import UniPoly

        pos = _var_index(name)
        coeffs: Dict[int, Fraction] = {}
        for exps, c in self._terms.items():
            if any(e for p, e in enumerate(exps) if p != pos):
                raise ValueError(f"{self} involves variables other than {name}")
            coeffs[exps[pos]] = c
        top = max(coeffs, default=-1)
        return UniPoly([coeffs.get(d, 0) for d in range(top + 1)])

    # -- display ------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in sorted(self._terms.items(), key=lambda item: (-sum(item[0]), item[0])):
            monomial = "*".join(
                _DISPLAY[VARIABLES[p]] + (f"^{e}" if e > 1 else "") for p, e in enumerate(exps) if e
            )
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if monomial:
                body = monomial if mag == 1 else f"{mag}*{monomial}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def poly_equal(p: MultiPoly, q: MultiPoly) -> bool:
    """True iff ``p - q`` is the zero polynomial."""
    return MultiPoly.coerce(p) == MultiPoly.coerce(q)


ALPHA = MultiPoly.var("alpha")
I = MultiPoly.var("i")
J = MultiPoly.var("j")
T = MultiPoly.var("t")
