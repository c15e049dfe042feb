"""Graded dimensions as Laurent polynomials in t, plus the closed forms
for the b_r family.

gdim_graded reads the graded dimension off a degree-homogeneous echelon
basis; gdim_filtered works for any subspace through the degree filtration
and agrees with gdim_graded on graded input.

The closed forms are kept in their literal shape.  At interior q the b_q
closed form and the per-direction R_i forms disagree with the actual
constructions of borel.py; the regression tests pin the difference down
to exactly q(n-q)(Q^q - 1) ones-counting mass per formula, so both sides
are kept and compared rather than silently reconciled.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Union

import numpy as np

from . import _linalg, _tables
from .subspace import Subspace


class NotGradedError(ValueError):
    pass


class LaurentPoly:
    """Integer Laurent polynomial in one variable t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Union[Dict[int, int], None] = None):
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    self.coeffs[int(e)] = int(c)

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def term(cls, c: int, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    def coeff(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are not defined here")
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, t: Union[int, Fraction]) -> Union[int, Fraction]:
        """Exact value at t; rejects t = 0 when negative exponents occur."""
        if t == 0 and any(e < 0 for e in self.coeffs):
            raise ZeroDivisionError("negative exponent at t = 0")
        tv = Fraction(t)
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += c * tv**e
        if total.denominator == 1:
            return int(total)
        return total

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self.coeffs)

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                pw = "t" if e == 1 else f"t^{e}"
                body = pw if mag == 1 else f"{mag}·{pw}"
            parts.append((c < 0, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self.coeffs!r})"

    def to_json_dict(self) -> dict:
        return {"coeffs": {str(e): c for e, c in sorted(self.coeffs.items())}}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LaurentPoly":
        return cls({int(e): c for e, c in data["coeffs"].items()})


# ----------------------------------------------------------------------
# measuring subspaces


def Q_poly(p: int) -> LaurentPoly:
    """Graded dimension of one truncated polynomial variable."""
    return LaurentPoly({i: 1 for i in range(p)})


def geometric_q_sum(Q: LaurentPoly, r: int) -> LaurentPoly:
    """1 + Q + ... + Q^(r-1); multiplied by (1 - Q) this telescopes to
    1 - Q^r, which the tests verify exactly."""
    out = LaurentPoly.zero()
    cur = LaurentPoly.one()
    for _ in range(r):
        out = out + cur
        cur = cur * Q
    return out


def gdim_graded(S: Subspace) -> LaurentPoly:
    """Graded dimension of a degree-homogeneous subspace.

    Every echelon row must be concentrated in a single standard degree;
    otherwise the subspace is merely filtered and NotGradedError points
    the caller at gdim_filtered.
    """
    t = _tables.tables(S.params)
    counts: Dict[int, int] = {}
    for row in S.rows:
        cols = np.nonzero(row)[0]
        degs = t.col_degree[cols]
        if (degs != degs[0]).any():
            raise NotGradedError("subspace has a non-homogeneous basis row")
        counts[int(degs[0])] = counts.get(int(degs[0]), 0) + 1
    return LaurentPoly(counts)


def filtration_dims(S: Subspace) -> Dict[int, int]:
    """dim of S intersected with elements of degree >= i, for each i from
    -1 up to the top degree plus one."""
    t = _tables.tables(S.params)
    top = S.params.top_degree
    out: Dict[int, int] = {-1: S.dim}
    for i in range(0, top + 2):
        below = np.nonzero(t.col_degree < i)[0]
        if S.is_zero() or below.size == 0:
            out[i] = S.dim
            continue
        out[i] = S.dim - _linalg.rank(S.rows[:, below], S.params.p)
    return out


def gdim_filtered(S: Subspace) -> LaurentPoly:
    """Graded dimension of the associated graded space of the degree
    filtration; agrees with gdim_graded whenever that one applies."""
    d = filtration_dims(S)
    top = S.params.top_degree
    return LaurentPoly({i: d[i] - d[i + 1] for i in range(-1, top + 1)})


# ----------------------------------------------------------------------
# closed forms


def _check_r(n: int, r: int) -> None:
    if not 0 <= r <= n:
        raise ValueError(f"r must lie in [0, {n}], got {r}")


def gdim_formula_br(p: int, n: int, r: int) -> LaurentPoly:
    """Closed form for the graded dimension of b_r.

    Exact for r = 0, r = n, and all n = 1 cases; at interior r it
    undercounts the literal construction by r(n-r)(Q^r - 1).
    """
    _check_r(n, r)
    Q = Q_poly(p)
    tinv = LaurentPoly.term(1, -1)
    one = LaurentPoly.one()
    out = n * (Q ** (n - r) - one) * Q**r * tinv
    out = out + geometric_q_sum(Q, r) * tinv
    out = out - ((n - r) * (n + r + 1) // 2) * (Q**r - one)
    out = out + LaurentPoly.const(r - (n - r) * (n - r - 1) // 2)
    return out


def dim_formula_br(p: int, n: int, r: int) -> int:
    """Plain dimension count matching gdim_formula_br at t = 1, written
    independently so the two can be checked against each other."""
    _check_r(n, r)
    return (
        n * (p ** (n - r) - 1) * p**r
        + (p**r - 1) // (p - 1)
        - (n - r) * (n + r + 1) // 2 * (p**r - 1)
        + r
        - (n - r) * (n - r - 1) // 2
    )


def gdim_Ri_formula(p: int, n: int, q: int, i: int) -> LaurentPoly:
    """Per-direction closed form for the bridge monomials of b_q.

    Directions into the front group carry the coefficient (n - i + 1) on
    the corrective term; the enumeration itself produces (n - q - i + 1)
    there, and the tests record that gap rather than repairing it.
    """
    _check_r(n, q)
    if not 1 <= i <= n:
        raise ValueError(f"direction must lie in [1, {n}], got {i}")
    Q = Q_poly(p)
    tinv = LaurentPoly.term(1, -1)
    one = LaurentPoly.one()
    if i <= n - q:
        return (Q ** (n - q) - one) * (Q**q - one) * tinv - (n - i + 1) * (
            Q**q - one
        )
    return (Q ** (n - q) - one) * Q**q * tinv


def gdim_formula_homogeneous_borel(p: int, n: int, q: int) -> LaurentPoly:
    """Closed form for the graded dimension of the homogeneous solvable
    family with q constant directions."""
    _check_r(n, q)
    Q = Q_poly(p)
    tinv = LaurentPoly.term(1, -1)
    one = LaurentPoly.one()
    out = n * Q**n * tinv - n * Q**q * tinv
    out = out - ((n - q) * (n - q - 1) // 2) * Q**q
    out = out + (one + tinv) * geometric_q_sum(Q, q)
    return out
