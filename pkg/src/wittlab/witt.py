"""The Jacobson-Witt algebra W(n) = Der A(n).

Elements are n-tuples of truncated polynomials, D = sum_i f_i d_i where d_i
is the partial derivative by x_i.  The module provides the bracket, the
restricted p-th power map, the standard grading, the torus-twisted gradings,
the monomial basis in a fixed order, and the matrix of an element acting on
A(n) (the natural representation).

Monomial order, used for vectors, echelon forms and JSON dumps alike:
x^a d_i comes before x^b d_j when (i, a) < (j, b) lexicographically.  The
flat column index of x^a d_i is i * p^n + enc(a) with enc(a) the base-p
value of a (first exponent most significant).  The first basis element is
d_1, matching enc(0) = 0 in direction 1.
"""

from __future__ import annotations

import functools
import itertools
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .params import Params, TorusCoords
from .trunc import Exponent, TruncPoly


# ----------------------------------------------------------------------
# monomial encoding


def encode_exponent(params: Params, exp: Exponent) -> int:
    """Base-p value of an exponent vector, first entry most significant."""
    v = 0
    for e in exp:
        v = v * params.p + e
    return v


def decode_exponent(params: Params, code: int) -> Exponent:
    out = []
    for _ in range(params.n):
        out.append(code % params.p)
        code //= params.p
    return tuple(reversed(out))


def column_index(params: Params, exp: Exponent, direction: int) -> int:
    """Flat coordinate of the basis monomial x^exp d_(direction+1)."""
    return direction * params.ring_dim + encode_exponent(params, exp)


def column_info(params: Params, col: int) -> Tuple[Exponent, int]:
    direction, code = divmod(col, params.ring_dim)
    return decode_exponent(params, code), direction


@functools.lru_cache(maxsize=None)
def ring_monomials(params: Params) -> Tuple[Exponent, ...]:
    """All p^n exponent vectors in encoding order."""
    return tuple(itertools.product(range(params.p), repeat=params.n))


@functools.lru_cache(maxsize=None)
def column_degrees(params: Params) -> np.ndarray:
    """Standard degree |a| - 1 of every column, shape (n * p^n,)."""
    degs = np.array([sum(a) - 1 for a in ring_monomials(params)], dtype=np.int32)
    return np.tile(degs, params.n)


# ----------------------------------------------------------------------


class WittElement:
    """Derivation of A(n), held as its n coefficient polynomials."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: Params, coeffs: Sequence[TruncPoly]):
        if len(coeffs) != params.n:
            raise ValueError(f"need {params.n} coefficients, got {len(coeffs)}")
        for f in coeffs:
            params.same(f.params)
        self.params = params
        self.coeffs = tuple(coeffs)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, params: Params) -> "WittElement":
        z = TruncPoly.zero(params)
        return cls(params, [z] * params.n)

    @classmethod
    def monomial(
        cls, params: Params, exp: Iterable[int], direction: int, coef: int = 1
    ) -> "WittElement":
        """c * x^exp d_(direction+1); direction is 0-based."""
        if not (0 <= direction < params.n):
            raise ValueError(f"direction {direction} outside [0, {params.n - 1}]")
        coeffs = [TruncPoly.zero(params) for _ in range(params.n)]
        coeffs[direction] = TruncPoly.monomial(params, exp, coef)
        return cls(params, coeffs)

    @classmethod
    def partial(cls, params: Params, direction: int) -> "WittElement":
        """d_(direction+1)."""
        return cls.monomial(params, (0,) * params.n, direction)

    @classmethod
    def from_terms(
        cls, params: Params, terms: Iterable[Tuple[Exponent, int, int]]
    ) -> "WittElement":
        """Build from (exp, direction, coef) triples, 0-based direction."""
        acc: List[Dict[Exponent, int]] = [dict() for _ in range(params.n)]
        for exp, direction, coef in terms:
            exp = tuple(exp)
            acc[direction][exp] = acc[direction].get(exp, 0) + coef
        return cls(params, [TruncPoly(params, d) for d in acc])

    # ------------------------------------------------------------------
    # linear structure

    def __add__(self, other: "WittElement") -> "WittElement":
        self.params.same(other.params)
        return WittElement(
            self.params, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "WittElement") -> "WittElement":
        self.params.same(other.params)
        return WittElement(
            self.params, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "WittElement":
        return WittElement(self.params, [-a for a in self.coeffs])

    def scale(self, c: int) -> "WittElement":
        return WittElement(self.params, [a.scale(c) for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WittElement)
            and self.params == other.params
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.params, self.coeffs))

    def min_degree(self) -> int:
        """Lowest standard degree present; x^a d_i sits in degree |a| - 1.
        Raises on the zero element."""
        if self.is_zero():
            raise ValueError("zero element has no degree")
        return min(f.min_degree() for f in self.coeffs if not f.is_zero()) - 1

    # ------------------------------------------------------------------
    # derivation action and bracket

    def apply(self, f: TruncPoly) -> TruncPoly:
        """D(f) = sum_i D_i * df/dx_i."""
        self.params.same(f.params)
        out = TruncPoly.zero(self.params)
        for i, g in enumerate(self.coeffs):
            if g.is_zero():
                continue
            out = out + g * f.diff(i)
        return out

    def bracket(self, other: "WittElement") -> "WittElement":
        """[D, E], with j-th coefficient D(E_j) - E(D_j)."""
        self.params.same(other.params)
        coeffs = []
        for j in range(self.params.n):
            coeffs.append(self.apply(other.coeffs[j]) - other.apply(self.coeffs[j]))
        return WittElement(self.params, coeffs)

    def p_power(self) -> "WittElement":
        """Restricted power D^[p], read off the p-fold composite on x_1..x_n.

        The p-th power of a derivation is again a derivation in
        characteristic p, so its values on the variables determine it.
        """
        p = self.params.p
        coeffs = []
        for i in range(self.params.n):
            g = TruncPoly.variable(self.params, i)
            for _ in range(p):
                g = self.apply(g)
                if g.is_zero():
                    break
            coeffs.append(g)
        return WittElement(self.params, coeffs)

    # ------------------------------------------------------------------
    # gradings

    def standard_components(self) -> Dict[int, "WittElement"]:
        """Split by standard degree; x^a d_i sits in degree |a| - 1.

        Zero never appears as a value; the zero element maps to {}.
        """
        buckets: Dict[int, List[Tuple[Exponent, int, int]]] = {}
        for i, f in enumerate(self.coeffs):
            for exp, c in f.terms.items():
                buckets.setdefault(sum(exp) - 1, []).append((exp, i, c))
        return {
            d: WittElement.from_terms(self.params, terms)
            for d, terms in sorted(buckets.items())
        }

    def tr_components(self, tc: TorusCoords) -> Dict[int, "WittElement"]:
        """Degree split in the z-coordinates attached to the torus t_r.

        Rewrites each coefficient in the z-monomial basis (z_i = 1 + x_i on
        the last r variables), groups by z-degree, and converts every
        component back to x-coordinates.  For r = 0 this is exactly
        standard_components.
        """
        self.params.same(tc.params)
        n = self.params.n
        to_z = tuple(-1 if tc.is_shifted(i) else 0 for i in range(n))
        from_z = tuple(1 if tc.is_shifted(i) else 0 for i in range(n))
        buckets: Dict[int, List[Dict[Exponent, int]]] = {}
        for i, f in enumerate(self.coeffs):
            fz = f.shift(to_z)
            for exp, c in fz.terms.items():
                d = sum(exp) - 1
                if d not in buckets:
                    buckets[d] = [dict() for _ in range(n)]
                buckets[d][i][exp] = c
        out: Dict[int, WittElement] = {}
        for d, per_dir in sorted(buckets.items()):
            coeffs = [TruncPoly(self.params, t).shift(from_z) for t in per_dir]
            out[d] = WittElement(self.params, coeffs)
        return out

    # ------------------------------------------------------------------
    # coordinates

    def term_count(self) -> int:
        return sum(len(f.terms) for f in self.coeffs)

    def iter_terms(self) -> Iterable[Tuple[Exponent, int, int]]:
        """(exp, direction, coef) in the documented monomial order."""
        for i, f in enumerate(self.coeffs):
            for exp, c in f.sorted_terms():
                yield exp, i, c

    def to_vector(self) -> np.ndarray:
        v = np.zeros(self.params.witt_dim, dtype=np.int16)
        for exp, i, c in self.iter_terms():
            v[column_index(self.params, exp, i)] = c
        return v

    @classmethod
    def from_vector(cls, params: Params, vec: np.ndarray) -> "WittElement":
        terms = []
        for col in np.nonzero(vec)[0]:
            exp, direction = column_info(params, int(col))
            terms.append((exp, direction, int(vec[col])))
        return cls.from_terms(params, terms)

    # ------------------------------------------------------------------
    # serialization and display

    def to_json_dict(self) -> dict:
        return {
            "p": self.params.p,
            "n": self.params.n,
            "terms": [
                {"exp": list(exp), "dir": i + 1, "coef": c}
                for exp, i, c in self.iter_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "WittElement":
        params = Params(data["p"], data["n"])
        terms = [(tuple(t["exp"]), t["dir"] - 1, t["coef"]) for t in data["terms"]]
        return cls.from_terms(params, terms)

    def __repr__(self) -> str:
        return f"WittElement({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for exp, i, c in self.iter_terms():
            mono = "".join(
                f"x{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(exp) if e
            )
            head = "" if c == 1 else str(c)
            bits.append(f"{head}{mono}d{i + 1}")
        return " + ".join(bits)


# ----------------------------------------------------------------------
# spec-level operation names


def apply_derivation(D: WittElement, f: TruncPoly) -> TruncPoly:
    return D.apply(f)


def bracket(D: WittElement, E: WittElement) -> WittElement:
    return D.bracket(E)


def p_power(D: WittElement) -> WittElement:
    return D.p_power()


def standard_components(D: WittElement) -> Dict[int, WittElement]:
    return D.standard_components()


def tr_components(D: WittElement, tc: TorusCoords) -> Dict[int, WittElement]:
    return D.tr_components(tc)


@functools.lru_cache(maxsize=None)
def monomial_basis(params: Params) -> Tuple[WittElement, ...]:
    """All n * p^n basis monomials x^a d_i, direction-major, exponents
    ascending in the base-p encoding.  Element k corresponds to flat
    column k."""
    out = []
    for i in range(params.n):
        for exp in ring_monomials(params):
            out.append(WittElement.monomial(params, exp, i))
    return tuple(out)


def natural_rep_matrix(D: WittElement) -> np.ndarray:
    """Matrix of D on the monomial basis of A(n), entries in [0, p).

    Column j holds the coordinates of D(m_j) where m_j is the j-th ring
    monomial in encoding order.  Restricted to the degree-1 block this
    sends x_i d_j to the elementary matrix E_ij.
    """
    params = D.params
    N = params.ring_dim
    mat = np.zeros((N, N), dtype=np.int64)
    monos = ring_monomials(params)
    for j, exp in enumerate(monos):
        img = D.apply(TruncPoly.monomial(params, exp))
        for e, c in img.terms.items():
            mat[encode_exponent(params, e), j] = c
    return mat % params.p
