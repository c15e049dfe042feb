"""Automorphisms of the truncated polynomial ring and their action on
derivations.

An automorphism is stored by its images psi(x_i), polynomials with zero
constant term and jointly invertible linear part.  The induced map on
derivations conjugates: (induced psi)(D) = psi o D o psi^{-1}.  For the
constant derivations the chain rule collapses this to multiplication by
the inverse Jacobian matrix, which is how `induced` computes; the literal
conjugation is kept alongside as a cross-check oracle.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _linalg
from .params import Params
from .trunc import TruncPoly
from .witt import WittElement, encode_exponent, ring_monomials

PolyMatrix = List[List[TruncPoly]]


class PolyAutomorphism:
    __slots__ = ("params", "images", "_jac", "_jac_inv", "_linear")

    def __init__(self, params: Params, images: Sequence[TruncPoly]):
        if len(images) != params.n:
            raise ValueError(f"need {params.n} images, got {len(images)}")
        for f in images:
            params.same(f.params)
            if f.constant_term() != 0:
                raise ValueError("images must have zero constant term")
        self.params = params
        self.images = tuple(images)
        self._linear = self._linear_part()
        try:
            _linalg.inverse_matrix(self._linear, params.p)
        except ValueError:
            raise ValueError("linear part is singular; not an automorphism")
        self._jac: Optional[PolyMatrix] = None
        self._jac_inv: Optional[PolyMatrix] = None

    def _linear_part(self) -> np.ndarray:
        n = self.params.n
        M = np.zeros((n, n), dtype=np.int64)
        for i, f in enumerate(self.images):
            for k in range(n):
                unit = tuple(1 if s == k else 0 for s in range(n))
                M[i, k] = f.coefficient(unit)
        return M

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def identity(cls, params: Params) -> "PolyAutomorphism":
        return cls(params, [TruncPoly.variable(params, i) for i in range(params.n)])

    @classmethod
    def linear(cls, params: Params, mat: np.ndarray) -> "PolyAutomorphism":
        """Automorphism with x_i mapping to sum_k mat[i, k] x_k."""
        mat = np.asarray(mat) % params.p
        images = []
        for i in range(params.n):
            f = TruncPoly.zero(params)
            for k in range(params.n):
                if mat[i, k]:
                    f = f + TruncPoly.variable(params, k).scale(int(mat[i, k]))
            images.append(f)
        return cls(params, images)

    # ------------------------------------------------------------------
    # ring action

    def linear_matrix(self) -> np.ndarray:
        return self._linear.copy()

    def apply_to_poly(self, f: TruncPoly) -> TruncPoly:
        self.params.same(f.params)
        return f.substitute(self.images)

    def jacobian(self) -> PolyMatrix:
        """Entry [i][j] is the i-th partial of the j-th image."""
        if self._jac is None:
            self._jac = [
                [self.images[j].diff(i) for j in range(self.params.n)]
                for i in range(self.params.n)
            ]
        return self._jac

    def jacobian_inverse(self) -> PolyMatrix:
        """Inverse of the Jacobian over the ring, via the terminating
        geometric series around the invertible constant part."""
        if self._jac_inv is not None:
            return self._jac_inv
        params = self.params
        n, p = params.n, params.p
        J = self.jacobian()
        J0 = np.array(
            [[J[i][j].constant_term() for j in range(n)] for i in range(n)],
            dtype=np.int64,
        )
        J0inv = _linalg.inverse_matrix(J0, p)
        # N = J0^{-1} (J - J0) has entries of degree >= 1
        N: PolyMatrix = []
        for i in range(n):
            row = []
            for j in range(n):
                f = TruncPoly.zero(params)
                for k in range(n):
                    c = int(J0inv[i, k])
                    if c:
                        g = J[k][j] - TruncPoly.constant(params, J[k][j].constant_term())
                        f = f + g.scale(c)
                row.append(f)
            N.append(row)
        acc = [
            [
                TruncPoly.constant(params, 1 if i == j else 0)
                for j in range(n)
            ]
            for i in range(n)
        ]
        cur = N
        sign = -1
        while any(not e.is_zero() for row in cur for e in row):
            for i in range(n):
                for j in range(n):
                    acc[i][j] = acc[i][j] + cur[i][j].scale(sign % p)
            cur = _poly_matmul(N, cur)
            sign = -sign
        inv = [
            [
                _poly_dot(acc[i], [TruncPoly.constant(params, int(J0inv[k, j])) for k in range(n)])
                for j in range(n)
            ]
            for i in range(n)
        ]
        self._jac_inv = inv
        return inv

    # ------------------------------------------------------------------
    # serialization

    def to_json_dict(self) -> dict:
        return {
            "p": self.params.p,
            "n": self.params.n,
            "images": [f.to_json_dict() for f in self.images],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PolyAutomorphism":
        params = Params(data["p"], data["n"])
        images = [TruncPoly.from_json_dict(params, d) for d in data["images"]]
        return cls(params, images)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyAutomorphism)
            and self.params == other.params
            and self.images == other.images
        )

    def __repr__(self) -> str:
        ims = ", ".join(str(f) for f in self.images)
        return f"PolyAutomorphism({ims})"


def _poly_dot(row: Sequence[TruncPoly], col: Sequence[TruncPoly]) -> TruncPoly:
    out = None
    for a, b in zip(row, col):
        term = a * b
        out = term if out is None else out + term
    assert out is not None
    return out


def _poly_matmul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    n = len(A)
    return [
        [_poly_dot(A[i], [B[k][j] for k in range(n)]) for j in range(n)]
        for i in range(n)
    ]


# ----------------------------------------------------------------------
# group operations


def apply_to_poly(psi: PolyAutomorphism, f: TruncPoly) -> TruncPoly:
    return psi.apply_to_poly(f)


def compose(psi: PolyAutomorphism, phi: PolyAutomorphism) -> PolyAutomorphism:
    """psi after phi: the composite sends x_i to phi(x_i) evaluated at the
    images of psi."""
    psi.params.same(phi.params)
    images = [psi.apply_to_poly(f) for f in phi.images]
    return PolyAutomorphism(psi.params, images)


def decompose(psi: PolyAutomorphism) -> Tuple[PolyAutomorphism, PolyAutomorphism]:
    """Split psi = u o g0 with g0 linear and u unipotent (identity linear
    part); returns (g0, u)."""
    params = psi.params
    g0 = PolyAutomorphism.linear(params, psi.linear_matrix())
    g0_inv = PolyAutomorphism.linear(
        params, _linalg.inverse_matrix(psi.linear_matrix(), params.p)
    )
    u = compose(psi, g0_inv)
    return g0, u


def _invert_unipotent(u: PolyAutomorphism) -> PolyAutomorphism:
    """Fixed-point inversion: with u(x_i) = x_i + h_i, the inverse images
    solve v_i = x_i - h_i(v); each pass settles one more degree."""
    params = u.params
    xs = [TruncPoly.variable(params, i) for i in range(params.n)]
    hs = [u.images[i] - xs[i] for i in range(params.n)]
    vs = list(xs)
    for _ in range(params.n * (params.p - 1) + 1):
        nxt = [xs[i] - hs[i].substitute(vs) for i in range(params.n)]
        if nxt == vs:
            break
        vs = nxt
    return PolyAutomorphism(params, vs)


def invert(psi: PolyAutomorphism) -> PolyAutomorphism:
    g0, u = decompose(psi)
    g0_inv = PolyAutomorphism.linear(
        psi.params, _linalg.inverse_matrix(psi.linear_matrix(), psi.params.p)
    )
    return compose(g0_inv, _invert_unipotent(u))


# ----------------------------------------------------------------------
# induced action on derivations


def induced(psi: PolyAutomorphism, D: WittElement) -> WittElement:
    """Image of D under conjugation, computed by the chain rule: the
    constant derivations transform by the inverse Jacobian and f d_i maps
    to psi(f) times the transformed d_i."""
    psi.params.same(D.params)
    Jinv = psi.jacobian_inverse()
    n = psi.params.n
    out = [TruncPoly.zero(psi.params) for _ in range(n)]
    for i in range(n):
        f = D.coeffs[i]
        if f.is_zero():
            continue
        pf = psi.apply_to_poly(f)
        for j in range(n):
            if not Jinv[i][j].is_zero():
                out[j] = out[j] + pf * Jinv[i][j]
    return WittElement(psi.params, out)


def induced_by_conjugation(psi: PolyAutomorphism, D: WittElement) -> WittElement:
    """Literal conjugation psi o D o psi^{-1}; the slow oracle that
    `induced` is tested against."""
    psi.params.same(D.params)
    inv = invert(psi)
    comps = []
    for j in range(psi.params.n):
        comps.append(psi.apply_to_poly(D.apply(inv.images[j])))
    return WittElement(psi.params, comps)


def verify_grading_shift(psi: PolyAutomorphism, D: WittElement) -> bool:
    """For unipotent psi, conjugation fixes each element modulo terms of
    strictly higher filtration degree; checks that on D."""
    n = psi.params.n
    if not np.array_equal(psi.linear_matrix(), np.eye(n, dtype=np.int64)):
        raise ValueError("grading shift is a property of unipotent maps")
    if D.is_zero():
        return True
    d = D.min_degree()
    diff = induced(psi, D) - D
    return diff.is_zero() or diff.min_degree() > d


# ----------------------------------------------------------------------
# sampling and matrix oracles


def random_automorphism(
    params: Params, seed: int, max_extra_terms: int = 3
) -> PolyAutomorphism:
    """Seeded random automorphism: uniform invertible linear part plus a
    sparse tail of higher-degree monomials in each image."""
    rng = np.random.default_rng(seed)
    p, n = params.p, params.n
    while True:
        M = rng.integers(0, p, size=(n, n))
        if _linalg.rank(M.astype(np.int16), p) == n:
            break
    exps = [e for e in ring_monomials(params) if sum(e) >= 2]
    images = []
    for i in range(n):
        f = TruncPoly.zero(params)
        for k in range(n):
            if M[i, k]:
                f = f + TruncPoly.variable(params, k).scale(int(M[i, k]))
        for _ in range(int(rng.integers(0, max_extra_terms + 1))):
            e = exps[int(rng.integers(0, len(exps)))]
            c = int(rng.integers(1, p))
            f = f + TruncPoly.monomial(params, e, c)
        images.append(f)
    return PolyAutomorphism(params, images)


def substitution_matrix(psi: PolyAutomorphism) -> np.ndarray:
    """Matrix of the ring action on the monomial basis of the truncated
    ring; column enc(a) holds the coordinates of psi(x^a)."""
    params = psi.params
    R = params.ring_dim
    M = np.zeros((R, R), dtype=np.int64)
    for col, exp in enumerate(ring_monomials(params)):
        g = psi.apply_to_poly(TruncPoly.monomial(params, exp, 1))
        for e, c in g.terms.items():
            M[encode_exponent(params, e), col] = c
    return M
