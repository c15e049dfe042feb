"""Distinguished completely solvable subalgebras and the tori they contain.

The family b_r, r = 0..n, interpolates between two extremes:

* b_0: upper triangular degree-zero part plus everything of degree one and
  up (the stabilizer of the standard flag of the augmentation ideal), and
* b_n: the standard torus plus all monomials whose exponent support sits
  strictly below their target direction.

For 0 < q < n the construction splits the variables into a front group
u = (x_1 .. x_{n-q}) and a back group w = (x_{n-q+1} .. x_n) and glues a
b_0-shaped piece on u to a b_n-shaped piece on w across a bridge of mixed
monomials.  The mixed piece is specified by explicit index sets, written
out in enumerate_lambda and enumerate_gamma; build_bq assembles the span.

All builders return monomial spans, so the resulting subspaces are stable
under the standard torus and take the fast block code paths throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Tuple

from .params import Params
from .subspace import Subspace, span
from .witt import WittElement


@dataclass(frozen=True)
class IndexTriple:
    """Exponents on the front variables, on the back variables, and the
    1-based target direction."""

    a: Tuple[int, ...]
    b: Tuple[int, ...]
    i: int

    def monomial(self, params: Params) -> WittElement:
        exp = tuple(self.a) + tuple(self.b)
        return WittElement.monomial(params, exp, self.i - 1)


def _check_split(params: Params, q: int) -> None:
    if not 0 <= q <= params.n:
        raise ValueError(f"q must lie in [0, {params.n}], got {q}")


def _front_condition(a: Tuple[int, ...], i: int) -> bool:
    # degree two and up, or linear in a variable strictly before direction i
    ta = sum(a)
    return ta > 1 or (ta == 1 and sum(a[: i - 1]) == 1)


def enumerate_lambda(
    params: Params, q: int, printed_cutoff: bool = False
) -> Tuple[List[IndexTriple], List[IndexTriple]]:
    """Index sets of the non-torus monomials of b_q.

    The first list covers directions into the front group, the second the
    back group.  In the second list, a monomial with trivial front part is
    kept only when its back-exponent support lies strictly before the
    direction's position within the back group; printed_cutoff=True moves
    that cutoff q positions forward (an alternative reading kept for
    comparison; it fails the q = n specialization, see the tests).
    """
    _check_split(params, q)
    p, n = params.p, params.n
    lam1 = []
    for i in range(1, n - q + 1):
        for a in itertools.product(range(p), repeat=n - q):
            if _front_condition(a, i):
                for b in itertools.product(range(p), repeat=q):
                    lam1.append(IndexTriple(a, b, i))
    lam2 = []
    for i in range(n - q + 1, n + 1):
        cut = (i - q - 1) if printed_cutoff else (i - (n - q) - 1)
        for a in itertools.product(range(p), repeat=n - q):
            for b in itertools.product(range(p), repeat=q):
                if any(a) or not any(b[max(cut, 0) :]):
                    lam2.append(IndexTriple(a, b, i))
    return lam1, lam2


def enumerate_gamma(
    params: Params, q: int
) -> Tuple[List[IndexTriple], List[IndexTriple]]:
    """Index sets of the bridge monomials mixing both variable groups.

    First list: front-directed monomials with nontrivial back part (these
    are exactly the front-list entries of enumerate_lambda that involve w).
    Second list: back-directed monomials with nontrivial front part.
    """
    _check_split(params, q)
    p, n = params.p, params.n
    lam1, _ = enumerate_lambda(params, q)
    gam1 = [t for t in lam1 if sum(t.b) > 0]
    gam2 = []
    for i in range(n - q + 1, n + 1):
        for a in itertools.product(range(p), repeat=n - q):
            if not any(a):
                continue
            for b in itertools.product(range(p), repeat=q):
                gam2.append(IndexTriple(a, b, i))
    return gam1, gam2


# ----------------------------------------------------------------------
# tori


def standard_torus(params: Params, r: int = 0) -> Subspace:
    """The diagonal torus with the last r coordinates shifted.

    Generators x_i d_i for the first n - r directions and (1 + x_i) d_i
    for the rest.  All of these are pairwise commuting, p-fixed, and the
    value of r is what the degree -1 components detect.
    """
    if not 0 <= r <= params.n:
        raise ValueError(f"r must lie in [0, {params.n}], got {r}")
    gens = []
    for i in range(params.n):
        exp = tuple(1 if k == i else 0 for k in range(params.n))
        t = WittElement.monomial(params, exp, i)
        if i >= params.n - r:
            t = t + WittElement.partial(params, i)
        gens.append(t)
    return span(gens, params)


def _torus_monomials(params: Params) -> List[WittElement]:
    return [
        WittElement.monomial(
            params, tuple(1 if k == i else 0 for k in range(params.n)), i
        )
        for i in range(params.n)
    ]


# ----------------------------------------------------------------------
# the b_r family


def build_b0(params: Params) -> Subspace:
    """Upper triangular degree-zero part plus all of degree one and up."""
    monos = []
    for i in range(params.n):
        for k in range(i + 1):
            exp = tuple(1 if s == k else 0 for s in range(params.n))
            monos.append(WittElement.monomial(params, exp, i))
    for exp in itertools.product(range(params.p), repeat=params.n):
        if sum(exp) < 2:
            continue
        for i in range(params.n):
            monos.append(WittElement.monomial(params, exp, i))
    return span(monos, params)


def build_bn(params: Params) -> Subspace:
    """Standard torus plus monomials supported strictly before their
    direction; direction 1 only receives its constant derivation."""
    monos = _torus_monomials(params)
    for i in range(params.n):
        for head in itertools.product(range(params.p), repeat=i):
            exp = head + (0,) * (params.n - i)
            monos.append(WittElement.monomial(params, exp, i))
    return span(monos, params)


def build_cq(params: Params, q: int, printed_cutoff: bool = False) -> Subspace:
    """The non-torus monomial part of b_q on its own."""
    lam1, lam2 = enumerate_lambda(params, q, printed_cutoff)
    return span([t.monomial(params) for t in lam1 + lam2], params)


def build_bq(params: Params, q: int, printed_cutoff: bool = False) -> Subspace:
    """Standard torus plus the monomials indexed by enumerate_lambda."""
    lam1, lam2 = enumerate_lambda(params, q, printed_cutoff)
    monos = _torus_monomials(params) + [t.monomial(params) for t in lam1 + lam2]
    return span(monos, params)


def build_br(params: Params, r: int) -> Subspace:
    """The r-th member of the family; dispatches to the dedicated edge
    constructions at r = 0 and r = n."""
    _check_split(params, r)
    if r == 0:
        return build_b0(params)
    if r == params.n:
        return build_bn(params)
    return build_bq(params, r)


def build_bq_decomposed(params: Params, q: int) -> Subspace:
    """Second presentation of b_q: a b_0 copy on the front variables, a
    b_n copy on the back variables, and the bridge from enumerate_gamma.

    Assembled from its own pieces rather than via enumerate_lambda, so
    agreement with build_bq is a real consistency check.
    """
    _check_split(params, q)
    p, n = params.p, params.n
    m = n - q
    monos = []
    for i in range(m):
        for k in range(i + 1):
            exp = tuple(1 if s == k else 0 for s in range(n))
            monos.append(WittElement.monomial(params, exp, i))
    for a in itertools.product(range(p), repeat=m):
        if sum(a) < 2:
            continue
        exp = a + (0,) * q
        for i in range(m):
            monos.append(WittElement.monomial(params, exp, i))
    for i in range(m, n):
        exp = tuple(1 if s == i else 0 for s in range(n))
        monos.append(WittElement.monomial(params, exp, i))
        for head in itertools.product(range(p), repeat=i - m):
            exp = (0,) * m + head + (0,) * (n - i)
            monos.append(WittElement.monomial(params, exp, i))
    gam1, gam2 = enumerate_gamma(params, q)
    monos.extend(t.monomial(params) for t in gam1 + gam2)
    return span(monos, params)


# ----------------------------------------------------------------------
# a solvable, not completely solvable, comparison point


def build_B1_example(p: int) -> Subspace:
    """Solvable subalgebra of the two-variable algebra whose derived
    subalgebra is not nilpotent: the constant derivation in direction 2
    survives every lower central term."""
    params = Params(p, 2)
    monos = [
        WittElement.partial(params, 0),
        WittElement.monomial(params, (1, 0), 0),
    ]
    for alpha in range(p):
        monos.append(WittElement.monomial(params, (alpha, 0), 1))
        monos.append(WittElement.monomial(params, (alpha, 1), 1))
    return span(monos, params)
