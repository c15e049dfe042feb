"""Derived and lower central series, solvability predicates, tori.

Series are computed on Subspace values and returned as SeriesReport
records.  Conventions, fixed here and relied on by the CLI and tests:

* terms[0] is the input subspace itself;
* each later term is one bracket step (derived: [g_k, g_k]; lower
  central: [g_0, g_k]);
* if a term repeats the previous one with the same dimension the series
  has stabilized and the repeat is not appended;
* vanishing_index is the index of the first zero term, or None.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import _tables
from .params import Params
from .subspace import Subspace, bracket_space, span, subalgebra_closure
from .witt import WittElement, monomial_basis


class NotASubalgebraError(ValueError):
    pass


class NotATorusError(ValueError):
    pass


def _require_subalgebra(S: Subspace) -> None:
    if not S.contains_space(bracket_space(S, S)):
        raise NotASubalgebraError("input is not closed under the bracket")


@dataclass
class SeriesReport:
    kind: str
    terms: List[Subspace]
    stabilized: bool
    vanishing_index: Optional[int]

    @property
    def dims(self) -> List[int]:
        return [T.dim for T in self.terms]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dims": self.dims,
            "stabilized": self.stabilized,
            "vanishing_index": self.vanishing_index,
            "terms": [T.to_json_dict() for T in self.terms],
        }


def _run_series(S: Subspace, kind: str) -> SeriesReport:
    _require_subalgebra(S)
    terms = [S]
    while True:
        cur = terms[-1]
        if cur.is_zero():
            return SeriesReport(kind, terms, False, len(terms) - 1)
        if kind == "derived":
            nxt = bracket_space(cur, cur)
        else:
            nxt = bracket_space(terms[0], cur)
        if nxt.dim == cur.dim:
            return SeriesReport(kind, terms, True, None)
        terms.append(nxt)


def derived_series(S: Subspace) -> SeriesReport:
    return _run_series(S, "derived")


def lower_central_series(S: Subspace) -> SeriesReport:
    return _run_series(S, "lower_central")


def is_solvable(S: Subspace) -> bool:
    return derived_series(S).vanishing_index is not None


def is_nilpotent(S: Subspace) -> bool:
    return lower_central_series(S).vanishing_index is not None


def is_completely_solvable(S: Subspace) -> bool:
    """Solvable with nilpotent derived subalgebra.

    Over the base prime field this is the workable surrogate for having a
    full flag of ideals; the two agree for all the subalgebras built here.
    """
    _require_subalgebra(S)
    der = bracket_space(S, S)
    if der.is_zero():
        return True
    return lower_central_series(der).vanishing_index is not None


# ----------------------------------------------------------------------
# tori


def _p_power_span(S: Subspace, X: WittElement) -> Subspace:
    """span{X^[p^k] : k >= 1}; stabilizes within dim steps."""
    cur = X
    vecs = []
    seen = Subspace.zero(S.params)
    for _ in range(S.dim + 1):
        cur = cur.p_power()
        if seen.contains(cur):
            break
        vecs.append(cur)
        seen = seen + span([cur], S.params)
    return seen


def _element_in_own_power_span(S: Subspace, X: WittElement) -> bool:
    return _p_power_span(S, X).contains(X)


_EXHAUSTIVE_DIM = 4
_RANDOM_SAMPLES = 10_000


def is_torus(S: Subspace, seed: int = 0) -> bool:
    """Abelian, closed under the p-map, and every element semisimple.

    Semisimplicity is tested as X lying in the span of its own iterated
    p-th powers.  On an abelian p-closed space the p-map is semilinear, so
    checking every element of small spaces is feasible; for dim > 4 the
    echelon basis plus a seeded random sample is checked instead.
    """
    if S.is_zero():
        return True
    basis = S.basis()
    for i, a in enumerate(basis):
        for b in basis[i + 1 :]:
            if not a.bracket(b).is_zero():
                return False
    for a in basis:
        if not S.contains(a.p_power()):
            return False
    p = S.params.p
    if S.dim <= _EXHAUSTIVE_DIM:
        for coeffs in itertools.product(range(p), repeat=S.dim):
            if not any(coeffs):
                continue
            X = basis[0].scale(coeffs[0])
            for c, b in zip(coeffs[1:], basis[1:]):
                X = X + b.scale(c)
            if not _element_in_own_power_span(S, X):
                return False
        return True
    for b in basis:
        if not _element_in_own_power_span(S, b):
            return False
    rng = np.random.default_rng(seed)
    for _ in range(_RANDOM_SAMPLES):
        coeffs = rng.integers(0, p, size=S.dim)
        if not coeffs.any():
            continue
        X = basis[0].scale(int(coeffs[0]))
        for c, b in zip(coeffs[1:], basis[1:]):
            X = X + b.scale(int(c))
        if not _element_in_own_power_span(S, X):
            return False
    return True


# ----------------------------------------------------------------------
# invariants from the degree filtration


def _degree_minus_one_rank(S: Subspace) -> int:
    """Rank of the projection onto the constant-derivation coordinates.

    Equals the degree -1 coefficient of the filtered graded dimension, so
    it is preserved by every automorphism of the ambient algebra.
    """
    if S.is_zero():
        return 0
    t = _tables.tables(S.params)
    keep = t.col_degree < 0
    from ._linalg import rank

    return rank(S.rows[:, keep], S.params.p)


def torus_orbit_invariant(S: Subspace) -> int:
    """dim of the intersection with the non-negative degrees, for a torus.

    Separates the conjugacy classes of maximal tori: the standard torus
    with r shifted coordinates scores n - r.
    """
    if not is_torus(S):
        raise NotATorusError("invariant is defined for tori only")
    return S.dim - _degree_minus_one_rank(S)


def r_invariant_pr0(S: Subspace) -> int:
    """Rank of the degree -1 projection; applicable to any subspace.

    On the completely solvable representatives this reads off the family
    index r, and conjugation cannot change it.
    """
    return _degree_minus_one_rank(S)


# ----------------------------------------------------------------------
# maximality probing


@dataclass
class ProbeResult:
    monomial: str
    closure_dim: int
    solvable: bool
    completely_solvable: bool
    witness_dims: List[int] = field(default_factory=list)

    @property
    def rejected(self) -> bool:
        """True when adjoining the monomial forces a non-CS closure."""
        return not self.completely_solvable


@dataclass
class MaximalityReport:
    params: Params
    base_dim: int
    probes: List[ProbeResult]
    caveat: str = (
        "one-generator probe over the prime field; maximality among "
        "completely solvable subalgebras over the algebraic closure is a "
        "stronger statement than this certificate"
    )

    @property
    def failures(self) -> List[ProbeResult]:
        return [r for r in self.probes if not r.rejected]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "p": self.params.p,
            "n": self.params.n,
            "base_dim": self.base_dim,
            "caveat": self.caveat,
            "passed": self.passed,
            "probes": [
                {
                    "monomial": r.monomial,
                    "closure_dim": r.closure_dim,
                    "solvable": r.solvable,
                    "completely_solvable": r.completely_solvable,
                    "witness_dims": r.witness_dims,
                }
                for r in self.probes
            ],
        }


def maximality_probe(S: Subspace, torus: Optional[Subspace] = None) -> MaximalityReport:
    """Adjoin each monomial outside S and test the closure for complete
    solvability.

    Preconditions: S must itself be a completely solvable subalgebra, and
    must contain the supplied torus when one is given.  Each probe records
    the closure dimension and, when the closure stays solvable but stops
    being CS, the dimensions of the stabilizing lower central term of its
    derived subalgebra as the witness.
    """
    if not is_completely_solvable(S):
        raise NotASubalgebraError("probe base must be completely solvable")
    if torus is not None and not S.contains_space(torus):
        raise ValueError("probe base must contain the given torus")
    results = []
    for m in monomial_basis(S.params):
        if S.contains(m):
            continue
        closure = subalgebra_closure(S + span([m], S.params))
        solv = is_solvable(closure)
        cs = False
        witness: List[int] = []
        if solv:
            der = bracket_space(closure, closure)
            lcs = lower_central_series(der)
            cs = lcs.vanishing_index is not None
            if not cs:
                witness = lcs.dims
        results.append(
            ProbeResult(
                monomial=str(m),
                closure_dim=closure.dim,
                solvable=solv,
                completely_solvable=cs,
                witness_dims=witness,
            )
        )
    return MaximalityReport(S.params, S.dim, results)
