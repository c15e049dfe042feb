"""F_p-linear subspaces of W(n) and the Lie-theoretic span calculus.

A Subspace is a canonical reduced row echelon matrix over the monomial
basis, so equal subspaces compare equal as arrays.  Bracket spans, closure
fixpoints and the series in series.py all funnel through bracket_space,
which picks one of two routes:

* the weight-block kernel from _tables when both operands are stable under
  the standard torus (every echelon row supported in a single weight
  block); this is what makes the large grids tractable, and
* a dense pairwise fallback for arbitrary subspaces.

Both routes are exact; the test suite cross-checks them against each other
on small inputs.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from . import _linalg, _tables
from .params import Params
from .witt import WittElement


class Subspace:
    __slots__ = ("params", "rows", "pivots", "_blocks", "_blocks_known")

    def __init__(self, params: Params, rows: np.ndarray, pivots: List[int], _canonical: bool = False):
        """Not for direct use; go through span / from_rows / zero."""
        self.params = params
        if not _canonical:
            rows, pivots = _linalg.rref(rows, params.p)
        self.rows = rows
        self.pivots = pivots
        self._blocks: Optional[_tables.Blocks] = None
        self._blocks_known = False

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def zero(cls, params: Params) -> "Subspace":
        return cls(
            params,
            np.zeros((0, params.witt_dim), dtype=np.int16),
            [],
            _canonical=True,
        )

    @classmethod
    def from_rows(cls, params: Params, rows: np.ndarray) -> "Subspace":
        if rows.size == 0:
            return cls.zero(params)
        return cls(params, rows, [])

    @classmethod
    def full(cls, params: Params) -> "Subspace":
        return cls(
            params,
            np.eye(params.witt_dim, dtype=np.int16),
            list(range(params.witt_dim)),
            _canonical=True,
        )

    # ------------------------------------------------------------------
    # basic queries

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def is_zero(self) -> bool:
        return self.dim == 0

    def contains_vector(self, v: np.ndarray) -> bool:
        return _linalg.in_rowspace(self.rows, self.pivots, v, self.params.p)

    def contains(self, D: WittElement) -> bool:
        self.params.same(D.params)
        return self.contains_vector(D.to_vector())

    def contains_space(self, other: "Subspace") -> bool:
        self.params.same(other.params)
        return all(self.contains_vector(r) for r in other.rows)

    def basis(self) -> List[WittElement]:
        return [WittElement.from_vector(self.params, r) for r in self.rows]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.params == other.params
            and self.rows.shape == other.rows.shape
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self):
        return hash((self.params, self.rows.tobytes()))

    def __add__(self, other: "Subspace") -> "Subspace":
        """Sum of subspaces."""
        self.params.same(other.params)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        rows, piv = _linalg.stack_rref(
            [self.rows, other.rows], self.params.p, self.params.witt_dim
        )
        return Subspace(self.params, rows, piv, _canonical=True)

    def __repr__(self) -> str:
        return f"Subspace(p={self.params.p}, n={self.params.n}, dim={self.dim})"

    # ------------------------------------------------------------------
    # weight-block structure

    def weight_blocks(self) -> Optional[_tables.Blocks]:
        """Block decomposition when stable under the standard torus.

        Returns None when some echelon row mixes weight blocks; such a
        subspace is not ad(t_0)-stable and takes the dense code paths.
        """
        if self._blocks_known:
            return self._blocks
        t = _tables.tables(self.params)
        blocks: Dict[int, List[np.ndarray]] = {}
        ok = True
        for row in self.rows:
            cols = np.nonzero(row)[0]
            ws = t.weight_of[cols]
            if ws.size and (ws != ws[0]).any():
                ok = False
                break
            w = int(ws[0])
            local = np.zeros(t.n, dtype=np.int16)
            local[cols // t.R] = row[cols]
            blocks.setdefault(w, []).append(local)
        if ok:
            self._blocks = {
                w: _linalg.small_rref_collect(np.array(rs), t.p)
                for w, rs in blocks.items()
            }
        else:
            self._blocks = None
        self._blocks_known = True
        return self._blocks

    @classmethod
    def from_weight_blocks(cls, params: Params, blocks: _tables.Blocks) -> "Subspace":
        """Assemble the canonical echelon matrix of a block-graded space.

        Rows of distinct blocks occupy disjoint column sets, so stacking
        the per-block echelon rows sorted by pivot column is already the
        global reduced echelon form; no elimination needed.
        """
        t = _tables.tables(params)
        entries = []
        for w, mat in blocks.items():
            cols = t.block_members[w]
            for local in mat:
                nz = np.nonzero(local)[0]
                piv = int(cols[nz[0]])
                entries.append((piv, w, local))
        entries.sort(key=lambda e: e[0])
        rows = np.zeros((len(entries), params.witt_dim), dtype=np.int16)
        pivots = []
        for k, (piv, w, local) in enumerate(entries):
            rows[k, t.block_members[w]] = local
            pivots.append(piv)
        out = cls(params, rows, pivots, _canonical=True)
        out._blocks = {w: m for w, m in blocks.items() if m.shape[0]}
        out._blocks_known = True
        return out

    # ------------------------------------------------------------------
    # serialization

    def to_json_dict(self) -> dict:
        return {
            "p": self.params.p,
            "n": self.params.n,
            "dim": self.dim,
            "rows": self.rows.astype(int).tolist(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Subspace":
        params = Params(data["p"], data["n"])
        rows = np.array(data["rows"], dtype=np.int16)
        if rows.size == 0:
            return cls.zero(params)
        rows = rows.reshape(data["dim"], params.witt_dim)
        return cls.from_rows(params, rows)


# ----------------------------------------------------------------------
# span calculus


def span(elements: Iterable[WittElement], params: Params | None = None) -> Subspace:
    """Row space of the given elements; params is only needed when the
    iterable can be empty."""
    vecs = []
    for el in elements:
        if params is None:
            params = el.params
        else:
            params.same(el.params)
        vecs.append(el.to_vector())
    if params is None:
        raise ValueError("cannot span an empty family without params")
    if not vecs:
        return Subspace.zero(params)
    return Subspace.from_rows(params, np.array(vecs, dtype=np.int16))


def contains(S: Subspace, D: WittElement) -> bool:
    return S.contains(D)


def _bracket_space_dense(S: Subspace, T: Subspace) -> Subspace:
    """Pairwise brackets of echelon bases, dense accumulation.

    Only used for subspaces that are not torus-stable; those stay small in
    practice (automorphism images, randomized tests), so a plain python
    pair loop with incremental reduction is fine.
    """
    p = S.params.p
    width = S.params.witt_dim
    sb = S.basis()
    tb = T.basis()
    acc: List[np.ndarray] = []
    current = np.zeros((0, width), dtype=np.int16)
    pivots: List[int] = []
    for ds in sb:
        for dt in tb:
            v = ds.bracket(dt).to_vector()
            if _linalg.in_rowspace(current, pivots, v, p):
                continue
            acc.append(v)
            current, pivots = _linalg.stack_rref([current, np.array([v])], p, width)
    return Subspace(S.params, current, pivots, _canonical=True)


def bracket_space(S: Subspace, T: Subspace) -> Subspace:
    """span{[s, t]} over bases of S and T."""
    S.params.same(T.params)
    if S.is_zero() or T.is_zero():
        return Subspace.zero(S.params)
    bs = S.weight_blocks()
    bt = T.weight_blocks()
    if bs is not None and bt is not None:
        t = _tables.tables(S.params)
        return Subspace.from_weight_blocks(S.params, _tables.blocks_bracket(t, bs, bt))
    return _bracket_space_dense(S, T)


def subalgebra_closure(S: Subspace) -> Subspace:
    """Smallest Lie subalgebra containing S (fixpoint of S + [S, S])."""
    cur = S
    while True:
        nxt = cur + bracket_space(cur, cur)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def restricted_closure(S: Subspace) -> Subspace:
    """Smallest restricted subalgebra containing S.

    Alternates the bracket closure with adjoining p-th powers of the
    current basis; sums of p-th powers are covered because the defect of
    additivity of the p-map lies in the bracket closure.
    """
    cur = subalgebra_closure(S)
    while True:
        extra = [D.p_power() for D in cur.basis()]
        nxt = subalgebra_closure(cur + span(extra, cur.params))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt
