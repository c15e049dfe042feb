"""Per-(p, n) coordinate tables and the vectorized monomial bracket kernel.

The torus t_0 = <x_i d_i> acts on every basis monomial x^a d_j by the scalar
weight (a - e_j) mod p, so W(n) splits into p^n weight blocks of exactly n
monomials each (one per direction).  Subspaces stable under that action are
direct sums of their block parts, and brackets map block u x block v into
block u+v.  The series and closure computations exploit this: all heavy row
reduction happens inside n-column blocks no matter how large the subspace.

Everything in this module is plain numpy over flat column ids; see witt.py
for the id convention.
"""

from __future__ import annotations

import functools
from typing import Dict, List, Tuple

import numpy as np

from ._linalg import small_rref_collect
from .params import Params

# pair-bracket chunking bound, keeps temporaries around a hundred MB
_CHUNK = 1 << 21


@functools.lru_cache(maxsize=None)
def tables(params: Params) -> "ParamTables":
    return ParamTables(params)


class ParamTables:
    def __init__(self, params: Params):
        p, n = params.p, params.n
        R = params.ring_dim
        self.params = params
        self.p, self.n, self.R, self.N = p, n, R, params.witt_dim
        # place values of the base-p exponent encoding, first entry most significant
        self.pvec = np.array([p ** (n - 1 - k) for k in range(n)], dtype=np.int64)
        # exp_table[code] = exponent vector
        codes = np.arange(R, dtype=np.int64)
        cols = []
        rest = codes
        for k in range(n):
            q = p ** (n - 1 - k)
            cols.append(rest // q)
            rest = rest % q
        self.exp_table = np.stack(cols, axis=1).astype(np.int16)
        # weight block of each column: (a - e_dir) mod p, encoded
        dirs = np.repeat(np.arange(n, dtype=np.int64), R)
        exps = np.tile(self.exp_table, (n, 1)).astype(np.int64)
        exps[np.arange(self.N), dirs] -= 1
        self.weight_of = ((exps % p) @ self.pvec).astype(np.int64)
        # block_members[w, k] = column id of the direction-k monomial of block w
        wexp = self.exp_table.astype(np.int64)  # (R, n)
        members = np.empty((R, n), dtype=np.int64)
        for k in range(n):
            a = wexp.copy()
            a[:, k] = (a[:, k] + 1) % p
            members[:, k] = k * R + a @ self.pvec
        self.block_members = members
        self.col_degree = np.tile(
            (self.exp_table.sum(axis=1) - 1).astype(np.int32), n
        )

    def encode_rows(self, exps: np.ndarray) -> np.ndarray:
        return exps.astype(np.int64) @ self.pvec

    def block_sum(self, wa: np.ndarray, wb: np.ndarray) -> np.ndarray:
        """Weight-block id of the bracket target, elementwise over pairs."""
        s = (self.exp_table[wa].astype(np.int64) + self.exp_table[wb]) % self.p
        return s @ self.pvec

    def pair_bracket(
        self, ga: np.ndarray, gb: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """[m_ga, m_gb] for arrays of column ids, fully vectorized.

        Each bracket of basis monomials has at most two terms:
        [x^a d_i, x^b d_j] = b_i x^(a+b-e_i) d_j - a_j x^(a+b-e_j) d_i,
        where a term disappears if its coefficient is zero or some exponent
        reaches p.  Returns (c1, t1, c2, t2); coefficient 0 marks a dead
        term and its target id is then meaningless.
        """
        p, R = self.p, self.R
        m = len(ga)
        ia = ga // R
        ib = gb // R
        ea = self.exp_table[ga % R].astype(np.int16)
        eb = self.exp_table[gb % R].astype(np.int16)
        s = ea + eb
        rows = np.arange(m)

        c1 = eb[rows, ia].astype(np.int64)
        t1e = s.copy()
        t1e[rows, ia] -= 1
        ok1 = (t1e < p).all(axis=1) & (c1 > 0)
        t1 = ib * R + np.where(ok1, self.encode_rows(np.maximum(t1e, 0)), 0)
        c1 = np.where(ok1, c1, 0)

        c2 = ea[rows, ib].astype(np.int64)
        t2e = s
        t2e[rows, ib] -= 1
        ok2 = (t2e < p).all(axis=1) & (c2 > 0)
        t2 = ia * R + np.where(ok2, self.encode_rows(np.maximum(t2e, 0)), 0)
        c2 = np.where(ok2, (-c2) % p, 0)
        return c1, t1, c2, t2


# ----------------------------------------------------------------------
# weight-block subspace arithmetic

Blocks = Dict[int, np.ndarray]  # block id -> RREF matrix, local column = direction


def blocks_dim(blocks: Blocks) -> int:
    return sum(mat.shape[0] for mat in blocks.values())


def blocks_union(t: ParamTables, a: Blocks, b: Blocks) -> Blocks:
    out: Blocks = {}
    for w in sorted(set(a) | set(b)):
        stack = [m for m in (a.get(w), b.get(w)) if m is not None and m.size]
        if not stack:
            continue
        mat = small_rref_collect(np.vstack(stack), t.p)
        if mat.shape[0]:
            out[w] = mat
    return out


def blocks_equal(a: Blocks, b: Blocks) -> bool:
    if a.keys() != b.keys():
        return False
    return all(np.array_equal(a[w], b[w]) for w in a)


def _flatten(t: ParamTables, blocks: Blocks):
    """Term arrays (row, column id, coef) plus per-row weight codes."""
    rows: List[np.ndarray] = []
    gids: List[np.ndarray] = []
    coefs: List[np.ndarray] = []
    row_w: List[np.ndarray] = []
    base = 0
    for w in sorted(blocks):
        mat = blocks[w]
        k = mat.shape[0]
        rr, cc = np.nonzero(mat)
        rows.append(rr.astype(np.int64) + base)
        gids.append(t.block_members[w][cc])
        coefs.append(mat[rr, cc].astype(np.int64))
        row_w.append(np.full(k, w, dtype=np.int64))
        base += k
    if not rows:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z, z, 0
    return (
        np.concatenate(rows),
        np.concatenate(gids),
        np.concatenate(coefs),
        np.concatenate(row_w),
        base,
    )


def blocks_bracket(t: ParamTables, a: Blocks, b: Blocks) -> Blocks:
    """Span of all pairwise brackets between two block-graded subspaces."""
    ar, ag, ac, aw, ra = _flatten(t, a)
    br, bg, bc, bw, rb = _flatten(t, b)
    if ra == 0 or rb == 0:
        return {}
    p, n = t.p, t.n
    ta, tb = len(ar), len(br)

    # accumulate every row pair's bracket as an n-vector, local col = direction
    acc = np.zeros(ra * rb * n, dtype=np.int64)
    step = max(1, _CHUNK // max(tb, 1))
    for lo in range(0, ta, step):
        hi = min(ta, lo + step)
        sz = hi - lo
        ia = np.repeat(np.arange(lo, hi), tb)
        ib = np.tile(np.arange(tb), sz)
        ga, gb = ag[ia], bg[ib]
        scale = (ac[ia] * bc[ib]) % p
        pairrow = ar[ia] * rb + br[ib]
        c1, t1, c2, t2 = t.pair_bracket(ga, gb)
        for c, tgt in ((c1, t1), (c2, t2)):
            cc = (c * scale) % p
            live = cc != 0
            if not live.any():
                continue
            flat = pairrow[live] * n + tgt[live] // t.R
            acc += np.bincount(flat, weights=cc[live], minlength=acc.size).astype(
                np.int64
            )

    mat = (acc % p).reshape(ra * rb, n).astype(np.int16)
    live_rows = np.nonzero(mat.any(axis=1))[0]
    if live_rows.size == 0:
        return {}
    # weight of a row pair is the sum of the factors' weights; aw and bw are
    # indexed by row id by construction of _flatten
    pw = t.block_sum(aw[live_rows // rb], bw[live_rows % rb])
    out: Blocks = {}
    order = np.argsort(pw, kind="stable")
    pw_sorted = pw[order]
    rows_sorted = mat[live_rows][order]
    start = 0
    while start < len(order):
        w = int(pw_sorted[start])
        end = int(np.searchsorted(pw_sorted, w, side="right"))
        red = small_rref_collect(rows_sorted[start:end], p)
        if red.shape[0]:
            out[w] = red
        start = end
    return out
