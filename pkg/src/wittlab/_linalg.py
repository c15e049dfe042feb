"""Dense exact linear algebra mod p on small numpy integer matrices.

Everything here works on int16 internally; p is at most a few dozen in
practice so products and differences never approach the int16 range.
Reduced row echelon form is the canonical representation of a subspace:
nonzero rows only, pivots equal to 1, pivot columns strictly increasing
and cleared above and below.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np


def _as_modp(mat: np.ndarray, p: int) -> np.ndarray:
    out = np.asarray(mat, dtype=np.int16)
    if out.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return out % p


def rref(mat: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form mod p.

    Returns (rows, pivot_columns); rows has one row per pivot, zero rows
    dropped.  Elimination touches only rows with a nonzero entry in the
    pivot column, which keeps near-diagonal inputs cheap.
    """
    a = _as_modp(mat, p).copy()
    m, ncols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            a[hit] = (a[hit] - np.outer(a[hit, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return rref(mat, p)[0].shape[0]


def reduce_vector(rows: np.ndarray, pivots: List[int], v: np.ndarray, p: int) -> np.ndarray:
    """Residue of v after elimination against RREF rows."""
    w = np.asarray(v, dtype=np.int16) % p
    for i, c in enumerate(pivots):
        f = int(w[c])
        if f:
            w = (w - f * rows[i]) % p
    return w


def in_rowspace(rows: np.ndarray, pivots: List[int], v: np.ndarray, p: int) -> bool:
    return not reduce_vector(rows, pivots, v, p).any()


def stack_rref(blocks: List[np.ndarray], p: int, width: int) -> Tuple[np.ndarray, List[int]]:
    """RREF of several row blocks stacked; handles the empty case."""
    blocks = [b for b in blocks if b is not None and b.size]
    if not blocks:
        return np.zeros((0, width), dtype=np.int16), []
    return rref(np.vstack(blocks), p)


def inverse_matrix(mat: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix mod p, via RREF of [mat | I]."""
    a = _as_modp(mat, p)
    m = a.shape[0]
    if a.shape[1] != m:
        raise ValueError("matrix is not square")
    aug = np.hstack([a, np.eye(m, dtype=np.int16)])
    rows, pivots = rref(aug, p)
    if len(pivots) < m or pivots[:m] != list(range(m)):
        raise ValueError("matrix is singular mod p")
    return rows[:, m:] % p


def matrix_power(mat: np.ndarray, k: int, p: int) -> np.ndarray:
    """mat^k mod p by repeated squaring, int64 accumulation."""
    a = np.asarray(mat, dtype=np.int64) % p
    m = a.shape[0]
    out = np.eye(m, dtype=np.int64)
    while k:
        if k & 1:
            out = (out @ a) % p
        a = (a @ a) % p
        k >>= 1
    return out


def small_rref_collect(rows: np.ndarray, p: int) -> np.ndarray:
    """RREF for a possibly tall matrix with very few columns.

    Used by the weight-block bracket kernel where the column count is the
    variable count n.  Scans column by column and eliminates in bulk, so
    the cost is O(ncols * nrows) numpy work regardless of row count.
    """
    a = np.asarray(rows, dtype=np.int16) % p
    m, ncols = a.shape
    picked: List[np.ndarray] = []
    pivcols: List[int] = []
    for c in range(ncols):
        col = a[:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        k = int(nz[0])
        piv = a[k].copy()
        inv = pow(int(piv[c]), p - 2, p)
        if inv != 1:
            piv = (piv * inv) % p
        a[nz] = (a[nz] - np.outer(col[nz], piv)) % p
        for j, pc in enumerate(pivcols):
            f = int(picked[j][c])
            if f:
                picked[j] = (picked[j] - f * piv) % p
        picked.append(piv)
        pivcols.append(c)
        if len(picked) == ncols:
            break
    if not picked:
        return np.zeros((0, ncols), dtype=np.int16)
    return np.array(picked, dtype=np.int16)
