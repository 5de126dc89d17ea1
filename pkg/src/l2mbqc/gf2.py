"""Dense GF(2) linear algebra on numpy uint8 arrays.

Small matrices only (a few dozen rows); everything is plain Gaussian
elimination with XOR row operations.
"""
from __future__ import annotations

import numpy as np


def as_gf2(M) -> np.ndarray:
    return (np.asarray(M, dtype=np.int64) % 2).astype(np.uint8)


def row_echelon(M, n_pivot_cols=None):
    """Reduced row-echelon form over GF(2).

    Args:
        M: binary matrix (m x n).
        n_pivot_cols: only pivot in the first columns; row ops still act on
            the full width (handy for augmented systems).

    Returns:
        (R, pivots) with R fully reduced and pivots the pivot column indices.
    """
    R = as_gf2(M).copy()
    if R.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = R.shape
    if n_pivot_cols is None:
        n_pivot_cols = n
    pivots = []
    r = 0
    for col in range(n_pivot_cols):
        if r == m:
            break
        rows = np.nonzero(R[r:, col])[0]
        if rows.size == 0:
            continue
        p = r + rows[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        hit = np.nonzero(R[:, col])[0]
        hit = hit[hit != r]
        R[hit] ^= R[r]
        pivots.append(col)
        r += 1
    return R, pivots


def rank(M) -> int:
    M = as_gf2(M)
    if M.size == 0:
        return 0
    return len(row_echelon(M)[1])


def matmul(A, B) -> np.ndarray:
    return (as_gf2(A).astype(np.int64) @ as_gf2(B).astype(np.int64) % 2).astype(np.uint8)


def inverse(M) -> np.ndarray:
    """Inverse over GF(2); raises ValueError if singular."""
    M = as_gf2(M)
    n, m = M.shape
    if n != m:
        raise ValueError("matrix is not square")
    aug = np.concatenate([M, np.eye(n, dtype=np.uint8)], axis=1)
    R, piv = row_echelon(aug, n_pivot_cols=n)
    if len(piv) != n:
        raise ValueError("matrix is singular over GF(2)")
    return R[:, n:].copy()


def nullspace(M) -> np.ndarray:
    """Basis of {x : M x = 0} as rows of the returned (k x n) matrix."""
    M = as_gf2(M)
    m, n = M.shape
    if m == 0:
        return np.eye(n, dtype=np.uint8)
    R, piv = row_echelon(M)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for r, pc in enumerate(piv):
            basis[t, pc] = R[r, fc]
    return basis


def solve(A, b):
    """One solution x of A x = b over GF(2), or None when inconsistent."""
    A = as_gf2(A)
    b = as_gf2(b).reshape(-1, 1)
    m, n = A.shape
    R, piv = row_echelon(np.concatenate([A, b], axis=1), n_pivot_cols=n)
    rk = len(piv)
    if R[rk:, n].any():
        return None
    x = np.zeros(n, dtype=np.uint8)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def is_symmetric_alternating(Q) -> bool:
    Q = as_gf2(Q)
    return Q.shape[0] == Q.shape[1] and np.array_equal(Q, Q.T) and not np.diagonal(Q).any()


def bits_of(v: int, n: int) -> np.ndarray:
    """Little-endian bit vector: entry j holds bit j of v."""
    return ((int(v) >> np.arange(n)) & 1).astype(np.uint8)


def int_of(bits) -> int:
    return int(sum(int(b) << j for j, b in enumerate(np.asarray(bits).ravel())))
