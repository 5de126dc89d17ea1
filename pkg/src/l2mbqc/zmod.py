"""Linear systems over Z_{2^K} by diagonalizing elimination.

Pivots are chosen with minimal 2-adic valuation, so every other entry of the
pivot's row and column is a multiple of the pivot and can be cleared.  The
result is A = U^-1 D V^-1 with D diagonal with powers of two; solving reduces
to divisibility checks on U b.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def valuation(v: int, K: int) -> int:
    """2-adic valuation of v mod 2^K (K for zero)."""
    v %= 1 << K
    if v == 0:
        return K
    return (v & -v).bit_length() - 1


@dataclass
class Diagonalization:
    K: int
    U: np.ndarray      # row transform (m x m)
    V: np.ndarray      # column transform (c x c)
    vals: list         # valuations of the diagonal pivots

    @property
    def rank(self) -> int:
        return len(self.vals)

    def feasible(self, b: np.ndarray) -> np.ndarray:
        """Feasibility of A x = b for each column of b (m x t)."""
        mod = 1 << self.K
        bp = (self.U @ (np.asarray(b, dtype=np.int64) % mod)) % mod
        r = self.rank
        ok = ~(bp[r:] != 0).any(axis=0)
        for i, v in enumerate(self.vals):
            ok &= (bp[i] % (1 << v)) == 0
        return ok

    def solve(self, b: np.ndarray):
        """One solution x (length c) or None."""
        mod = 1 << self.K
        b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
        if not self.feasible(b)[0]:
            return None
        bp = (self.U @ (b % mod)) % mod
        y = np.zeros(self.V.shape[0], dtype=np.int64)
        for i, v in enumerate(self.vals):
            y[i] = int(bp[i, 0]) >> v
        return (self.V @ y) % mod


def diagonalize(A: np.ndarray, K: int) -> Diagonalization:
    """U A V = diag(2^v_0, ..., 2^v_{r-1}, 0, ...) mod 2^K."""
    mod = 1 << K
    A = np.asarray(A, dtype=np.int64) % mod
    m, c = A.shape
    U = np.eye(m, dtype=np.int64)
    V = np.eye(c, dtype=np.int64)
    vals = []
    for t in range(min(m, c)):
        sub = A[t:, t:]
        if not sub.any():
            break
        # minimal valuation: lowest set bit across the block
        low = sub & -sub
        low[sub == 0] = mod
        flat = int(np.argmin(low))
        pr, pc = divmod(flat, c - t)
        pr += t
        pc += t
        if pr != t:
            A[[t, pr]] = A[[pr, t]]
            U[[t, pr]] = U[[pr, t]]
        if pc != t:
            A[:, [t, pc]] = A[:, [pc, t]]
            V[:, [t, pc]] = V[:, [pc, t]]
        piv = int(A[t, t])
        v = (piv & -piv).bit_length() - 1
        odd = piv >> v
        inv = pow(odd, -1, mod)
        A[t] = (A[t] * inv) % mod
        U[t] = (U[t] * inv) % mod
        # clear column t in the other rows
        coef = A[:, t] >> v
        coef[t] = 0
        nz = np.nonzero(coef)[0]
        if nz.size:
            A[nz] = (A[nz] - np.outer(coef[nz], A[t])) % mod
            U[nz] = (U[nz] - np.outer(coef[nz], U[t])) % mod
        # clear row t in the other columns
        coef = A[t, :] >> v
        coef[t] = 0
        nz = np.nonzero(coef)[0]
        if nz.size:
            A[:, nz] = (A[:, nz] - np.outer(A[:, t], coef[nz])) % mod
            V[:, nz] = (V[:, nz] - np.outer(V[:, t], coef[nz])) % mod
        vals.append(v)
    return Diagonalization(K, U, V, vals)
