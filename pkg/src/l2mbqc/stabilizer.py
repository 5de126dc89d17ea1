"""Quadratic structure of Boolean functions and the level-2 success bound.

Non-quadraticity is the Hamming distance to the second-order Reed-Muller
code RM(2, n).  Rather than touching all 2^(1+n+n(n-1)/2) codewords one at a
time, each quadratic part q is handled in one shot: the distance from f+q to
the nearest affine function is (2^n - max_a |W_{f+q}(a)|)/2 with W the
+-1 Walsh transform.  That is still exhaustive over RM(2, n), just batched.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import gf2
from .boolfn import BoolFn, MAX_ARITY, Anf, degree, to_anf, walsh_hadamard, hamming_distance

NQ_MAX_ARITY = 6


class DegreeError(ValueError):
    pass


def worker_count() -> int:
    env = os.environ.get("MBQC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"MBQC_THREADS must be an integer, got {env!r}") from None
    return min(8, os.cpu_count() or 1)


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """f(x) = c + sum_i l_i x_i + sum_{i<j} Q_ij x_i x_j (mod 2)."""

    n: int
    Q: np.ndarray
    l: np.ndarray
    c: int = 0

    def __post_init__(self):
        Q = gf2.as_gf2(self.Q)
        if Q.shape != (self.n, self.n) or not gf2.is_symmetric_alternating(Q):
            raise ValueError("Q must be symmetric with zero diagonal")
        l = gf2.as_gf2(self.l).reshape(self.n)
        Q.flags.writeable = False
        l.flags.writeable = False
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "c", int(self.c) & 1)

    @property
    def rank(self) -> int:
        return gf2.rank(self.Q)

    def to_boolfn(self) -> BoolFn:
        n = self.n
        coeffs = np.zeros(1 << n, dtype=np.uint8)
        coeffs[0] = self.c
        for i in range(n):
            coeffs[1 << i] = self.l[i]
            for j in range(i + 1, n):
                coeffs[(1 << i) | (1 << j)] = self.Q[i, j]
        return Anf(n, coeffs).to_boolfn()


def q_matrix(f: BoolFn) -> QuadraticForm:
    anf = to_anf(f)
    if anf.degree() > 2:
        raise DegreeError(f"degree {anf.degree()} > 2; truncate_to_quadratic first")
    n = f.n
    Q = np.zeros((n, n), dtype=np.uint8)
    l = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        l[i] = anf.coeffs[1 << i]
        for j in range(i + 1, n):
            Q[i, j] = Q[j, i] = anf.coeffs[(1 << i) | (1 << j)]
    return QuadraticForm(n, Q, l, int(anf.coeffs[0]))


def truncate_to_quadratic(f: BoolFn) -> BoolFn:
    """Drop every ANF monomial of degree above two."""
    anf = to_anf(f)
    w = np.array([int(b).bit_count() for b in range(1 << f.n)])
    return Anf(f.n, np.where(w <= 2, anf.coeffs, 0)).to_boolfn()


def _pairs(n):
    return list(combinations(range(n), 2))


def _pair_tables(n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    return np.array([((idx >> i) & (idx >> j) & 1) for i, j in _pairs(n)], dtype=np.int64).reshape(-1, 1 << n)


def _quadratic_parts(n: int, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """Selection bits and truth tables of the quadratic parts with index lo..hi-1."""
    npairs = len(_pairs(n))
    sel = ((np.arange(lo, hi)[:, None] >> np.arange(npairs)) & 1).astype(np.int64)
    tabs = (sel @ _pair_tables(n)) & 1 if npairs else np.zeros((hi - lo, 1 << n), dtype=np.int64)
    return sel, tabs


def _scan(f: BoolFn, lo: int, hi: int) -> np.ndarray:
    """max_a |W_{f+q}(a)| for each quadratic part q in the range."""
    _, tabs = _quadratic_parts(f.n, lo, hi)
    signs = 1 - 2 * (tabs ^ f.table.astype(np.int64))
    W = _batched_wht(signs, f.n)
    return np.abs(W).max(axis=1)


def _batched_wht(v: np.ndarray, n: int) -> np.ndarray:
    v = v.copy()
    rows = v.shape[0]
    for j in range(n):
        h = 1 << j
        w = v.reshape(rows, -1, 2, h)
        a = w[:, :, 0, :].copy()
        b = w[:, :, 1, :]
        w[:, :, 0, :] = a + b
        w[:, :, 1, :] = a - b
    return v


def _check_nq_arity(f: BoolFn, max_n: int):
    if f.n > max_n:
        raise ValueError(f"exhaustive non-quadraticity limited to n <= {max_n}, got {f.n}")


def _best_walsh(f: BoolFn, max_n: int, threads: int | None) -> np.ndarray:
    _check_nq_arity(f, max_n)
    total = 1 << len(_pairs(f.n))
    chunk = max(1, min(total, 4096))
    ranges = [(lo, min(total, lo + chunk)) for lo in range(0, total, chunk)]
    threads = threads or worker_count()
    if threads == 1 or len(ranges) == 1:
        parts = [_scan(f, lo, hi) for lo, hi in ranges]
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda r: _scan(f, *r), ranges))
    return np.concatenate(parts)


def non_quadraticity(f: BoolFn, max_n: int = NQ_MAX_ARITY, threads: int | None = None) -> int:
    """min d_H(f, q) over all quadratic q (affine and constant included)."""
    best = _best_walsh(f, max_n, threads)
    return int(((1 << f.n) - best.max()) // 2)


def max_success_prob(f: BoolFn, max_n: int = NQ_MAX_ARITY) -> Fraction:
    return 1 - Fraction(non_quadraticity(f, max_n), 1 << f.n)


def success_prob_from_nq(nq: int, n: int) -> Fraction:
    return 1 - Fraction(nq, 1 << n)


def nearest_quadratic(f: BoolFn, max_n: int = NQ_MAX_ARITY) -> BoolFn:
    """A quadratic at distance NQ(f); ties go to the lexicographically smallest
    ANF coefficient vector (D_0, D_1, ..., D_{2^n-1})."""
    n = f.n
    best = _best_walsh(f, max_n, None)
    top = best.max()
    winners = np.nonzero(best == top)[0]
    pairs = _pairs(n)
    cands = []
    for qi in winners:
        sel, tabs = _quadratic_parts(n, int(qi), int(qi) + 1)
        W = walsh_hadamard(1 - 2 * (tabs[0] ^ f.table.astype(np.int64)), n)
        for a in np.nonzero(np.abs(W) == top)[0]:
            coeffs = np.zeros(1 << n, dtype=np.uint8)
            coeffs[0] = 1 if W[a] < 0 else 0
            for i in range(n):
                coeffs[1 << i] = (a >> i) & 1
            for t, (i, j) in enumerate(pairs):
                coeffs[(1 << i) | (1 << j)] = sel[0, t]
            cands.append(coeffs)
    cands = np.array(cands)
    # lexsort treats the last key as primary
    order = np.lexsort(cands.T[::-1])
    q = Anf(n, cands[order[0]]).to_boolfn()
    assert hamming_distance(q, f) == (((1 << n) - int(top)) // 2)
    return q


def extend_quadratic_approx(q_small: BoolFn, g: BoolFn) -> BoolFn:
    """Extend a quadratic on the first m variables to all n variables of g.

    Each new variable x enters as q' (u, x) = q(u) + Delta x, with Delta picked
    so that the new half-cube disagrees with g on at most half its points.
    """
    m, n = q_small.n, g.n
    if m > n:
        raise ValueError(f"arity mismatch: small function has {m} > {n} variables")
    if degree(q_small) > 2:
        raise DegreeError("q_small must be quadratic")
    q = q_small.table.astype(np.uint8)
    for j in range(n - m):
        size = 1 << (m + j)
        upper = g.table[size: 2 * size]
        disagree = int(np.count_nonzero(q ^ upper))
        dlt = 1 if disagree > size // 2 else 0
        q = np.concatenate([q, q ^ dlt])
    out = BoolFn(n, q)
    g_small = BoolFn(m, g.table[: 1 << m])
    bound = Fraction((1 << n) - (1 << m), 2) + hamming_distance(q_small, g_small)
    assert hamming_distance(out, g) <= bound
    assert degree(out) <= 2
    return out
