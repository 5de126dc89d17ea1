"""Qubit counts of GHZ-based non-adaptive schemes.

R_GHZ(f) is the smallest number of nonzero (mod 2) coefficients C_a, a != 0,
over all real spectra that still reduce to f mod 2.  Exact search works in a
fixed phase class vartheta in 2^-(K-1) Z: supports are tried in increasing
size and each is a linear feasibility problem over Z_{2^K}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .boolfn import (BoolFn, RealPoly, WalshSpectrum, degree, elementary_symmetric,
                     interpolate, poly_to_spectrum, weights)
from .compiler import MeasurementScheme, compile_general, scheme_output_oracle
from .dyadic import Dyadic
from .zmod import diagonalize

EXACT_MAX_ARITY = 4
MAX_LEVEL = 10
SYMMETRIC_MAX_ARITY = 12


@dataclass
class QubitCountResult:
    count: int
    witness: MeasurementScheme
    search_class: str
    exact_within_class: bool

    def to_json(self) -> dict:
        return {"count": self.count, "exact_within_class": self.exact_within_class,
                "search_class": self.search_class, "witness": self.witness.to_json()}


def phi_matrix(n: int, masks: Sequence[int]) -> np.ndarray:
    """Rows x in Z2^n, columns phi_a(x) for the given masks."""
    idx = np.arange(1 << n)
    w = weights(n)
    return np.array([w[idx & a] & 1 for a in masks], dtype=np.int64).T.reshape(1 << n, len(masks))


def _class_label(n: int, K: int) -> str:
    return f"vartheta in 2^-{K - 1} Z (mod 2), supports over the {(1 << n) - 1} nonzero masks of Z2^{n}"


def _check_caps(n: int, K: int):
    if n > EXACT_MAX_ARITY:
        raise ValueError(f"exact search limited to n <= {EXACT_MAX_ARITY}, got {n}")
    if not 1 <= K <= MAX_LEVEL:
        raise ValueError(f"level K must be in 1..{MAX_LEVEL}, got {K}")


def _witness(n: int, support, sol, K: int) -> MeasurementScheme:
    qs = [(a, Dyadic(int(u), K - 1)) for a, u in zip(support, sol[:-1])]
    assert all(int(u) % (1 << K) for u in sol[:-1]), "zero phase in a minimal support"
    return MeasurementScheme(n, tuple(qs), int(sol[-1]) & 1)


def r_ghz_exact_batch(fs: Sequence[BoolFn], K: int | None = None,
                      max_size: int | None = None) -> list[QubitCountResult | None]:
    """Exact minimal support for many functions of the same arity at once.

    Supports are enumerated by size, then lexicographically; the first feasible
    support is reported.  With max_size set, functions needing more qubits come
    back as None.
    """
    if not fs:
        return []
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise ValueError("all functions must share the arity")
    K = n if K is None else K
    _check_caps(n, K)
    mod = 1 << K
    half = 1 << (K - 1)
    B = np.array([f.table.astype(np.int64) * half for f in fs]).T   # (2^n, t)
    out: list = [None] * len(fs)
    open_ = np.arange(len(fs))
    masks = list(range(1, 1 << n))
    top = len(masks) if max_size is None else min(max_size, len(masks))
    ones = np.full((1 << n, 1), half, dtype=np.int64)
    label = _class_label(n, K)
    for r in range(top + 1):
        for support in combinations(masks, r):
            A = np.concatenate([phi_matrix(n, support), ones], axis=1)
            D = diagonalize(A, K)
            ok = D.feasible(B[:, open_])
            if not ok.any():
                continue
            for t in open_[ok]:
                sol = D.solve(B[:, t])
                out[t] = QubitCountResult(r, _witness(n, support, sol, K), label, True)
            open_ = open_[~ok]
            if open_.size == 0:
                return out
    return out


def r_ghz_exact(f: BoolFn, K: int | None = None) -> QubitCountResult:
    res = r_ghz_exact_batch([f], K)[0]
    assert res is not None and scheme_output_oracle(res.witness) == f
    return res


def walsh_support_bound(f: BoolFn) -> QubitCountResult:
    """Upper bound from the raw spectrum (no coset minimization)."""
    s = compile_general(f)
    return QubitCountResult(s.N, s, "raw Walsh spectrum (upper bound)", False)


# --- zero polynomials -------------------------------------------------------------

@dataclass(frozen=True)
class ZeroPoly:
    """Integer polynomial with even coefficients, so it vanishes mod 2 everywhere."""

    n: int
    poly: RealPoly

    def __post_init__(self):
        if self.poly.n != self.n:
            raise ValueError("arity mismatch")
        if self.poly.log2den != 0 or any(int(v) % 2 for v in self.poly.num):
            raise ValueError("zero polynomial needs even integer coefficients")

    @classmethod
    def from_layers(cls, n: int, layers: dict) -> "ZeroPoly":
        """sum_m 2^m * layer_m with layer_m a 0/1 (or signed) vector over monomials."""
        num = np.zeros(1 << n, dtype=np.int64)
        for m, layer in layers.items():
            if m < 1:
                raise ValueError("layers start at m = 1")
            num += (1 << m) * np.asarray(layer, dtype=np.int64)
        return cls(n, RealPoly(n, num))

    @classmethod
    def from_terms(cls, n: int, terms: dict) -> "ZeroPoly":
        """Build from {monomial mask: even integer coefficient}."""
        num = np.zeros(1 << n, dtype=np.int64)
        for b, c in terms.items():
            num[b] += c
        return cls(n, RealPoly(n, num))

    def values(self) -> np.ndarray:
        return self.poly.values()[0]


def reduce_by_zero_poly(f: BoolFn, z: ZeroPoly) -> WalshSpectrum:
    """Spectrum of interpolate(f) + z; still reduces to f mod 2."""
    if z.n != f.n:
        raise ValueError("arity mismatch")
    s = poly_to_spectrum(interpolate(f) + z.poly)
    assert s.to_boolfn() == f
    return s


def mod2_support(s: WalshSpectrum) -> list[int]:
    """Masks a != 0 whose coefficient is nonzero mod 2."""
    k = s.log2den
    mod = 2 << k
    return [a for a in range(1, 1 << s.n) if int(s.num[a]) % mod]


def scheme_from_spectrum(s: WalshSpectrum) -> MeasurementScheme:
    c0 = s[0]
    if not c0.is_integer():
        raise ValueError("constant coefficient must be an integer")
    return MeasurementScheme(s.n, tuple((a, s[a]) for a in mod2_support(s)), c0.num & 1)


def _layer_slots(n: int):
    """(monomial, m) pairs that can carry a 2^m term that is not trivial mod 2^W(b)."""
    w = weights(n)
    return [(b, m) for b in range(1 << n) for m in range(1, int(w[b]))]


def r_ghz_zero_poly(f: BoolFn, max_n: int = 3) -> QubitCountResult:
    """Exhaustive coset search over zero polynomials (cross-check, small n).

    A term 2^m x^b with m >= W(b) only shifts coefficients by multiples of 2,
    so per monomial only the layers m = 1..W(b)-1 matter.  Each combination is
    a spectrum with denominator 2^(n-1), matching r_ghz_exact at K = n.
    """
    n = f.n
    if n > max_n:
        raise ValueError(f"zero-polynomial enumeration limited to n <= {max_n}")
    slots = _layer_slots(n)
    base = interpolate(f).num.astype(np.int64)
    best = None
    for bits in product((0, 1), repeat=len(slots)):
        num = base.copy()
        for (b, m), on in zip(slots, bits):
            if on:
                num[b] += 1 << m
        s = poly_to_spectrum(RealPoly(n, num))
        c = len(mod2_support(s))
        if best is None or c < best[0]:
            best = (c, s)
    c, s = best
    w = scheme_from_spectrum(s)
    assert scheme_output_oracle(w) == f
    return QubitCountResult(c, w, _class_label(n, n), True)


# --- symmetric functions ----------------------------------------------------------

def _sigma_poly(n: int, j: int) -> np.ndarray:
    return (weights(n) == j).astype(np.int64)


def symmetric_zero_poly(n: int, k: int) -> ZeroPoly:
    """z = sum_{l=0}^{n-k-1} (-2)^(n-k-l) Sigma_{n-l}, each Sigma a real sum of monomials."""
    num = np.zeros(1 << n, dtype=np.int64)
    for l in range(n - k):
        num += (-2) ** (n - k - l) * _sigma_poly(n, n - l)
    return ZeroPoly(n, RealPoly(n, num))


@dataclass
class SymmetricBound:
    count: int
    spectrum: WalshSpectrum
    witness: MeasurementScheme


def r_ghz_upper_symmetric(n: int, k: int) -> SymmetricBound:
    """Constructive bound for Sigma^n_k, at most sum_{l=1}^{k-1} binom(n, l) + 1.

    The count is the mod-2 support of the reduced spectrum, so it drops below
    the binomial sum whenever a whole weight class is even (first at n=10, k=3).
    """
    if not 1 <= k <= n <= SYMMETRIC_MAX_ARITY:
        raise ValueError(f"need 1 <= k <= n <= {SYMMETRIC_MAX_ARITY}")
    p = RealPoly(n, _sigma_poly(n, k)) + symmetric_zero_poly(n, k).poly
    s = poly_to_spectrum(p)
    w = scheme_from_spectrum(s)
    assert scheme_output_oracle(w) == elementary_symmetric(n, k)
    return SymmetricBound(w.N, s, w)


def symmetric_count_formula(n: int, k: int) -> int:
    return sum(comb(n, l) for l in range(1, k)) + 1


@dataclass
class MismatchCertificate:
    f: BoolFn
    g: BoolFn
    degrees: tuple
    counts: tuple
    witnesses: tuple


def mismatch_certificate() -> MismatchCertificate:
    """A cubic function with fewer qubits than a quadratic: Sigma^3_3 vs Sigma^7_2."""
    f = elementary_symmetric(3, 3)
    g = elementary_symmetric(7, 2)
    bf = r_ghz_upper_symmetric(3, 3)
    bg = r_ghz_upper_symmetric(7, 2)
    return MismatchCertificate(f, g, (degree(f), degree(g)), (bf.count, bg.count),
                               (bf.witness, bg.witness))
