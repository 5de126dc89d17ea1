"""Synthesis of non-adaptive l2-MBQC schemes.

GHZ schemes measure qubit k with X(theta_k^{c_k(i)}), theta_k = exp(i pi vartheta_k)
and c_k(i) = a_k . i mod 2.  Their output is sum_k c_k(i) vartheta_k + m0 (mod 2),
which is what ``scheme_output_oracle`` evaluates exactly.

Stabilizer schemes measure qubit k in X when c_k = 0 and in Z when c_k = 1, on a
stabilizer resource state whose group contains (-1)^{f(x)} M(P x).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import gf2
from .boolfn import (SPECTRAL_CAP, BoolFn, degree, mask_to_str, str_to_mask,
                     walsh_inverse, weights)
from .dyadic import Dyadic
from .pauli import PauliString, check_generators
from .stabilizer import DegreeError, q_matrix


class NonDeterministic(Exception):
    """The scheme's output on input i is not a fixed bit."""

    def __init__(self, i: int, value: Fraction):
        super().__init__(f"non-deterministic output on input {i}: value {value} mod 2")
        self.i = i
        self.value = value


@dataclass(frozen=True)
class MeasurementScheme:
    n: int
    qubits: tuple = ()
    m0: int = 0

    def __post_init__(self):
        qs = []
        for a, th in self.qubits:
            a = int(a)
            if a <= 0 or a >> self.n:
                raise ValueError(f"mask {a} invalid for arity {self.n}")
            qs.append((a, Dyadic.from_value(th).mod2()))
        object.__setattr__(self, "qubits", tuple(qs))
        object.__setattr__(self, "m0", int(self.m0) & 1)

    @property
    def N(self) -> int:
        return len(self.qubits)

    @property
    def masks(self) -> list[int]:
        return [a for a, _ in self.qubits]

    @property
    def thetas(self) -> list[Dyadic]:
        return [t for _, t in self.qubits]

    def to_json(self) -> dict:
        return {"n": self.n, "m0": self.m0,
                "qubits": [{"mask": mask_to_str(a, self.n), "theta": t.to_dict()} for a, t in self.qubits]}

    @classmethod
    def from_json(cls, d: dict) -> "MeasurementScheme":
        n = int(d["n"])
        qs = []
        for q in d["qubits"]:
            if len(q["mask"]) != n:
                raise ValueError(f"mask {q['mask']!r} does not have length {n}")
            qs.append((str_to_mask(q["mask"]), Dyadic.from_dict(q["theta"])))
        return cls(n, tuple(qs), int(d.get("m0", 0)))


@dataclass(frozen=True, eq=False)
class StabilizerScheme:
    """P (N x n) pre-processing, linear signs l, resource stabilizer generators, output constant."""

    n: int
    P: np.ndarray
    signs: np.ndarray
    generators: tuple
    m0: int = 0

    @property
    def N(self) -> int:
        return int(self.P.shape[0])

    def measurement(self, x: int) -> PauliString:
        """M(P x): Z on qubits with c_k = 1, X elsewhere."""
        c = gf2.int_of(gf2.matmul(self.P, gf2.bits_of(x, self.n)))
        full = (1 << self.N) - 1
        return PauliString(self.N, full & ~c, c, 0)

    def to_json(self) -> dict:
        return {"n": self.n, "m0": self.m0,
                "P": ["".join(str(int(v)) for v in row) for row in self.P],
                "signs": "".join(str(int(v)) for v in self.signs),
                "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, d: dict) -> "StabilizerScheme":
        P = np.array([[int(ch) for ch in row] for row in d["P"]], dtype=np.uint8)
        n = int(d.get("n", P.shape[1]))
        signs = np.array([int(ch) for ch in d.get("signs", "0" * n)], dtype=np.uint8)
        gens = tuple(PauliString.from_json(g) for g in d["generators"])
        return cls(n, P, signs, gens, int(d.get("m0", 0)))


def compile_delta(n: int) -> MeasurementScheme:
    """All 2^n - 1 nonzero masks at vartheta = 2^-(n-1), output constant 1."""
    if n < 1 or n > SPECTRAL_CAP:
        raise ValueError(f"n must be in 1..{SPECTRAL_CAP}")
    th = Dyadic(1, n - 1)
    return MeasurementScheme(n, tuple((a, th) for a in range(1, 1 << n)), 1)


def compile_general(f: BoolFn) -> MeasurementScheme:
    """One qubit per nonzero C_a (a != 0) of the Walsh spectrum, m0 = C_0."""
    s = walsh_inverse(f)
    qs = [(a, s[a]) for a in s.support() if a]
    c0 = s[0]
    assert c0.is_integer()
    return MeasurementScheme(f.n, tuple(qs), c0.num & 1)


def oracle_values(s: MeasurementScheme) -> tuple[np.ndarray, int]:
    """Numerators of sum_k c_k(i) vartheta_k + m0 reduced mod 2, over 2^K."""
    n = s.n
    K = max((t.log2den for t in s.thetas), default=0)
    mod = 2 << K
    idx = np.arange(1 << n)
    w = weights(n)
    acc = np.full(1 << n, (s.m0 << K) % mod, dtype=object)
    for a, t in s.qubits:
        c = w[idx & a] & 1
        acc = (acc + c.astype(object) * (t.num << (K - t.log2den))) % mod
    return acc, K


def oracle_table(s: MeasurementScheme) -> tuple[np.ndarray, np.ndarray]:
    """(deterministic flags, output bits) for every input; bits are 0 where not deterministic."""
    acc, K = oracle_values(s)
    den = 1 << K
    det = np.array([int(v) % den == 0 for v in acc], dtype=bool)
    bits = np.array([(int(v) // den) & 1 if d else 0 for v, d in zip(acc, det)], dtype=np.uint8)
    return det, bits


def scheme_output_oracle(s: MeasurementScheme) -> BoolFn:
    acc, K = oracle_values(s)
    den = 1 << K
    out = np.zeros(1 << s.n, dtype=np.uint8)
    for i, v in enumerate(acc):
        v = int(v)
        if v % den:
            raise NonDeterministic(i, Fraction(v, den))
        out[i] = v // den
    return BoolFn(s.n, out)


def clifford_level(s: MeasurementScheme) -> int:
    """1 + largest log2 denominator among the phases (mod 2)."""
    return 1 + max((t.mod2().log2den for t in s.thetas), default=0)


# --- Lempel factorization ---------------------------------------------------------

def _symplectic_basis(B: np.ndarray, vectors: Sequence[np.ndarray]):
    """Split span(vectors) into hyperbolic pairs and radical w.r.t. the alternating form B.

    Returns (pairs, radical) with pairs [(u, w), ...], u^T B w = 1 and every other
    cross product zero.
    """
    B = B.astype(np.int64)

    def form(u, v):
        return int(u.astype(np.int64) @ B @ v.astype(np.int64)) & 1

    rest = [np.asarray(v, dtype=np.uint8).copy() for v in vectors]
    pairs, radical = [], []
    while rest:
        v = rest.pop(0)
        partner = next((t for t, w in enumerate(rest) if form(v, w)), None)
        if partner is None:
            if v.any():
                radical.append(v)
            continue
        w = rest.pop(partner)
        pairs.append((v, w))
        rest = [(r ^ (form(r, w) * v) ^ (form(r, v) * w)).astype(np.uint8) for r in rest]
    return pairs, radical


def _even_symplectic_columns(r: int) -> list[np.ndarray]:
    """2r even-weight vectors in F_2^(2r+1) with Gram matrix J_r under the dot product."""
    M = 2 * r + 1
    base = []
    for k in range(2 * r):
        v = np.zeros(M, dtype=np.uint8)
        v[k] = v[M - 1] = 1
        base.append(v)
    pairs, radical = _symplectic_basis(np.eye(M, dtype=np.uint8), base)
    assert len(pairs) == r and not radical
    cols = []
    for u, w in pairs:
        cols += [u, w]
    return cols


def _factor(Q: np.ndarray, rad_functional=None) -> np.ndarray:
    Q = gf2.as_gf2(Q)
    n = Q.shape[0]
    pairs, radical = _symplectic_basis(Q, list(np.eye(n, dtype=np.uint8)))
    r = len(pairs)
    extra = False
    if rad_functional is not None and radical:
        lam = [int(rad_functional(v)) & 1 for v in radical]
        if any(lam):
            # move a vector with value 1 to the front and clear the rest
            t = lam.index(1)
            r1 = radical.pop(t)
            lam.pop(t)
            radical = [v ^ (l * r1) for v, l in zip(radical, lam)]
            radical.insert(0, r1)
            extra = True
    S_cols = [v for pr in pairs for v in pr] + radical
    S = np.array(S_cols, dtype=np.uint8).T.reshape(n, n)
    T = gf2.inverse(S)
    M = 2 * r + 1 + (1 if extra else 0)
    sym = _even_symplectic_columns(r)
    A = np.zeros((M, n), dtype=np.uint8)
    for k, v in enumerate(sym):
        A[: 2 * r + 1, k] = v
    if extra:
        A[:, 2 * r] = 1
    return gf2.matmul(A, T)


def _check_factor(P, Q):
    assert np.array_equal(gf2.matmul(P.T, P), gf2.as_gf2(Q)), "P^T P != Q"
    assert not (P.sum(axis=0) % 2).any(), "odd-weight column"


def lempel_factor(Q) -> np.ndarray:
    """GF(2) factorization Q = P^T P with even-weight columns and rk(Q)+1 rows.

    Q must be symmetric with zero diagonal.  A symplectic basis S of Q gives
    Q = T^T (J + 0) T with T = S^-1; the hyperbolic block is realized inside the
    even-weight vectors of F_2^(rk+1), where the dot product is nondegenerate.
    """
    Q = gf2.as_gf2(Q)
    if Q.ndim != 2 or not gf2.is_symmetric_alternating(Q):
        raise ValueError("Q must be symmetric with zero diagonal")
    P = _factor(Q)
    _check_factor(P, Q)
    assert P.shape[0] == gf2.rank(Q) + 1
    return P


def _radical_value(f: BoolFn):
    def val(v):
        return f(gf2.int_of(v))
    return val


def stabilizer_factor(f: BoolFn) -> np.ndarray:
    """Pre-processing matrix for a quadratic f with f(0) = 0.

    Equal to lempel_factor(Q(f)) unless f is nonzero somewhere on the radical of
    Q(f).  In that case the kernel of any rk+1 row factor (which is exactly the
    radical) would force a sign clash in the stabilizer group, so one qubit is
    added and the offending radical direction is sent to the all-ones column.
    """
    qf = q_matrix(f)
    P = _factor(qf.Q, _radical_value(f))
    _check_factor(P, qf.Q)
    ker = gf2.nullspace(P)
    assert all(f(gf2.int_of(v)) == 0 for v in ker)
    return P


def _complete_generators(gens: list[PauliString], N: int) -> list[PauliString]:
    """Extend an independent commuting set to N generators."""
    gens = list(gens)
    while len(gens) < N:
        G = np.array([g.symplectic() for g in gens], dtype=np.uint8)
        # v commutes with g  <=>  v_x . g_z + v_z . g_x = 0
        swapped = np.concatenate([G[:, N:], G[:, :N]], axis=1)
        cands = gf2.nullspace(swapped)
        base = gf2.rank(G)
        for v in cands:
            if gf2.rank(np.vstack([G, v])) > base:
                x, z = gf2.int_of(v[:N]), gf2.int_of(v[N:])
                gens.append(PauliString(N, x, z, (x & z).bit_count() % 2))
                break
        else:
            raise RuntimeError("no independent commuting completion found")
    return gens


def stabilizer_scheme_from(P, signs, N: int, n: int, m0: int = 0) -> StabilizerScheme:
    """Resource group generated by X^N and (-1)^{l_i} Q(p_i), reduced and completed."""
    P = gf2.as_gf2(P)
    raw = [PauliString.x_all(N)]
    for i in range(n):
        u = gf2.int_of(P[:, i])
        g = PauliString.iy(N, u)
        raw.append(-g if signs[i] else g)
    indep = []
    for g in raw:
        if g.x == 0 and g.z == 0:
            if g.p != 0:
                raise ValueError("inconsistent generator set (contains -I)")
            continue
        mat = np.array([h.symplectic() for h in indep + [g]], dtype=np.uint8)
        if gf2.rank(mat) == len(indep) + 1:
            indep.append(g)
        else:
            from .pauli import in_group
            if not in_group(indep, g):
                raise ValueError("inconsistent generator set (sign clash)")
    gens = _complete_generators(indep, N)
    check_generators(gens)
    return StabilizerScheme(n, P, gf2.as_gf2(signs), tuple(gens), m0)


def compile_quadratic(f: BoolFn) -> StabilizerScheme:
    """Level-2 stabilizer scheme for a Boolean function of degree at most two.

    The constant term goes into m0.  N is rk(Q)+1 except when f (with the
    constant removed) does not vanish on the radical of Q, where one more qubit
    is needed; for nonzero linear f that means two qubits.
    """
    if degree(f) > 2:
        raise DegreeError(f"degree {degree(f)} > 2")
    m0 = f(0)
    g = f ^ m0
    qf = q_matrix(g)
    P = stabilizer_factor(g)
    return stabilizer_scheme_from(P, qf.l, P.shape[0], f.n, m0)
