"""State-vector verification of l2-MBQC schemes.

Qubit k is bit k of the amplitude index.  The measured parity of all local
+-1 outcomes has expectation <psi| tensor_k M_k |psi>, so a scheme is
deterministic on input i exactly when that value has modulus one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import gf2
from .boolfn import BoolFn, mask_to_str, weights
from .compiler import MeasurementScheme, StabilizerScheme
from .pauli import PauliString, check_generators, decompose

MAX_QUBITS = 20
DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StateVector:
    N: int
    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex)
        if a.shape != (1 << self.N,):
            raise ValueError("amplitude vector must have length 2^N")
        if abs(np.linalg.norm(a) - 1) > 1e-12:
            raise ValueError("state is not normalized")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "amps", a)


def ghz_state(N: int) -> StateVector:
    if not 1 <= N <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in 1..{MAX_QUBITS}, got {N}")
    a = np.zeros(1 << N, dtype=complex)
    a[0] = a[-1] = 1 / np.sqrt(2)
    return StateVector(N, a)


def _turn(vartheta) -> complex:
    """exp(i pi vartheta) with vartheta reduced mod 2 exactly before exponentiation."""
    fr = Fraction(vartheta) % 2
    return complex(np.exp(1j * np.pi * float(fr)))


def x_theta(vartheta) -> np.ndarray:
    """[[0, conj(theta)], [theta, 0]] with theta = exp(i pi vartheta)."""
    th = _turn(vartheta)
    return np.array([[0, np.conj(th)], [th, 0]], dtype=complex)


def apply_local(amps: np.ndarray, ops, N: int) -> np.ndarray:
    """Apply a tensor product of 2x2 operators, ops[k] acting on qubit k."""
    v = np.asarray(amps, dtype=complex).reshape([2] * N)
    for k, op in enumerate(ops):
        axis = N - 1 - k
        v = np.moveaxis(np.tensordot(op, v, axes=([1], [axis])), 0, axis)
    return v.reshape(-1)


def _measurement_phases(s: MeasurementScheme, i: int) -> list[Fraction]:
    return [t.to_fraction() if (a & i).bit_count() & 1 else Fraction(0) for a, t in s.qubits]


def expectation(s: MeasurementScheme, i: int, psi: Optional[StateVector] = None,
                include_m0: bool = True) -> complex:
    """<psi| tensor_k X(theta_k^{c_k(i)}) |psi>, times (-1)^m0 unless include_m0 is False.

    With the constant folded in, +1 means output bit 0 and -1 output bit 1.
    The off-diagonal X(theta) tensor only links |q> to its complement, so the
    product is computed directly instead of through dense 2x2 contractions.
    """
    N = s.N
    if psi is None:
        psi = ghz_state(N)
    if psi.N != N:
        raise ValueError(f"state has {psi.N} qubits, scheme needs {N}")
    val = _tensor_x_expectation(psi.amps, _measurement_phases(s, int(i)), N)
    return -val if (include_m0 and s.m0) else val


def _tensor_x_expectation(amps: np.ndarray, phases, N: int) -> complex:
    # X(th)|0> = th|1>, X(th)|1> = conj(th)|0>
    idx = np.arange(1 << N)
    factor = np.ones(1 << N, dtype=complex)
    for k, ph in enumerate(phases):
        th = _turn(ph)
        bit = (idx >> k) & 1
        factor *= np.where(bit == 0, th, np.conj(th))
    full = (1 << N) - 1
    out = np.zeros_like(amps)
    out[idx ^ full] = factor * amps
    return complex(np.vdot(amps, out))


def expectation_dense(s: MeasurementScheme, i: int, psi: Optional[StateVector] = None) -> complex:
    """Same quantity as expectation() via generic local-operator application (slower, for cross-checks)."""
    N = s.N
    psi = psi or ghz_state(N)
    ops = [x_theta(ph) for ph in _measurement_phases(s, int(i))]
    val = complex(np.vdot(psi.amps, apply_local(psi.amps, ops, N)))
    return -val if s.m0 else val


@dataclass
class InputRecord:
    i: int
    expectation: complex
    deterministic: bool
    output_bit: Optional[int]
    p: Optional[float]


@dataclass
class SimReport:
    n: int
    records: list = field(default_factory=list)
    p_succ: Optional[float] = None
    output_fn: Optional[BoolFn] = None

    @property
    def deterministic(self) -> bool:
        return all(r.deterministic for r in self.records)

    def to_json(self) -> dict:
        return {"p_succ": _round(self.p_succ), "deterministic": self.deterministic,
                "outputs": [{"i": mask_to_str(r.i, self.n),
                             "expectation_re": float(r.expectation.real),
                             "expectation_im": float(r.expectation.imag),
                             "bit": r.output_bit, "p": _round(r.p)} for r in self.records]}


def _round(v):
    # the JSON reports probabilities; strip last-digit roundoff
    return None if v is None else round(float(v), 12)


def _report(n: int, values, target: Optional[BoolFn], tol: float) -> SimReport:
    if target is not None and target.n != n:
        raise ValueError(f"target arity {target.n} != scheme arity {n}")
    rep = SimReport(n)
    bits = []
    for i, e in enumerate(values):
        det = abs(e) >= 1 - tol
        bit = (0 if e.real > 0 else 1) if det else None
        p = None
        if target is not None:
            p = (1 + (-1) ** target(i) * e.real) / 2
            p = min(1.0, max(0.0, p))
        rep.records.append(InputRecord(i, e, det, bit, p))
        bits.append(bit)
    if target is not None:
        rep.p_succ = float(np.mean([r.p for r in rep.records]))
    if all(b is not None for b in bits):
        rep.output_fn = BoolFn(n, np.array(bits, dtype=np.uint8))
    return rep


def run(s: MeasurementScheme, target: Optional[BoolFn] = None, tol: float = DEFAULT_TOL,
        psi: Optional[StateVector] = None) -> SimReport:
    psi = psi or ghz_state(s.N) if s.N else None
    if s.N == 0:
        # no qubits: output is the constant m0
        values = [complex((-1) ** s.m0)] * (1 << s.n)
    else:
        values = [expectation(s, i, psi) for i in range(1 << s.n)]
    return _report(s.n, values, target, tol)


def sample_parities(s: MeasurementScheme, i: int, shots: int, seed: int = 0) -> np.ndarray:
    """Seeded sampling of output bits for demonstration; P(bit 0) = (1 + Re<M>)/2."""
    rng = np.random.default_rng(seed)
    e = expectation(s, i).real if s.N else (-1) ** s.m0
    p0 = min(1.0, max(0.0, (1 + e) / 2))
    return (rng.random(shots) >= p0).astype(np.uint8)


# --- stabilizer schemes -------------------------------------------------------

def stabilizer_state(gens, seed: int = 0) -> StateVector:
    """The joint +1 eigenstate, by projecting a seeded random vector."""
    gens = list(gens)
    check_generators(gens)
    N = gens[0].N
    if N > MAX_QUBITS:
        raise ValueError("too many qubits for a state vector")
    if len(gens) != N:
        raise ValueError("need N generators for a unique state")
    rng = np.random.default_rng(seed)
    v = rng.normal(size=1 << N) + 1j * rng.normal(size=1 << N)
    for g in gens:
        v = (v + g.apply(v)) / 2
    nrm = np.linalg.norm(v)
    if nrm < 1e-8:
        raise RuntimeError("projection vanished; retry with another seed")
    return StateVector(N, v / nrm)


@dataclass
class VerifyResult:
    ok: bool
    failures: list
    certificate: dict

    def __bool__(self):
        return self.ok


def stabilizer_verify(ss: StabilizerScheme, f: BoolFn) -> VerifyResult:
    """Check (-1)^{f(x) + m0} M(P x) is in the stabilizer group for every x."""
    gens = list(ss.generators)
    check_generators(gens)
    if f.n != ss.n:
        raise ValueError("arity mismatch")
    failures, cert = [], {}
    for x in range(1 << ss.n):
        M = ss.measurement(x)
        target = -M if (f(x) ^ ss.m0) else M
        res = decompose(gens, target)
        if res is None:
            failures.append(x)
            cert[x] = None
            continue
        elem, sel = res
        cert[x] = [int(t) for t in np.nonzero(sel)[0]]
        if elem.p != target.p:
            failures.append(x)
    return VerifyResult(not failures, failures, cert)


def run_stabilizer(ss: StabilizerScheme, target: Optional[BoolFn] = None,
                   tol: float = DEFAULT_TOL, seed: int = 0) -> SimReport:
    psi = stabilizer_state(ss.generators, seed)
    values = []
    for x in range(1 << ss.n):
        M = ss.measurement(x)
        e = complex(np.vdot(psi.amps, M.apply(psi.amps)))
        values.append(-e if ss.m0 else e)
    return _report(ss.n, values, target, tol)
