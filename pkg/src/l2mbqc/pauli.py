"""Signed Pauli strings ``i^p X^x Z^z`` on N qubits (qubit k = bit k)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf2

_PHASE_STR = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_STR_PHASE = {v: k for k, v in _PHASE_STR.items()}

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I = np.eye(2, dtype=complex)


def _pc(v: int) -> int:
    return int(v).bit_count()


@dataclass(frozen=True)
class PauliString:
    """phase * prod_k X_k^{x_k} Z_k^{z_k}, phase = i^p with p stored mod 4."""

    N: int
    x: int
    z: int
    p: int = 0

    def __post_init__(self):
        full = (1 << self.N) - 1
        if self.x & ~full or self.z & ~full:
            raise ValueError("mask wider than N")
        object.__setattr__(self, "p", self.p % 4)

    @classmethod
    def identity(cls, N: int) -> "PauliString":
        return cls(N, 0, 0, 0)

    @classmethod
    def x_all(cls, N: int) -> "PauliString":
        return cls(N, (1 << N) - 1, 0, 0)

    @classmethod
    def iy(cls, N: int, u: int) -> "PauliString":
        """Q(u) = tensor_k (iY)^{u_k}; iY = -XZ."""
        return cls(N, u, u, 2 * _pc(u))

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse e.g. '-XYZ' (leftmost letter = qubit 0)."""
        p = 0
        s = label
        for pre, val in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2), ("i", 1)):
            if s.startswith(pre):
                p, s = val, s[len(pre):]
                break
        x = z = 0
        for k, ch in enumerate(s):
            if ch == "X":
                x |= 1 << k
            elif ch == "Z":
                z |= 1 << k
            elif ch == "Y":
                # Y = i X Z
                x |= 1 << k
                z |= 1 << k
                p += 1
            elif ch != "I":
                raise ValueError(f"bad Pauli letter {ch!r}")
        return cls(len(s), x, z, p)

    @property
    def phase(self) -> complex:
        return 1j ** self.p

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.N != other.N:
            raise ValueError("qubit count mismatch")
        p = self.p + other.p + 2 * _pc(self.z & other.x)
        return PauliString(self.N, self.x ^ other.x, self.z ^ other.z, p)

    def __neg__(self):
        return PauliString(self.N, self.x, self.z, self.p + 2)

    def commutes(self, other: "PauliString") -> bool:
        return (_pc(self.x & other.z) + _pc(self.z & other.x)) % 2 == 0

    def is_hermitian(self) -> bool:
        return self.p % 2 == _pc(self.x & self.z) % 2

    def symplectic(self) -> np.ndarray:
        return np.concatenate([gf2.bits_of(self.x, self.N), gf2.bits_of(self.z, self.N)])

    def to_matrix(self) -> np.ndarray:
        m = np.array([[1]], dtype=complex)
        for k in reversed(range(self.N)):
            op = _I
            if (self.x >> k) & 1:
                op = _X @ (_Z if (self.z >> k) & 1 else _I)
            elif (self.z >> k) & 1:
                op = _Z
            m = np.kron(m, op)
        return self.phase * m

    def apply(self, amps: np.ndarray) -> np.ndarray:
        """P|psi> using P|q> = i^p (-1)^{z.q} |q xor x>."""
        idx = np.arange(amps.shape[0])
        sign = 1 - 2 * (_parity_array(idx & self.z))
        out = np.empty_like(amps)
        out[idx ^ self.x] = self.phase * sign * amps
        return out

    def label(self) -> str:
        """Human-readable label, Y written for XZ pairs with phase compensation."""
        p = self.p
        letters = []
        for k in range(self.N):
            xb, zb = (self.x >> k) & 1, (self.z >> k) & 1
            if xb and zb:
                letters.append("Y")
                p -= 1
            else:
                letters.append("X" if xb else ("Z" if zb else "I"))
        return ("+", "+i", "-", "-i")[p % 4] + "".join(letters)

    def to_json(self) -> dict:
        from .boolfn import mask_to_str
        return {"phase": _PHASE_STR[self.p], "x": mask_to_str(self.x, self.N),
                "z": mask_to_str(self.z, self.N)}

    @classmethod
    def from_json(cls, d: dict) -> "PauliString":
        from .boolfn import str_to_mask
        if d["phase"] not in _STR_PHASE:
            raise ValueError(f"bad phase {d['phase']!r}")
        N = len(d["x"])
        if len(d["z"]) != N:
            raise ValueError("x and z masks differ in length")
        return cls(N, str_to_mask(d["x"]), str_to_mask(d["z"]), _STR_PHASE[d["phase"]])


def _parity_array(v: np.ndarray) -> np.ndarray:
    v = v.astype(np.int64)
    out = np.zeros_like(v)
    while v.any():
        out ^= v & 1
        v = v >> 1
    return out


def check_generators(gens: Sequence[PauliString]) -> None:
    """Raise ValueError unless gens are Hermitian, pairwise commuting and independent."""
    for g in gens:
        if not g.is_hermitian():
            raise ValueError(f"generator {g.label()} is not Hermitian")
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if not gens[a].commutes(gens[b]):
                raise ValueError(f"generators {a} and {b} anticommute")
    if gens:
        M = np.array([g.symplectic() for g in gens])
        if gf2.rank(M) != len(gens):
            raise ValueError("generators are dependent")


def decompose(gens: Sequence[PauliString], target: PauliString):
    """Group element of <gens> with target's X/Z part, or None when there is none.

    Returns (element, selection) where selection flags the generators used.
    """
    if not gens:
        return (PauliString.identity(target.N), np.zeros(0, dtype=np.uint8)) if not (target.x or target.z) else None
    A = np.array([g.symplectic() for g in gens]).T
    sel = gf2.solve(A, target.symplectic())
    if sel is None:
        return None
    acc = PauliString.identity(target.N)
    for g, s in zip(gens, sel):
        if s:
            acc = acc * g
    return acc, sel


def in_group(gens: Sequence[PauliString], target: PauliString) -> bool:
    """Exact membership (phase included) in the abelian group generated by gens."""
    res = decompose(gens, target)
    return res is not None and res[0].p == target.p
