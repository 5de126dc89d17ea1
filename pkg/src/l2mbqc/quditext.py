"""Delta function on prime qudits with a GHZ resource.

Measurement operators act as M(c)|q> = theta(c) chi^{c [q != 0]} |q+1>, with
[q != 0] = q^(d-1) mod d.  Phases are rational turns (fractions of a full
revolution) and only become complex numbers inside the state-vector check.

With omega = exp(2 pi i / d) and chi fixed by chi^{-d^(n-1)(d-1)/2} = omega,
the product operator has eigenvalue omega^{-1} on every nonzero input (and 1
on the zero input).  The output is therefore read as o with eigenvalue
omega^{-o}, which gives o = 1 on nonzero inputs and delta = (d-1) o + 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

MAX_AMPLITUDES = 1 << 22
MAX_SCHEME_SIZE = 3 ** 8


def is_prime(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % k == 0:
            return False
        k += 1
    return True


def _frac1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class QuditScheme:
    d: int
    n: int
    masks: tuple            # nonzero a in Z_d^n, one per qudit
    chi: Fraction           # turn of chi
    omega: Fraction         # turn of omega
    theta: tuple            # theta[c] turn for c = 0..d-1 (theta[0] = 0)

    @property
    def N(self) -> int:
        return len(self.masks)

    @property
    def phase_unit(self) -> int:
        """Common denominator L = 2 d^(n+1) (d-1) of every phase turn."""
        return 2 * self.d ** (self.n + 1) * (self.d - 1)

    def settings(self, i: Sequence[int]) -> list[int]:
        return [sum(a * x for a, x in zip(mask, i)) % self.d for mask in self.masks]

    def step_turn(self, c: int, q: int) -> Fraction:
        """Turn of the phase picked up by M(c) on |q> -> |q+1>."""
        return _frac1(self.theta[c] + (c * self.chi if q % self.d else 0))

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "N": self.N,
                "masks": ["".join(str(v) for v in m) for m in self.masks],
                "chi_turn": str(self.chi), "omega_turn": str(self.omega),
                "theta_turns": [str(t) for t in self.theta]}


def qudit_delta_scheme(n: int, d: int) -> QuditScheme:
    """d^n - 1 qudits, one per nonzero linear form, with theta(c) = chi^(-c(d-1)/d)."""
    if not is_prime(d):
        raise ValueError(f"d = {d} is not prime")
    if n < 1 or d ** n > MAX_SCHEME_SIZE:
        raise ValueError(f"need n >= 1 and d^n <= {MAX_SCHEME_SIZE}")
    omega = Fraction(1, d)
    # chi^{-d^(n-1)(d-1)/2} = omega
    chi = Fraction(-2, d ** n * (d - 1))
    assert _frac1(-chi * d ** (n - 1) * (d - 1) / 2 - omega) == 0
    theta = tuple(_frac1(-chi * c * (d - 1) / d) for c in range(d))
    masks = tuple(m for m in product(range(d), repeat=n) if any(m))
    s = QuditScheme(d, n, masks, chi, omega, theta)
    L = s.phase_unit
    assert all((t * L).denominator == 1 for t in theta + (chi,))
    return s


def operator_order_ok(s: QuditScheme) -> bool:
    """M(c)^d = 1 exactly: the phases around the cycle q -> q+1 sum to an integer turn."""
    return all(_frac1(sum(s.step_turn(c, q) for q in range(s.d))) == 0 for c in range(s.d))


def phase_relation(s: QuditScheme, i: Sequence[int]):
    """Exact per-step phase of the product operator; (deterministic, o) from the turns."""
    cs = s.settings(i)
    steps = {_frac1(sum(s.step_turn(c, q) for c in cs)) for q in range(s.d)}
    if len(steps) != 1:
        return False, None
    (t,) = steps
    o = -t / s.omega
    if o.denominator != 1:
        return False, None
    return True, int(o) % s.d


@dataclass
class QuditRun:
    i: tuple
    expectation: complex
    deterministic: bool
    o: int | None
    delta: int | None


def qudit_run(s: QuditScheme, i: Sequence[int], tol: float = 1e-9) -> QuditRun:
    """State-vector evaluation of <psi| tensor_k M_k(c_k(i)) |psi> on the qudit GHZ state."""
    d, N = s.d, s.N
    if d ** N > MAX_AMPLITUDES:
        raise ValueError(f"{d}^{N} amplitudes exceed the cap of {MAX_AMPLITUDES}")
    i = tuple(int(x) % d for x in i)
    if len(i) != s.n:
        raise ValueError("input length mismatch")
    psi = np.zeros([d] * N, dtype=complex)
    for q in range(d):
        psi[(q,) * N] = 1 / np.sqrt(d)
    v = psi
    for k, c in enumerate(s.settings(i)):
        ph = np.array([np.exp(2j * np.pi * float(s.step_turn(c, q))) for q in range(d)])
        shape = [1] * N
        shape[k] = d
        v = np.roll(v * ph.reshape(shape), 1, axis=k)
    e = complex(np.vdot(psi.ravel(), v.ravel()))
    det = abs(abs(e) - 1) < tol
    o = dl = None
    if det:
        ang = np.angle(e) / (2 * np.pi)
        o = int(round(-ang / float(s.omega))) % d
        dl = ((d - 1) * o + 1) % d
    return QuditRun(i, e, det, o, dl)


def delta_target(i: Sequence[int]) -> int:
    return 1 if not any(i) else 0


def count_nonzero_forms(d: int, n: int, i: Sequence[int]) -> int:
    """Number of nonzero a in Z_d^n with a . i != 0 (mod d)."""
    return sum(1 for a in product(range(d), repeat=n)
               if any(a) and sum(x * y for x, y in zip(a, i)) % d)
