"""Boolean functions and their three representations.

* truth table (``BoolFn``)
* algebraic normal form over Z2 (``Anf``)
* real combination of Z2-linear functions ``phi_a(x) = a.x mod 2``
  (``WalshSpectrum``) and real multilinear polynomial (``RealPoly``).

Bit convention: input variable x_j (1-based) is bit j-1 of the truth-table
index, so x_1 is the least significant bit.  Masks a, b in Z2^n use the same
integer encoding; as strings they are written a_1 a_2 ... a_n.

Spectra and real polynomials are stored as an integer numerator array over a
shared power-of-two denominator, so nothing here touches floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .dyadic import Dyadic

MAX_ARITY = 24
SPECTRAL_CAP = 20


class AnfParseError(ValueError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} at position {position}")
        self.position = position


def _check_arity(n: int, cap: int = MAX_ARITY):
    if not isinstance(n, (int, np.integer)) or n < 1 or n > cap:
        raise ValueError(f"arity must be in 1..{cap}, got {n!r}")


def popcount(a) -> np.ndarray | int:
    if isinstance(a, (int, np.integer)):
        return int(a).bit_count()
    a = np.asarray(a, dtype=np.uint64)
    out = np.zeros(a.shape, dtype=np.int64)
    while a.any():
        out += (a & np.uint64(1)).astype(np.int64)
        a = a >> np.uint64(1)
    return out


def weights(n: int) -> np.ndarray:
    """Hamming weight of every index 0..2^n-1."""
    w = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        w = np.concatenate([w, w + 1])
    return w


def dot_parity(a: int, x: int) -> int:
    return (int(a) & int(x)).bit_count() & 1


def mask_to_str(a: int, n: int) -> str:
    return "".join(str((int(a) >> j) & 1) for j in range(n))


def str_to_mask(s: str) -> int:
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"bad bitstring {s!r}")
    return sum(1 << j for j, ch in enumerate(s) if ch == "1")


# --- butterflies -----------------------------------------------------------

def _butterfly(v: np.ndarray, n: int, op) -> np.ndarray:
    v = v.copy()
    for j in range(n):
        h = 1 << j
        w = v.reshape(-1, 2, h)
        op(w[:, 0, :], w[:, 1, :])
    return v


def _xor_up(lo, hi):
    hi ^= lo


def _sub_up(lo, hi):
    hi -= lo


def _add_up(lo, hi):
    hi += lo


def _hadamard(lo, hi):
    s = lo + hi
    hi[...] = lo - hi
    lo[...] = s


def mobius_gf2(v: np.ndarray, n: int) -> np.ndarray:
    """Binary Moebius transform (self-inverse): table <-> ANF coefficients."""
    return _butterfly(np.asarray(v, dtype=np.uint8), n, _xor_up)


def mobius_int(v: np.ndarray, n: int) -> np.ndarray:
    """Integer Moebius transform: values on Z2^n -> multilinear coefficients."""
    return _butterfly(np.asarray(v), n, _sub_up)


def zeta_int(v: np.ndarray, n: int) -> np.ndarray:
    """Inverse of mobius_int: coefficients -> values."""
    return _butterfly(np.asarray(v), n, _add_up)


def walsh_hadamard(v: np.ndarray, n: int) -> np.ndarray:
    """Unnormalized transform  sum_x v(x) (-1)^{a.x}."""
    return _butterfly(np.asarray(v), n, _hadamard)


def _safe_dtype(bound_bits: int):
    return np.int64 if bound_bits < 62 else object


def _max_bits(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return max(int(abs(int(arr.max()))).bit_length(), int(abs(int(arr.min()))).bit_length())


# --- truth table -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BoolFn:
    """Boolean function f: Z2^n -> Z2 stored as its truth table."""

    n: int
    table: np.ndarray

    def __post_init__(self):
        _check_arity(self.n)
        t = np.asarray(self.table)
        if t.shape != (1 << self.n,):
            raise ValueError(f"table must have length 2^{self.n}")
        if t.dtype != np.uint8 or t.flags.writeable:
            t = (np.asarray(t, dtype=np.int64) & 1).astype(np.uint8)
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    def __call__(self, x) -> int:
        if not isinstance(x, (int, np.integer)):
            x = gf2.int_of(x)
        return int(self.table[int(x)])

    def __eq__(self, other):
        return isinstance(other, BoolFn) and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __xor__(self, other):
        if isinstance(other, int):
            return BoolFn(self.n, self.table ^ (other & 1))
        _same_arity(self, other)
        return BoolFn(self.n, self.table ^ other.table)

    def __and__(self, other):
        _same_arity(self, other)
        return BoolFn(self.n, self.table & other.table)

    def __repr__(self):
        return f"BoolFn(n={self.n}, anf={to_anf(self).to_string()!r})"

    @classmethod
    def constant(cls, n: int, c: int = 0) -> "BoolFn":
        return cls(n, np.full(1 << n, c & 1, dtype=np.uint8))

    @classmethod
    def variable(cls, n: int, j: int) -> "BoolFn":
        """x_j with 1-based j."""
        if not 1 <= j <= n:
            raise ValueError(f"variable index {j} out of range 1..{n}")
        return cls(n, ((np.arange(1 << n) >> (j - 1)) & 1).astype(np.uint8))

    @classmethod
    def from_callable(cls, n: int, fn) -> "BoolFn":
        return cls(n, np.array([fn(x) & 1 for x in range(1 << n)], dtype=np.uint8))

    # serialization
    def to_int(self) -> int:
        packed = np.packbits(self.table, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    def to_hex(self) -> str:
        width = max(1, (1 << self.n) // 4)
        return format(self.to_int(), f"0{width}x")

    @classmethod
    def from_int(cls, n: int, value: int) -> "BoolFn":
        _check_arity(n)
        size = 1 << n
        if value < 0 or value >> size:
            raise ValueError("truth-table integer out of range")
        nbytes = max(1, (size + 7) // 8)
        raw = np.frombuffer(int(value).to_bytes(nbytes, "little"), dtype=np.uint8)
        return cls(n, np.unpackbits(raw, bitorder="little")[:size])

    @classmethod
    def from_hex(cls, n: int, s: str) -> "BoolFn":
        s = s.strip().lower()
        if s.startswith("0x"):
            s = s[2:]
        return cls.from_int(n, int(s, 16))

    def to_json(self) -> dict:
        return {"n": self.n, "anf": to_anf(self).to_string()}

    @classmethod
    def from_json(cls, d: dict) -> "BoolFn":
        n = int(d["n"])
        if "tt_hex" in d:
            return cls.from_hex(n, d["tt_hex"])
        if "anf" in d:
            return from_anf(n, d["anf"])
        raise ValueError("function JSON needs 'anf' or 'tt_hex'")


def _same_arity(f, g):
    if f.n != g.n:
        raise ValueError(f"arity mismatch: {f.n} vs {g.n}")


# --- ANF ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Anf:
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = (np.asarray(self.coeffs, dtype=np.int64) & 1).astype(np.uint8)
        if c.shape != (1 << self.n,):
            raise ValueError("coefficient vector must have length 2^n")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __eq__(self, other):
        return isinstance(other, Anf) and self.n == other.n and np.array_equal(self.coeffs, other.coeffs)

    def monomials(self) -> list[int]:
        return [int(b) for b in np.nonzero(self.coeffs)[0]]

    def degree(self) -> int:
        ms = self.monomials()
        return max((popcount(b) for b in ms), default=0)

    def to_string(self) -> str:
        terms = []
        for b in self.monomials():
            if b == 0:
                terms.append("1")
            else:
                terms.append("*".join(f"x{j + 1}" for j in range(self.n) if (b >> j) & 1))
        return " + ".join(terms) if terms else "0"

    def to_boolfn(self) -> BoolFn:
        return BoolFn(self.n, mobius_gf2(self.coeffs, self.n))


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|([01])|(\*)|(\+))")


def _parse_anf(n: int, expr: str) -> np.ndarray:
    coeffs = np.zeros(1 << n, dtype=np.uint8)
    pos = 0
    end = len(expr.rstrip())
    if end == 0:
        raise AnfParseError("empty expression", 0)
    expect_factor = True
    mono, alive = 0, True
    while pos < end:
        m = _TOKEN.match(expr, pos)
        if m is None:
            bad = pos + len(expr[pos:]) - len(expr[pos:].lstrip())
            raise AnfParseError(f"unexpected character {expr[bad]!r}", bad)
        tok_start = m.start(1) if m.group(1) else m.start(m.lastindex)
        if m.group(1):
            if not expect_factor:
                raise AnfParseError("missing operator", tok_start)
            k = int(m.group(2))
            if not 1 <= k <= n:
                raise AnfParseError(f"variable x{k} out of range 1..{n}", tok_start)
            mono |= 1 << (k - 1)
            expect_factor = False
        elif m.group(3):
            if not expect_factor:
                raise AnfParseError("missing operator", tok_start)
            alive = alive and m.group(3) == "1"
            expect_factor = False
        else:
            if expect_factor:
                raise AnfParseError("operator without operand", tok_start)
            if m.group(5):
                if alive:
                    coeffs[mono] ^= 1
                mono, alive = 0, True
            expect_factor = True
        pos = m.end()
    if expect_factor:
        raise AnfParseError("dangling operator", end)
    if alive:
        coeffs[mono] ^= 1
    return coeffs


def from_anf(n: int, expr) -> BoolFn:
    """Truth table of an ANF given as a string like ``"x1*x2 + x3"`` or a coefficient bit vector."""
    _check_arity(n)
    if isinstance(expr, str):
        coeffs = _parse_anf(n, expr)
    elif isinstance(expr, Anf):
        coeffs = expr.coeffs
    else:
        coeffs = np.asarray(expr)
        if coeffs.shape != (1 << n,):
            raise ValueError("coefficient vector must have length 2^n")
    return Anf(n, coeffs).to_boolfn()


def to_anf(f: BoolFn) -> Anf:
    return Anf(f.n, mobius_gf2(f.table, f.n))


def degree(f: BoolFn) -> int:
    return to_anf(f).degree()


def hamming_distance(f: BoolFn, g: BoolFn) -> int:
    _same_arity(f, g)
    return int(np.count_nonzero(f.table != g.table))


def elementary_symmetric(n: int, k: int) -> BoolFn:
    """Sigma^n_k: sum of all degree-k monomials mod 2, i.e. binom(W(x), k) mod 2."""
    _check_arity(n)
    if not 1 <= k <= n:
        raise ValueError(f"order k must be in 1..{n}")
    w = weights(n)
    # Lucas: binom(w, k) is odd iff k is a submask of w
    return BoolFn(n, ((w & k) == k).astype(np.uint8))


def delta(n: int) -> BoolFn:
    t = np.zeros(1 << n, dtype=np.uint8)
    t[0] = 1
    return BoolFn(n, t)


def and_n(n: int) -> BoolFn:
    t = np.zeros(1 << n, dtype=np.uint8)
    t[-1] = 1
    return BoolFn(n, t)


def linear(n: int, a: int) -> BoolFn:
    """phi_a(x) = a.x mod 2."""
    return BoolFn(n, (weights(n)[np.arange(1 << n) & a] & 1).astype(np.uint8))


def apply_affine(f: BoolFn, P, shift=0) -> BoolFn:
    """g(i) = f(P i + shift) over GF(2); P must be invertible."""
    n = f.n
    P = gf2.as_gf2(P)
    if P.shape != (n, n):
        raise ValueError(f"P must be {n}x{n}")
    if gf2.rank(P) != n:
        raise ValueError("P is singular over GF(2)")
    s = shift if isinstance(shift, (int, np.integer)) else gf2.int_of(shift)
    idx = np.arange(1 << n)
    X = ((idx[:, None] >> np.arange(n)) & 1).astype(np.int64)
    Y = (X @ P.T.astype(np.int64)) & 1
    target = (Y << np.arange(n)).sum(axis=1) ^ int(s)
    return BoolFn(n, f.table[target])


# --- exact spectra -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class _DyadicArray:
    """2^n dyadic numbers sharing the denominator 2^log2den."""

    n: int
    num: np.ndarray
    log2den: int = 0

    def __post_init__(self):
        num = np.asarray(self.num)
        if num.shape != (1 << self.n,):
            raise ValueError("coefficient array must have length 2^n")
        if num.dtype != object:
            num = num.astype(np.int64)
        k = int(self.log2den)
        if k < 0:
            raise ValueError("negative log2den")
        num = num.copy()
        if num.dtype == object:
            common = 0
            for v in num:
                common |= int(v)
        else:
            common = int(np.bitwise_or.reduce(num)) if num.size else 0
        if common == 0:
            k = 0
        else:
            shift = min(k, (common & -common).bit_length() - 1)
            if shift:
                num = num // (1 << shift)
                k -= shift
        num.flags.writeable = False
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "log2den", k)

    def __getitem__(self, idx) -> Dyadic:
        return Dyadic(int(self.num[idx]), self.log2den)

    @property
    def coeffs(self) -> list[Dyadic]:
        return [Dyadic(int(v), self.log2den) for v in self.num]

    def __eq__(self, other):
        return (type(other) is type(self) and self.n == other.n
                and self.log2den == other.log2den
                and all(int(a) == int(b) for a, b in zip(self.num, other.num)))

    def support(self) -> list[int]:
        return [int(a) for a in np.nonzero(self.num)[0]]

    @classmethod
    def from_values(cls, n: int, values: Sequence) -> "_DyadicArray":
        ds = [Dyadic.from_value(v) for v in values]
        k = max((d.log2den for d in ds), default=0)
        num = [d.num << (k - d.log2den) for d in ds]
        bits = max((abs(v).bit_length() for v in num), default=0)
        return cls(n, np.array(num, dtype=_safe_dtype(bits)), k)

    def to_list(self) -> list[dict]:
        return [d.to_dict() for d in self.coeffs]


class WalshSpectrum(_DyadicArray):
    """Coefficients C_a of f = sum_a C_a phi_a; index 0 is the constant term."""

    def values(self) -> tuple[np.ndarray, int]:
        """Numerators of sum_a C_a phi_a(x) at every x, over 2^(log2den+1)."""
        n, k = self.n, self.log2den
        c = np.array(self.num, dtype=object if self.num.dtype == object else np.int64)
        c0 = c[0]
        c = c.copy()
        c[0] = 0
        total = c.sum()
        # phi_a = (1 - chi_a)/2
        w = walsh_hadamard(c, n)
        return 2 * c0 + total - w, k + 1

    def evaluate(self, x: int) -> Fraction:
        acc = Fraction(int(self.num[0]))
        for a in self.support():
            if a and dot_parity(a, x):
                acc += int(self.num[a])
        return acc / (1 << self.log2den)

    def to_boolfn(self) -> BoolFn:
        """Reduce the pointwise values mod 2; fails unless every value is an integer."""
        vals, k = self.values()
        out = np.zeros(1 << self.n, dtype=np.uint8)
        den = 1 << k
        for x, v in enumerate(vals):
            v = int(v)
            if v % den:
                raise ValueError(f"spectrum value at input {x} is not an integer")
            out[x] = (v // den) & 1
        return BoolFn(self.n, out)

    def support_size(self, include_constant: bool = False) -> int:
        s = self.support()
        return len(s) if include_constant else len([a for a in s if a])


class RealPoly(_DyadicArray):
    """Real multilinear polynomial; entry b is the coefficient of prod_j x_j^{b_j}."""

    def values(self) -> tuple[np.ndarray, int]:
        return zeta_int(self.num, self.n), self.log2den

    def evaluate(self, x: int) -> Fraction:
        acc = 0
        for b in self.support():
            if b & x == b:
                acc += int(self.num[b])
        return Fraction(acc, 1 << self.log2den)

    def __add__(self, other: "RealPoly") -> "RealPoly":
        if self.n != other.n:
            raise ValueError("arity mismatch")
        k = max(self.log2den, other.log2den)
        a = np.array(self.num, dtype=object) * (1 << (k - self.log2den))
        b = np.array(other.num, dtype=object) * (1 << (k - other.log2den))
        s = a + b
        bits = max((abs(int(v)).bit_length() for v in s), default=0)
        return RealPoly(self.n, s.astype(_safe_dtype(bits)), k)

    def mod2(self) -> Anf:
        if self.log2den:
            raise ValueError("non-integer polynomial has no mod-2 reduction")
        return Anf(self.n, np.array([int(v) & 1 for v in self.num], dtype=np.uint8))


def symmetric_product(b: int, a: int) -> int:
    """+1 when a = b = 0, else (-1)^(a.b - 1)."""
    if a == 0 and b == 0:
        return 1
    return 1 if dot_parity(a, b) else -1


def linear_to_monomials(a: int, n: int) -> RealPoly:
    """phi_a as a real polynomial: coefficient (-2)^(W(b)-1) on every 0 != b <= a."""
    _check_arity(n, SPECTRAL_CAP)
    if a == 0:
        raise ValueError("mask a must be nonzero")
    if a >> n:
        raise ValueError("mask does not fit the arity")
    idx = np.arange(1 << n)
    w = weights(n)
    num = np.zeros(1 << n, dtype=np.int64)
    sub = (idx & a) == idx
    sub[0] = False
    num[sub] = (-2) ** (w[sub] - 1)
    return RealPoly(n, num)


def walsh_inverse(f: BoolFn) -> WalshSpectrum:
    """Spectrum C with sum_a C_a phi_a(x) = f(x) over Q."""
    n = f.n
    _check_arity(n, SPECTRAL_CAP)
    F = walsh_hadamard(f.table.astype(np.int64), n)
    num = -F
    num[0] = int(f.table[0]) << (n - 1)
    return WalshSpectrum(n, num, n - 1)


def _spectrum_of_values(n: int, vals, k: int) -> WalshSpectrum:
    """Spectrum of the real function with numerators vals over 2^k."""
    F = walsh_hadamard(vals, n)
    num = -F
    num[0] = vals[0] * (1 << (n - 1))
    return WalshSpectrum(n, num, k + n - 1)


def walsh_forward(s: WalshSpectrum) -> RealPoly:
    """Real multilinear polynomial equal to sum_a C_a phi_a."""
    vals, k = s.values()
    bits = _max_bits(np.asarray(vals, dtype=object)) + s.n + 1
    vals = np.array(vals, dtype=_safe_dtype(bits))
    return RealPoly(s.n, mobius_int(vals, s.n), k)


def poly_to_spectrum(p: RealPoly) -> WalshSpectrum:
    vals, k = p.values()
    bits = _max_bits(np.asarray(vals, dtype=object)) + 2 * p.n + 1
    vals = np.array(vals, dtype=_safe_dtype(bits))
    return _spectrum_of_values(p.n, vals, k)


def interpolate(f: BoolFn) -> RealPoly:
    """Unique real multilinear polynomial agreeing with f on Z2^n."""
    _check_arity(f.n, SPECTRAL_CAP)
    return RealPoly(f.n, mobius_int(f.table.astype(np.int64), f.n))
