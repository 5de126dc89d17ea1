from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2mbqc import gf2
from l2mbqc.boolfn import (Anf, AnfParseError, BoolFn, RealPoly, WalshSpectrum, and_n, apply_affine,
                           degree, delta, dot_parity, elementary_symmetric, from_anf, hamming_distance,
                           interpolate, linear, linear_to_monomials, mobius_gf2, poly_to_spectrum,
                           symmetric_product, to_anf, walsh_forward, walsh_inverse)

from strategies import boolfns


def brute_anf(f: BoolFn) -> np.ndarray:
    # independent oracle: D_b = sum_{x <= b} f(x) mod 2
    n = f.n
    return np.array([sum(f(x) for x in range(1 << n) if x & b == x) & 1 for b in range(1 << n)])


# --- representation and parsing -----------------------------------------------

def test_bit_convention():
    f = BoolFn.variable(3, 1)
    assert [f(x) for x in range(8)] == [0, 1, 0, 1, 0, 1, 0, 1]
    assert BoolFn.variable(3, 3).to_hex() == "f0"


def test_parse_and_print():
    f = from_anf(2, "x1*x2 + x1 + x2")
    assert list(f.table) == [0, 1, 1, 1]
    assert to_anf(f).to_string() == "x1 + x2 + x1*x2"
    assert from_anf(3, "1").table.all()
    assert not from_anf(3, "0").table.any()
    assert from_anf(2, "x1 + x1") == BoolFn.constant(2, 0)


@pytest.mark.parametrize("expr", ["x3", "x1**x2", "y1", "x1 +", "x0", "x1*2"])
def test_parse_errors(expr):
    with pytest.raises(AnfParseError) as e:
        from_anf(2, expr)
    assert e.value.position >= 0


def test_anf_examples():
    d = to_anf(BoolFn(2, [1, 0, 0, 0]))
    assert list(d.coeffs) == [1, 1, 1, 1]
    c1 = to_anf(BoolFn.constant(2, 1))
    assert list(c1.coeffs) == [1, 0, 0, 0]
    a = to_anf(BoolFn(2, [0, 0, 0, 1]))
    assert list(a.coeffs) == [0, 0, 0, 1]


def test_degree_examples():
    for n in range(1, 7):
        assert degree(and_n(n)) == n
        assert degree(delta(n)) == n
    assert degree(from_anf(2, "x1 + x2")) == 1
    assert degree(BoolFn.constant(4, 0)) == 0


def test_hamming_examples():
    f = from_anf(3, "x1*x2 + x3")
    assert hamming_distance(f, f) == 0
    assert hamming_distance(f, f ^ 1) == 8
    assert hamming_distance(and_n(2), from_anf(2, "x1*x2 + x1 + x2")) == 2
    with pytest.raises(ValueError):
        hamming_distance(f, and_n(2))


def test_elementary_symmetric():
    for n in range(1, 6):
        assert elementary_symmetric(n, 1) == linear(n, (1 << n) - 1)
    assert elementary_symmetric(2, 2) == and_n(2)
    assert to_anf(elementary_symmetric(3, 2)).monomials() == [0b011, 0b101, 0b110]
    for k in (0, 4):
        with pytest.raises(ValueError):
            elementary_symmetric(3, k)


def test_hex_json_roundtrip():
    f = from_anf(4, "x1*x2*x3 + x4")
    assert BoolFn.from_hex(4, f.to_hex()) == f
    assert BoolFn.from_json(f.to_json()) == f
    assert BoolFn.from_json({"n": 4, "tt_hex": f.to_hex()}) == f
    with pytest.raises(ValueError):
        BoolFn.from_int(2, 1 << 4)


@settings(max_examples=200, deadline=None)
@given(boolfns(max_n=8))
def test_anf_roundtrip(f):
    a = to_anf(f)
    assert np.array_equal(np.asarray(a.coeffs) & 1, brute_anf(f)) if f.n <= 6 else True
    assert from_anf(f.n, a) == f
    assert from_anf(f.n, a.to_string()) == f


@given(st.integers(1, 10), st.data())
def test_mobius_is_involution(n, data):
    v = np.array(data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n)), dtype=np.uint8)
    assert np.array_equal(mobius_gf2(mobius_gf2(v, n), n), v)


# --- real representations ------------------------------------------------------

def test_symmetric_product_values():
    assert symmetric_product(0, 0) == 1
    assert symmetric_product(0b11, 0b01) == 1
    assert symmetric_product(0b11, 0b11) == -1
    assert symmetric_product(0, 0b10) == -1


def test_linear_to_monomials_examples():
    assert linear_to_monomials(0b01, 2).to_list() == [{"num": v, "log2den": 0} for v in (0, 1, 0, 0)]
    assert [int(v) for v in linear_to_monomials(0b11, 2).num] == [0, 1, 1, -2]
    p = linear_to_monomials(0b111, 3)
    assert [int(v) for v in p.num] == [0, 1, 1, -2, 1, -2, -2, 4]
    with pytest.raises(ValueError):
        linear_to_monomials(0, 3)


@pytest.mark.parametrize("n", range(1, 7))
def test_linear_to_monomials_evaluates_parity(n):
    for a in range(1, 1 << n):
        p = linear_to_monomials(a, n)
        vals, k = p.values()
        assert k == 0
        assert [int(v) for v in vals] == [dot_parity(a, x) for x in range(1 << n)]


def test_walsh_inverse_examples():
    s = walsh_inverse(and_n(2))
    assert [c.to_fraction() for c in s.coeffs] == [0, Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)]
    s = walsh_inverse(delta(2))
    assert [c.to_fraction() for c in s.coeffs] == [1, Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)]
    for a in range(1, 8):
        s = walsh_inverse(linear(3, a))
        assert s.support() == [a] and s[a].to_fraction() == 1


def test_walsh_forward_examples():
    s = walsh_inverse(linear(3, 0b101))
    assert walsh_forward(s) == linear_to_monomials(0b101, 3)
    assert [int(v) for v in walsh_forward(walsh_inverse(and_n(2))).num] == [0, 0, 0, 1]
    z = WalshSpectrum(3, np.zeros(8, dtype=np.int64))
    assert not walsh_forward(z).support()


@settings(max_examples=100, deadline=None)
@given(boolfns(max_n=10))
def test_spectrum_properties(f):
    s = walsh_inverse(f)
    assert s.log2den <= max(f.n - 1, 0)
    assert s[0].to_fraction() == f(0)
    assert s.to_boolfn() == f
    p = walsh_forward(s)
    assert p == interpolate(f)
    assert np.array_equal(np.asarray(p.mod2().coeffs), np.asarray(to_anf(f).coeffs))
    assert poly_to_spectrum(p) == s


@settings(max_examples=30, deadline=None)
@given(boolfns(max_n=4))
def test_spectrum_pointwise_exact(f):
    s = walsh_inverse(f)
    for x in range(1 << f.n):
        assert s.evaluate(x) == f(x)
        assert interpolate(f).evaluate(x) == f(x)


@pytest.mark.parametrize("n", range(1, 7))
def test_hadamard_kernel_orthogonal(n):
    # the change of basis between monomials and linear functions is a Hadamard transform
    H = np.array([[(-1) ** dot_parity(a, b) for a in range(1 << n)] for b in range(1 << n)])
    assert np.array_equal(H @ H.T, (1 << n) * np.eye(1 << n, dtype=int))


@pytest.mark.parametrize("n", range(1, 7))
def test_symmetric_product_kernel_not_orthogonal(n):
    # the a = b = 0 exception breaks orthogonality; see notes
    F = np.array([[symmetric_product(b, a) for a in range(1 << n)] for b in range(1 << n)])
    G = F @ F.T
    assert not np.array_equal(G, (1 << n) * np.eye(1 << n, dtype=int))
    assert np.array_equal(np.diag(G), np.full(1 << n, 1 << n))


# --- affine maps and metric ------------------------------------------------------

def test_apply_affine_examples():
    f = from_anf(3, "x1*x2 + x3")
    assert apply_affine(f, np.eye(3, dtype=np.uint8)) == f
    for j in range(8):
        g = apply_affine(delta(3), np.eye(3, dtype=np.uint8), j)
        assert [x for x in range(8) if g(x)] == [j]
    swap = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    assert apply_affine(and_n(2), swap) == and_n(2)
    with pytest.raises(ValueError):
        apply_affine(f, np.ones((3, 3), dtype=np.uint8))


def test_apply_affine_convention():
    # g(i) = f(P i + shift) with P acting on the bit vector (x_1 first)
    P = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    g = apply_affine(BoolFn.variable(2, 1), P, 0)
    assert g == from_anf(2, "x1 + x2")


@settings(max_examples=100)
@given(boolfns(max_n=5), st.data())
def test_hamming_metric(f, data):
    g = data.draw(boolfns(min_n=f.n, max_n=f.n))
    h = data.draw(boolfns(min_n=f.n, max_n=f.n))
    assert hamming_distance(f, g) == hamming_distance(g, f)
    assert (hamming_distance(f, g) == 0) == (f == g)
    assert hamming_distance(f, h) <= hamming_distance(f, g) + hamming_distance(g, h)


def test_immutable_table():
    f = and_n(3)
    with pytest.raises(ValueError):
        f.table[0] = 1


def test_arity_caps():
    with pytest.raises(ValueError):
        BoolFn.constant(25)
    with pytest.raises(ValueError):
        walsh_inverse(BoolFn.constant(21))
