"""Exact helpers: dyadic numbers, GF(2) elimination, Pauli strings, Z_{2^K} systems."""
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2mbqc import gf2
from l2mbqc.dyadic import Dyadic
from l2mbqc.pauli import PauliString, check_generators, decompose, in_group
from l2mbqc.zmod import diagonalize, valuation

dyadics = st.builds(Dyadic, st.integers(-10**6, 10**6), st.integers(0, 12))


@given(dyadics, dyadics)
def test_dyadic_field_ops(a, b):
    fa, fb = a.to_fraction(), b.to_fraction()
    assert (a + b).to_fraction() == fa + fb
    assert (a - b).to_fraction() == fa - fb
    assert (a * b).to_fraction() == fa * fb
    assert (-a).to_fraction() == -fa
    m = a.mod2().to_fraction()
    assert 0 <= m < 2 and (fa - m) % 2 == 0


@given(dyadics)
def test_dyadic_normal_form(d):
    assert d.num % 2 == 1 or d.log2den == 0
    assert Dyadic.from_dict(d.to_dict()) == d
    assert Dyadic.from_value(d.to_fraction()) == d


def test_dyadic_rejects_non_dyadic():
    with pytest.raises(ValueError):
        Dyadic.from_value(Fraction(1, 3))
    with pytest.raises(ValueError):
        Dyadic(1, -1)
    assert Dyadic(4, 3) == Dyadic(1, 1)


# --- GF(2) ---------------------------------------------------------------------

gf2_mats = st.integers(1, 8).flatmap(lambda r: st.integers(1, 8).flatmap(
    lambda c: st.lists(st.integers(0, 1), min_size=r * c, max_size=r * c).map(
        lambda v: np.array(v, dtype=np.uint8).reshape(r, c))))


def brute_rank(M):
    # rank = log2 of the row-space size
    rows = {0}
    for r in M:
        v = gf2.int_of(r)
        rows |= {x ^ v for x in rows}
    return len(rows).bit_length() - 1


@settings(max_examples=200)
@given(gf2_mats)
def test_rank_and_nullspace(M):
    r = gf2.rank(M)
    assert r == brute_rank(M)
    N = gf2.nullspace(M)
    assert N.shape[0] == M.shape[1] - r
    if N.size:
        assert not gf2.matmul(M, N.T).any()


@settings(max_examples=100)
@given(gf2_mats, st.data())
def test_solve(M, data):
    x = np.array(data.draw(st.lists(st.integers(0, 1), min_size=M.shape[1], max_size=M.shape[1])), dtype=np.uint8)
    b = gf2.matmul(M, x.reshape(-1, 1)).ravel()
    y = gf2.solve(M, b)
    assert y is not None and np.array_equal(gf2.matmul(M, y.reshape(-1, 1)).ravel(), b)


def test_inverse():
    rng = np.random.default_rng(1)
    for _ in range(50):
        M = rng.integers(0, 2, (5, 5)).astype(np.uint8)
        if gf2.rank(M) < 5:
            with pytest.raises(ValueError):
                gf2.inverse(M)
            continue
        assert np.array_equal(gf2.matmul(M, gf2.inverse(M)), np.eye(5, dtype=np.uint8))


# --- Pauli strings -----------------------------------------------------------------

def test_label_roundtrip():
    for lab in ("+XYZ", "-IXI", "+iZZ", "-iYII"):
        p = PauliString.from_label(lab)
        assert p.label() == lab
        assert PauliString.from_json(p.to_json()) == p


def test_iy_is_product_of_xz():
    Y = np.array([[0, -1j], [1j, 0]])
    assert np.allclose(PauliString.iy(1, 1).to_matrix(), 1j * Y)
    assert np.allclose(PauliString.from_label("Y").to_matrix(), Y)


paulis = st.integers(1, 3).flatmap(lambda N: st.tuples(
    st.builds(PauliString, st.just(N), st.integers(0, (1 << N) - 1), st.integers(0, (1 << N) - 1), st.integers(0, 3)),
    st.builds(PauliString, st.just(N), st.integers(0, (1 << N) - 1), st.integers(0, (1 << N) - 1), st.integers(0, 3))))


@settings(max_examples=200)
@given(paulis)
def test_multiplication_matches_matrices(pq):
    p, q = pq
    assert np.allclose((p * q).to_matrix(), p.to_matrix() @ q.to_matrix())
    assert p.commutes(q) == np.allclose(p.to_matrix() @ q.to_matrix(), q.to_matrix() @ p.to_matrix())
    H = p.to_matrix()
    assert p.is_hermitian() == np.allclose(H, H.conj().T)
    v = np.random.default_rng(0).normal(size=1 << p.N) + 0j
    assert np.allclose(p.apply(v), H @ v)


def test_group_membership_and_generator_checks():
    gens = [PauliString.from_label("XX"), PauliString.from_label("ZZ")]
    check_generators(gens)
    assert in_group(gens, PauliString.from_label("-YY"))
    assert not in_group(gens, PauliString.from_label("YY"))
    assert decompose(gens, PauliString.from_label("XI")) is None
    with pytest.raises(ValueError):
        check_generators([PauliString.from_label("XI"), PauliString.from_label("ZI")])
    with pytest.raises(ValueError):
        check_generators([PauliString.from_label("XX"), PauliString.from_label("XX")])
    with pytest.raises(ValueError):
        check_generators([PauliString.from_label("iX")])


# --- Z_{2^K} ------------------------------------------------------------------------

def test_valuation():
    assert valuation(0, 4) == 4
    assert valuation(12, 4) == 2
    assert valuation(16 + 8, 4) == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_diagonalization_feasibility(K, m, c, data):
    mod = 1 << K
    A = np.array(data.draw(st.lists(st.integers(0, mod - 1), min_size=m * c, max_size=m * c))).reshape(m, c)
    D = diagonalize(A, K)
    reachable = {tuple((A @ np.array(x)) % mod) for x in product(range(mod), repeat=c)}
    for b in product(range(mod), repeat=m):
        b = np.array(b)
        assert bool(D.feasible(b.reshape(-1, 1))[0]) == (tuple(b) in reachable)
        x = D.solve(b)
        if x is not None:
            assert np.array_equal((A @ x) % mod, b)
