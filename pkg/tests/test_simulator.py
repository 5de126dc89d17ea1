from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2mbqc.boolfn import BoolFn, and_n, delta, from_anf
from l2mbqc.compiler import (MeasurementScheme, StabilizerScheme, compile_delta, compile_general,
                             compile_quadratic, oracle_table)
from l2mbqc.dyadic import Dyadic
from l2mbqc.simulator import (StateVector, expectation, expectation_dense, ghz_state, run,
                              run_stabilizer, sample_parities, stabilizer_verify, x_theta)
from l2mbqc.stabilizer import nearest_quadratic, non_quadraticity

from strategies import all_quadratics, dyadic_schemes

HALF = Dyadic(1, 1)
AB = MeasurementScheme(2, ((0b01, HALF), (0b10, HALF), (0b11, HALF)), 0)


def test_ghz():
    assert np.allclose(ghz_state(1).amps, [2 ** -0.5, 2 ** -0.5])
    a = ghz_state(3).amps
    assert np.isclose(a[0], 2 ** -0.5) and np.isclose(a[7], 2 ** -0.5) and np.allclose(a[1:7], 0)
    for bad in (0, 21):
        with pytest.raises(ValueError):
            ghz_state(bad)
    with pytest.raises(ValueError):
        StateVector(1, np.array([1.0, 1.0]))


def test_x_theta_examples():
    assert np.allclose(x_theta(0), [[0, 1], [1, 0]])
    assert np.allclose(x_theta(Fraction(1, 2)), [[0, -1j], [1j, 0]])
    assert np.allclose(x_theta(1), [[0, -1], [-1, 0]])


def test_x_theta_unitary_hermitian():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        th = Fraction(int(rng.integers(0, 1 << 20)), 1 << 19)
        M = x_theta(th)
        assert np.abs(M @ M.conj().T - np.eye(2)).max() < 1e-12
        assert np.abs(M - M.conj().T).max() < 1e-12
        assert np.allclose(sorted(np.linalg.eigvalsh(M)), [-1, 1])


def test_expectation_examples():
    assert np.isclose(expectation(AB, 0b11), -1)
    assert np.isclose(expectation(compile_delta(2), 0), -1)
    # without the constant the raw tensor value is +1
    assert np.isclose(expectation(compile_delta(2), 0, include_m0=False), 1)
    y = MeasurementScheme(1, ((1, HALF),))
    assert abs(expectation(y, 1)) < 1e-12
    with pytest.raises(ValueError):
        expectation(y, 1, ghz_state(2))


def test_run_examples():
    f = from_anf(2, "x1*x2 + x1 + x2")
    rep = run(compile_general(f), f)
    assert rep.deterministic and rep.p_succ == pytest.approx(1.0, abs=1e-12) and rep.output_fn == f
    y = MeasurementScheme(1, ((1, HALF),))
    rep = run(y, BoolFn.variable(1, 1))
    assert rep.records[0].p == pytest.approx(1.0) and rep.records[1].p == pytest.approx(0.5)
    assert not rep.deterministic and rep.output_fn is None
    js = rep.to_json()
    assert js["outputs"][1]["bit"] is None and js["p_succ"] == 0.75


def test_nearest_quadratic_success():
    # x1 x2 x3 is at distance 1 from the zero function
    f = and_n(3)
    q = nearest_quadratic(f)
    assert non_quadraticity(f) == 1
    rep = run_stabilizer(compile_quadratic(q), f)
    assert Fraction(rep.p_succ).limit_denominator(64) == Fraction(7, 8)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_delta_simulated(n):
    rep = run(compile_delta(n), delta(n))
    assert rep.deterministic and rep.output_fn == delta(n)


@settings(max_examples=300, deadline=None)
@given(dyadic_schemes(max_N=7))
def test_oracle_simulator_equivalence(s):
    det, bits = oracle_table(s)
    rep = run(s)
    for r in rep.records:
        assert r.deterministic == bool(det[r.i])
        if r.deterministic:
            assert r.output_bit == bits[r.i]


@settings(max_examples=40, deadline=None)
@given(dyadic_schemes(max_N=5))
def test_fast_expectation_matches_dense(s):
    for i in range(1 << s.n):
        assert abs(expectation(s, i) - expectation_dense(s, i)) < 1e-12


@settings(max_examples=300, deadline=None)
@given(dyadic_schemes(max_N=7, max_k=1))
def test_half_integer_dichotomy_and_affine_closure(s):
    vals = [expectation(s, i) for i in range(1 << s.n)]
    for v in vals:
        assert min(abs(v - t) for t in (-1, 0, 1)) < 1e-9
    D = [i for i, v in enumerate(vals) if abs(v) > 0.5]
    Dset = set(D)
    for x, y, z in product(D, repeat=3):
        assert x ^ y ^ z in Dset


def test_sampling_is_seeded():
    s = compile_delta(2)
    a = sample_parities(s, 0, 50, seed=5)
    assert np.array_equal(a, sample_parities(s, 0, 50, seed=5))
    assert a.all()      # deterministic input: output bit 1 every shot
    y = MeasurementScheme(1, ((1, HALF),))
    b = sample_parities(y, 1, 4000, seed=1)
    assert 0.45 < b.mean() < 0.55


# --- stabilizer verification --------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_stabilizer_verify_all_quadratics(n):
    for f in all_quadratics(n):
        ss = compile_quadratic(f)
        assert stabilizer_verify(ss, f).ok
        assert stabilizer_verify(compile_quadratic(f ^ 1), f ^ 1).ok
        rep = run_stabilizer(ss, f)
        assert rep.deterministic and rep.output_fn == f


def test_stabilizer_verify_wrong_sign():
    f = from_anf(2, "x1*x2 + x1 + x2")
    ss = compile_quadratic(f)
    gens = list(ss.generators)
    gens[1] = -gens[1]
    bad = StabilizerScheme(ss.n, ss.P, ss.signs, tuple(gens), ss.m0)
    res = stabilizer_verify(bad, f)
    assert not res.ok and res.failures


def test_stabilizer_verify_rejects_cubic():
    f = and_n(3)
    for q in all_quadratics(3):
        assert not stabilizer_verify(compile_quadratic(q), f).ok
