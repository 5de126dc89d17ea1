"""Acceptance checks, one function per criterion.

Each check returns a ``CriterionResult``; sub-checks are kept so a partial
failure shows exactly which part broke.  Used by ``l2mbqc verify-paper`` and by
the pytest acceptance module.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import gf2
from .adaptive import and_box, chain_and, execute, output_function, tree_and, validate
from .boolfn import (Anf, BoolFn, and_n, degree, delta, elementary_symmetric, from_anf)
from .compiler import (MeasurementScheme, clifford_level, compile_delta, compile_general,
                       compile_quadratic, lempel_factor, oracle_table, scheme_output_oracle)
from .dyadic import Dyadic
from .qcount import mismatch_certificate, r_ghz_exact, r_ghz_exact_batch, r_ghz_upper_symmetric
from .quditext import delta_target, qudit_delta_scheme, qudit_run
from .simulator import expectation, run, run_stabilizer, stabilizer_verify
from .stabilizer import max_success_prob, nearest_quadratic, q_matrix, success_prob_from_nq

TOL = 1e-9
SAMPLE_SEED = 20240517
SAMPLE_SIZE = 500


@dataclass
class CriterionResult:
    cid: int
    name: str
    checks: list = field(default_factory=list)     # (label, ok, detail)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, label: str, ok: bool, detail: str = ""):
        self.checks.append((label, bool(ok), detail))

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        failed = [lbl for lbl, ok, _ in self.checks if not ok]
        extra = f" (failed: {'; '.join(failed)})" if failed else ""
        return f"[{tag}] C{self.cid} {self.name} ({self.elapsed:.2f}s){extra}"

    def to_json(self) -> dict:
        return {"id": self.cid, "name": self.name, "passed": self.passed,
                "elapsed_s": round(self.elapsed, 3),
                "checks": [{"check": l, "ok": ok, "detail": d} for l, ok, d in self.checks]}


def random_dyadic_schemes(count: int = SAMPLE_SIZE, seed: int = SAMPLE_SEED,
                          max_n: int = 3, max_N: int = 7, max_log2den: int = 3) -> list[MeasurementScheme]:
    """Seeded sample: n in 1..max_n, N in 1..max_N, one denominator 2^L per scheme."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        N = int(rng.integers(1, max_N + 1))
        L = int(rng.integers(0, max_log2den + 1))
        qs = tuple((int(rng.integers(1, 1 << n)), Dyadic(int(rng.integers(0, 2 << L)), L)) for _ in range(N))
        out.append(MeasurementScheme(n, qs, int(rng.integers(0, 2))))
    return out


def is_half_integer(s: MeasurementScheme) -> bool:
    return all(t.log2den <= 1 for t in s.thetas)


def _timed(fn):
    def wrapper(*a, **kw):
        t0 = time.perf_counter()
        res = fn(*a, **kw)
        res.elapsed = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def criterion_1() -> CriterionResult:
    r = CriterionResult(1, "Anders-Browne OR scheme")
    t0 = time.perf_counter()
    f = from_anf(2, "x1*x2 + x1 + x2")
    s = compile_general(f)
    r.add("3 qubits", s.N == 3, f"N={s.N}")
    r.add("half-integer phases", all(t.log2den == 1 for t in s.thetas), str([str(t) for t in s.thetas]))
    rep = run(s, f)
    r.add("|<M(i)>| = 1", all(abs(abs(rec.expectation) - 1) <= TOL for rec in rep.records))
    r.add("outputs match f", rep.output_fn == f)
    r.add("runtime < 1 s", time.perf_counter() - t0 < 1.0)
    return r


@_timed
def criterion_2() -> CriterionResult:
    r = CriterionResult(2, "delta completeness and optimality")
    for n in (2, 3, 4):
        s = compile_delta(n)
        r.add(f"n={n} qubits", s.N == 2 ** n - 1, f"N={s.N}")
        r.add(f"n={n} phases", all(t == Dyadic(1, n - 1) for t in s.thetas))
        rep = run(s, delta(n))
        r.add(f"n={n} simulated", rep.deterministic and rep.output_fn == delta(n))
        t0 = time.perf_counter()
        res = r_ghz_exact(delta(n))
        dt = time.perf_counter() - t0
        r.add(f"n={n} exact count", res.count == 2 ** n - 1, f"count={res.count}, {dt:.1f}s")
        if n == 4:
            r.add("n=4 search < 120 s", dt < 120.0, f"{dt:.1f}s")
    return r


def _sim_table(s: MeasurementScheme):
    es = np.array([expectation(s, i) for i in range(1 << s.n)])
    det = np.abs(es) >= 1 - TOL
    bits = np.where(det & (es.real < 0), 1, 0).astype(np.uint8)
    return es, det, bits


@_timed
def criterion_3(sample=None) -> CriterionResult:
    r = CriterionResult(3, "oracle vs state-vector equivalence")
    sample = sample or random_dyadic_schemes()
    bad = 0
    for s in sample:
        det_o, bits_o = oracle_table(s)
        _, det_s, bits_s = _sim_table(s)
        if not (np.array_equal(det_o, det_s) and np.array_equal(bits_o[det_o], bits_s[det_s])):
            bad += 1
    r.add(f"{len(sample)} schemes agree", bad == 0, f"disagreements={bad}")
    return r


def _closed_under_triples(D: list[int]) -> bool:
    Ds = set(D)
    return all((x ^ y ^ z) in Ds for x in D for y in D for z in D)


@_timed
def criterion_4(sample=None) -> CriterionResult:
    r = CriterionResult(4, "half-integer schemes are quadratic")
    sample = sample or random_dyadic_schemes()
    halves = [s for s in sample if is_half_integer(s)]
    deg_bad = val_bad = aff_bad = 0
    for s in halves:
        es, det, _ = _sim_table(s)
        if det.all():
            if degree(scheme_output_oracle(s)) > 2:
                deg_bad += 1
        near = np.minimum.reduce([np.abs(es - v) for v in (-1, 0, 1)])
        if (near > TOL).any():
            val_bad += 1
        if not _closed_under_triples([int(i) for i in np.nonzero(det)[0]]):
            aff_bad += 1
    r.add("sample has half-integer schemes", len(halves) > 0, f"{len(halves)} schemes")
    r.add("deterministic outputs have degree <= 2", deg_bad == 0, f"violations={deg_bad}")
    r.add("expectations in {-1,0,1}", val_bad == 0, f"violations={val_bad}")
    r.add("deterministic sets closed under x+y+z", aff_bad == 0, f"violations={aff_bad}")
    return r


def _exact_p(rep) -> Fraction:
    total = Fraction(0)
    for rec in rep.records:
        h = round(rec.p * 2)
        if abs(rec.p - h / 2) > TOL:
            raise ValueError(f"p={rec.p} is not a multiple of 1/2")
        total += Fraction(h, 2)
    return total / len(rep.records)


@_timed
def criterion_5() -> CriterionResult:
    r = CriterionResult(5, "stabilizer success probability")
    t0 = time.perf_counter()
    bad = 0
    for T in range(256):
        f = BoolFn.from_int(3, T)
        q = nearest_quadratic(f)
        rep = run_stabilizer(compile_quadratic(q), f)
        if _exact_p(rep) != max_success_prob(f):
            bad += 1
    r.add("256 functions at n=3", bad == 0, f"mismatches={bad}")
    r.add("1 - 68/256 = 47/64", success_prob_from_nq(68, 8) == Fraction(47, 64))
    r.add("runtime < 60 s", time.perf_counter() - t0 < 60.0)
    return r


@_timed
def criterion_6(sample=None) -> CriterionResult:
    r = CriterionResult(6, "degree bounded by Clifford level")
    sample = sample or random_dyadic_schemes()
    bad = checked = 0
    for s in sample:
        det, _ = oracle_table(s)
        if det.all():
            checked += 1
            if degree(scheme_output_oracle(s)) > clifford_level(s):
                bad += 1
    r.add("no violations on the sample", bad == 0, f"checked={checked}, violations={bad}")
    for n in range(1, 5):
        lv = clifford_level(compile_delta(n))
        r.add(f"delta_{n} level {n}", lv == n, f"level={lv}")
    return r


def all_quadratics(n: int, with_constant: bool = False) -> list[BoolFn]:
    """Every quadratic with f(0) = 0 (or all of them), ANF bit order fixed."""
    mons = [(1 << i) | (1 << j) for i in range(n) for j in range(i + 1, n)] + [1 << i for i in range(n)]
    if with_constant:
        mons.append(0)
    out = []
    for bits in range(1 << len(mons)):
        c = np.zeros(1 << n, dtype=np.uint8)
        for t, b in enumerate(mons):
            c[b] = (bits >> t) & 1
        out.append(Anf(n, c).to_boolfn())
    return out


def quadratic_ghz_count(f: BoolFn) -> int:
    """Exact GHZ count of a quadratic: rk+1 when f - f(0) vanishes on rad Q, rk+2 otherwise."""
    g = f ^ f(0)
    qf = q_matrix(g)
    if qf.rank == 0:
        return 1 if g.table.any() else 0
    rad = gf2.nullspace(qf.Q)
    return qf.rank + (1 if all(g(gf2.int_of(v)) == 0 for v in rad) else 2)


@_timed
def criterion_7() -> CriterionResult:
    r = CriterionResult(7, "quadratic resource count")
    lemp_bad = ver_bad = lit_bad = rule_bad = total = 0
    for n in range(1, 5):
        fs = all_quadratics(n)
        res = r_ghz_exact_batch(fs)
        for f, rr in zip(fs, res):
            total += 1
            qf = q_matrix(f)
            P = lempel_factor(qf.Q)
            ok = (np.array_equal(gf2.matmul(P.T, P), qf.Q) and not (P.sum(axis=0) % 2).any()
                  and P.shape[0] == qf.rank + 1)
            lemp_bad += not ok
            ver_bad += not stabilizer_verify(compile_quadratic(f), f).ok
            lit_bad += rr.count != qf.rank + 1
            rule_bad += rr.count != quadratic_ghz_count(f)
    r.add("lempel postconditions", lemp_bad == 0, f"{total} forms, violations={lemp_bad}")
    r.add("stabilizer_verify", ver_bad == 0, f"failures={ver_bad}")
    r.add("r_ghz_exact = rk+1", lit_bad == 0,
          f"mismatches={lit_bad}/{total}; refined rule (rk+1 iff f vanishes on rad Q) mismatches={rule_bad}")
    or2 = from_anf(2, "x1*x2 + x1 + x2")
    qf = q_matrix(or2)
    r.add("OR_2 rank 2 -> 3 qubits",
          qf.rank == 2 and lempel_factor(qf.Q).shape[0] == 3 and compile_quadratic(or2).N == 3)
    return r


@_timed
def criterion_8() -> CriterionResult:
    r = CriterionResult(8, "symmetric-function bounds")
    bad2 = [n for n in range(2, 11) if r_ghz_upper_symmetric(n, 2).count != n + 1]
    badn = [n for n in range(1, 11) if r_ghz_upper_symmetric(n, n).count != 2 ** n - 1]
    r.add("Sigma^n_2 -> n+1 (n <= 10)", not bad2, f"bad n={bad2}")
    r.add("Sigma^n_n -> 2^n-1 (n <= 10)", not badn, f"bad n={badn}")
    cert = mismatch_certificate()
    r.add("counts (7, 8)", cert.counts == (7, 8), str(cert.counts))
    r.add("degrees (3, 2)", cert.degrees == (3, 2), str(cert.degrees))
    rep = run(cert.witnesses[0], cert.f)
    r.add("Sigma^3_3 witness simulated", rep.deterministic and rep.output_fn == cert.f)
    return r


@_timed
def criterion_9() -> CriterionResult:
    r = CriterionResult(9, "qutrit delta")
    t0 = time.perf_counter()
    for n, N in ((1, 2), (2, 8)):
        s = qudit_delta_scheme(n, 3)
        r.add(f"n={n} has {N} qutrits", s.N == N)
        dev, ok = 0.0, True
        for i in product(range(3), repeat=n):
            run_ = qudit_run(s, i)
            dev = max(dev, abs(abs(run_.expectation) - 1))
            ok &= run_.deterministic and run_.delta == delta_target(i)
        r.add(f"n={n} deterministic and correct", ok and dev < TOL, f"max deviation {dev:.1e}")
    r.add("runtime < 10 s", time.perf_counter() - t0 < 10.0)
    return r


@_timed
def criterion_10() -> CriterionResult:
    r = CriterionResult(10, "adaptive AND compositions")
    ch = chain_and(10)
    m = validate(ch)
    flat = compile_general(and_n(10)).N
    r.add("chain width 3, volume 27", m.width == 3 and m.volume == 27, f"width={m.width}, volume={m.volume}")
    r.add("non-adaptive AND_10 needs 1023", flat == 1023, f"N={flat}")
    tr = tree_and(8)
    r.add("tree depth 3", validate(tr).depth == 3)
    r.add("chain computes AND_10 (all 1024 inputs)", output_function(ch) == and_n(10))
    r.add("tree computes AND_8 (all 256 inputs)", output_function(tr) == and_n(8))
    box = and_box()
    r.add("components are level 2", clifford_level(box) == 2
          and all(clifford_level(nd.scheme) == 2 for nd in ch.nodes + tr.nodes))
    r.add("composed degree = n", degree(output_function(ch)) == 10 and degree(output_function(tr)) == 8)
    return r


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10}


def run_all(ids=None) -> list[CriterionResult]:
    ids = sorted(CRITERIA) if ids is None else ids
    return [CRITERIA[i]() for i in ids]
