"""Command-line front end; every subcommand prints one JSON document."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from .boolfn import BoolFn, to_anf
from .compiler import NonDeterministic

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    subcommand: str
    function: Optional[dict] = None
    flags: dict = field(default_factory=dict)
    out: Optional[str] = None
    pretty: bool = False


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _function_doc(ns) -> Optional[dict]:
    given = [x for x in (ns.anf, ns.tt_hex, ns.anf_file) if x is not None]
    if len(given) > 1:
        raise UsageError("give only one of --anf, --tt-hex, --anf-file")
    if ns.anf_file is not None:
        return {"file": ns.anf_file}
    if not given:
        return None
    if ns.n is None:
        raise UsageError("--n is required with --anf/--tt-hex")
    return {"n": ns.n, "anf": ns.anf} if ns.anf is not None else {"n": ns.n, "tt_hex": ns.tt_hex}


def _resolve_function(fdoc: Optional[dict]) -> BoolFn:
    if fdoc is None:
        raise UsageError("a function is required (--n with --anf/--tt-hex, or --anf-file)")
    if "file" in fdoc:
        fdoc = _load_json(fdoc["file"])
    return BoolFn.from_json(fdoc)


def _check_threads():
    env = os.environ.get("MBQC_THREADS")
    if env is not None:
        try:
            if int(env) < 1:
                raise ValueError
        except ValueError:
            raise UsageError(f"MBQC_THREADS must be a positive integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="l2mbqc", description="Non-adaptive l2-MBQC compiler and verifier")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    fn = argparse.ArgumentParser(add_help=False)
    fn.add_argument("--n", type=int, help="arity")
    fn.add_argument("--anf", help='ANF expression, e.g. "x1*x2 + x3"')
    fn.add_argument("--tt-hex", dest="tt_hex", help="truth table as hex (bit i = f(i))")
    fn.add_argument("--anf-file", dest="anf_file", help='JSON file {"n":..,"anf"|"tt_hex":..}')
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compile", parents=[common, fn], help="compile a function into a scheme")
    c.add_argument("--method", choices=["general", "delta", "quadratic"], default="general")

    s = sub.add_parser("simulate", parents=[common, fn], help="state-vector run of a scheme")
    s.add_argument("--scheme", required=True, help="scheme JSON (GHZ or stabilizer)")
    s.add_argument("--target", help="target function JSON")
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--shots", type=int, default=0, help="also sample this many parities per input")
    s.add_argument("--seed", type=int, default=0)

    q = sub.add_parser("qcount", parents=[common, fn], help="GHZ qubit count")
    q.add_argument("--level", type=int, dest="K", help="phase class K (denominator 2^(K-1)); default n")
    mode = q.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exhaustive search (default)")
    mode.add_argument("--bounds", action="store_true", help="raw Walsh-support upper bound only")

    sub.add_parser("nq", parents=[common, fn], help="non-quadraticity and success bound")

    lv = sub.add_parser("level", parents=[common], help="Clifford level of a scheme")
    lv.add_argument("--scheme", required=True)

    qd = sub.add_parser("qudit-delta", parents=[common], help="qudit delta verification table")
    qd.add_argument("--d", type=int, required=True)
    qd.add_argument("--n", type=int, required=True)

    ad = sub.add_parser("adaptive", parents=[common], help="adaptive AND compositions")
    ad.add_argument("--kind", choices=["chain", "tree"], default="chain")
    ad.add_argument("--fan-in", dest="fan_in", type=int, default=4)
    ad.add_argument("--graph", help="graph JSON instead of a built-in construction")

    vp = sub.add_parser("verify-paper", parents=[common], help="run the acceptance checks")
    vp.add_argument("--only", help="comma-separated criterion ids")
    return p


def config_from_args(ns) -> JobConfig:
    flags = {k: v for k, v in vars(ns).items()
             if k not in ("cmd", "out", "pretty", "anf", "tt_hex", "anf_file")}
    func = _function_doc(ns) if hasattr(ns, "anf") else None
    if ns.cmd == "simulate" and getattr(ns, "tol", 1.0) <= 0:
        raise UsageError("--tol must be positive")
    if ns.cmd == "simulate" and ns.shots < 0:
        raise UsageError("--shots must be non-negative")
    if ns.cmd == "adaptive" and ns.graph is None and ns.fan_in < 2:
        raise UsageError("--fan-in must be at least 2")
    if ns.cmd == "verify-paper" and ns.only:
        try:
            flags["only"] = [int(t) for t in ns.only.split(",")]
        except ValueError:
            raise UsageError("--only takes comma-separated integers") from None
        if not all(1 <= c <= 10 for c in flags["only"]):
            raise UsageError("criterion ids run from 1 to 10")
    if ns.cmd == "compile" and ns.method == "delta":
        if ns.n is None:
            raise UsageError("--method delta needs --n")
        func = {"n": ns.n}
    return JobConfig(ns.cmd, func, flags, ns.out, ns.pretty)


# --- handlers -------------------------------------------------------------------

def _scheme_from_file(path):
    from .compiler import MeasurementScheme, StabilizerScheme
    d = _load_json(path)
    if "generators" in d:
        return StabilizerScheme.from_json(d)
    return MeasurementScheme.from_json(d)


def do_compile(cfg: JobConfig):
    from .compiler import compile_delta, compile_general, compile_quadratic
    method = cfg.flags["method"]
    if method == "delta":
        return compile_delta(cfg.function["n"]).to_json()
    f = _resolve_function(cfg.function)
    if method == "quadratic":
        return compile_quadratic(f).to_json()
    return compile_general(f).to_json()


def do_simulate(cfg: JobConfig):
    from .compiler import StabilizerScheme
    from .simulator import run, run_stabilizer, sample_parities
    from .boolfn import mask_to_str
    s = _scheme_from_file(cfg.flags["scheme"])
    target = None
    if cfg.flags.get("target"):
        target = BoolFn.from_json(_load_json(cfg.flags["target"]))
    elif cfg.function is not None:
        target = _resolve_function(cfg.function)
    tol = cfg.flags["tol"]
    if isinstance(s, StabilizerScheme):
        rep = run_stabilizer(s, target, tol, seed=cfg.flags["seed"])
    else:
        rep = run(s, target, tol)
    out = rep.to_json()
    shots = cfg.flags["shots"]
    if shots and not isinstance(s, StabilizerScheme):
        out["samples"] = {mask_to_str(i, s.n): int(sample_parities(s, i, shots, cfg.flags["seed"] + i).sum())
                          for i in range(1 << s.n)}
        out["shots"] = shots
    return out


def do_qcount(cfg: JobConfig):
    from .qcount import r_ghz_exact, walsh_support_bound
    f = _resolve_function(cfg.function)
    if cfg.flags.get("bounds"):
        return walsh_support_bound(f).to_json()
    return r_ghz_exact(f, cfg.flags.get("K")).to_json()


def do_nq(cfg: JobConfig):
    from .stabilizer import max_success_prob, nearest_quadratic, non_quadraticity
    f = _resolve_function(cfg.function)
    nq = non_quadraticity(f)
    p = max_success_prob(f)
    return {"nq": nq, "p_succ": f"{p.numerator}/{p.denominator}",
            "nearest": {"anf": to_anf(nearest_quadratic(f)).to_string()}}


def do_level(cfg: JobConfig):
    from .compiler import MeasurementScheme, clifford_level
    s = _scheme_from_file(cfg.flags["scheme"])
    if not isinstance(s, MeasurementScheme):
        return {"level": 2}
    return {"level": clifford_level(s)}


def do_qudit(cfg: JobConfig):
    from itertools import product
    from .quditext import delta_target, qudit_delta_scheme, qudit_run
    d, n = cfg.flags["d"], cfg.flags["n"]
    s = qudit_delta_scheme(n, d)
    rows = []
    for i in product(range(d), repeat=n):
        r = qudit_run(s, i)
        rows.append({"i": "".join(map(str, i)), "deterministic": r.deterministic,
                     "modulus": round(abs(r.expectation), 12), "o": r.o, "delta": r.delta,
                     "expected": delta_target(i)})
    return {"d": d, "n": n, "N": s.N, "all_correct": all(r["delta"] == r["expected"] for r in rows),
            "rows": rows}


def do_adaptive(cfg: JobConfig):
    from .adaptive import AdaptiveGraph, chain_and, output_function, tree_and, validate
    from .boolfn import and_n
    if cfg.flags.get("graph"):
        gr = AdaptiveGraph.from_json(_load_json(cfg.flags["graph"]))
    else:
        k = cfg.flags["fan_in"]
        gr = chain_and(k) if cfg.flags["kind"] == "chain" else tree_and(k)
    m = validate(gr)
    out = {"metrics": m.to_json(), "nodes": len(gr.nodes)}
    if gr.n_inputs <= 16:
        fn = output_function(gr)
        out["output"] = {"n": fn.n, "anf": to_anf(fn).to_string()}
        if not cfg.flags.get("graph"):
            out["computes_and"] = fn == and_n(gr.n_inputs)
    return out


def do_verify(cfg: JobConfig):
    from .acceptance import run_all
    results = run_all(cfg.flags.get("only"))
    doc = {"all_passed": all(r.passed for r in results),
           "criteria": [{k: v for k, v in r.to_json().items() if k != "elapsed_s"} for r in results]}
    doc["_lines"] = [r.line() for r in results]
    return doc


HANDLERS = {"compile": do_compile, "simulate": do_simulate, "qcount": do_qcount, "nq": do_nq,
            "level": do_level, "qudit-delta": do_qudit, "adaptive": do_adaptive,
            "verify-paper": do_verify}


def _pretty(doc) -> str:
    if "_lines" in doc:
        return "\n".join(doc["_lines"]) + "\n"
    if "rows" in doc:
        head = f"d={doc['d']} n={doc['n']} N={doc['N']}\n  i   det   |<M>|   o  delta\n"
        return head + "".join(f"  {r['i']:<3} {str(r['deterministic']):<5} {r['modulus']:.6f} {r['o']} {r['delta']}\n"
                              for r in doc["rows"])
    if "outputs" in doc:
        lines = [f"p_succ={doc['p_succ']} deterministic={doc['deterministic']}"]
        for o in doc["outputs"]:
            lines.append(f"  {o['i']}  <M>={o['expectation_re']:+.6f}{o['expectation_im']:+.6f}i  bit={o['bit']}  p={o['p']}")
        return "\n".join(lines) + "\n"
    return "".join(f"{k}: {json.dumps(v)}\n" for k, v in doc.items())


def _emit(doc, cfg: Optional[JobConfig]):
    pretty = cfg.pretty if cfg else False
    if not pretty and isinstance(doc, dict):
        doc = {k: v for k, v in doc.items() if k != "_lines"}
    text = _pretty(doc) if pretty else json.dumps(doc) + "\n"
    if cfg and cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        _check_threads()
        cfg = config_from_args(ns)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"l2mbqc: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc = HANDLERS[cfg.subcommand](cfg)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"l2mbqc: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, OSError, ArithmeticError, NonDeterministic) as e:
        # AnfParseError and JSONDecodeError are ValueErrors
        _emit({"error": f"{type(e).__name__}: {e}"}, JobConfig("error", out=cfg.out))
        return EXIT_DOMAIN
    _emit(doc, cfg)
    if cfg.subcommand == "verify-paper" and not doc["all_passed"]:
        return EXIT_DOMAIN
    return EXIT_OK
