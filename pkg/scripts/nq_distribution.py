"""Distribution of non-quadraticity over all (n <= 4) or sampled (n = 5, 6) functions.

    python3 scripts/nq_distribution.py --n 4
    python3 scripts/nq_distribution.py --n 5 --samples 200 --seed 1
"""
import argparse
from collections import Counter
from dataclasses import dataclass

import numpy as np

from l2mbqc.boolfn import BoolFn
from l2mbqc.stabilizer import non_quadraticity, success_prob_from_nq


@dataclass
class NQConfig:
    n: int = 3
    samples: int = 0       # 0 means exhaustive
    seed: int = 0


def functions(cfg: NQConfig):
    size = 1 << cfg.n
    if cfg.samples == 0:
        if cfg.n > 4:
            raise SystemExit("exhaustive mode only up to n = 4; pass --samples")
        for v in range(1 << size):
            yield BoolFn.from_int(cfg.n, v)
        return
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.samples):
        yield BoolFn(cfg.n, rng.integers(0, 2, size))


def main(cfg: NQConfig):
    hist = Counter(non_quadraticity(f) for f in functions(cfg))
    total = sum(hist.values())
    print(f"n={cfg.n}  functions={total}  {'exhaustive' if not cfg.samples else f'seed={cfg.seed}'}")
    print(f"{'NQ':>4}{'count':>10}{'fraction':>10}  best P_succ")
    for nq in sorted(hist):
        print(f"{nq:>4}{hist[nq]:>10}{hist[nq] / total:>10.4f}  {success_prob_from_nq(nq, cfg.n)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--samples", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    main(NQConfig(a.n, a.samples, a.seed))
