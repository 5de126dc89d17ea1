"""Space-time cost of computing AND_n: flat GHZ scheme vs. chained and tree AND boxes.

    python3 scripts/adaptive_tradeoff.py --max-n 12
"""
import argparse
from dataclasses import dataclass

from l2mbqc.adaptive import chain_and, tree_and, validate


@dataclass
class TradeoffConfig:
    max_n: int = 12


def main(cfg: TradeoffConfig):
    print(f"{'n':>3}{'flat N':>9} | {'chain d':>8}{'w':>4}{'vol':>5} | {'tree d':>7}{'w':>4}{'vol':>5}")
    for n in range(2, cfg.max_n + 1):
        c, t = validate(chain_and(n)), validate(tree_and(n))
        print(f"{n:>3}{2 ** n - 1:>9} | {c.depth:>8}{c.width:>4}{c.volume:>5} | {t.depth:>7}{t.width:>4}{t.volume:>5}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=12)
    main(TradeoffConfig(ap.parse_args().max_n))
