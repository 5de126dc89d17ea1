"""Exact GHZ qubit counts against the raw Walsh support for named functions.

    python3 scripts/qubit_count_table.py [--max-n 3] [--symmetric 10]
"""
import argparse
from dataclasses import dataclass

from l2mbqc.boolfn import and_n, delta, elementary_symmetric, from_anf
from l2mbqc.qcount import (r_ghz_exact, r_ghz_upper_symmetric, symmetric_count_formula,
                           walsh_support_bound)
from l2mbqc.stabilizer import q_matrix


@dataclass
class TableConfig:
    max_n: int = 3
    symmetric_n: int = 10


def named_functions(max_n):
    for n in range(2, max_n + 1):
        yield f"delta_{n}", delta(n)
        yield f"AND_{n}", and_n(n)
        for k in range(2, n):
            yield f"Sigma^{n}_{k}", elementary_symmetric(n, k)
    if max_n >= 3:
        yield "x1*x2 + x3", from_anf(3, "x1*x2 + x3")
    if max_n >= 4:
        yield "x1*x2 + x3*x4", from_anf(4, "x1*x2 + x3*x4")


def main(cfg: TableConfig):
    print(f"{'function':<16}{'walsh':>7}{'exact':>7}  note")
    for name, f in named_functions(cfg.max_n):
        exact = r_ghz_exact(f).count
        note = ""
        try:
            note = f"rk(Q)+1 = {q_matrix(f ^ f(0)).rank + 1}"
        except ValueError:
            pass
        print(f"{name:<16}{walsh_support_bound(f).count:>7}{exact:>7}  {note}")
    print()
    print("symmetric upper bounds (constructed count / binomial formula)")
    for n in range(2, cfg.symmetric_n + 1):
        row = [f"{r_ghz_upper_symmetric(n, k).count}/{symmetric_count_formula(n, k)}"
               for k in range(1, n + 1)]
        print(f"n={n:<3}" + " ".join(f"{c:>9}" for c in row))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3, help="largest arity for exact search (<= 4)")
    ap.add_argument("--symmetric", type=int, default=10)
    a = ap.parse_args()
    main(TableConfig(a.max_n, a.symmetric))
