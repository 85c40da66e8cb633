"""Compare the compiled subset kernel against the pure-Python recurrence.

    python3 benchmarks/bench_kernels.py [--max-n 14] [--repeat 3]

Both backends build the full table of matching-polynomial coefficients over
every vertex subset of a random weighted graph; the tables are checked equal.
"""

from __future__ import annotations

import argparse
import time

from matchroots import kernels
from matchroots.matchpoly import _scaling
from matchroots.random_graphs import random_graph


def integer_inputs(n: int, seed: int, weighted: bool) -> tuple[list[int], list[list[int]]]:
    g = random_graph(n, "1/2", seed, weighted=weighted)
    d = _scaling(g)
    idx = {v: k for k, v in enumerate(g.vertices)}
    neg_r = [int(-d * g.offset(v)) for v in g.vertices]
    lam = [[0] * n for _ in range(n)]
    for u, v, w in g.edges():
        lam[idx[u]][idx[v]] = lam[idx[v]][idx[u]] = int(d * d * w)
    return neg_r, lam


def best_of(repeat: int, fn) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=6)
    ap.add_argument("--max-n", type=int, default=14)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    if kernels.BACKEND != "compiled":
        raise SystemExit("compiled kernel unavailable; build with `pip install -e . --no-build-isolation`")

    print(f"{'kind':>8} {'n':>3} {'used':>9} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for weighted in (False, True):
        kind = "weighted" if weighted else "unit"
        for n in range(args.min_n, args.max_n + 1):
            neg_r, lam = integer_inputs(n, args.seed, weighted)
            t_py, a = best_of(args.repeat, lambda: kernels.full_table(neg_r, lam, "python"))
            t_c, b = best_of(args.repeat, lambda: kernels.full_table(neg_r, lam, "compiled"))
            if a != b:
                raise SystemExit(f"backend mismatch at n={n} ({kind})")
            used = kernels.SubsetTable(neg_r, lam, "compiled").backend
            print(f"{kind:>8} {n:>3} {used:>9} {t_py:>10.4f} {t_c:>11.4f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
