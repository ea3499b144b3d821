"""Time the compiled and pure-Python kernel backends on the same inputs.

Usage: python benchmarks/bench_kernels.py [--sizes 100 200 400] [--repeat 3] [--out bench.csv]

Each row records one (kernel, size) cell with the best-of-``repeat`` time for
both backends, the speedup, and whether their outputs agree.
"""
import argparse
import csv
import random
import sys
import time

import numpy as np

from twspanner.kernels import get_backend
from twspanner.pointgen import random_points
from twspanner.spanners import delaunay, sorted_pairs


def best_time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def agree(a, b) -> bool:
    if isinstance(a, tuple):
        return all(agree(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.allclose(np.asarray(a, dtype=float), np.asarray(b, dtype=float), rtol=1e-12)
    if isinstance(a, float):
        return abs(a - b) <= 1e-12 * max(1.0, abs(a))
    return a == b


def cases(sizes, seed):
    for n in sizes:
        g = delaunay(random_points(2, n, seed))
        indptr, indices, weights = g.csr()
        coords = g.points.coords
        yield "dilation_scan", n, lambda k, a=(indptr, indices, weights, coords): k.dilation_scan(*a)
    for n in sizes:
        ps = random_points(2, max(20, n // 2), seed)
        pi, pj, pl = sorted_pairs(ps)
        yield "greedy_edges", len(ps), lambda k, a=(ps.coords, pi, pj, pl, 1.5): k.greedy_edges(*a)
    rng = random.Random(seed)
    for v in (10, 13, 16):
        masks = [0] * v
        for i in range(v):
            for j in range(i + 1, v):
                if rng.random() < 0.35:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        yield "tw_table", v, lambda k, a=(masks, v): k.tw_table(*a)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default=None, help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    try:
        compiled = get_backend("cython")
    except ImportError:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    python = get_backend("python")

    rows = []
    for kernel, n, call in cases(args.sizes, args.seed):
        tc, oc = best_time(lambda: call(compiled), args.repeat)
        tp, op = best_time(lambda: call(python), args.repeat)
        rows.append({"kernel": kernel, "n": n, "cython_s": f"{tc:.6f}", "python_s": f"{tp:.6f}",
                     "speedup": f"{tp / tc:.1f}" if tc > 0 else "inf", "agree": agree(oc, op)})
        print(f"{kernel:<14} n={n:<5} cython {tc:8.4f}s  python {tp:8.4f}s  x{rows[-1]['speedup']}", file=sys.stderr)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if args.out:
        fh.close()
    return 0 if all(r["agree"] for r in rows) else 2


if __name__ == "__main__":
    sys.exit(main())
