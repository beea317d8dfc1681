"""Compare the compiled and the pure-Python lattice kernels.

    python benchmarks/bench_kernels.py [--n 8] [--pairs 20000]
"""

import argparse
import importlib
import time

from partlat.partition import random_partition
from partlat.rng import XorShift64Star
from partlat.zadori import build_config


def load(name):
    try:
        return importlib.import_module(f"partlat.{name}")
    except ImportError:
        return None


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(mod, n, pairs):
    rng = XorShift64Star(12345)
    xs = [random_partition(n, rng).ids for _ in range(pairs)]
    ys = [random_partition(n, rng).ids for _ in range(pairs)]
    tx = [(a, b) for a, b in zip(xs, ys)]
    gens = [(g.ids,) for g in build_config(7).quadruple]
    out = {}
    for name in ("meet", "join", "leq"):
        f = getattr(mod, name)
        out[name] = timed(lambda: [f(a, b) for a, b in zip(xs, ys)]) / pairs * 1e9
    f = mod.tuple_join
    out["tuple_join (t=2)"] = timed(lambda: [f(a, b) for a, b in zip(tx, tx[1:])]) / pairs * 1e9
    out["closure Part(7)"] = timed(lambda: mod.closure(gens, 10**6), repeat=1) * 1e9
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--pairs", type=int, default=20000)
    args = ap.parse_args()
    backends = {"cython": load("_kernels"), "python": load("_kernels_py")}
    results = {k: bench(m, args.n, args.pairs) for k, m in backends.items() if m is not None}
    if "cython" not in results:
        print("compiled kernel not built; only the fallback was timed")
    names = list(next(iter(results.values())))
    print(f"{'operation':<18}" + "".join(f"{k:>14}" for k in results) + "   speedup")
    for name in names:
        row = [results[k][name] for k in results]
        unit = "s" if name.startswith("closure") else "ns"
        cells = "".join(f"{v / 1e9:>13.3f}s" if unit == "s" else f"{v:>12.0f}ns" for v in row)
        speed = f"{row[1] / row[0]:8.1f}x" if len(row) == 2 else ""
        print(f"{name:<18}{cells}{speed}")


if __name__ == "__main__":
    main()
