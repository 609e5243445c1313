"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from excalg.core import _fallback
from excalg.core.field import parse_field
from excalg.lie import suites

try:
    from excalg.core import _kernels
except ImportError:
    _kernels = None

P = 10007


def best(fn, repeat):
    ts = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t)
    return min(ts)


def cases():
    rng = np.random.default_rng(0)
    A = rng.integers(0, P, size=(200, 248), dtype=np.int64)
    yield "rref_modp 200x248", lambda m: m.rref_modp(A, P)
    B = rng.integers(0, 3, size=(400, 248), dtype=np.int64)
    yield "greedy_rows_modp 400x248", lambda m: m.greedy_rows_modp(B, P)
    L = suites.koechers(parse_field("q"))[1]
    n = L.n
    tr = rng.integers(0, n, size=(50_000, 3), dtype=np.int64)
    yield f"jacobi_scan dim {n}, 50000 triples", \
        lambda m: m.jacobi_scan(L.indptr, L.indices, L.data, n, tr, 0)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    print(f"{'kernel':<36} {'numpy':>10} {'cython':>10} {'speedup':>8}")
    for name, fn in cases():
        t0 = best(lambda: fn(_fallback), a.repeat)
        if _kernels is None:
            print(f"{name:<36} {t0:>10.4f} {'-':>10} {'-':>8}")
            continue
        t1 = best(lambda: fn(_kernels), a.repeat)
        print(f"{name:<36} {t0:>10.4f} {t1:>10.4f} {t0 / t1:>7.1f}x")


if __name__ == "__main__":
    main()
