"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py --repeat 3
"""

import argparse
import time

import numpy as np

from catgraph import _accel, kernels
from catgraph.graph import GeneratingVector, periodic_family, stride_vector
from catgraph.symplectic import build_M

CASES = [
    ("period n=1 N=1009", GeneratingVector((1,)).as_array(), 1009),
    ("period n=16 stride 3 N=97", stride_vector(16, 3).as_array(), 97),
    ("period n=7 family N=31", periodic_family(7).as_array(), 31),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--cutoff", type=int, default=10**6)
    args = ap.parse_args(argv)
    if not _accel.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    # warm the JIT cache so compile time is not counted
    kernels.period_scan_numba(np.array([1], dtype=np.int64), 2, 10)
    kernels.orbit_scan_numba(np.array([1, 0], dtype=np.int64), np.eye(2, dtype=np.int64), 2, 10)

    print(f"{'case':34s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speedup':>8s}  T")
    for name, row, N in CASES:
        row = np.asarray(row, dtype=np.int64) % N
        tn, a = best_of(lambda: kernels.period_scan_numba(row, N, args.cutoff), args.repeat)
        tp, b = best_of(lambda: kernels.period_scan_numpy(row, N, args.cutoff), args.repeat)
        assert a == b
        print(f"{name:34s} {tn:10.4f} {tp:10.4f} {tp / tn:8.1f}  {a}")

    M = build_M(stride_vector(6, 2)).matrix.astype(np.int64)
    N = 1021
    M %= N
    x0 = np.zeros(12, dtype=np.int64)
    x0[0] = 1
    tn, a = best_of(lambda: kernels.orbit_scan_numba(x0, M, N, args.cutoff), args.repeat)
    tp, b = best_of(lambda: kernels.orbit_scan_numpy(x0, M, N, args.cutoff), args.repeat)
    assert a == b
    print(f"{'orbit n=6 stride 2 N=1021':34s} {tn:10.4f} {tp:10.4f} {tp / tn:8.1f}  {a}")


if __name__ == "__main__":
    main()
