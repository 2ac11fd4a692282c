"""Compare the numba and numpy kernel paths.

    python benchmarks/bench_kernels.py [--repeat N]

The first numba call is made before timing so compilation is excluded.
"""

import argparse
import time

import numpy as np

from collabshare import _kernels

SECRECY_CASES = [
    # (p, t, partial xs, partial ys)
    (31, 4, [1, 2, 3], [5, 9, 17]),
    (101, 3, [1, 2], [40, 77]),
    (13, 6, [1, 2, 3, 4], [1, 2, 3, 4]),
]
GRID_CASES = [(1009, 50, 8), (4093, 200, 12)]


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy path can run")
        return

    _kernels.secrecy_counts([1], [1], 5, 2, backend="numba")
    _kernels.eval_grid([[1, 2]], [0, 1], 5, backend="numba")

    print(f"{'kernel':<34}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for p, t, xs, ys in SECRECY_CASES:
        tn, a = timed(lambda: _kernels.secrecy_counts(xs, ys, p, t, backend="numba"), args.repeat)
        tp, b = timed(lambda: _kernels.secrecy_counts(xs, ys, p, t, backend="numpy"), args.repeat)
        assert np.array_equal(a, b)
        print(f"{f'secrecy p={p} t={t} ({p**t:,} polys)':<34}{tn:>12.4f}{tp:>12.4f}{tp / tn:>9.1f}x")

    rng = np.random.default_rng(0)
    for p, rows, width in GRID_CASES:
        coeffs = rng.integers(0, p, size=(rows, width)).tolist()
        xs = range(p)
        tn, a = timed(lambda: _kernels.eval_grid(coeffs, xs, p, backend="numba"), args.repeat)
        tp, b = timed(lambda: _kernels.eval_grid(coeffs, xs, p, backend="numpy"), args.repeat)
        assert np.array_equal(a, b)
        print(f"{f'eval_grid p={p} {rows}x{width}':<34}{tn:>12.4f}{tp:>12.4f}{tp / tn:>9.1f}x")


if __name__ == "__main__":
    main()
