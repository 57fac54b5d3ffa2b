"""Time the numba and numpy paths of the integer kernels side by side.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is run once first so numba compilation is not timed.
"""

import argparse
import time

import numpy as np

from depict import _kernels as K


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(rng):
    masks = rng.integers(1, 2**18, size=12, dtype=np.int64)
    lo = np.array([-3, -3, 0, 0])
    hi = np.array([6, 6, 8, 8])
    F = np.array([[1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 1, 1], [0, 0, 1, 0]], dtype=np.int64)
    pts = K._box_points_numpy(lo, hi, F)[:1500]
    return [
        ("independent set, 18 vars", lambda: K._max_independent_nb(masks, 18),
         lambda: K._max_independent_numpy(masks, 18)),
        ("box points, rank 4", lambda: K._box_points_nb(lo, hi, F), lambda: K._box_points_numpy(lo, hi, F)),
        (f"reducibility, {len(pts)} points", lambda: K._reducible_nb(pts, F), lambda: K._reducible_numpy(pts, F)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'numba (s)':>10s} {'numpy (s)':>10s} {'ratio':>7s}")
    for name, nb, npy in cases(rng):
        a, b = nb(), npy()
        assert np.array_equal(np.asarray(a), np.asarray(b)), name
        tn = best_of(nb, args.repeat)
        tp = best_of(npy, args.repeat)
        print(f"{name:32s} {tn:10.4f} {tp:10.4f} {tp / tn:7.1f}x")


if __name__ == "__main__":
    main()
