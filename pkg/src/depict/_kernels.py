"""Integer-array inner loops with a numba path and a pure-numpy path.

Set ``DEPICT_NO_NUMBA=1`` (before import) to force the numpy path; it is
also used automatically when numba cannot be imported.  Both paths return
identical results; ``tests/test_kernels.py`` and ``benchmarks/bench_kernels.py``
run them side by side.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("DEPICT_NO_NUMBA", "").strip().lower() in ("", "0", "false", "no")

# subset enumeration is exponential; beyond this the recursive fallback is used
MAX_SUBSET_VARS = 22


# ---------------------------------------------------------------------------
# largest variable subset avoiding every leading-monomial support


def _max_independent_numpy(masks: np.ndarray, nvars: int) -> int:
    subsets = np.arange(1 << nvars, dtype=np.int64)
    ok = np.ones(subsets.shape, dtype=bool)
    for m in masks:
        ok &= (m & ~subsets) != 0
    if not ok.any():
        return -1
    sizes = np.zeros(subsets.shape, dtype=np.int64)
    for b in range(nvars):
        sizes += (subsets >> b) & 1
    return int(sizes[ok].max())


def _max_independent_py(masks: np.ndarray, nvars: int) -> int:
    best = -1
    masks = [int(m) for m in masks]

    def rec(i: int, chosen: int, size: int):
        nonlocal best
        if size + (nvars - i) <= best:
            return
        if i == nvars:
            best = size
            return
        with_i = chosen | (1 << i)
        if all(m & ~with_i for m in masks):
            rec(i + 1, with_i, size + 1)
        rec(i + 1, chosen, size)

    if all(m != 0 for m in masks):
        rec(0, 0, 0)
    return best


if HAVE_NUMBA:

    @njit(cache=True)
    def _max_independent_nb(masks, nvars):
        best = -1
        nm = masks.shape[0]
        for s in range(1 << nvars):
            good = True
            for j in range(nm):
                if (masks[j] & ~s) == 0:
                    good = False
                    break
            if good:
                c = 0
                t = s
                while t:
                    c += t & 1
                    t >>= 1
                if c > best:
                    best = c
        return best


def max_independent_size(masks, nvars: int) -> int:
    """Size of the largest subset ``U`` of ``range(nvars)`` such that no mask
    is contained in ``U``; -1 when some mask is 0 (unit ideal)."""
    masks = np.asarray(list(masks), dtype=np.int64)
    if masks.size == 0:
        return nvars
    if nvars > MAX_SUBSET_VARS:
        return _max_independent_py(masks, nvars)
    if USE_NUMBA:
        return int(_max_independent_nb(masks, nvars))
    return _max_independent_numpy(masks, nvars)


# ---------------------------------------------------------------------------
# lattice points of a box inside a cone


def _box_points_numpy(lo: np.ndarray, hi: np.ndarray, facets: np.ndarray) -> np.ndarray:
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(lo))
    if facets.size:
        grid = grid[(grid @ facets.T >= 0).all(axis=1)]
    return grid


if HAVE_NUMBA:

    @njit(cache=True)
    def _box_points_nb(lo, hi, facets):
        d = lo.shape[0]
        total = 1
        for i in range(d):
            total *= hi[i] - lo[i] + 1
        out = np.empty((total, d), dtype=np.int64)
        cur = lo.copy()
        n = 0
        nf = facets.shape[0]
        for _ in range(total):
            ok = True
            for f in range(nf):
                s = 0
                for i in range(d):
                    s += facets[f, i] * cur[i]
                if s < 0:
                    ok = False
                    break
            if ok:
                for i in range(d):
                    out[n, i] = cur[i]
                n += 1
            # odometer, last coordinate fastest (matches meshgrid "ij")
            k = d - 1
            while k >= 0:
                cur[k] += 1
                if cur[k] <= hi[k]:
                    break
                cur[k] = lo[k]
                k -= 1
        return out[:n]


def box_cone_points(lo, hi, facets) -> np.ndarray:
    """Integer points ``x`` with ``lo <= x <= hi`` and ``facets @ x >= 0``,
    in lexicographic order."""
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    facets = np.asarray(facets, dtype=np.int64).reshape(-1, lo.shape[0])
    if (hi < lo).any():
        return np.empty((0, lo.shape[0]), dtype=np.int64)
    if USE_NUMBA:
        return _box_points_nb(lo, hi, facets)
    return _box_points_numpy(lo, hi, facets)


# ---------------------------------------------------------------------------
# reducibility inside a cone


def _reducible_numpy(points: np.ndarray, facets: np.ndarray) -> np.ndarray:
    # values[i, f] = <facet f, point i>; x_i - x_j in cone iff values differ >= 0
    values = points @ facets.T
    diff = values[:, None, :] - values[None, :, :]
    inside = (diff >= 0).all(axis=2)
    nonzero = points.any(axis=1)
    inside &= nonzero[None, :]
    same = (points[:, None, :] == points[None, :, :]).all(axis=2)
    inside &= ~same
    return inside.any(axis=1)


if HAVE_NUMBA:

    @njit(cache=True)
    def _reducible_nb(points, facets):
        n, d = points.shape
        nf = facets.shape[0]
        values = np.zeros((n, nf), dtype=np.int64)
        for i in range(n):
            for f in range(nf):
                s = 0
                for k in range(d):
                    s += facets[f, k] * points[i, k]
                values[i, f] = s
        out = np.zeros(n, dtype=np.bool_)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                nz = False
                same = True
                for k in range(d):
                    if points[j, k] != 0:
                        nz = True
                    if points[j, k] != points[i, k]:
                        same = False
                if not nz or same:
                    continue
                ok = True
                for f in range(nf):
                    if values[i, f] < values[j, f]:
                        ok = False
                        break
                if ok:
                    out[i] = True
                    break
        return out


def reducible_mask(points, facets) -> np.ndarray:
    """``mask[i]`` is True when ``points[i] - points[j]`` lies in the cone
    ``facets @ x >= 0`` for some nonzero ``points[j] != points[i]``."""
    points = np.asarray(points, dtype=np.int64)
    facets = np.asarray(facets, dtype=np.int64).reshape(-1, points.shape[1] if points.ndim == 2 else 0)
    if points.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if USE_NUMBA:
        return _reducible_nb(points, facets)
    return _reducible_numpy(points, facets)
