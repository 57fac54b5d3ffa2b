"""Affine semigroups, their cones, saturation, and toric presentations.

All linear algebra is exact (Python integers and ``fractions.Fraction``);
the two enumeration loops of the Hilbert-basis computation run in
:mod:`depict._kernels`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np

from . import _kernels
from .affine import AffineDomain, preimage
from .poly import QQ, CoefficientField, Polynomial, VarContext

MAX_RANK = 4


class RankBoundError(ValueError):
    pass


class NotPointedError(ValueError):
    pass


Vector = tuple[int, ...]


def _primitive(v: Sequence) -> Vector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _rank(rows: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def _kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Integer basis of ``{v : rows @ v = 0}``."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        M[rank] = [x / p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -M[r][fcol]
        basis.append(_primitive(v))
    return basis


def lattice_basis(gens: Sequence[Vector]) -> list[Vector]:
    """Row-echelon integer basis of the group generated by ``gens``."""
    rows = [list(g) for g in gens]
    d = len(rows[0])
    basis = []
    r0 = 0
    for c in range(d):
        # Euclid down column c among rows r0..
        while True:
            nz = [i for i in range(r0, len(rows)) if rows[i][c] != 0]
            if len(nz) <= 1:
                break
            i_min = min(nz, key=lambda i: abs(rows[i][c]))
            for i in nz:
                if i != i_min:
                    q = rows[i][c] // rows[i_min][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[i_min])]
        nz = [i for i in range(r0, len(rows)) if rows[i][c] != 0]
        if not nz:
            continue
        i = nz[0]
        rows[r0], rows[i] = rows[i], rows[r0]
        if rows[r0][c] < 0:
            rows[r0] = [-a for a in rows[r0]]
        basis.append(tuple(rows[r0]))
        r0 += 1
    return basis


def lattice_coordinates(v: Sequence[int], basis: Sequence[Vector]) -> Vector | None:
    """Integer ``c`` with ``c @ basis == v``, or None if ``v`` is not in the lattice."""
    rem = list(v)
    coords = []
    for b in basis:
        pc = next(i for i, x in enumerate(b) if x != 0)
        if rem[pc] % b[pc]:
            return None
        q = rem[pc] // b[pc]
        coords.append(q)
        rem = [a - q * x for a, x in zip(rem, b)]
    if any(rem):
        return None
    return tuple(coords)


# ---------------------------------------------------------------------------
# double description


def double_description(constraints: Sequence[Vector]) -> list[Vector]:
    """Extreme rays of ``{a : c @ a >= 0 for c in constraints}``, assuming the
    constraints span the space (so that cone is pointed)."""
    d = len(constraints[0])
    chosen: list[int] = []
    for i, c in enumerate(constraints):
        if _rank([constraints[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
        if len(chosen) == d:
            break
    if len(chosen) < d:
        raise ValueError("constraints do not span the space")
    inv = _inverse([constraints[i] for i in chosen])
    # columns of the inverse are the initial rays
    rays = [_primitive([inv[r][c] for r in range(d)]) for c in range(d)]
    processed = list(chosen)

    def tight(ray: Vector) -> frozenset[int]:
        return frozenset(i for i in processed if sum(a * b for a, b in zip(constraints[i], ray)) == 0)

    zsets = [tight(r) for r in rays]
    for i, c in enumerate(constraints):
        if i in chosen:
            continue
        vals = [sum(a * b for a, b in zip(c, r)) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos + zero]
        for p in pos:
            for n in neg:
                common = zsets[p] & zsets[n]
                if len(common) < d - 2:
                    continue
                if any(k not in (p, n) and common <= zsets[k] for k in range(len(rays))):
                    continue
                r = tuple(vals[p] * b - vals[n] * a for a, b in zip(rays[p], rays[n]))
                new_rays.append(_primitive(r))
        processed.append(i)
        rays = sorted(set(new_rays))
        zsets = [tight(r) for r in rays]
    return sorted(set(rays))


# ---------------------------------------------------------------------------
# semigroups and cones


class RationalCone:
    """``{x : facets @ x >= 0, equations @ x == 0}`` with primitive integer rows."""

    def __init__(self, facets: Sequence[Vector], equations: Sequence[Vector] = ()):
        self.facets = tuple(sorted(tuple(f) for f in facets))
        self.equations = tuple(tuple(e) for e in equations)

    def contains(self, v: Sequence[int]) -> bool:
        return (all(sum(a * b for a, b in zip(f, v)) >= 0 for f in self.facets)
                and all(sum(a * b for a, b in zip(e, v)) == 0 for e in self.equations))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalCone) and self.facets == other.facets

    def __repr__(self) -> str:
        return f"RationalCone(facets={list(self.facets)})"


class AffineSemigroup:
    """The semigroup generated by nonzero integer vectors ``gens`` in ``Z^rank``."""

    def __init__(self, gens: Sequence[Sequence[int]]):
        gens = [tuple(int(x) for x in g) for g in gens]
        if not gens:
            raise ValueError("semigroup needs at least one generator")
        d = len(gens[0])
        if d == 0 or any(len(g) != d for g in gens):
            raise ValueError("generators must be nonempty vectors of one length")
        if any(not any(g) for g in gens):
            raise ValueError("zero generator")
        self.rank = d
        self.gens = tuple(gens)

    def __repr__(self) -> str:
        return f"AffineSemigroup({[list(g) for g in self.gens]})"

    def _check_rank(self):
        if self.rank > MAX_RANK:
            raise RankBoundError(f"rank {self.rank} exceeds supported bound {MAX_RANK}")

    @cached_property
    def group_basis(self) -> list[Vector]:
        return lattice_basis(self.gens)

    @property
    def group_rank(self) -> int:
        return len(self.group_basis)

    @cached_property
    def _lattice_gens(self) -> list[Vector]:
        return [lattice_coordinates(g, self.group_basis) for g in self.gens]

    @cached_property
    def _lattice_facets(self) -> list[Vector]:
        self._check_rank()
        lg = self._lattice_gens
        r = self.group_rank
        if r == 1:
            signs = {1 if g[0] > 0 else -1 for g in lg}
            # both signs: the cone is a line and has no facets
            return [(signs.pop(),)] if len(signs) == 1 else []
        return double_description(lg)

    def is_pointed(self) -> bool:
        return _rank(self._lattice_facets) == self.group_rank

    def _to_ambient(self, c: Sequence[int]) -> Vector:
        out = [0] * self.rank
        for k, b in zip(c, self.group_basis):
            for i, x in enumerate(b):
                out[i] += k * x
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        """Membership in the semigroup itself (not its saturation)."""
        if not any(v):
            return True
        c = lattice_coordinates(v, self.group_basis)
        if c is None:
            return False
        if not self.is_pointed():
            raise NotPointedError("semigroup membership needs a pointed cone")
        F = self._lattice_facets
        lg = self._lattice_gens
        memo: dict[Vector, bool] = {}

        def rec(x: Vector) -> bool:
            if not any(x):
                return True
            if x in memo:
                return memo[x]
            memo[x] = False
            for g in lg:
                y = tuple(a - b for a, b in zip(x, g))
                if all(sum(f_ * y_ for f_, y_ in zip(f, y)) >= 0 for f in F) and rec(y):
                    memo[x] = True
                    break
            return memo[x]

        if not all(sum(f_ * x_ for f_, x_ in zip(f, c)) >= 0 for f in F):
            return False
        return rec(c)


def cone_facets(A: AffineSemigroup) -> RationalCone:
    """Facet description of the cone spanned by ``A.gens`` in ``Q^rank``."""
    A._check_rank()
    B = A.group_basis
    lattice_f = A._lattice_facets
    if A.group_rank == A.rank:
        # B is square: a = B^-1 a'
        inv = _inverse(B)
        facets = [_primitive([sum(inv[i][k] * f[k] for k in range(len(f))) for i in range(A.rank)])
                  for f in lattice_f]
        return RationalCone(facets)
    # least-norm lift: a = B^T (B B^T)^-1 a'
    BBt = [[sum(x * y for x, y in zip(bi, bj)) for bj in B] for bi in B]
    inv = _inverse(BBt)
    facets = []
    for f in lattice_f:
        w = [sum(inv[i][k] * f[k] for k in range(len(f))) for i in range(len(B))]
        a = [sum(w[i] * B[i][j] for i in range(len(B))) for j in range(A.rank)]
        facets.append(_primitive(a))
    return RationalCone(facets, _kernel_basis(B, A.rank))


def hilbert_basis(A: AffineSemigroup) -> list[Vector]:
    """Hilbert basis of ``cone(A) ∩ group(A)``, in decreasing lexicographic order."""
    A._check_rank()
    if not A.is_pointed():
        raise NotPointedError("Hilbert basis is only defined here for pointed cones")
    lg = np.array(A._lattice_gens, dtype=np.int64)
    F = np.array(A._lattice_facets, dtype=np.int64)
    lo = np.minimum(lg, 0).sum(axis=0)
    hi = np.maximum(lg, 0).sum(axis=0)
    pts = _kernels.box_cone_points(lo, hi, F)
    pts = pts[pts.any(axis=1)]
    red = _kernels.reducible_mask(pts, F)
    basis = [A._to_ambient(tuple(int(x) for x in p)) for p in pts[~red]]
    return sorted(basis, reverse=True)


def saturate_semigroup(A: AffineSemigroup) -> AffineSemigroup:
    return AffineSemigroup(hilbert_basis(A))


def is_normal_semigroup(A: AffineSemigroup) -> bool:
    return all(A.contains(h) for h in hilbert_basis(A))


# ---------------------------------------------------------------------------
# toric presentations


def coordinate_ring(rank: int, names: Sequence[str] | None = None, laurent: bool = False,
                    field: CoefficientField = QQ) -> AffineDomain:
    """``k[x_1..x_d]``, or the Laurent ring presented with inverse variables."""
    if names is None:
        names = ("x", "y", "z", "u")[:rank] if rank <= 4 else tuple(f"x{i + 1}" for i in range(rank))
    names = tuple(names)
    if len(names) != rank:
        raise ValueError("need one coordinate name per lattice direction")
    if not laurent:
        return AffineDomain(VarContext(names, field), (), name="coords")
    ctx0 = VarContext(names, field)
    inv = []
    for n in names:
        inv.append(ctx0.fresh(f"{n}_inv", inv))
    ctx = VarContext(names + tuple(inv), field)
    rel = [ctx.var(a) * ctx.var(b) - 1 for a, b in zip(names, inv)]
    return AffineDomain(ctx, rel, primality="asserted", name="coords")


def monomial_in_coords(v: Sequence[int], coords: AffineDomain) -> Polynomial:
    d = len(v)
    ctx = coords.ctx
    e = [0] * ctx.nvars
    for i, k in enumerate(v):
        if k >= 0:
            e[i] += k
        else:
            if ctx.nvars < 2 * d:
                raise ValueError("negative exponent needs a Laurent coordinate ring")
            e[d + i] += -k
    return Polynomial.monomial(ctx, e)


def toric_presentation(A: AffineSemigroup, names: Sequence[str] | None = None,
                       coords: AffineDomain | None = None, name: str = "") -> AffineDomain:
    """``k[t_1..t_s]/ker`` for the monomial map ``t_i -> x^{gens_i}``, embedded
    in ``coords`` (built when not supplied)."""
    A._check_rank()
    laurent = any(x < 0 for g in A.gens for x in g)
    if coords is None:
        coords = coordinate_ring(A.rank, laurent=laurent)
    if names is None:
        names = tuple(f"t{i + 1}" for i in range(len(A.gens)))
    ctx = VarContext(tuple(names), coords.ctx.field)
    images = [monomial_in_coords(g, coords) for g in A.gens]
    ker = preimage(coords.defining, images, ctx)
    for g in ker.groebner().elements:
        if len(g) != 2:
            raise AssertionError(f"toric kernel element {g} is not a binomial")
    return AffineDomain(ctx, ker.generators, primality="verified-toric", coords=coords,
                        embedding=images, semigroup=A, name=name)


def normalization(S: AffineDomain, name: str = "") -> AffineDomain | None:
    """The normalization of ``S`` when it is computable here: ``S`` itself
    for polynomial rings and normal semigroup rings, the saturated semigroup
    ring for other semigroup rings, and None otherwise."""
    if S.is_polynomial_ring():
        return S
    A = S.semigroup
    if A is None:
        return None
    if is_normal_semigroup(A):
        return S
    B = saturate_semigroup(A)
    coord_names = S.coords.ctx.names
    names = []
    for j, h in enumerate(B.gens):
        unit = [i for i, x in enumerate(h) if x]
        if len(unit) == 1 and h[unit[0]] == 1 and coord_names[unit[0]] not in names:
            names.append(coord_names[unit[0]])
        else:
            names.append(f"t{j + 1}")
    if len(set(names)) != len(names):
        names = None
    return toric_presentation(B, names=names, coords=S.coords, name=name or f"{S.name}_bar")
