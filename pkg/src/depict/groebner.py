"""Buchberger's algorithm and the ideal operations built on it.

Everything here is a pure function of immutable polynomials, except the
per-order basis memo on :class:`IdealHandle` (write-once, idempotent fill).
Internally the engine works on ``{monomial: coefficient}`` dicts keyed by the
flat integer keys of :class:`~depict.poly.MonomialOrder`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import _kernels
from .poly import (
    GREVLEX,
    ContextMismatchError,
    MonomialOrder,
    Polynomial,
    VarContext,
    block_order,
    mono_divides,
    mono_lcm,
)


class UnitIdealError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dict-level helpers


def _lead(d: dict, key) -> tuple:
    m = max(d, key=key)
    return m, d[m]


def _reduce_dict(f: dict, basis: Sequence[tuple[tuple, object, dict]], key, mod: int | None) -> dict:
    """Remainder of ``f`` modulo ``basis`` (triples ``(lm, lc, terms)``)."""
    p = dict(f)
    rem: dict = {}
    heap = [tuple(-v for v in key(m)) + (m,) for m in p]
    heapq.heapify(heap)
    while heap:
        item = heapq.heappop(heap)
        m = item[-1]
        c = p.get(m)
        if c is None:
            continue
        # duplicates in heap: skip later copies
        del p[m]
        for lm, lc, g in basis:
            if all(a <= b for a, b in zip(lm, m)):
                q = tuple(b - a for a, b in zip(lm, m))
                factor = c / lc if mod is None else c * pow(lc, -1, mod) % mod
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = p.get(t)
                    nv = -factor * gc if v is None else v - factor * gc
                    if mod is not None:
                        nv %= mod
                    if nv:
                        if v is None:
                            heapq.heappush(heap, tuple(-x for x in key(t)) + (t,))
                        p[t] = nv
                    elif v is not None:
                        del p[t]
                break
        else:
            rem[m] = c
    return rem


def _monic(d: dict, key, mod):
    m, c = _lead(d, key)
    if mod is None:
        return {k: v / c for k, v in d.items()}
    inv = pow(c, -1, mod)
    return {k: v * inv % mod for k, v in d.items()}


def _spoly(f: tuple, g: tuple, mod) -> dict:
    (lf, _, df), (lg, _, dg) = f, g
    L = mono_lcm(lf, lg)
    a = tuple(x - y for x, y in zip(L, lf))
    b = tuple(x - y for x, y in zip(L, lg))
    out: dict = {}
    # both inputs are monic
    for m, c in df.items():
        t = tuple(x + y for x, y in zip(m, a))
        out[t] = out.get(t, 0) + c
    for m, c in dg.items():
        t = tuple(x + y for x, y in zip(m, b))
        out[t] = out.get(t, 0) - c
    if mod is not None:
        out = {k: v % mod for k, v in out.items()}
    return {k: v for k, v in out.items() if v}


def _buchberger(gens: list[dict], order: MonomialOrder, mod: int | None) -> list[dict]:
    """Reduced Groebner basis (monic dicts, sorted by leading monomial, largest first)."""
    key = order.key
    polys: list[tuple] = []  # (lm, lc, dict) all monic
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def lcm_of(i, j):
        return mono_lcm(polys[i][0], polys[j][0])

    def disjoint(a, b):
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    def update(h: int):
        nonlocal G, B
        lh = polys[h][0]
        C = list(G)
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            l1 = mono_lcm(lh, polys[g1][0])
            if disjoint(lh, polys[g1][0]):
                D.append(g1)
                continue
            redundant = False
            for g2 in C + D:
                if mono_divides(mono_lcm(lh, polys[g2][0]), l1):
                    redundant = True
                    break
            if not redundant:
                D.append(g1)
        E = [(g, h) for g in D if not disjoint(lh, polys[g][0])]
        newB = []
        for (g1, g2) in B:
            L = lcm_of(g1, g2)
            if (mono_divides(lh, L) and mono_lcm(polys[g1][0], lh) != L
                    and mono_lcm(lh, polys[g2][0]) != L):
                continue
            newB.append((g1, g2))
        B = newB + E
        G = [g for g in G if not mono_divides(lh, polys[g][0])] + [h]

    def add(d: dict):
        d = _monic(d, key, mod)
        m, c = _lead(d, key)
        polys.append((m, c, d))
        update(len(polys) - 1)

    # inter-reduce the input a little: drop zeros, process smallest first
    work = [g for g in gens if g]
    work.sort(key=lambda d: key(_lead(d, key)[0]))
    for g in work:
        basis = [polys[i] for i in G]
        r = _reduce_dict(g, basis, key, mod) if basis else g
        if r:
            add(r)

    while B:
        # normal strategy: smallest lcm first; index tie-break for determinism
        best = min(range(len(B)), key=lambda t: (key(lcm_of(*B[t])), B[t]))
        i, j = B.pop(best)
        s = _spoly(polys[i], polys[j], mod)
        if not s:
            continue
        r = _reduce_dict(s, [polys[g] for g in G], key, mod)
        if r:
            add(r)

    # minimalize then inter-reduce
    lead = [polys[g] for g in G]
    lead.sort(key=lambda t: key(t[0]))
    minimal = []
    for t in lead:
        if not any(mono_divides(u[0], t[0]) for u in minimal):
            minimal = [u for u in minimal if not mono_divides(t[0], u[0])]
            minimal.append(t)
    reduced = []
    for t in minimal:
        others = [u for u in minimal if u is not t]
        r = _reduce_dict(t[2], others, key, mod) if others else t[2]
        reduced.append(_monic(r, key, mod))
    reduced.sort(key=lambda d: key(_lead(d, key)[0]), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# public types


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Polynomial, ...]
    order: MonomialOrder

    @property
    def ctx(self) -> VarContext:
        return self.elements[0].ctx

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.elements)

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def reduced_groebner(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if gens:
        ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise ContextMismatchError("generators live in different contexts")
    else:
        return GroebnerBasis((), order)
    mod = ctx.field.modulus
    raw = _buchberger([g.as_dict() for g in gens], order, mod)
    return GroebnerBasis(tuple(Polynomial._raw(ctx, d, order) for d in raw), order)


def _basis_triples(B: GroebnerBasis) -> list[tuple]:
    out = []
    for g in B.elements:
        out.append((g.leading_monomial(), g.leading_coefficient(), g._dict))
    return out


def normal_form(f: Polynomial, B: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` on division by ``B``; no term is divisible by a
    leading term of ``B``."""
    if B.elements and f.ctx != B.ctx:
        raise ContextMismatchError("polynomial and basis live in different contexts")
    if f.is_zero() or not B.elements:
        return f.with_order(B.order)
    r = _reduce_dict(f._dict, _basis_triples(B), B.order.key, f.ctx.field.modulus)
    return Polynomial._raw(f.ctx, r, B.order)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    f, g = f.with_order(order).monic(), g.with_order(order).monic()
    tf = (f.leading_monomial(), f.leading_coefficient(), f._dict)
    tg = (g.leading_monomial(), g.leading_coefficient(), g._dict)
    return Polynomial._raw(f.ctx, _spoly(tf, tg, f.ctx.field.modulus), order)


def is_groebner(B: GroebnerBasis) -> bool:
    """Every S-polynomial of ``B`` reduces to zero."""
    els = B.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if not normal_form(s_polynomial(els[i], els[j], B.order), B).is_zero():
                return False
    return True


def is_reduced(B: GroebnerBasis) -> bool:
    lms = B.leading_monomials()
    for i, g in enumerate(B.elements):
        if g.leading_coefficient() != 1:
            return False
        for m, _ in g.terms:
            for j, lm in enumerate(lms):
                if j != i and mono_divides(lm, m):
                    return False
    return True


class IdealHandle:
    """Generators plus a write-once memo of reduced bases per order."""

    __slots__ = ("ctx", "generators", "_cache")

    def __init__(self, generators: Iterable[Polynomial], ctx: VarContext | None = None):
        gens = tuple(g for g in generators if not g.is_zero())
        if ctx is None:
            if not gens:
                raise ValueError("zero ideal needs an explicit context")
            ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise ContextMismatchError("generators live in different contexts")
        self.ctx = ctx
        self.generators = gens
        self._cache: dict[MonomialOrder, GroebnerBasis] = {}

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        B = self._cache.get(order)
        if B is None:
            B = reduced_groebner(self.generators, order)
            self._cache.setdefault(order, B)
        return B

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.groebner()).is_zero()

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def contains_ideal(self, other: "IdealHandle") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealHandle):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        return self.groebner().elements == other.groebner().elements

    def __hash__(self):
        return hash((self.ctx, self.groebner().elements))

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        return IdealHandle(self.generators + other.generators, self.ctx)

    def __repr__(self) -> str:
        return f"IdealHandle([{', '.join(map(str, self.generators))}])"

    def to_context(self, ctx: VarContext) -> "IdealHandle":
        return IdealHandle([g.to_context(ctx) for g in self.generators], ctx)

    def reduced_generators(self) -> list[str]:
        """Canonical string form (reduced grevlex basis)."""
        return [str(g) for g in self.groebner().elements]


def ideal(gens: Iterable[Polynomial], ctx: VarContext | None = None) -> IdealHandle:
    return IdealHandle(gens, ctx)


def ideal_member(f: Polynomial, I: IdealHandle) -> bool:
    if f.ctx != I.ctx:
        raise ContextMismatchError("polynomial and ideal live in different contexts")
    return I.contains(f)


# ---------------------------------------------------------------------------
# elimination and friends


def eliminate(I: IdealHandle, drop: Iterable[str]) -> IdealHandle:
    """``I`` intersected with the subring on the remaining variables (same context)."""
    drop = list(dict.fromkeys(drop))
    ctx = I.ctx
    for v in drop:
        if v not in ctx.names:
            raise KeyError(f"variable {v!r} not in context")
    if not drop:
        return IdealHandle(I.generators, ctx)
    keep = [v for v in ctx.names if v not in drop]
    if not keep:
        return IdealHandle([ctx.one()] if I.is_unit() else [], ctx)
    work = VarContext(tuple(drop) + tuple(keep), ctx.field)
    order = block_order(len(drop))
    B = reduced_groebner([g.to_context(work) for g in I.generators], order)
    nd = len(drop)
    kept = [g for g in B.elements if all(not any(m[:nd]) for m, _ in g.terms)]
    return IdealHandle([g.to_context(ctx, GREVLEX) for g in kept], ctx)


def eliminate_to(I: IdealHandle, target: VarContext) -> IdealHandle:
    """Eliminate every variable missing from ``target`` and move the result there."""
    drop = [v for v in I.ctx.names if v not in target.names]
    E = eliminate(I, drop)
    return IdealHandle([g.to_context(target, GREVLEX) for g in E.generators], target)


def intersect(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    if I.ctx != J.ctx:
        raise ContextMismatchError("ideals live in different contexts")
    ctx = I.ctx
    if I.is_zero() or J.is_zero():
        return IdealHandle([], ctx)
    t = ctx.fresh("_t")
    big = ctx.extend([t], front=True)
    tv = big.var(t)
    gens = [tv * g.to_context(big) for g in I.generators]
    gens += [(1 - tv) * g.to_context(big) for g in J.generators]
    return eliminate_to(IdealHandle(gens, big), ctx)


def saturate(I: IdealHandle, f: Polynomial) -> IdealHandle:
    """``(I : f^oo)``."""
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    ctx = I.ctx
    w = ctx.fresh("_w")
    big = ctx.extend([w], front=True)
    gens = [g.to_context(big) for g in I.generators]
    gens.append(big.var(w) * f.to_context(big) - 1)
    return eliminate_to(IdealHandle(gens, big), ctx)


# ---------------------------------------------------------------------------
# dimension and height


def leading_masks(B: GroebnerBasis) -> list[int]:
    masks = []
    for m in B.leading_monomials():
        mask = 0
        for i, e in enumerate(m):
            if e:
                mask |= 1 << i
        masks.append(mask)
    return masks


def krull_dim(I: IdealHandle) -> int:
    """Krull dimension of ``k[vars]/I``: the largest set of variables
    independent modulo the grevlex leading-term ideal."""
    B = I.groebner(GREVLEX)
    if B.is_unit():
        raise UnitIdealError("unit ideal has no dimension")
    d = _kernels.max_independent_size(leading_masks(B), I.ctx.nvars)
    assert d >= 0
    return d


def height_in_domain(q: IdealHandle, P: IdealHandle) -> int:
    """``ht(q/P)`` in the domain ``k[vars]/P`` (``P`` prime), as
    ``dim S - dim S/q``."""
    if q.ctx != P.ctx:
        raise ContextMismatchError("ideals live in different contexts")
    if q.is_unit():
        raise UnitIdealError("unit ideal has no height")
    if not q.contains_ideal(P):
        raise ValueError("ideal does not contain the defining ideal of the domain")
    return krull_dim(P) - krull_dim(q)


# ---------------------------------------------------------------------------
# subalgebra membership


@lru_cache(maxsize=256)
def _graph_basis(images: tuple[Polynomial, ...], relations: tuple[Polynomial, ...],
                 tags: tuple[str, ...]) -> tuple[VarContext, GroebnerBasis]:
    src = images[0].ctx
    tag_names = []
    taken = set(src.names)
    for t in tags:
        name = src.fresh(f"_{t}", taken)
        taken.add(name)
        tag_names.append(name)
    big = src.extend(tag_names)
    gens = [big.var(tn) - img.to_context(big) for tn, img in zip(tag_names, images)]
    gens += [r.to_context(big) for r in relations]
    B = reduced_groebner(gens, block_order(src.nvars))
    return big, B


def express_in(f: Polynomial, images: Sequence[Polynomial], target: VarContext,
               relations: Sequence[Polynomial] = ()) -> Polynomial | None:
    """Find ``p`` over ``target`` with ``p(images) == f`` modulo ``relations``,
    or None when ``f`` is not in the algebra generated by ``images``.

    ``target`` supplies one variable per image; ``images``, ``relations`` and
    ``f`` share one context."""
    images = tuple(images)
    if len(images) != target.nvars:
        raise ValueError("need one target variable per image")
    if not images:
        return Polynomial.constant(target, f.evaluate({})) if f.is_constant() else None
    src = images[0].ctx
    if f.ctx != src:
        raise ContextMismatchError("element and generators live in different contexts")
    big, B = _graph_basis(images, tuple(relations), target.names)
    r = normal_form(f.to_context(big), B)
    n = src.nvars
    if any(any(m[:n]) for m in r._dict):
        return None
    tag_names = big.names[n:]
    mapping = dict(zip(tag_names, target.names))
    d = {}
    for m, c in r._dict.items():
        d[m[n:]] = c
    sub = VarContext(tag_names, big.field)
    return Polynomial._raw(sub, d).rename(mapping, target).with_order(GREVLEX)


def subalgebra_member(f: Polynomial, algebra_gens: Sequence[Polynomial],
                      relations: Sequence[Polynomial] = ()) -> bool:
    """True iff ``f`` lies in ``k[algebra_gens]`` (modulo ``relations``)."""
    if not algebra_gens:
        return f.is_constant()
    tags = VarContext(tuple(f"t{i}" for i in range(len(algebra_gens))), f.ctx.field)
    return express_in(f, algebra_gens, tags, relations) is not None
