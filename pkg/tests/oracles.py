"""Independent reference computations used only by the tests.

None of these touch the Gröbner machinery: ideal membership is decided by
exact linear algebra on Macaulay matrices (python-flint), cone facets by
brute force over subsets of generators, and semigroup questions by
enumeration.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import flint

from depict.poly import Polynomial, VarContext

MACAULAY_DEGREE = 6


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree + 1):
        for c in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in c:
                e[i] += 1
            out.append(tuple(e))
    return out


def _to_fmpq(c) -> flint.fmpq:
    c = Fraction(int(c.numerator), int(c.denominator))
    return flint.fmpq(c.numerator, c.denominator)


class MacaulayOracle:
    """Membership in ``(gens)`` certified by cofactors of bounded degree:
    ``f`` is accepted iff ``f = sum c_i g_i`` with ``deg(c_i g_i) <= degree``."""

    def __init__(self, gens: list[Polynomial], degree: int = MACAULAY_DEGREE):
        self.ctx = gens[0].ctx
        self.degree = degree
        cols = monomials_upto(self.ctx.nvars, degree)
        self.col = {m: i for i, m in enumerate(cols)}
        self.ncols = len(cols)
        rows = []
        for g in gens:
            if g.is_zero():
                continue
            dg = g.total_degree()
            for m in monomials_upto(self.ctx.nvars, degree - dg):
                rows.append(self._row(g.mul_term(m, 1)))
        if rows:
            M = flint.fmpq_mat(len(rows), self.ncols, [x for r in rows for x in r])
            B, r = M.rref()
            self.basis = [[B[i, j] for j in range(self.ncols)] for i in range(r)]
        else:
            self.basis = []
        self.rank = len(self.basis)

    def _row(self, f: Polynomial) -> list:
        row = [flint.fmpq(0)] * self.ncols
        for m, c in f.as_dict().items():
            row[self.col[m]] = _to_fmpq(c)
        return row

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if f.total_degree() > self.degree:
            raise ValueError("test polynomial exceeds the oracle degree")
        rows = self.basis + [self._row(f)]
        M = flint.fmpq_mat(len(rows), self.ncols, [x for r in rows for x in r])
        return M.rank() == self.rank


MAX_ESCALATION_DEGREE = 12


def certified_member(gens: list[Polynomial], f: Polynomial, claimed: bool,
                     start: int = MACAULAY_DEGREE, stop: int = MAX_ESCALATION_DEGREE) -> tuple[bool, int]:
    """Oracle verdict on ``f in (gens)`` and the degree bound that produced it.

    Starts at ``start``; only when ``claimed`` is True and no certificate
    exists at the current bound is the bound raised (up to ``stop``), since
    a positive answer may need cofactors of higher degree than the test
    polynomial (e.g. in the unit ideal).  A negative verdict always means
    "no certificate up to the final bound"."""
    D = max(start, f.total_degree())
    while True:
        if MacaulayOracle(gens, D).contains(f):
            return True, D
        if not claimed or D >= stop:
            return False, D
        D += 1


# ---------------------------------------------------------------------------
# random sparse ideals


def random_poly(rng: random.Random, ctx: VarContext, max_degree: int = 3, max_terms: int = 4) -> Polynomial:
    n = ctx.nvars
    mons = monomials_upto(n, max_degree)
    while True:
        k = rng.randint(1, min(max_terms, len(mons)))
        terms = {}
        for m in rng.sample(mons, k):
            c = Fraction(rng.randint(-5, 5), rng.choice([1, 1, 1, 2, 3]))
            if c:
                terms[m] = c
        f = Polynomial(ctx, terms)
        if not f.is_zero():
            return f


def random_ideal(rng: random.Random, max_vars: int = 3, max_gens: int = 3, max_degree: int = 3):
    n = rng.randint(1, max_vars)
    ctx = VarContext(("x", "y", "z")[:n])
    gens = [random_poly(rng, ctx, max_degree) for _ in range(rng.randint(1, max_gens))]
    return ctx, gens


def random_member(rng: random.Random, gens: list[Polynomial], cofactor_degree: int = 2) -> Polynomial:
    ctx = gens[0].ctx
    f = Polynomial(ctx, {})
    for g in gens:
        f = f + random_poly(rng, ctx, cofactor_degree, 3) * g
    return f


# ---------------------------------------------------------------------------
# cones and semigroups


def brute_force_facets(gens: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Primitive inner normals of a full-dimensional cone: every normal of a
    hyperplane through ``d - 1`` independent generators that keeps all
    generators on one side."""
    import sympy

    d = len(gens[0])
    out = set()
    for sub in itertools.combinations(gens, d - 1):
        M = sympy.Matrix(sub)
        if M.rank() != d - 1:
            continue
        ns = M.nullspace()
        if len(ns) != 1:
            continue
        v = ns[0]
        den = sympy.ilcm(*[x.q for x in v])
        v = [int(x * den) for x in v]
        g = 0
        for x in v:
            g = sympy.igcd(g, x)
        v = [x // g for x in v]
        vals = [sum(a * b for a, b in zip(v, x)) for x in gens]
        if all(t >= 0 for t in vals):
            out.add(tuple(v))
        elif all(t <= 0 for t in vals):
            out.add(tuple(-a for a in v))
    return out


def semigroup_elements(gens: list[tuple[int, ...]], bound: int) -> set[tuple[int, ...]]:
    """All sums of generators with coordinates in ``[0, bound]`` (nonnegative
    generators only)."""
    seen = {tuple([0] * len(gens[0]))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if max(w) <= bound and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def numerical_gaps(gens: list[int], bound: int = 200) -> list[int]:
    reach = semigroup_elements([(g,) for g in gens], bound)
    return [n for n in range(bound + 1) if (n,) not in reach]
