"""Presented domains ``k[x_1..x_m]/P``, their ideals, and inclusions.

Every ring may carry an embedding into a shared *coordinate ring* (itself an
:class:`AffineDomain`, e.g. ``k[x,y,z]`` or ``k[x,y,w]/(x*w - 1)``); that is
how rings with different presentations are compared as subrings of one
fraction field.  Ideals are stored by their full ambient lift ``J ⊇ P``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .groebner import (
    IdealHandle,
    UnitIdealError,
    eliminate_to,
    express_in,
    height_in_domain,
    krull_dim,
)
from .poly import ContextMismatchError, Polynomial, VarContext, parse_poly

PRIMALITY_TAGS = ("asserted", "verified-toric", "verified-monomial")


class InclusionError(ValueError):
    pass


def _is_variable_ideal(I: IdealHandle) -> bool:
    """Generated by a subset of the variables (so prime)."""
    for g in I.groebner().elements:
        if len(g) != 1:
            return False
        m = g.leading_monomial()
        if sum(m) != 1:
            return False
    return True


class AffineDomain:
    """The domain ``k[ctx]/P``.

    ``primality`` records why ``P`` is believed prime: ``verified-monomial``
    (generated by variables, detected here), ``verified-toric`` (built from
    a semigroup), or ``asserted`` (caller's word).
    """

    def __init__(self, ctx: VarContext, relations: Iterable[Polynomial] = (), *,
                 primality: str = "asserted", coords: "AffineDomain | None" = None,
                 embedding: Sequence[Polynomial] | None = None, semigroup=None, name: str = ""):
        self.ctx = ctx
        self.defining = IdealHandle(list(relations), ctx)
        self.name = name
        self.semigroup = semigroup
        if self.defining.is_unit():
            raise UnitIdealError(f"ring {name or ctx.names} has unit defining ideal")
        if primality not in PRIMALITY_TAGS:
            raise ValueError(f"unknown primality tag {primality!r}")
        if _is_variable_ideal(self.defining):
            primality = "verified-monomial"
        self.primality = primality
        if coords is None:
            if embedding is not None:
                raise ValueError("embedding given without a coordinate ring")
            self.coords = self
            self.embedding = tuple(ctx.gens())
        else:
            if embedding is None:
                embedding = [coords.ctx.var(n) for n in ctx.names]
            embedding = tuple(embedding)
            if len(embedding) != ctx.nvars:
                raise ValueError("embedding needs one image per variable")
            for e in embedding:
                if e.ctx != coords.ctx:
                    raise ContextMismatchError("embedding images must live in the coordinate ring")
            self.coords = coords
            self.embedding = embedding

    @classmethod
    def polynomial_ring(cls, names: Sequence[str], field=None, **kw) -> "AffineDomain":
        ctx = VarContext(tuple(names)) if field is None else VarContext(tuple(names), field)
        return cls(ctx, (), **kw)

    @classmethod
    def from_strings(cls, names: Sequence[str], relations: Sequence[str] = (), field=None, **kw):
        ctx = VarContext(tuple(names)) if field is None else VarContext(tuple(names), field)
        return cls(ctx, [parse_poly(r, ctx) for r in relations], **kw)

    def __repr__(self) -> str:
        rel = ", ".join(self.defining.reduced_generators())
        label = f"{self.name}: " if self.name else ""
        return f"<AffineDomain {label}k[{', '.join(self.ctx.names)}]/({rel})>"

    @cached_property
    def dim(self) -> int:
        return krull_dim(self.defining)

    def parse(self, text: str) -> Polynomial:
        return parse_poly(text, self.ctx)

    def ideal(self, gens: Iterable[Polynomial | str]) -> "RingIdeal":
        polys = [self.parse(g) if isinstance(g, str) else g for g in gens]
        return RingIdeal(self, IdealHandle(list(self.defining.generators) + polys, self.ctx))

    def zero_ideal(self) -> "RingIdeal":
        return self.ideal([])

    def is_polynomial_ring(self) -> bool:
        """True when ``P`` is generated by variables (the ring is then a
        polynomial ring in the remaining ones)."""
        return self.primality == "verified-monomial"

    def is_own_coords(self) -> bool:
        return self.coords is self

    def shares_coords(self, other: "AffineDomain") -> bool:
        return self.coords is other.coords

    def generators_in_coords(self) -> list[str]:
        return [str(e) for e in self.embedding]

    def describe(self) -> dict:
        return {
            "vars": list(self.ctx.names),
            "relations": self.defining.reduced_generators(),
            "generators": self.generators_in_coords(),
            "dim": self.dim,
            "primality": self.primality,
        }

    def element_from_coords(self, f: Polynomial) -> Polynomial | None:
        """Express a coordinate-ring element in this ring's variables, or None
        if it does not lie in this ring."""
        if f.ctx != self.coords.ctx:
            raise ContextMismatchError("element is not in the coordinate ring")
        return express_in(f, self.embedding, self.ctx, self.coords.defining.generators)

    def to_coords(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.embedding)


def ring_dim(S: AffineDomain) -> int:
    return S.dim


class RingIdeal:
    """An ideal of ``ring`` held as its preimage in the polynomial ring."""

    __slots__ = ("ring", "lift")

    def __init__(self, ring: AffineDomain, lift: IdealHandle):
        if lift.ctx != ring.ctx:
            raise ContextMismatchError("lift must live in the ring's context")
        self.ring = ring
        self.lift = lift

    def __repr__(self) -> str:
        return f"<RingIdeal ({', '.join(self.generators())}) in {self.ring.name or self.ring.ctx.names}>"

    def generators(self) -> list[str]:
        """Reduced grevlex generators of the lift, relations of the ring omitted
        when they are themselves basis elements."""
        P = self.ring.defining
        return [str(g) for g in self.lift.groebner().elements if not P.contains(g)] or (
            ["0"] if not self.is_unit() else ["1"])

    def contains(self, f: Polynomial) -> bool:
        return self.lift.contains(f)

    def contains_ideal(self, other: "RingIdeal") -> bool:
        self._same_ring(other)
        return self.lift.contains_ideal(other.lift)

    def equals(self, other: "RingIdeal") -> bool:
        self._same_ring(other)
        return self.lift == other.lift

    def is_unit(self) -> bool:
        return self.lift.is_unit()

    def is_zero(self) -> bool:
        return self.ring.defining.contains_ideal(self.lift)

    def quotient_dim(self) -> int:
        return krull_dim(self.lift)

    def height(self) -> int:
        return height_in_domain(self.lift, self.ring.defining)

    def _same_ring(self, other: "RingIdeal"):
        if other.ring is not self.ring:
            raise ValueError("ideals belong to different rings")


# ---------------------------------------------------------------------------
# inclusions


@dataclass(frozen=True, eq=False)
class RingInclusion:
    """``small -> big``; ``images[i]`` is the image of ``small``'s i-th variable."""

    small: AffineDomain
    big: AffineDomain
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.images) != self.small.ctx.nvars:
            raise ValueError("need one image per variable of the small ring")
        for im in self.images:
            if im.ctx != self.big.ctx:
                raise ContextMismatchError("images must live in the big ring's context")


def identity_inclusion(S: AffineDomain) -> RingInclusion:
    return RingInclusion(S, S, tuple(S.ctx.gens()))


def find_inclusion(small: AffineDomain, big: AffineDomain) -> RingInclusion | None:
    """The inclusion induced by the shared coordinate ring, or None if some
    generator of ``small`` does not lie in ``big``."""
    if not small.shares_coords(big):
        raise InclusionError("rings have no common coordinate ring")
    if small is big:
        return identity_inclusion(small)
    images = []
    for e in small.embedding:
        p = big.element_from_coords(e)
        if p is None:
            return None
        images.append(p)
    return RingInclusion(small, big, tuple(images))


def preimage(lift: IdealHandle, images: Sequence[Polynomial], small: VarContext) -> IdealHandle:
    """Preimage of ``lift`` under ``k[small] -> k[lift.ctx]``, ``x_i -> images[i]``."""
    up = lift.ctx
    taken = set(up.names)
    tags = []
    for n in small.names:
        t = up.fresh(f"_{n}", taken)
        taken.add(t)
        tags.append(t)
    both = up.extend(tags)
    gens = [g.to_context(both) for g in lift.generators]
    gens += [both.var(t) - im.to_context(both) for t, im in zip(tags, images)]
    tag_ctx = VarContext(tuple(tags), up.field)
    E = eliminate_to(IdealHandle(gens, both), tag_ctx)
    mapping = dict(zip(tags, small.names))
    return IdealHandle([g.rename(mapping, small) for g in E.generators], small)


def map_kernel(inc: RingInclusion) -> IdealHandle:
    return preimage(inc.big.defining, inc.images, inc.small.ctx)


def contract_ideal(J: RingIdeal, inc: RingInclusion) -> RingIdeal:
    """``J ∩ small`` for an ideal ``J`` of ``inc.big``."""
    if J.ring is not inc.big:
        raise ValueError("ideal does not belong to the big ring of the inclusion")
    pre = preimage(J.lift, inc.images, inc.small.ctx)
    return RingIdeal(inc.small, pre + inc.small.defining)


def extend_ideal(J: RingIdeal, inc: RingInclusion) -> RingIdeal:
    """``J·big`` for an ideal ``J`` of ``inc.small``."""
    if J.ring is not inc.small:
        raise ValueError("ideal does not belong to the small ring of the inclusion")
    gens = [g.substitute(inc.images) for g in J.lift.generators]
    return inc.big.ideal(gens)


def check_inclusion(inc: RingInclusion) -> bool:
    """The map is well defined and injective (kernel equals ``P_small``), and
    agrees with both embeddings when the rings share coordinates."""
    small, big = inc.small, inc.big
    ker = map_kernel(inc)
    if not (ker.contains_ideal(small.defining) and small.defining.contains_ideal(ker)):
        return False
    if small.shares_coords(big):
        C = small.coords.defining
        for e, im in zip(small.embedding, inc.images):
            if not C.contains(e - big.to_coords(im)):
                return False
    return True


def is_subring(small: AffineDomain, big: AffineDomain) -> bool:
    """``small ⊆ big`` inside the shared coordinate ring."""
    inc = find_inclusion(small, big)
    return inc is not None and check_inclusion(inc)
