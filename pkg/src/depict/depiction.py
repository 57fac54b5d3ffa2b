"""Rings ``R = k + I`` and their depictions.

A ring ``R`` is given by an ambient domain ``S`` and a nonzero proper ideal
``I`` of ``S``.  Other candidate overrings ``S'`` (sharing a coordinate ring
with ``S``) see ``I`` through :meth:`SubringKplusI.ideal_in`, which either
extends ``I`` along ``S ⊆ S'`` or contracts it along ``S' ⊆ S``.

The dimension-theoretic criteria implemented here only apply when ``I`` is
itself an ideal of the ring in question; for other overrings (declared
depictions such as a localization) only the loci and bounds are computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .affine import (
    AffineDomain,
    RingIdeal,
    contract_ideal,
    extend_ideal,
    find_inclusion,
    is_subring,
)
from .groebner import saturate
from .poly import GREVLEX, LEX, Polynomial
from .semigroup import normalization


class DepictionError(ValueError):
    pass


class CriterionNotApplicable(DepictionError):
    """``I`` is not an ideal of the ring, so the ``k + I`` criteria say nothing."""


class LiftError(DepictionError):
    pass


# ---------------------------------------------------------------------------
# primality certificates and minimal primes


def prime_certificate(J: RingIdeal) -> str | None:
    """``"graph"`` when a reduced basis of the lift has distinct single
    variables as leading terms (the quotient is then a polynomial ring, so
    ``J`` is prime); None when no certificate is found."""
    if J.is_unit():
        return None
    for order in (GREVLEX, LEX):
        B = J.lift.groebner(order)
        lead = []
        for g in B.elements:
            m = g.leading_monomial()
            if sum(m) != 1:
                break
            lead.append(m.index(1))
        else:
            if len(set(lead)) == len(lead):
                return "graph"
    return None


def _is_monomial_ideal(J: RingIdeal) -> bool:
    return all(len(g) == 1 for g in J.lift.groebner().elements)


def minimal_primes(J: RingIdeal) -> list[RingIdeal] | None:
    """Minimal primes of ``J`` when decidable here: ``J`` itself when it
    carries a primality certificate, or the variable ideals of the minimal
    covers when ``J`` is monomial in a polynomial ring.  None otherwise."""
    if J.is_unit():
        return []
    if prime_certificate(J):
        return [J]
    S = J.ring
    if not (S.defining.is_zero() and _is_monomial_ideal(J)):
        return None
    supports = [frozenset(i for i, e in enumerate(g.leading_monomial()) if e)
                for g in J.lift.groebner().elements]
    n = S.ctx.nvars
    covers: list[frozenset] = []
    for size in range(n + 1):
        for c in combinations(range(n), size):
            cs = frozenset(c)
            if any(prev <= cs for prev in covers):
                continue
            if all(s & cs for s in supports):
                covers.append(cs)
    return [S.ideal([S.ctx.var(S.ctx.names[i]) for i in sorted(c)]) for c in covers]


# ---------------------------------------------------------------------------
# R = k + I


@dataclass
class Transfer:
    ideal: RingIdeal
    kind: str  # ambient | extension | contraction
    is_ideal: bool  # I itself (as a set) is an ideal of the target ring


class SubringKplusI:
    """``R = k + I`` for a nonzero proper ideal ``I`` of ``ambient``."""

    def __init__(self, ambient: AffineDomain, I: RingIdeal | Sequence[str | Polynomial]):
        if not isinstance(I, RingIdeal):
            I = ambient.ideal(I)
        if I.ring is not ambient:
            raise DepictionError("ideal does not belong to the ambient ring")
        if I.is_unit():
            raise DepictionError("I is the unit ideal, so R = S is noetherian")
        if I.is_zero():
            raise DepictionError("I is the zero ideal, so R = k")
        self.ambient = ambient
        self.I = I
        self._transfers: dict[int, Transfer] = {id(ambient): Transfer(I, "ambient", True)}
        self._rings: dict[int, AffineDomain] = {id(ambient): ambient}
        self._maxdep: "DepictionReport | None" = None

    def __repr__(self) -> str:
        return f"<R = k + ({', '.join(self.I.generators())}) in {self.ambient.name or 'S'}>"

    def ideal_generators_in_coords(self) -> list[Polynomial]:
        S = self.ambient
        return [S.to_coords(g) for g in self.I.lift.generators if not S.defining.contains(g)]

    def transfer(self, target: AffineDomain) -> Transfer:
        key = id(target)
        t = self._transfers.get(key)
        if t is None:
            t = self._compute_transfer(target)
            self._transfers[key] = t
            self._rings[key] = target
        return t

    def ideal_in(self, target: AffineDomain) -> RingIdeal:
        return self.transfer(target).ideal

    def _compute_transfer(self, target: AffineDomain) -> Transfer:
        S = self.ambient
        if not S.shares_coords(target):
            raise DepictionError(f"ring {target.name or target.ctx.names} shares no coordinates with the ambient ring")
        up = find_inclusion(S, target)
        if up is not None:
            J = extend_ideal(self.I, up)
            return Transfer(J, "extension", self._stable_under(target))
        down = find_inclusion(target, S)
        if down is not None:
            J = contract_ideal(self.I, down)
            if not self._contained_in(J):
                raise DepictionError(f"R is not contained in {target.name or target.ctx.names}")
            return Transfer(J, "contraction", True)
        raise DepictionError(f"no inclusion relates {target.name or target.ctx.names} and the ambient ring")

    def _stable_under(self, target: AffineDomain) -> bool:
        """``target · I ⊆ I``: each target generator times each ideal generator
        lands back in ``I``."""
        S = self.ambient
        for s in target.embedding:
            for f in self.ideal_generators_in_coords():
                p = S.element_from_coords(s * f)
                if p is None or not self.I.contains(p):
                    return False
        return True

    def _contained_in(self, J: RingIdeal) -> bool:
        """``I ⊆ J`` for ``J = I ∩ S'``: generators of ``I`` lie in ``J`` and
        ``J`` is stable under the ambient generators."""
        target = J.ring
        for f in self.ideal_generators_in_coords():
            p = target.element_from_coords(f)
            if p is None or not J.contains(p):
                return False
        jgens = [target.to_coords(g) for g in J.lift.generators if not target.defining.contains(g)]
        for s in self.ambient.embedding:
            for g in jgens:
                p = target.element_from_coords(s * g)
                if p is None or not J.contains(p):
                    return False
        return True

    def contained_in(self, target: AffineDomain) -> bool:
        try:
            self.transfer(target)
        except DepictionError:
            return False
        return True


# ---------------------------------------------------------------------------
# report types


@dataclass(frozen=True)
class LocusDescriptor:
    kind: str  # open-complement | closed
    vanishing: RingIdeal
    basis: str = "ideal"  # ideal | extended-ideal

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vanishing": self.vanishing.generators(), "basis": self.basis}


@dataclass(frozen=True)
class GhtResult:
    lower: int
    upper: int
    exact: bool
    justification: str  # Z-membership | codim1-T | bounds-only
    measure: str = "ght"

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")
        if self.measure == "ght" and self.lower < 1:
            raise ValueError("geometric height of a nonzero prime is at least 1")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact result must have equal bounds")

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "exact": self.exact,
                "value": self.value, "justification": self.justification}


@dataclass
class DepictionReport:
    is_depiction: bool
    u_locus: LocusDescriptor
    codim1: bool
    T: AffineDomain | None
    T_interval: tuple[AffineDomain, AffineDomain | None] | None
    T_saturated: bool | None
    branch: str
    chain: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "is_depiction": self.is_depiction,
            "u_locus": self.u_locus.to_dict(),
            "codim1": self.codim1,
            "branch": self.branch,
            "T": self.T.describe() if self.T is not None else None,
        }
        if self.T_interval is not None:
            lo, hi = self.T_interval
            out["T_interval"] = {"lower": lo.describe(), "upper": hi.describe() if hi is not None else "unavailable"}
        out["T_saturated"] = "untested" if self.T_saturated is None else self.T_saturated
        if self.chain:
            out["chain"] = dict(self.chain)
        return out


class ContractedPrime:
    """The prime ``q ∩ R`` of ``R``, witnessed by a prime ``q`` of a depiction."""

    def __init__(self, R: SubringKplusI, q: RingIdeal, primality: str | None = None):
        if q.is_unit():
            raise DepictionError("witness ideal is the unit ideal")
        self.R = R
        self.q = q
        self.primality = primality or ("verified" if prime_certificate(q) else "asserted")
        I_S = R.ideal_in(q.ring)
        self.smeared = q.contains_ideal(I_S)

    @property
    def ring(self) -> AffineDomain:
        return self.q.ring

    def __repr__(self) -> str:
        tag = "smeared" if self.smeared else "in Z"
        return f"<ContractedPrime ({', '.join(self.q.generators())}) {tag}>"


@dataclass(frozen=True)
class FiberDescription:
    kind: str  # singleton | closed
    primes: tuple[RingIdeal, ...] = ()
    vanishing: RingIdeal | None = None
    minimal_decidable: bool = True

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "singleton":
            out["prime"] = self.primes[0].generators()
        else:
            out["vanishing"] = self.vanishing.generators()
            out["minimal"] = [p.generators() for p in self.primes] if self.minimal_decidable else "undetermined"
        return out


# ---------------------------------------------------------------------------
# operations


def _applicable_ideal(S: AffineDomain, R: SubringKplusI) -> RingIdeal:
    t = R.transfer(S)
    if not t.is_ideal:
        raise CriterionNotApplicable(
            f"I is not an ideal of {S.name or S.ctx.names} (I·S' strictly contains I)")
    return t.ideal


def check_depiction(S: AffineDomain, R: SubringKplusI) -> bool:
    """``dim S/I >= 1`` for ``I`` an ideal of ``S``."""
    J = _applicable_ideal(S, R)
    if J.is_zero():
        raise DepictionError("I is zero in this ring")
    if J.is_unit():
        raise DepictionError("I is the unit ideal in this ring")
    return J.quotient_dim() >= 1


def u_locus(S: AffineDomain, R: SubringKplusI) -> LocusDescriptor:
    """The locus where ``R`` and ``S`` agree, as the complement of ``Z(I·S)``."""
    t = R.transfer(S)
    return LocusDescriptor("open-complement", t.ideal, "ideal" if t.is_ideal else "extended-ideal")


def in_Z(p: ContractedPrime) -> bool:
    return not p.smeared


def noetherian_codim1(S: AffineDomain, R: SubringKplusI) -> bool:
    """No height-one prime of ``S`` contains ``I``, i.e. ``ht(I) >= 2``."""
    J = _applicable_ideal(S, R)
    return S.dim - J.quotient_dim() >= 2


def maximal_depiction(S: AffineDomain, R: SubringKplusI) -> DepictionReport:
    if S is R.ambient and R._maxdep is not None:
        return R._maxdep
    if not check_depiction(S, R):
        raise DepictionError(f"{S.name or 'S'} is not a depiction of R (dim S/I = 0)")
    locus = u_locus(S, R)
    codim1 = noetherian_codim1(S, R)
    warnings: list[str] = []
    if not codim1:
        rep = DepictionReport(True, locus, False, None, None, None, "codim1-fails", warnings=warnings)
    else:
        Sbar = normalization(S)
        if Sbar is None:
            warnings.append("normalization unavailable: S is neither a polynomial ring nor a semigroup ring")
            rep = DepictionReport(True, locus, True, None, (S, None), None, "normalization-unavailable",
                                  warnings=warnings)
        elif Sbar is S:
            rep = DepictionReport(True, locus, True, S, None, None, "normal-depiction")
        else:
            ok = is_subring(S, Sbar)
            t = R.transfer(Sbar) if ok else None
            if ok and t.is_ideal and check_depiction(Sbar, R):
                rep = DepictionReport(True, locus, True, Sbar, None, None, "normalization-is-depiction")
            else:
                warnings.append("normalization is not a k+I depiction of R; T lies between S and its normalization")
                rep = DepictionReport(True, locus, True, None, (S, Sbar), None, "interval", warnings=warnings)
        if rep.T is not None:
            T = rep.T
            rep.chain = {"S_in_T": is_subring(S, T)}
            if Sbar is not None:
                rep.chain["T_in_Sbar"] = is_subring(T, Sbar)
            mins = minimal_primes(R.ideal_in(T))
            if mins is not None:
                rep.T_saturated = is_saturated_on(T, R, mins, _trust_codim1=True)
    if S is R.ambient:
        R._maxdep = rep
    return rep


def _ideal_height(S: AffineDomain, R: SubringKplusI) -> int:
    J = R.ideal_in(S)
    return S.dim - J.quotient_dim()


def geometric_height(p: ContractedPrime, depictions: Sequence[AffineDomain] = ()) -> GhtResult:
    R = p.R
    if not p.smeared:
        h = p.q.height()
        return GhtResult(h, h, True, "Z-membership")
    amb = R.ambient
    if noetherian_codim1(amb, R):
        rep = maximal_depiction(amb, R)
        if rep.T is not None:
            h = _ideal_height(rep.T, R)
            return GhtResult(h, h, True, "codim1-T")
    rings: list[AffineDomain] = [p.ring]
    for D in depictions:
        if all(D is not r for r in rings):
            rings.append(D)
    upper = min(_ideal_height(D, R) for D in rings)
    return GhtResult(1, upper, upper == 1, "bounds-only")


def gdim_point(p: ContractedPrime, depictions: Sequence[AffineDomain] = ()) -> GhtResult:
    g = geometric_height(p, depictions)
    d = p.ring.dim
    return GhtResult(d - g.upper, d - g.lower, g.exact, g.justification, measure="gdim")


def lift_prime(p: ContractedPrime, target: AffineDomain) -> RingIdeal:
    """The unique prime of ``target`` over ``p`` for ``p`` in the Z-locus:
    ``(f·q)·target`` saturated at some ``f ∈ I \\ q``."""
    if p.smeared:
        raise LiftError("smeared primes have no unique lift")
    S = p.ring
    if target is S:
        return p.q
    R = p.R
    I_S = R.ideal_in(S)
    f = next((g for g in I_S.lift.generators if not p.q.contains(g)), None)
    if f is None:
        raise LiftError("no element of I outside q")
    fc = S.to_coords(f)
    ft = target.element_from_coords(fc)
    if ft is None:
        raise LiftError("I is not contained in the target ring")
    gens = []
    for g in p.q.lift.generators:
        e = target.element_from_coords(S.to_coords(f * g))
        if e is None:
            raise LiftError("I is not contained in the target ring")
        gens.append(e)
    lift = saturate(target.ideal(gens).lift, ft)
    q2 = RingIdeal(target, lift)
    if q2.is_unit():
        raise LiftError("lift is the unit ideal; the target is not a depiction over this point")
    if q2.contains_ideal(R.ideal_in(target)):
        raise LiftError("lift contains I; the target does not see this point in its Z-locus")
    up = find_inclusion(S, target)
    if up is not None and not contract_ideal(q2, up).equals(p.q):
        raise LiftError("lift does not contract back to the witness prime")
    return q2


def contraction_equal(p1: ContractedPrime, p2: ContractedPrime) -> bool:
    if p1.R is not p2.R:
        raise DepictionError("primes of different rings R")
    if p1.smeared and p2.smeared:
        return True
    if p1.smeared != p2.smeared:
        return False
    if p1.ring is p2.ring:
        return p1.q.equals(p2.q)
    return lift_prime(p2, p1.ring).equals(p1.q)


def fiber_over(p: ContractedPrime, target: AffineDomain) -> FiberDescription:
    if not p.smeared:
        return FiberDescription("singleton", (lift_prime(p, target),))
    J = p.R.ideal_in(target)
    mins = minimal_primes(J)
    if mins is None:
        return FiberDescription("closed", (), J, minimal_decidable=False)
    return FiberDescription("closed", tuple(mins), J)


def is_saturated_on(T: AffineDomain, R: SubringKplusI, test_primes: Sequence[RingIdeal],
                    depictions: Sequence[AffineDomain] = (), _trust_codim1: bool = False) -> bool:
    """Every test prime ``t`` (minimal over ``t ∩ R``) has
    ``ght(t ∩ R) == ht_T(t)``."""
    I_T = R.ideal_in(T)
    mins = minimal_primes(I_T)
    for t in test_primes:
        if t.ring is not T:
            raise DepictionError("test prime does not belong to T")
        cp = ContractedPrime(R, t)
        if not cp.smeared:
            continue
        if mins is not None and not any(t.equals(m) for m in mins):
            raise DepictionError(f"test prime ({', '.join(t.generators())}) is not minimal over I·T")
        if _trust_codim1:
            # T produced under the codim-1 hypothesis: ght(I) = ht(I·T)
            g = GhtResult(*(2 * (T.dim - I_T.quotient_dim(),)), True, "codim1-T")
        else:
            g = geometric_height(cp, [T, *depictions])
        if not g.exact or g.lower != t.height():
            return False
    return True
