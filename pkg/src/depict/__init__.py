"""Exact commutative algebra for rings ``R = k + I`` and their depictions.

Layers, bottom up: :mod:`depict.poly` (polynomials over Q or GF(p)),
:mod:`depict.groebner` (reduced bases, elimination, dimension),
:mod:`depict.affine` (presented domains and inclusions),
:mod:`depict.semigroup` (cones, Hilbert bases, toric rings) and
:mod:`depict.depiction` (loci, heights, maximal depictions).
"""

from .affine import AffineDomain, RingIdeal, find_inclusion, is_subring
from .depiction import (
    ContractedPrime,
    DepictionReport,
    GhtResult,
    LocusDescriptor,
    SubringKplusI,
    check_depiction,
    contraction_equal,
    fiber_over,
    gdim_point,
    geometric_height,
    in_Z,
    is_saturated_on,
    maximal_depiction,
    noetherian_codim1,
    u_locus,
)
from .groebner import IdealHandle, eliminate, intersect, krull_dim, reduced_groebner, saturate
from .poly import LEX, GREVLEX, CoefficientField, Polynomial, VarContext, parse_poly
from .semigroup import AffineSemigroup, hilbert_basis, is_normal_semigroup, saturate_semigroup, toric_presentation

__version__ = "0.1.0"

__all__ = [
    "AffineDomain", "AffineSemigroup", "CoefficientField", "ContractedPrime", "DepictionReport",
    "GREVLEX", "GhtResult", "IdealHandle", "LEX", "LocusDescriptor", "Polynomial", "RingIdeal",
    "SubringKplusI", "VarContext", "check_depiction", "contraction_equal", "eliminate", "fiber_over",
    "find_inclusion", "gdim_point", "geometric_height", "hilbert_basis", "in_Z", "intersect",
    "is_normal_semigroup", "is_saturated_on", "is_subring", "krull_dim", "maximal_depiction",
    "noetherian_codim1", "parse_poly", "reduced_groebner", "saturate", "saturate_semigroup",
    "toric_presentation", "u_locus",
]
