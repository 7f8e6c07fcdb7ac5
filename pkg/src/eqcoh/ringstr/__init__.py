"""Ring structure of the cohomology of classifying spaces over C_{p^m}."""

from .poly import CoeffRing, valuation
from .q0 import Q0, normalize_class, q0_closed, q0_images, q0_via_tau, underlying
from .relations import (
    InjectivityProfile,
    RelationCheck,
    basis_monomial,
    conj_ring,
    injectivity_profile,
    series_terms,
    t_exponent,
    verify_relation,
)

__all__ = [
    "CoeffRing",
    "InjectivityProfile",
    "Q0",
    "RelationCheck",
    "basis_monomial",
    "conj_ring",
    "injectivity_profile",
    "normalize_class",
    "q0_closed",
    "q0_images",
    "q0_via_tau",
    "series_terms",
    "t_exponent",
    "underlying",
    "valuation",
    "verify_relation",
]
