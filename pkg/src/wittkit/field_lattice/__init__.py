"""Scalars in Q(theta), exact matrices, subgroups of F^n and the block group action."""

from .blockgroup import (
    BlockGroupElement,
    Equivalent,
    Inequivalent,
    OrbitInvariants,
    Unknown,
    adapted_basis,
    block_act,
    orbit_decide,
    orbit_invariants,
)
from .matrices import QQ
from .numberfield import NumberField, Scalar, is_irreducible, rational_str, to_rational
from .subgroup import GroupVector, Subgroup, canonical_basis, is_nondegenerate, member, zrank

__all__ = [
    "BlockGroupElement",
    "Equivalent",
    "GroupVector",
    "Inequivalent",
    "NumberField",
    "OrbitInvariants",
    "QQ",
    "Scalar",
    "Subgroup",
    "Unknown",
    "adapted_basis",
    "block_act",
    "canonical_basis",
    "is_irreducible",
    "is_nondegenerate",
    "member",
    "orbit_decide",
    "orbit_invariants",
    "rational_str",
    "to_rational",
    "zrank",
]
