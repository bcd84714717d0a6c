"""Exact construction, simplicity certificates and isomorphism classification of Witt-type Lie algebras."""

from .classifier import (
    IsoWitness,
    StandardFormRecord,
    StructureKey,
    Trivialization,
    build_sigma,
    decide_isomorphic,
    standard_form,
    structure_key,
    trivialize_cocycle,
    verify_homomorphism,
)
from .comm_algebra import (
    AlgebraElement,
    Cocycle,
    Derivation,
    Monomial,
    RawSpec,
    StandardSpec,
    apply_derivation,
    filtration_level,
    grade_decompose,
    invert,
    multiply,
    validate_cocycle,
)
from .field_lattice import (
    BlockGroupElement,
    NumberField,
    Scalar,
    Subgroup,
    block_act,
    canonical_basis,
    is_nondegenerate,
    member,
    orbit_decide,
    zrank,
)
from .simplicity import (
    ApplyShiftedDer,
    Certificate,
    MulMonomial,
    Scale,
    ideal_closure_probe,
    separating_derivation,
    simplicity_certificate,
)
from .witt_lie import (
    Truncation,
    WittElement,
    ad_matrix,
    bracket,
    classify_operator,
    pairing,
    root_space,
    truncated_root_space,
)

__all__ = [
    "AlgebraElement", "ApplyShiftedDer", "BlockGroupElement", "Certificate", "Cocycle", "Derivation",
    "IsoWitness", "Monomial", "MulMonomial", "NumberField", "RawSpec", "Scalar", "Scale",
    "StandardFormRecord", "StandardSpec", "StructureKey", "Subgroup", "Trivialization", "Truncation",
    "WittElement", "ad_matrix", "apply_derivation", "block_act", "bracket", "build_sigma",
    "canonical_basis", "classify_operator", "decide_isomorphic", "filtration_level", "grade_decompose",
    "ideal_closure_probe", "invert", "is_nondegenerate", "member", "multiply", "orbit_decide", "pairing",
    "root_space", "separating_derivation", "simplicity_certificate", "standard_form", "structure_key",
    "trivialize_cocycle", "truncated_root_space", "validate_cocycle", "verify_homomorphism", "zrank",
]
