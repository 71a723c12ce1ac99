"""Equivalence of mutually unbiased bases via stabilizer orbits."""

__version__ = "0.1.0"

from .basis import (
    BasisPoint,
    canonicalize,
    in_unbiased_set,
    is_hadamard_matrix,
    is_unbiased,
    mubness,
    points_equal,
)
from .equivalence import (
    EquivalenceWitness,
    MubList,
    dephase,
    hadamard_equivalent,
    lists_equivalent,
    sets_equivalent,
    standard_form,
)
from .linalg import DEFAULT_TOL, is_unitary, nullspace, random_unitary
from .monomial import (
    MonomialElement,
    ProjectiveElement,
    compose,
    inverse,
    monomial_decompose,
    projective_normalize,
)
from .stabilizer import (
    OrbitSet,
    StabilizerGroup,
    list_stabilizer,
    orbit,
    pair_stabilizer,
    verify_center_proposition,
)

__all__ = [
    "BasisPoint", "canonicalize", "in_unbiased_set", "is_hadamard_matrix", "is_unbiased",
    "mubness", "points_equal",
    "EquivalenceWitness", "MubList", "dephase", "hadamard_equivalent", "lists_equivalent",
    "sets_equivalent", "standard_form",
    "DEFAULT_TOL", "is_unitary", "nullspace", "random_unitary",
    "MonomialElement", "ProjectiveElement", "compose", "inverse", "monomial_decompose",
    "projective_normalize",
    "OrbitSet", "StabilizerGroup", "list_stabilizer", "orbit", "pair_stabilizer",
    "verify_center_proposition",
]
