"""Exact-arithmetic cohomology, formal deformations and abelian extensions
for morphisms of Lie-Yamaguti algebras."""

from .algebra import (
    ConstructionError,
    LieYamagutiAlgebra,
    MorphismLYA,
    check_axioms,
    check_homomorphism_pair,
    check_morphism,
    compose_morphisms,
    from_leibniz,
    from_lie,
)
from .cochain import (
    CochainPair,
    DiagonalCochain,
    EvenCochain,
    MorphismCochain23,
    OddCochain,
    cochain_space_dim,
    postcompose_cochain,
    pullback_cochain,
)
from .cohomology import (
    CohomologyReport,
    ComplexError,
    MorphismCohomologyReport,
    MorphismComplex,
    coboundary_matrix,
    coboundary_preimage,
    cohomology_23,
    diagonal_coboundary,
    morphism_coboundary_23,
    morphism_coboundary_45,
    morphism_cohomology_23,
    pair_coboundary,
)
from .deformation import (
    EquivalenceData,
    FormalDeformation,
    ReduceResult,
    RigidityReport,
    apply_equivalence,
    infinitesimal_cocycle_check,
    n_infinitesimal,
    rigidity_check,
    try_reduce,
    verify_deformation,
)
from .extension import (
    AbelianExtension,
    ExtensionError,
    NotCohomologousError,
    Section,
    canonical_section,
    check_extension,
    cocycle_from_extension,
    extension_from_cocycle,
    induced_representation,
    isomorphism_from_cohomologous,
)
from .linalg import Matrix, Subspace, kernel_basis, rref, solve_membership
from .models import ModelError, ModelFile, parse_model, serialize_model
from .reports import CheckReport
from .representation import (
    MorphismRepresentation,
    Representation,
    adjoint_representation,
    check_morphism_representation,
    check_representation,
    hom_induced_representation,
    pullback_representation,
    self_morphism_representation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
