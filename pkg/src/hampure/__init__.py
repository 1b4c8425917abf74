"""Commuting extensions of Hermitian operator sets.

Given operators h_1..h_m on a d-dimensional space, the library constructs
pairwise-commuting operators H_1..H_m on a larger space whose corner blocks
recover the originals, verifies such bundles numerically, demonstrates the
project-evolve limit they enable, computes Lie closures of projected pairs,
and maps the minimal feasible extension dimension by direct optimization.
"""

from .algebra import (
    AlgebraPurifier,
    RealLinearMap,
    SurjectivityReport,
    build_algebra_purifier,
    pauli_string_operator,
    project_pauli_string,
    purify_full_basis,
    purify_pauli_string,
    sigma_matrices,
    sigma_purification,
    surjectivity_test,
)
from .constructions import (
    Purification,
    VerificationReport,
    conjugate,
    pair_lower_bound,
    purify_m_md,
    purify_pair_qubit,
    purify_pair_schur,
    purify_pair_tensor,
    recombine,
    shift,
    trivial_embedding,
    verify,
)
from .lie import (
    CommutingPairReport,
    LieClosureReport,
    generator_pair,
    generator_purification,
    lie_closure,
    random_commuting_pair_test,
)
from .linalg import (
    DiagonalSpec,
    HermitianOperator,
    ProjectionConvention,
    UnitaryOperator,
    commutator,
    complete_to_unitary,
    default_tolerance,
    eig_hermitian,
    embed,
    hermitian_coords,
    hermitian_from_coords,
    project,
    random_hermitian,
    random_unitary_haar,
)
from .search import (
    FrontierRow,
    SearchProblem,
    SearchResult,
    frontier_scan,
    residual,
    search,
)
from .zeno import ZenoRun, loglog_slope, zeno_limit_error, zeno_product, zeno_run

__all__ = [
    "AlgebraPurifier",
    "CommutingPairReport",
    "DiagonalSpec",
    "FrontierRow",
    "HermitianOperator",
    "LieClosureReport",
    "ProjectionConvention",
    "Purification",
    "RealLinearMap",
    "SearchProblem",
    "SearchResult",
    "SurjectivityReport",
    "UnitaryOperator",
    "VerificationReport",
    "ZenoRun",
    "build_algebra_purifier",
    "commutator",
    "complete_to_unitary",
    "conjugate",
    "default_tolerance",
    "eig_hermitian",
    "embed",
    "frontier_scan",
    "generator_pair",
    "generator_purification",
    "hermitian_coords",
    "hermitian_from_coords",
    "lie_closure",
    "loglog_slope",
    "pair_lower_bound",
    "pauli_string_operator",
    "project",
    "project_pauli_string",
    "purify_full_basis",
    "purify_m_md",
    "purify_pair_qubit",
    "purify_pair_schur",
    "purify_pair_tensor",
    "purify_pauli_string",
    "random_commuting_pair_test",
    "random_hermitian",
    "random_unitary_haar",
    "recombine",
    "residual",
    "search",
    "shift",
    "sigma_matrices",
    "sigma_purification",
    "surjectivity_test",
    "trivial_embedding",
    "verify",
    "zeno_limit_error",
    "zeno_product",
    "zeno_run",
]

__version__ = "0.1.0"
