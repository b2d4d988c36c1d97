"""Condition numbers and subspace geometry for homogeneous conic feasibility.

The package computes and cross-validates the matrix condition number,
the coordinate-free Grassmann condition of a subspace, the Renegar
condition of a matrix, and the GCC condition for the orthant, together
with the Grassmann-manifold distance toolkit and explicit minimal
perturbation witnesses.
"""

from .condition import (
    ConditionValue,
    PerturbationWitness,
    distance_to_primal_feasible,
    grassmann_condition,
    inclusion_radius_check,
    iteration_bound_estimate,
    renegar_condition,
    sigma_distances,
    witness_flip_dual_to_primal,
    witness_image,
    witness_kernel,
)
from .cones import (
    Cone,
    ConeAngleResult,
    Feasibility,
    FeasibilityStatus,
    Lorentz,
    Negated,
    Orthant,
    Product,
    classify_feasibility,
    cone_membership,
    cone_subspace_angle,
    dual_cone,
    extremize_quadratic_over_cone,
    parse_cone,
)
from .errors import (
    ConeSpecError,
    ConicCondError,
    DimensionError,
    EmptyInput,
    InconsistentClassification,
    NonUnitPoint,
    NotBalanced,
    NotDualFeasible,
    NotPrimalFeasible,
    NumericalFailure,
    RankDeficient,
    XInComplement,
    ZeroColumn,
    ZeroVector,
)
from .gcc import SphericalCap, gcc_condition, smallest_enclosing_cap
from .grassmann import (
    Subspace,
    angle_point_subspace,
    complement,
    distance_to_spaces_containing,
    grassmann_distances,
    principal_angles,
    subspace_from_rowspan,
)
from .harness import (
    ExperimentConfig,
    TrialRecord,
    condition_report,
    gaussian,
    gaussian_matrix,
    oracle_cone_angle,
    oracle_perturbation_bracket,
    random_subspace,
    read_matrix,
    run_experiment,
    trial_stream,
    write_matrix,
)
from .linalg import (
    PolarFactors,
    SvdFactorization,
    is_balanced,
    kappa,
    matrix_norms,
    polar_decompose,
    pseudoinverse,
    rank_deficiency_distance,
    svd_factorize,
)

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "ConeAngleResult",
    "ConeSpecError",
    "ConicCondError",
    "ConditionValue",
    "DimensionError",
    "EmptyInput",
    "ExperimentConfig",
    "Feasibility",
    "FeasibilityStatus",
    "InconsistentClassification",
    "Lorentz",
    "Negated",
    "NonUnitPoint",
    "NotBalanced",
    "NotDualFeasible",
    "NotPrimalFeasible",
    "NumericalFailure",
    "Orthant",
    "PerturbationWitness",
    "PolarFactors",
    "Product",
    "RankDeficient",
    "SphericalCap",
    "Subspace",
    "SvdFactorization",
    "TrialRecord",
    "XInComplement",
    "ZeroColumn",
    "ZeroVector",
    "angle_point_subspace",
    "classify_feasibility",
    "complement",
    "condition_report",
    "cone_membership",
    "cone_subspace_angle",
    "distance_to_primal_feasible",
    "distance_to_spaces_containing",
    "dual_cone",
    "extremize_quadratic_over_cone",
    "gaussian",
    "gaussian_matrix",
    "gcc_condition",
    "grassmann_condition",
    "grassmann_distances",
    "inclusion_radius_check",
    "is_balanced",
    "iteration_bound_estimate",
    "kappa",
    "matrix_norms",
    "oracle_cone_angle",
    "oracle_perturbation_bracket",
    "parse_cone",
    "polar_decompose",
    "principal_angles",
    "pseudoinverse",
    "random_subspace",
    "rank_deficiency_distance",
    "read_matrix",
    "renegar_condition",
    "run_experiment",
    "sigma_distances",
    "smallest_enclosing_cap",
    "subspace_from_rowspan",
    "svd_factorize",
    "trial_stream",
    "witness_flip_dual_to_primal",
    "witness_image",
    "witness_kernel",
    "write_matrix",
]
