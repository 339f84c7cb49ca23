"""Certified numerical bounds for Toeplitz operators with Blaschke symbols.

The package computes two-sided brackets for the operator norm of T_B, the
analytic projection of multiplication by the conjugate of a finite Blaschke
product B. Upper bounds come from an oscillation functional evaluated by
adaptive quadrature; lower bounds come from explicit interpolation witnesses
whose norms are certified, not estimated. The extremal ray construction
reproduces the growth 1 + 2n of the supremum over degree-n symbols.
"""

from .circle_quad import (
    DEFAULT_LAMBDA_SPEC,
    DEFAULT_SPEC,
    LambdaResult,
    QuadratureSpec,
    integrate_circle,
    lambda_at_rotation,
    lambda_functional,
)
from .disk_core import (
    BlaschkeProduct,
    CirclePoint,
    MoebiusFactor,
    UnitDiskPoint,
    boundary_values,
    eval_blaschke,
    eval_blaschke_derivative,
    eval_moebius,
    pseudohyperbolic_distance,
)
from .errors import (
    InvalidConfiguration,
    NotStrictlyFeasible,
    NumericalBreakdown,
    PointCollision,
    RepeatedZero,
    ToeplitzBoundsError,
    ToleranceNotMet,
)
from .omega_bounds import (
    LowerBoundCertificate,
    NormBracket,
    RayConfiguration,
    StudyResult,
    StudyRow,
    bracket_norm,
    build_configuration,
    certify_lower_bound,
    closed_form_functional,
    direct_norm_estimate,
    ideal_limit,
    omega_convergence_study,
    study_to_csv,
    study_to_json,
)
from .pick_interp import (
    InterpolantCertificate,
    InterpolationProblem,
    PickMatrix,
    construct_interpolant,
    minimal_level,
    pick_feasible,
    pick_matrix,
)
from .toeplitz_op import (
    RationalFunction,
    ToeplitzApplication,
    apply_toeplitz_contour,
    apply_toeplitz_residue,
    lemma1_upper_bound,
)

__all__ = [
    "BlaschkeProduct",
    "CirclePoint",
    "DEFAULT_LAMBDA_SPEC",
    "DEFAULT_SPEC",
    "InterpolantCertificate",
    "InterpolationProblem",
    "InvalidConfiguration",
    "LambdaResult",
    "LowerBoundCertificate",
    "MoebiusFactor",
    "NormBracket",
    "NotStrictlyFeasible",
    "NumericalBreakdown",
    "PickMatrix",
    "PointCollision",
    "QuadratureSpec",
    "RationalFunction",
    "RayConfiguration",
    "RepeatedZero",
    "StudyResult",
    "StudyRow",
    "ToeplitzApplication",
    "ToeplitzBoundsError",
    "ToleranceNotMet",
    "UnitDiskPoint",
    "apply_toeplitz_contour",
    "apply_toeplitz_residue",
    "boundary_values",
    "bracket_norm",
    "build_configuration",
    "certify_lower_bound",
    "closed_form_functional",
    "construct_interpolant",
    "direct_norm_estimate",
    "eval_blaschke",
    "eval_blaschke_derivative",
    "eval_moebius",
    "ideal_limit",
    "integrate_circle",
    "lambda_at_rotation",
    "lambda_functional",
    "lemma1_upper_bound",
    "minimal_level",
    "omega_convergence_study",
    "pick_feasible",
    "pick_matrix",
    "pseudohyperbolic_distance",
    "study_to_csv",
    "study_to_json",
]

__version__ = "0.1.0"
