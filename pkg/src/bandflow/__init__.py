"""Stability and curvature of zonal flows on truncated ellipsoid bands.

The package walks one chain of geometry: solve the arc-length profile of
a band of an ellipsoid of revolution, build divergence-free velocity
fields on it, decide Arnold stability of the zonal ones, evaluate the
curvature form that detects conjugate points, and search for parameter
pairs where stability and positive curvature hold at once.
"""
from .errors import (
    BandflowError,
    BoundaryViolation,
    ConvergenceFailure,
    DivisionNearZero,
    EventNotReached,
    NegativeRadicand,
    QuadratureFailure,
    TangencyViolation,
    ToleranceFailure,
)
from .fields import (
    FIELD_COLUMNS,
    HodgeCoefficients,
    StreamFunction,
    VectorField,
    ZonalField,
    ZonalVelocityProfile,
    divergence,
    fprime_from_f,
    fprime_from_psi,
    fprime_numerator,
    fprime_ratio,
    hodge_star,
    radial_gradient,
    radial_laplacian,
    radial_table,
    zonal_from_f,
)
from .geometry import (
    PROFILE_COLUMNS,
    ChristoffelSymbols,
    ProfileCurve,
    ProfileFrame,
    SurfaceSpec,
    arc_length_from_height,
    connection,
    curvature_defect,
    profile_table,
    solve_profile,
)
from .misiolek import (
    MC_METHODS,
    BumpField,
    MCResult,
    StreamPotentialField,
    bump_field,
    field_from_stream,
    mc_bump_formula,
    mc_direct,
    mc_reduced,
    optimal_bump_ratio,
)
from .profiles import (
    ConstantProfile,
    CurvePowerProfile,
    GaussianProfile,
    HelmholtzProfile,
    PlateauProfile,
    PolynomialProfile,
    RadialProfile,
)
from .quadrature import IntegralResult, adaptive_gauss_legendre
from .serialize import (
    canonical_json,
    config_digest,
    fmt_float,
    jsonify,
    pretty_json,
    render_csv,
    write_csv,
    write_json,
)
from .stability import (
    EigenEstimate,
    Lambda1Result,
    ProfileConditions,
    StabilityReport,
    check_arnold,
    lambda1,
    lambda1_mode,
    profile_conditions,
)
from .witness import (
    SWEEP_COLUMNS,
    CandidateOutcome,
    WitnessResult,
    WitnessSearchConfig,
    find_witness,
    sweep,
    sweep_summary,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BandflowError",
    "BoundaryViolation",
    "ConvergenceFailure",
    "DivisionNearZero",
    "EventNotReached",
    "NegativeRadicand",
    "QuadratureFailure",
    "TangencyViolation",
    "ToleranceFailure",
    "FIELD_COLUMNS",
    "HodgeCoefficients",
    "StreamFunction",
    "VectorField",
    "ZonalField",
    "ZonalVelocityProfile",
    "divergence",
    "fprime_from_f",
    "fprime_from_psi",
    "fprime_numerator",
    "fprime_ratio",
    "hodge_star",
    "radial_gradient",
    "radial_laplacian",
    "radial_table",
    "zonal_from_f",
    "PROFILE_COLUMNS",
    "ChristoffelSymbols",
    "ProfileCurve",
    "ProfileFrame",
    "SurfaceSpec",
    "arc_length_from_height",
    "connection",
    "curvature_defect",
    "profile_table",
    "solve_profile",
    "MC_METHODS",
    "BumpField",
    "MCResult",
    "StreamPotentialField",
    "bump_field",
    "field_from_stream",
    "mc_bump_formula",
    "mc_direct",
    "mc_reduced",
    "optimal_bump_ratio",
    "ConstantProfile",
    "CurvePowerProfile",
    "GaussianProfile",
    "HelmholtzProfile",
    "PlateauProfile",
    "PolynomialProfile",
    "RadialProfile",
    "IntegralResult",
    "adaptive_gauss_legendre",
    "canonical_json",
    "config_digest",
    "fmt_float",
    "jsonify",
    "pretty_json",
    "render_csv",
    "write_csv",
    "write_json",
    "EigenEstimate",
    "Lambda1Result",
    "ProfileConditions",
    "StabilityReport",
    "check_arnold",
    "lambda1",
    "lambda1_mode",
    "profile_conditions",
    "SWEEP_COLUMNS",
    "CandidateOutcome",
    "WitnessResult",
    "WitnessSearchConfig",
    "find_witness",
    "sweep",
    "sweep_summary",
]
