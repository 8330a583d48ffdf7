"""Weighted fractional Brownian sheets.

Analytic covariance structure, exact Gaussian simulation on grids, a
Poisson particle-system approximation whose occupation-time fluctuations
converge to the sheet, and statistical verification of the limit
behavior (increment asymptotics, long-range dependence, path
regularity, particle-system convergence).
"""

from .covariance import (
    Rect,
    RayQuery,
    amplitude_D,
    long_increment_limit,
    lrd_limit,
    ray_lrd_limit,
    ray_regime_sign,
    rect_increment_cov,
    rect_increment_var,
    rescaled_increment_constant,
    sheet_cov,
    short_increment_limit,
    wfbm_cov,
)
from .errors import (
    DomainError,
    InvalidRect,
    NotPSD,
    OutOfRange,
    QuadratureFailure,
    TooFewReplications,
    WfbsError,
)
from .fields import (
    FieldSample,
    GridSpec,
    build_axis_cov,
    cholesky_psd,
    sample_field,
    sample_field_array,
)
from .params import (
    HolderExponents,
    ParticleParams,
    WfbsParams,
    holder_exponents,
    hurst_from_alpha,
    params_from_particle,
    validate_wfbs_params,
)
from .particles import (
    OccupationEnsemble,
    ParticleConfig,
    TestFunction,
    expected_occupation,
    run_ensemble,
    run_replication,
    sample_initial_points,
    truncation_radius,
)
from .prelimit import SemigroupQuery, axis_number_cov, prelimit_cov_XT
from .special import (
    reg_inc_beta,
    stable_cdf,
    stable_density,
    stable_density_at_zero,
    stable_increment_sample,
    weighted_density_integral,
)
from .verify import (
    StatReport,
    all_pass,
    check_holder,
    check_increment_limits,
    check_lrd,
    check_rescaled_increment_constant,
    check_theorem31,
    empirical_cov,
    reports_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "Rect",
    "RayQuery",
    "amplitude_D",
    "long_increment_limit",
    "lrd_limit",
    "ray_lrd_limit",
    "ray_regime_sign",
    "rect_increment_cov",
    "rect_increment_var",
    "rescaled_increment_constant",
    "sheet_cov",
    "short_increment_limit",
    "wfbm_cov",
    "DomainError",
    "InvalidRect",
    "NotPSD",
    "OutOfRange",
    "QuadratureFailure",
    "TooFewReplications",
    "WfbsError",
    "FieldSample",
    "GridSpec",
    "build_axis_cov",
    "cholesky_psd",
    "sample_field",
    "sample_field_array",
    "HolderExponents",
    "ParticleParams",
    "WfbsParams",
    "holder_exponents",
    "hurst_from_alpha",
    "params_from_particle",
    "validate_wfbs_params",
    "OccupationEnsemble",
    "ParticleConfig",
    "TestFunction",
    "expected_occupation",
    "run_ensemble",
    "run_replication",
    "sample_initial_points",
    "truncation_radius",
    "SemigroupQuery",
    "axis_number_cov",
    "prelimit_cov_XT",
    "reg_inc_beta",
    "stable_cdf",
    "stable_density",
    "stable_density_at_zero",
    "stable_increment_sample",
    "weighted_density_integral",
    "StatReport",
    "all_pass",
    "check_holder",
    "check_increment_limits",
    "check_lrd",
    "check_rescaled_increment_constant",
    "check_theorem31",
    "empirical_cov",
    "reports_to_json",
]
