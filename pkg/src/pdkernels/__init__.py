"""Positive definite kernels, reproducing kernels, and scattered-data
interpolation on regular domains via sphere-quadrant embeddings."""

from .domains import (
    Domain,
    DomainError,
    DomainPoint,
    MembershipError,
    cos_distance,
    distance,
    embed,
    load_points,
    parse_domain,
    points_from_coords,
    sample,
    save_points,
    unembed,
)
from .gegenbauer import (
    CoefficientSeries,
    QuadratureRule,
    gauss_rule,
    gegenbauer_eval,
    norm_hn,
    project_coefficients,
    series_eval,
    zn_eval,
)
from .interpolation import Interpolant, NotPositiveDefiniteError, evaluate, fit
from .kernels import (
    KernelMatrix,
    PsdReport,
    kernel_matrix,
    psd_check,
    rank_bound,
    reproducing_kernel,
    same_sheet_plus_kernel,
)
from .verification import (
    SuiteReport,
    compare_addition_variants,
    verify_antipodal_failure,
    verify_distance_preservation,
    verify_psd_sufficiency,
    verify_quadrant_integral_identity,
    verify_rank_collapse,
    verify_reproducing,
)

__version__ = "1.0.0"

__all__ = [
    "Domain",
    "DomainError",
    "DomainPoint",
    "MembershipError",
    "cos_distance",
    "distance",
    "embed",
    "unembed",
    "sample",
    "parse_domain",
    "points_from_coords",
    "load_points",
    "save_points",
    "CoefficientSeries",
    "QuadratureRule",
    "gauss_rule",
    "gegenbauer_eval",
    "norm_hn",
    "project_coefficients",
    "series_eval",
    "zn_eval",
    "Interpolant",
    "NotPositiveDefiniteError",
    "fit",
    "evaluate",
    "KernelMatrix",
    "PsdReport",
    "kernel_matrix",
    "psd_check",
    "rank_bound",
    "reproducing_kernel",
    "same_sheet_plus_kernel",
    "SuiteReport",
    "compare_addition_variants",
    "verify_antipodal_failure",
    "verify_distance_preservation",
    "verify_psd_sufficiency",
    "verify_quadrant_integral_identity",
    "verify_rank_collapse",
    "verify_reproducing",
]
