"""Numerical toolkit for spectral pairs (T, Omega) at finite matrix scale.

A pair is a square matrix together with a Jordan domain containing its
numerical range and a marked base point.  The package computes numerical
ranges and radii, conformal maps of disks, ellipses and rectangles through
elliptic functions, the boundary (Herglotz) reconstruction of the analytic
functional calculus, finite Naimark and unitary dilations, and runs the
experiments around when ``w(f(T)) <= sup |f|`` holds and when it fails.
"""

from .backend import backend_name, using_compiled
from .confmap import (
    BoundaryQuadrature,
    ConformalAtlas,
    Domain,
    GMatrixResult,
    PolyApproxInfo,
    agm_complete,
    boundary_sup,
    build_atlas,
    g_of_matrix,
    h_family,
    halfplane_images,
    jacobi_sn_cn_dn,
    poly_approx,
    quadrature,
)
from .dilation import (
    DilationCheckReport,
    NaimarkModel,
    PovmDiscretization,
    dilation_calculus_check,
    egervary_dilation,
    naimark_dilate,
    povm_discretize,
    resolvent_positivity_check,
)
from .errors import (
    ArgumentError,
    ConvergenceError,
    DegreeTooHighError,
    HypothesisError,
    NonHermitianError,
    NotContractionError,
    NotPSDError,
    PoleProximityError,
    SingularMatrixError,
    SpectrumOutsideDomainError,
    WpairError,
)
from .experiments import (
    BskFuzzReport,
    EllipseParams,
    EllipseViolationReport,
    InvolutionReport,
    SquareSearchReport,
    bsk_fuzz,
    crouzeix_matrix,
    ellipse_violation,
    involution_demo,
    pair_refutation,
    random_matrix_with_radius,
    square_search,
)
from .funcalc import (
    Poly,
    RationalFn,
    blaschke_product,
    mobius_exchange,
    mobius_halfplane,
    poly_apply,
    rational_apply,
)
from .matcore import herm_eig, op_norm, psd_sqrt, solve
from .numrange import (
    RangeBoundary,
    boundary,
    boundary_csv,
    boundary_svg,
    numerical_radius,
    range_in_domain,
    support_point,
)
from .serialize import (
    canonical_json,
    load_matrix,
    matrix_from_obj,
    matrix_to_obj,
    parse_domain,
    save_matrix,
)
from .tolerances import TOL, Tolerances
from .wspec import (
    PairCheckReport,
    Teardrop,
    TeardropReport,
    check_condition_i_sampled,
    check_condition_ii,
    herglotz_apply,
    normalized_test_poly,
    teardrop_check,
)

__version__ = "0.1.0"

__all__ = [
    "TOL",
    "Tolerances",
    "ArgumentError",
    "BoundaryQuadrature",
    "BskFuzzReport",
    "ConformalAtlas",
    "ConvergenceError",
    "DegreeTooHighError",
    "DilationCheckReport",
    "Domain",
    "EllipseParams",
    "EllipseViolationReport",
    "GMatrixResult",
    "HypothesisError",
    "InvolutionReport",
    "NaimarkModel",
    "NonHermitianError",
    "NotContractionError",
    "NotPSDError",
    "PairCheckReport",
    "Poly",
    "PolyApproxInfo",
    "PoleProximityError",
    "PovmDiscretization",
    "RangeBoundary",
    "RationalFn",
    "SingularMatrixError",
    "SpectrumOutsideDomainError",
    "SquareSearchReport",
    "Teardrop",
    "TeardropReport",
    "WpairError",
    "agm_complete",
    "backend_name",
    "blaschke_product",
    "boundary",
    "boundary_csv",
    "boundary_sup",
    "boundary_svg",
    "bsk_fuzz",
    "build_atlas",
    "canonical_json",
    "check_condition_i_sampled",
    "check_condition_ii",
    "crouzeix_matrix",
    "dilation_calculus_check",
    "egervary_dilation",
    "ellipse_violation",
    "g_of_matrix",
    "h_family",
    "halfplane_images",
    "herglotz_apply",
    "herm_eig",
    "involution_demo",
    "jacobi_sn_cn_dn",
    "load_matrix",
    "matrix_from_obj",
    "matrix_to_obj",
    "mobius_exchange",
    "mobius_halfplane",
    "naimark_dilate",
    "normalized_test_poly",
    "numerical_radius",
    "op_norm",
    "pair_refutation",
    "parse_domain",
    "poly_apply",
    "poly_approx",
    "povm_discretize",
    "psd_sqrt",
    "quadrature",
    "random_matrix_with_radius",
    "range_in_domain",
    "rational_apply",
    "resolvent_positivity_check",
    "save_matrix",
    "solve",
    "square_search",
    "support_point",
    "teardrop_check",
    "using_compiled",
]
