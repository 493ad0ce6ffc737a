"""Construction and numerical certification of semiholomorphic polynomials
whose zero sets on small three-spheres are prescribed braid closures."""

from .errors import (
    AmbiguousMatch,
    CertificationFailure,
    DegenerateCrossing,
    Exhausted,
    InvalidInput,
    MixedResidues,
    NegativeExponent,
    NoConvergence,
    NoSignChange,
    OddExponent,
    TooCloseToZeroSet,
    UnequalComponents,
    ZeroAtCritical,
)
from .trigpoly import TrigPoly
from .braidlib import (
    BraidComponent,
    BraidParam,
    BraidWord,
    closure_permutation,
    extract_word,
    from_fourier,
    is_strictly_homogeneous,
    lemniscate,
    permutation_cycles,
    positions,
    positions_grid,
    square_parametrisation,
    word_of_param,
    word_permutation,
    word_symmetry,
)
from .construct import (
    GradedBraidPoly,
    MixedPoly,
    ScalingExponents,
    choose_k,
    derive_scaling,
    eval_graded,
    eval_poly,
    eval_product,
    expand_g,
    homogenize,
    homogenize_graded,
    jacobian_real,
    polar_rt_derivs,
    u_deriv_coeffs,
    u_poly_coeffs,
    wirtinger,
)
from .numerics import (
    ComplexPoly,
    all_roots,
    backend_name,
    bisect,
    fd_jacobian,
    roots_batch,
)
from .certify import (
    Certificate,
    arg_crit_scan,
    d_regularity_check,
    isolation_check,
    radial_identity_check,
    sphere_link_check,
    tune_lambda,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousMatch",
    "BraidComponent",
    "BraidParam",
    "BraidWord",
    "Certificate",
    "CertificationFailure",
    "ComplexPoly",
    "DegenerateCrossing",
    "Exhausted",
    "GradedBraidPoly",
    "InvalidInput",
    "MixedPoly",
    "MixedResidues",
    "NegativeExponent",
    "NoConvergence",
    "NoSignChange",
    "OddExponent",
    "ScalingExponents",
    "TooCloseToZeroSet",
    "TrigPoly",
    "UnequalComponents",
    "ZeroAtCritical",
    "all_roots",
    "arg_crit_scan",
    "backend_name",
    "bisect",
    "choose_k",
    "closure_permutation",
    "d_regularity_check",
    "derive_scaling",
    "eval_graded",
    "eval_poly",
    "eval_product",
    "expand_g",
    "extract_word",
    "fd_jacobian",
    "from_fourier",
    "homogenize",
    "homogenize_graded",
    "is_strictly_homogeneous",
    "isolation_check",
    "jacobian_real",
    "lemniscate",
    "permutation_cycles",
    "polar_rt_derivs",
    "positions",
    "positions_grid",
    "radial_identity_check",
    "roots_batch",
    "sphere_link_check",
    "square_parametrisation",
    "tune_lambda",
    "u_deriv_coeffs",
    "u_poly_coeffs",
    "wirtinger",
    "word_of_param",
    "word_permutation",
    "word_symmetry",
    "__version__",
]
