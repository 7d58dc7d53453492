"""Order-6 complex Hadamard matrices by dilation of 3x3 unimodular seeds.

The package constructs 6x6 complex Hadamard matrices containing a given
3x3 unimodular block, verifies the algebraic identities the construction
rests on, and classifies outputs against the known degenerate families.
"""

__version__ = "0.1.0"

from .core import (
    DEFAULT_TOL,
    DegenerateDenominatorError,
    DegenerateFamilyError,
    FitError,
    Hadamard6Error,
    InterpolationError,
    NotCompletableError,
    NotHermitianError,
    NumericalAnomalyError,
    SigmaTooLargeError,
    SingularMatrixError,
    Tolerances,
    ZeroDenominatorError,
    adjoint,
    det3,
    herm_eigs3,
    inv3,
    mat_mul,
    turns_from_unit,
    unit_from_turns,
)
from .triplet import (
    PsiBranch,
    TripletStats,
    complete_triplet,
    decomposition,
    haagerup_poly,
    psi_candidates,
    triplet_residual,
    triplet_stats,
)
from .classify import (
    ClassReport,
    K63Flags,
    canonical_condition,
    classify_matrix,
    contraction_precheck,
    dephase,
    fingerprint,
    fourier6,
    is_hadamard,
    k63_indicators,
    s6_detect,
    tao_s6,
    unbiased,
    vanishing_minor,
)
from .dilation import (
    DilationReport,
    Quadruple,
    QuadCoeffs,
    Rejection,
    Sextuple,
    assemble,
    build_solb,
    build_solc,
    circle_roots,
    companion,
    companion_candidates,
    dilate,
    example_quadruple,
    fundamental_value,
    quad_coeffs,
    special_e,
)
from .oracle import (
    FundamentalPoly,
    SixthRootTriplet,
    completion_recheck,
    fit_fundamental_poly,
    mil_check,
    poly_roots,
    sixth_root_triplets,
)

__all__ = [name for name in dir() if not name.startswith("_")]
