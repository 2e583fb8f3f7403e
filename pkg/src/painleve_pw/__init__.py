"""Exact verification of P = W for the Painleve character varieties."""

from .cubic import (
    AffineSingularityError,
    CaseError,
    ParameterError,
    ProjectiveCubic,
    affine_smooth_check,
    default_registry,
    load_registry,
    make_case,
    singular_points_at_infinity,
)
from .hodge import HodgePolynomial
from .kodaira import (
    dolbeault_report,
    euler_characteristic,
    fiber,
    fiber_class,
    identify_fiber,
    lattice_certificate,
    motivic_class,
    perverse_polynomial,
)
from .nerve import build_nerve, weight_polynomial, weight_report
from .pipeline import (
    CaseReport,
    analyze_all,
    analyze_case,
    betti_match,
    emit_tables,
    euler_consistency,
    verify_pw,
)
from .polynomial import MultiPoly, homogenize, parse_poly
from .singularity import (
    ClassificationError,
    NonIsolatedError,
    bruce_wall_classify,
    classify,
    hessian_corank,
    milnor_number,
)

__version__ = "0.1.0"
