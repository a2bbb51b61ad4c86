"""Orthogonal and paraorthogonal polynomials on the unit circle from
parametric Toeplitz moment sequences, with numerical checks of the
monotonicity of Toeplitz determinants and paraorthogonal zeros."""

from .moments import (
    MomentSequence,
    eval_moment,
    make_family,
    moment_derivative,
    moments_array,
    perturb,
    point_masses,
)
from .toeplitz import (
    build_toeplitz,
    determinant,
    general_minor,
    jacobi_det_derivative,
    leading_principal_minors,
)
from .opuc import (
    NotPositiveDefinite,
    OPUCFamily,
    cd_kernel_eval,
    cd_kernel_poly,
    heine_opuc,
    inner_product,
    reversed_poly,
    szego_family,
)
from .popuc import b_from_zero, build_popuc, popuc_zeros, quadrature_rule
from .structure import (
    bk_conjugate_pair,
    bk_pair_theta0,
    is_hurwitz,
    pf_window_check,
    sign_pattern_check,
    weighted_laurent,
)
from .markov import (
    BSpec,
    detc_sweep,
    explore_conjecture,
    predicted_zero_sign,
    track_popuc_zeros,
    verify,
    zero_velocity,
)

__version__ = "0.1.0"

__all__ = [
    "BSpec",
    "MomentSequence",
    "NotPositiveDefinite",
    "OPUCFamily",
    "b_from_zero",
    "bk_conjugate_pair",
    "bk_pair_theta0",
    "build_popuc",
    "build_toeplitz",
    "cd_kernel_eval",
    "cd_kernel_poly",
    "detc_sweep",
    "determinant",
    "eval_moment",
    "explore_conjecture",
    "general_minor",
    "heine_opuc",
    "inner_product",
    "is_hurwitz",
    "jacobi_det_derivative",
    "leading_principal_minors",
    "make_family",
    "moment_derivative",
    "moments_array",
    "perturb",
    "pf_window_check",
    "point_masses",
    "popuc_zeros",
    "predicted_zero_sign",
    "quadrature_rule",
    "reversed_poly",
    "sign_pattern_check",
    "szego_family",
    "track_popuc_zeros",
    "verify",
    "weighted_laurent",
    "zero_velocity",
]
