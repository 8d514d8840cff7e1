"""rhalylab: numerical laboratory for generalized Cesaro (Rhaly)
operators between weighted Dirichlet-type coefficient spaces."""

from .cesaro import SectionMatrix, apply, apply_adjoint, apply_section, f_eta, section
from .coeffspace import CoeffSeq, SpaceParams, monomial, norm_sq, weight, weight_vector
from .criteria import (
    CarlesonReport,
    CriterionReport,
    carleson_statistic,
    criterion,
    decreasing_shortcut,
    dyadic_grid,
    partial_sum_form,
    tail_majorant,
    tail_sum,
)
from .etagen import (
    EtaSeq,
    MeasureSpec,
    classical_cesaro,
    explicit_eta,
    measure_from_json,
    measure_moments,
    power_log_family,
)
from .normest import NormEstimate, dense_svd_norm, residual_norm, section_norm
from .testfuncs import (
    Certificate,
    b_grid,
    bennett_check,
    default_truncation,
    g_b_alpha,
    h_b,
    log_kernel,
    log_schur_weight,
    lower_bound,
    schur_certify,
)

__version__ = "0.1.0"

__all__ = [
    "CoeffSeq",
    "SpaceParams",
    "weight",
    "weight_vector",
    "norm_sq",
    "monomial",
    "EtaSeq",
    "MeasureSpec",
    "classical_cesaro",
    "measure_moments",
    "power_log_family",
    "explicit_eta",
    "measure_from_json",
    "apply",
    "f_eta",
    "section",
    "apply_section",
    "apply_adjoint",
    "SectionMatrix",
    "NormEstimate",
    "section_norm",
    "dense_svd_norm",
    "residual_norm",
    "CriterionReport",
    "CarlesonReport",
    "criterion",
    "partial_sum_form",
    "decreasing_shortcut",
    "carleson_statistic",
    "tail_sum",
    "tail_majorant",
    "dyadic_grid",
    "Certificate",
    "b_grid",
    "default_truncation",
    "h_b",
    "g_b_alpha",
    "log_kernel",
    "log_schur_weight",
    "lower_bound",
    "schur_certify",
    "bennett_check",
]
