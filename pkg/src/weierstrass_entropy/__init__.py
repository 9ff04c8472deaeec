"""Weierstrass fractal kernel, its RKHS, and covering-number bounds for the embedding into C([-1, 1])."""

from ._backend import BACKEND
from .bounds import (
    BoundReport,
    bound_report,
    bound_table,
    choose_truncation,
    envelope,
    gram_det_certificate,
    lower_ln_cover,
    upper_ln_cover,
)
from .empirical import (
    CoverDescription,
    PackingResult,
    constructive_cover,
    coverage_check,
    empirical_report,
    greedy_packing,
    pairwise_sup_distances,
    sample_unit_ball,
)
from .errors import DegenerateError, DomainError, ParamMismatchError
from .kernel import (
    TruncationPlan,
    WeierstrassParams,
    eval_kernel,
    eval_weierstrass,
    gram_matrix,
    make_params,
    truncation_order,
)
from .operators import (
    ProjectionSplit,
    apply_head_projection,
    apply_tail_projection,
    embedding_norm_sq,
    projection_split,
)
from .rkhs import (
    RkhsFunction,
    basis_function,
    evaluate,
    kernel_section,
    l2_inner,
    rkhs_inner,
    rkhs_norm,
    sup_norm_bracket,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundReport",
    "CoverDescription",
    "DegenerateError",
    "DomainError",
    "PackingResult",
    "ParamMismatchError",
    "ProjectionSplit",
    "RkhsFunction",
    "TruncationPlan",
    "WeierstrassParams",
    "apply_head_projection",
    "apply_tail_projection",
    "basis_function",
    "bound_report",
    "bound_table",
    "choose_truncation",
    "constructive_cover",
    "coverage_check",
    "embedding_norm_sq",
    "empirical_report",
    "envelope",
    "eval_kernel",
    "eval_weierstrass",
    "evaluate",
    "gram_det_certificate",
    "gram_matrix",
    "greedy_packing",
    "kernel_section",
    "l2_inner",
    "lower_ln_cover",
    "make_params",
    "pairwise_sup_distances",
    "projection_split",
    "rkhs_inner",
    "rkhs_norm",
    "sample_unit_ball",
    "sup_norm_bracket",
    "truncation_order",
    "upper_ln_cover",
]
