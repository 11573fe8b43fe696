"""Exact reduction of periodic cluster maps to Darboux coordinates."""

from .estimator import CartanReducer
from .exceptions import QuiverError
from .forms import (
    LogTwoForm,
    check_form_invariance,
    log_jacobian,
    pullback_by_mutation,
    pullback_by_sigma,
    rank_and_kernel,
    scale_form,
    standard_form,
)
from .orbit import orbit
from .quiver import (
    ExchangeMatrix,
    IterationMap,
    detect_period,
    fomin6,
    is_period,
    iteration_map,
    mutate_matrix,
    mutate_point,
    new_exchange_matrix,
    render_recurrence,
    sigma_conjugate,
)
from .reduction import (
    DarbouxBasis,
    ReducedMapEvaluator,
    apply_post_transform,
    build_section,
    cartan_reduce,
    projection,
    reduced_expression,
    reduced_map_eval,
    verify_commutation,
    verify_darboux,
    verify_fiber_invariance,
    verify_symplectic,
)

__version__ = "0.1.0"

__all__ = [
    "CartanReducer",
    "DarbouxBasis",
    "ExchangeMatrix",
    "IterationMap",
    "LogTwoForm",
    "QuiverError",
    "ReducedMapEvaluator",
    "apply_post_transform",
    "build_section",
    "cartan_reduce",
    "check_form_invariance",
    "detect_period",
    "fomin6",
    "is_period",
    "iteration_map",
    "log_jacobian",
    "mutate_matrix",
    "mutate_point",
    "new_exchange_matrix",
    "orbit",
    "projection",
    "pullback_by_mutation",
    "pullback_by_sigma",
    "rank_and_kernel",
    "reduced_expression",
    "reduced_map_eval",
    "render_recurrence",
    "scale_form",
    "sigma_conjugate",
    "standard_form",
    "verify_commutation",
    "verify_darboux",
    "verify_fiber_invariance",
    "verify_symplectic",
]
