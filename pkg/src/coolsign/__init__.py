"""Bidirectional algorithmic-cooling simulators and shot-noise analysis for
sign-based quantum classification."""

from .klocal import (
    KLocalAsymptotics,
    alpha_infinity_3local,
    asymptotic_population_vector,
    build_uqr_3local,
    fibonacci,
    reduction_factor_qr_3local,
)
from .refrigerator import (
    ConvergenceError,
    RefrigeratorConfig,
    SteadyStateResult,
    alpha_infinity,
    build_round_matrix,
    build_ucj,
    build_uqr,
    optimal_bound_simulate,
    recycle_cycle,
    reduction_factor_bound,
    reduction_factor_qr,
    round_channel,
    steady_state,
)
from .sampling import (
    BudgetError,
    EnsemblePair,
    HingeActivity,
    MarginConfig,
    ResourceComparison,
    ShotExperiment,
    chebyshev_bound,
    discrimination_error,
    exact_sign_error,
    hinge_gradient_activity,
    monte_carlo_sign_error,
    predict_error_bound,
    resource_matched_comparison,
    train_error_bound,
)
from .single_shot import (
    CompressionResult,
    alpha_ac,
    alpha_ac_erf,
    compression_permutation,
    error_reduction_factor,
    optimal_compression,
    reduction_factor_ac,
    reduction_factor_ac_low_approx,
)
from .states import (
    DiagonalState,
    PermutationSpec,
    apply_permutation,
    identity_permutation,
    marginal_target,
    pairwise_sum,
    permutation_from_map,
    permutation_from_swaps,
    product_state,
    tensor,
    trace_out_first,
    trace_out_last,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CompressionResult",
    "ConvergenceError",
    "DiagonalState",
    "EnsemblePair",
    "HingeActivity",
    "KLocalAsymptotics",
    "MarginConfig",
    "PermutationSpec",
    "RefrigeratorConfig",
    "ResourceComparison",
    "ShotExperiment",
    "SteadyStateResult",
    "alpha_ac",
    "alpha_ac_erf",
    "alpha_infinity",
    "alpha_infinity_3local",
    "apply_permutation",
    "asymptotic_population_vector",
    "build_round_matrix",
    "build_ucj",
    "build_uqr",
    "build_uqr_3local",
    "chebyshev_bound",
    "compression_permutation",
    "discrimination_error",
    "error_reduction_factor",
    "exact_sign_error",
    "fibonacci",
    "hinge_gradient_activity",
    "identity_permutation",
    "marginal_target",
    "monte_carlo_sign_error",
    "optimal_bound_simulate",
    "optimal_compression",
    "pairwise_sum",
    "permutation_from_map",
    "permutation_from_swaps",
    "predict_error_bound",
    "product_state",
    "recycle_cycle",
    "reduction_factor_ac",
    "reduction_factor_ac_low_approx",
    "reduction_factor_bound",
    "reduction_factor_qr",
    "reduction_factor_qr_3local",
    "resource_matched_comparison",
    "round_channel",
    "steady_state",
    "tensor",
    "trace_out_first",
    "trace_out_last",
    "train_error_bound",
]
