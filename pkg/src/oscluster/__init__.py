"""Subspace clustering for sequentially ordered data.

Two linearized alternating-direction solvers recover a sparse
self-expressive coefficient matrix whose neighbouring columns are pushed
toward each other, so the affinity it induces segments the sample order
into subspaces.  The package adds spectral clustering, cluster-count
estimation, boundary detection, reference methods, data generators,
metrics and a benchmark CLI.
"""

from .baselines import sim_closed_form, spatsc_solve, ssc_solve
from .datagen import (
    SyntheticSpec,
    add_noise_psnr,
    generate_semisynthetic,
    generate_synthetic,
)
from .exact import ExactState, exact_iteration, initial_exact_state, solve_exact
from .matio import (
    load_int_array,
    load_matrix,
    save_int_array,
    save_matrix,
)
from .metrics import psnr, sce
from .pipeline import ClusterResult, cluster_sequential, estimate_k, normalize_columns
from .relaxed import (
    RelaxedState,
    initial_relaxed_state,
    lyapunov_s,
    relaxed_iteration,
    solve_relaxed,
)
from .prox import (
    group_shrink_columns,
    ridge_error_update,
    soft_threshold,
    soft_threshold_zero_diag,
)
from .spectral import (
    build_affinity,
    detect_boundaries_peaks,
    estimate_k_eigengap,
    estimate_k_sv_threshold,
    kmeans,
    ncut_cluster,
    normalized_laplacian,
    unnormalized_laplacian,
)
from .types import (
    DivergenceError,
    SolveDiagnostics,
    SolverConfig,
    apply_difference_adjoint,
    as_coefficient_matrix,
    as_data_matrix,
    as_labels,
    build_difference_operator,
    column_differences,
    operator_norm_squared,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterResult",
    "DivergenceError",
    "ExactState",
    "RelaxedState",
    "SolveDiagnostics",
    "SolverConfig",
    "SyntheticSpec",
    "add_noise_psnr",
    "apply_difference_adjoint",
    "as_coefficient_matrix",
    "as_data_matrix",
    "as_labels",
    "build_affinity",
    "build_difference_operator",
    "cluster_sequential",
    "column_differences",
    "detect_boundaries_peaks",
    "estimate_k",
    "estimate_k_eigengap",
    "estimate_k_sv_threshold",
    "exact_iteration",
    "generate_semisynthetic",
    "generate_synthetic",
    "group_shrink_columns",
    "initial_exact_state",
    "initial_relaxed_state",
    "kmeans",
    "load_int_array",
    "load_matrix",
    "lyapunov_s",
    "ncut_cluster",
    "normalize_columns",
    "normalized_laplacian",
    "operator_norm_squared",
    "psnr",
    "relaxed_iteration",
    "ridge_error_update",
    "save_int_array",
    "save_matrix",
    "sce",
    "sim_closed_form",
    "soft_threshold",
    "soft_threshold_zero_diag",
    "solve_exact",
    "solve_relaxed",
    "spatsc_solve",
    "ssc_solve",
    "unnormalized_laplacian",
]
