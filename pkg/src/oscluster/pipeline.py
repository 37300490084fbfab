"""End-to-end segmentation: solve for coefficients, build the affinity,
pick the cluster count, spectral-cluster.

Columns are scaled to unit norm before solving (opt out with
``normalize=False``).  The sparse solvers' penalty weights assume roughly
unit-norm samples; on raw small-amplitude data the entrywise penalty would
simply zero the coefficients out.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .baselines import sim_closed_form, spatsc_solve, ssc_solve
from .exact import solve_exact
from .relaxed import solve_relaxed
from .spectral import (
    build_affinity,
    estimate_k_eigengap,
    estimate_k_sv_threshold,
    ncut_cluster,
)
from .types import SolverConfig, as_data_matrix

METHODS = ("osc-relaxed", "osc-exact", "ssc", "spatsc", "lrr-sim")
K_ESTIMATORS = ("eigengap", "svd-gap", "sv-threshold")


@dataclass
class ClusterResult:
    """Outcome of one segmentation run."""

    labels: np.ndarray
    k: int
    k_was_estimated: bool
    z: np.ndarray
    affinity: np.ndarray
    diagnostics: object
    wall_ms: float


def normalize_columns(x):
    """Scale each column to unit Euclidean norm; zero columns stay zero."""
    x = as_data_matrix(x)
    norms = np.linalg.norm(x, axis=0)
    return x / np.where(norms > 0, norms, 1.0)[None, :]


def estimate_k(w, method="eigengap", tau=None):
    """Cluster count from an affinity spectrum."""
    if method == "eigengap":
        return estimate_k_eigengap(w)
    if method == "svd-gap":
        return estimate_k_eigengap(w, singular_values=True)
    if method == "sv-threshold":
        if tau is None:
            raise ValueError("sv-threshold estimation needs tau")
        return estimate_k_sv_threshold(w, tau)
    raise ValueError(f"unknown k estimator {method!r} (choose from {K_ESTIMATORS})")


def solve_coefficients(x, method, config):
    """Run the chosen self-expression method; returns (z, diagnostics)."""
    if method == "osc-relaxed":
        return solve_relaxed(x, config)
    if method == "osc-exact":
        return solve_exact(x, config)
    if method == "ssc":
        return ssc_solve(x, config.lambda1, config=config, return_diagnostics=True)
    if method == "spatsc":
        return spatsc_solve(
            x, config.lambda1, config.lambda2, config=config, return_diagnostics=True
        )
    if method == "lrr-sim":
        return sim_closed_form(x), None
    raise ValueError(f"unknown method {method!r} (choose from {METHODS})")


def cluster_sequential(
    x,
    method="osc-relaxed",
    config=None,
    k=None,
    k_method="eigengap",
    sv_tau=None,
    seed=0,
    normalize=True,
):
    """Segment ordered samples into subspaces.

    With ``k=None`` the cluster count is estimated from the affinity
    spectrum by ``k_method``.  The reported wall time covers the solve and
    the clustering, not any file handling around it.
    """
    x = as_data_matrix(x)
    config = config if config is not None else SolverConfig()
    start = time.perf_counter()
    data = normalize_columns(x) if normalize else x
    z, diagnostics = solve_coefficients(data, method, config)
    w = build_affinity(z)
    k_was_estimated = k is None
    if k_was_estimated:
        k = estimate_k(w, method=k_method, tau=sv_tau)
    labels = ncut_cluster(w, k, seed=seed)
    wall_ms = (time.perf_counter() - start) * 1000.0
    return ClusterResult(
        labels=labels,
        k=int(k),
        k_was_estimated=k_was_estimated,
        z=z,
        affinity=w,
        diagnostics=diagnostics,
        wall_ms=wall_ms,
    )
