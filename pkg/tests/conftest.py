"""Shared fixtures: the default synthetic protocol solved across seeds.

The expensive sweeps are session-scoped so the end-to-end tests and the
acceptance suite share one set of solves.
"""

import time

import numpy as np
import pytest

from oscluster import (
    SolverConfig,
    SyntheticSpec,
    add_noise_psnr,
    build_affinity,
    cluster_sequential,
    generate_synthetic,
    ncut_cluster,
    normalize_columns,
    sce,
    solve_exact,
    solve_relaxed,
)

# Published defaults for the synthetic protocol.
OSC_PARAMS = SolverConfig(lambda1=0.1, lambda2=1.0, mu0=1.0)
SPATSC_PARAMS = SolverConfig(lambda1=0.1, lambda2=0.01, mu0=1.0, diag_zero=True)
SSC_PARAMS = SolverConfig(lambda1=0.2, diag_zero=True, max_iter=5000)
SWEEP_SEEDS = 20

# Wall time of each session sweep, for the runtime budgets.
SWEEP_ELAPSED = {}


@pytest.fixture(scope="session")
def clean_sweep():
    """Both solvers on the clean default protocol, one entry per seed."""
    start = time.perf_counter()
    runs = []
    for seed in range(SWEEP_SEEDS):
        x, labels = generate_synthetic(SyntheticSpec(seed=seed))
        xn = normalize_columns(x)
        z_relaxed, diag_relaxed = solve_relaxed(xn, OSC_PARAMS)
        z_exact, diag_exact = solve_exact(xn, OSC_PARAMS)
        w_relaxed = build_affinity(z_relaxed)
        w_exact = build_affinity(z_exact)
        labels_relaxed = ncut_cluster(w_relaxed, 5, seed=seed)
        labels_exact = ncut_cluster(w_exact, 5, seed=seed)
        runs.append(
            {
                "seed": seed,
                "x": x,
                "labels": labels,
                "z_relaxed": z_relaxed,
                "diag_relaxed": diag_relaxed,
                "z_exact": z_exact,
                "diag_exact": diag_exact,
                "w_relaxed": w_relaxed,
                "w_exact": w_exact,
                "sce_relaxed": sce(labels_relaxed, labels),
                "sce_exact": sce(labels_exact, labels),
            }
        )
    SWEEP_ELAPSED["clean"] = time.perf_counter() - start
    return runs


@pytest.fixture(scope="session")
def noisy_sweep_20db():
    """Clustering errors of the relaxed solver at 20 dB, one per seed."""
    start = time.perf_counter()
    errors = []
    for seed in range(SWEEP_SEEDS):
        x, labels = generate_synthetic(SyntheticSpec(seed=seed))
        noisy = add_noise_psnr(x, 20.0, seed=seed + 1000)
        result = cluster_sequential(noisy, method="osc-relaxed", config=OSC_PARAMS, k=5, seed=seed)
        errors.append(sce(result.labels, labels))
    SWEEP_ELAPSED["noisy20"] = time.perf_counter() - start
    return errors


@pytest.fixture(scope="session")
def noisy_sweep_15db():
    """Per-method clustering errors at 15 dB on shared noisy instances."""
    method_configs = {
        "osc-relaxed": OSC_PARAMS,
        "ssc": SSC_PARAMS,
        "spatsc": SPATSC_PARAMS,
        "lrr-sim": SolverConfig(),
    }
    table = {name: [] for name in method_configs}
    for seed in range(SWEEP_SEEDS):
        x, labels = generate_synthetic(SyntheticSpec(seed=seed))
        noisy = add_noise_psnr(x, 15.0, seed=seed + 2000)
        for name, config in method_configs.items():
            result = cluster_sequential(noisy, method=name, config=config, k=5, seed=seed)
            table[name].append(sce(result.labels, labels))
    return table


@pytest.fixture()
def rng():
    return np.random.default_rng(0)
