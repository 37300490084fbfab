"""Evaluation metrics: subspace clustering error and peak signal-to-noise."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linear_sum_assignment


def sce(predicted, truth):
    """Subspace clustering error: misclassified fraction under the best
    one-to-one matching of predicted to true labels.

    The matching maximizes agreement via the assignment problem on the
    label confusion matrix; when one side has more labels than the other,
    the surplus labels stay unmatched and their points count as errors.
    Permutation-invariant on both sides, 0 for a relabeling of the truth.
    """
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.ndim != 1 or truth.ndim != 1:
        raise ValueError("label vectors must be 1-D")
    if predicted.shape != truth.shape:
        raise ValueError(f"length mismatch: {predicted.shape} vs {truth.shape}")
    if predicted.size == 0:
        raise ValueError("label vectors must be nonempty")
    _, p_idx = np.unique(predicted, return_inverse=True)
    _, t_idx = np.unique(truth, return_inverse=True)
    confusion = np.zeros((p_idx.max() + 1, t_idx.max() + 1))
    np.add.at(confusion, (p_idx, t_idx), 1.0)
    rows, cols = linear_sum_assignment(confusion, maximize=True)
    matched = confusion[rows, cols].sum()
    return float(1.0 - matched / predicted.size)


def psnr(a, x):
    """Peak signal-to-noise ratio of x against the reference a, in dB.

    ``10 * log10(s^2 / MSE)`` with s the maximum entry of a.  Returns
    ``math.inf`` when the two matrices agree exactly.
    """
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    if a.shape != x.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {x.shape}")
    if a.size == 0:
        raise ValueError("reference must be nonempty")
    peak = float(a.max())
    if peak <= 0:
        raise ValueError("reference peak must be positive")
    mse = float(np.mean((a - x) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)
