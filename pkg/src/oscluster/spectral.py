"""Affinity construction, spectral clustering, cluster-count estimation and
boundary detection on ordered coefficient matrices."""

from __future__ import annotations

import numpy as np

from .types import as_coefficient_matrix, column_differences

_ZERO_DEGREE_EPS = 1e-12


def build_affinity(z):
    """Symmetric nonnegative affinity W = |Z| + |Z|^T."""
    z = as_coefficient_matrix(z)
    a = np.abs(z)
    return a + a.T


def _check_affinity(w):
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"affinity must be square, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("affinity contains non-finite entries")
    if np.abs(w - w.T).max() > 1e-8 * max(1.0, np.abs(w).max()):
        raise ValueError("affinity must be symmetric")
    if w.min() < -1e-12:
        raise ValueError("affinity must be nonnegative")
    return 0.5 * (w + w.T)


def normalized_laplacian(w):
    """I - D^{-1/2} W D^{-1/2}; rows with zero degree get a tiny guard degree."""
    w = _check_affinity(w)
    degrees = w.sum(axis=1)
    degrees = np.where(degrees <= 0.0, _ZERO_DEGREE_EPS, degrees)
    inv_sqrt = 1.0 / np.sqrt(degrees)
    lap = -inv_sqrt[:, None] * w * inv_sqrt[None, :]
    lap[np.diag_indices_from(lap)] += 1.0
    return lap


def unnormalized_laplacian(w):
    """D - W."""
    w = _check_affinity(w)
    lap = -w.copy()
    lap[np.diag_indices_from(lap)] += w.sum(axis=1)
    return lap


def _kmeans_pp_init(points, k, rng):
    # D^2 seeding: next center drawn proportionally to squared distance
    # from the nearest chosen center.
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    first = rng.integers(n)
    centers[0] = points[first]
    dist2 = np.sum((points - centers[0]) ** 2, axis=1)
    for c in range(1, k):
        total = dist2.sum()
        if total <= 0:
            idx = rng.integers(n)
        else:
            idx = rng.choice(n, p=dist2 / total)
        centers[c] = points[idx]
        dist2 = np.minimum(dist2, np.sum((points - centers[c]) ** 2, axis=1))
    return centers


def _lloyd(points, centers, max_iter=300):
    n, k = points.shape[0], centers.shape[0]
    labels = np.full(n, -1)
    for _ in range(max_iter):
        d2 = (
            np.sum(points**2, axis=1)[:, None]
            - 2.0 * points @ centers.T
            + np.sum(centers**2, axis=1)[None, :]
        )
        new_labels = np.argmin(d2, axis=1)
        # Keep every cluster populated: hand the farthest point to an empty one.
        for c in range(k):
            if not np.any(new_labels == c):
                far = np.argmax(d2[np.arange(n), new_labels])
                new_labels[far] = c
                d2[far, :] = 0.0
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            centers[c] = points[labels == c].mean(axis=0)
    d2 = np.sum((points - centers[labels]) ** 2, axis=1)
    return labels, float(d2.sum())


def kmeans(points, k, seed=0, restarts=20):
    """Best-of-``restarts`` k-means with D^2 seeding.

    Deterministic given ``seed``: restarts draw from spawned child streams
    and ties in the final objective keep the earliest restart.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[0] < 1:
        raise ValueError(f"need a nonempty 2-D point array, got shape {points.shape}")
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if k == 1:
        return np.zeros(n, dtype=int)
    best_labels, best_inertia = None, np.inf
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        centers = _kmeans_pp_init(points, k, rng)
        labels, inertia = _lloyd(points, centers)
        if inertia < best_inertia:
            best_labels, best_inertia = labels, inertia
    return best_labels.astype(int)


def ncut_cluster(w, k, seed=0, restarts=20, normalized=True):
    """Spectral clustering of an affinity into k groups.

    Embeds each sample with the eigenvectors of the k smallest eigenvalues
    of the (normalized, by default) graph Laplacian, normalizes the
    embedding rows to unit length, and k-means clusters them.  Returns an
    integer label per sample.
    """
    w = _check_affinity(w)
    n = w.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if k == 1:
        return np.zeros(n, dtype=int)
    lap = normalized_laplacian(w) if normalized else unnormalized_laplacian(w)
    _, vecs = np.linalg.eigh(lap)
    embedding = vecs[:, :k]
    row_norms = np.linalg.norm(embedding, axis=1)
    embedding = embedding / np.where(row_norms > 0, row_norms, 1.0)[:, None]
    return kmeans(embedding, k, seed=seed, restarts=restarts)


def estimate_k_sv_threshold(w, tau):
    """Number of singular values of W above the absolute threshold tau."""
    w = _check_affinity(w)
    if tau <= 0:
        raise ValueError(f"threshold tau must be positive, got {tau}")
    s = np.linalg.svd(w, compute_uv=False)
    return int(np.sum(s > tau))


def estimate_k_eigengap(w, singular_values=False):
    """Position of the largest gap in the descending spectrum of W.

    With eigenvalues d_1 >= d_2 >= ... the estimate is the (1-based) i
    maximizing d_i - d_{i+1}; ties resolve to the smallest i.  Set
    ``singular_values`` to use singular values instead of eigenvalues.
    """
    w = _check_affinity(w)
    if w.shape[0] < 2:
        raise ValueError("gap estimation needs at least a 2x2 affinity")
    if singular_values:
        spectrum = np.linalg.svd(w, compute_uv=False)
    else:
        spectrum = np.sort(np.linalg.eigvalsh(w))[::-1]
    gaps = spectrum[:-1] - spectrum[1:]
    return int(np.argmax(gaps)) + 1


def detect_boundaries_peaks(z, prominence=1.0):
    """Segment boundaries from the column-difference energy of Z.

    Averages |Z R| over rows to one score per adjacent column pair, then
    reports index i+1 for every strict local peak at position i whose
    score reaches ``mean + prominence * std``.  Returned indices are the
    positions where a new segment starts.
    """
    z = as_coefficient_matrix(z)
    n = z.shape[0]
    if n < 3:
        raise ValueError(f"boundary detection needs N >= 3, got {n}")
    scores = np.abs(column_differences(z)).mean(axis=0)
    cutoff = scores.mean() + prominence * scores.std()
    boundaries = []
    for i, value in enumerate(scores):
        left_ok = i == 0 or value > scores[i - 1]
        right_ok = i == len(scores) - 1 or value > scores[i + 1]
        if left_ok and right_ok and value >= cutoff:
            boundaries.append(i + 1)
    return boundaries
