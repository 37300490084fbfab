"""Independent numerical oracles the tests pin library outputs against.

Each oracle reaches the quantity by a different route than the library:
grid search, parabola fitting, quasi-Newton descent on a smoothed
objective, coordinate descent, exhaustive permutation search, bisection.
"""

import itertools
import math

import numpy as np


def grid_prox_l1(v, tau, step=1e-3):
    """Per-element grid argmin of tau*|z| + 0.5*(z - v)^2.

    The grid covers every attainable minimizer; the returned point is
    within step/2 of the continuum argmin.
    """
    v = np.asarray(v, dtype=float)
    span = float(np.max(np.abs(v))) + float(tau) + 0.5
    grid = np.arange(-span, span + step, step)
    flat = v.reshape(-1, 1)
    objective = tau * np.abs(grid)[None, :] + 0.5 * (grid[None, :] - flat) ** 2
    return grid[np.argmin(objective, axis=1)].reshape(v.shape)


def grid_prox_l1_refined(v, tau, coarse=1e-2, fine=1e-5):
    """Two-stage grid argmin of tau*|z| + 0.5*(z - v)^2.

    A coarse pass over the full span localizes the (unimodal) objective's
    minimizer, a fine pass over a window around it pins the answer to
    within fine/2.  Still pure objective evaluation, no calculus.
    """
    v = np.asarray(v, dtype=float)
    rough = grid_prox_l1(v, tau, step=coarse).reshape(-1, 1)
    flat = v.reshape(-1, 1)
    offsets = np.arange(-2.0 * coarse, 2.0 * coarse + fine, fine)
    candidates = rough + offsets[None, :]
    objective = tau * np.abs(candidates) + 0.5 * (candidates - flat) ** 2
    picked = candidates[np.arange(candidates.shape[0]), np.argmin(objective, axis=1)]
    return picked.reshape(v.shape)


def group_prox_stationarity(j, u, kappa, zero_tol=1e-7):
    """Subgradient optimality residual of kappa*sum_i ||j_i|| + 0.5*||J-U||_F^2.

    Columns treated as zero use the subdifferential ball at the origin;
    the rest use the smooth gradient.
    """
    j = np.asarray(j, dtype=float)
    u = np.asarray(u, dtype=float)
    worst = 0.0
    for i in range(u.shape[1]):
        ji, ui = j[:, i], u[:, i]
        norm = float(np.linalg.norm(ji))
        if norm <= zero_tol:
            residual = max(0.0, float(np.linalg.norm(ui - ji)) - kappa)
        else:
            residual = float(np.linalg.norm(ji - ui + kappa * ji / norm))
        worst = max(worst, residual)
    return worst


def first_order_group_prox(u, kappa, smooth=1e-12, gtol=1e-9, max_steps=100000):
    """Gradient-descent minimizer of kappa*sum_i ||j_i|| + 0.5*||J - U||_F^2.

    The objective separates per column, so each column runs its own
    backtracking descent on the smoothed objective (column norm replaced by
    sqrt(||j||^2 + smooth^2) - smooth) until the nonsmooth subgradient
    residual is below gtol.  Raises if a column fails to reach gtol, so a
    comparison never silently uses an unconverged point.
    """
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)

    def value(col, ucol):
        norm = math.sqrt(float(col @ col) + smooth * smooth)
        return 0.5 * float(np.sum((col - ucol) ** 2)) + kappa * (norm - smooth)

    for i in range(u.shape[1]):
        ucol = u[:, i]
        col = 0.5 * ucol.copy()
        for _ in range(max_steps):
            if group_prox_stationarity(col[:, None], ucol[:, None], kappa) <= gtol:
                break
            norm = math.sqrt(float(col @ col) + smooth * smooth)
            grad = col - ucol + kappa * col / norm
            base = value(col, ucol)
            grad_sq = float(grad @ grad)
            step = 1.0
            while step > 1e-18 and value(col - step * grad, ucol) > base - 1e-4 * step * grad_sq:
                step *= 0.5
            col = col - step * grad
        else:
            raise RuntimeError(f"column {i} did not reach {gtol} stationarity")
        out[:, i] = col
    return out


def ridge_prox_oracle(residual, y1, mu):
    """Element-wise argmin of 0.5*e^2 + y*(s+e) + (mu/2)*(s+e)^2.

    The objective is a separable parabola in each entry, so three function
    evaluations per entry determine the vertex exactly (up to roundoff),
    with no algebraic manipulation of the formula under test.
    """
    s = np.asarray(residual, dtype=float)
    y = np.asarray(y1, dtype=float)

    def g(e):
        return 0.5 * e * e + y * (s + e) + 0.5 * mu * (s + e) ** 2

    f_minus, f_zero, f_plus = g(-1.0), g(0.0), g(1.0)
    curvature = 0.5 * (f_plus + f_minus) - f_zero
    slope = 0.5 * (f_plus - f_minus)
    return -slope / (2.0 * curvature)


def lasso_cd(dictionary, target, lam, exclude=None, tol=1e-10, max_sweeps=100000):
    """Cyclic coordinate descent for 0.5*||target - D z||^2 + sum_j lam_j |z_j|.

    ``exclude`` pins one coordinate at zero (self-column of a
    self-expressive dictionary).  Sweeps until the largest coordinate move
    in a full pass is below tol.
    """
    d = np.asarray(dictionary, dtype=float)
    t = np.asarray(target, dtype=float).ravel()
    n = d.shape[1]
    lam_vec = np.broadcast_to(np.asarray(lam, dtype=float), (n,))
    col_sq = np.sum(d * d, axis=0)
    z = np.zeros(n)
    r = t.copy()
    active = [j for j in range(n) if j != exclude and col_sq[j] > 0]
    for _ in range(max_sweeps):
        delta = 0.0
        for j in active:
            old = z[j]
            rho = float(d[:, j] @ r) + col_sq[j] * old
            new = math.copysign(max(abs(rho) - lam_vec[j], 0.0), rho) / col_sq[j]
            if new != old:
                r += d[:, j] * (old - new)
                z[j] = new
                delta = max(delta, abs(new - old))
        if delta <= tol:
            break
    return z


def lasso_cd_matrix(x, lam, tol=1e-10):
    """Self-expressive lasso with zero diagonal, column by column."""
    x = np.asarray(x, dtype=float)
    n = x.shape[1]
    z = np.zeros((n, n))
    for i in range(n):
        z[:, i] = lasso_cd(x, x[:, i], lam, exclude=i, tol=tol)
    return z


def brute_force_sce(predicted, truth):
    """Minimum misclassification rate over all one-to-one label matchings."""
    p = np.asarray(predicted).ravel()
    t = np.asarray(truth).ravel()
    if p.size != t.size:
        raise ValueError("length mismatch")
    _, p = np.unique(p, return_inverse=True)
    _, t = np.unique(t, return_inverse=True)
    kp = int(p.max()) + 1
    kt = int(t.max()) + 1
    confusion = np.zeros((kp, kt), dtype=int)
    np.add.at(confusion, (p, t), 1)
    if kp <= kt:
        best = max(
            sum(confusion[i, perm[i]] for i in range(kp))
            for perm in itertools.permutations(range(kt), kp)
        )
    else:
        best = max(
            sum(confusion[perm[i], i] for i in range(kt))
            for perm in itertools.permutations(range(kp), kt)
        )
    return 1.0 - best / p.size


def bisect_nonneg_lasso(quad, lin, lam, hi=1e6, tol=1e-12):
    """Bisection solve of min_b 0.5*quad*b^2 - lin*b + lam*b over b >= 0.

    The derivative quad*b - lin + lam is increasing; its root (clamped at
    zero) is the minimizer.
    """
    if lin <= lam:
        return 0.0
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if quad * mid - lin + lam > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def prox_objective_l1(candidate, v, tau):
    return tau * float(np.sum(np.abs(candidate))) + 0.5 * float(np.sum((candidate - v) ** 2))


def prox_objective_group(candidate, u, kappa):
    return kappa * float(np.sum(np.linalg.norm(candidate, axis=0))) + 0.5 * float(
        np.sum((candidate - u) ** 2)
    )


def prox_objective_ridge(candidate, residual, y1, mu):
    shifted = residual + candidate
    return (
        0.5 * float(np.sum(candidate**2))
        + float(np.sum(y1 * shifted))
        + 0.5 * mu * float(np.sum(shifted**2))
    )


def never_improved_by_perturbation(objective, argmin, rng, trials=100, radius=1e-4, slack=1e-10):
    """First-order optimality probe: random perturbations of the claimed
    argmin must not lower the objective by more than slack."""
    base = objective(argmin)
    for _ in range(trials):
        direction = rng.standard_normal(argmin.shape)
        direction *= radius / np.linalg.norm(direction)
        if objective(argmin + direction) < base - slack:
            return False
    return True
