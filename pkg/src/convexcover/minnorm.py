"""Minimum-norm point of a convex hull of finitely many points.

Three or fewer points are solved exactly by face enumeration.  Larger sets
run Frank-Wolfe with away steps (exact line search on |x|^2), which
converges linearly on polytopes, followed by an affine least-squares polish
on the final active set so the optimality certificate holds to ~1e-8.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NoConvergence

_MAX_ITER = 100000
_WEIGHT_EPS = 1e-12


class MinNormResult(NamedTuple):
    point: np.ndarray
    distance: float
    weights: np.ndarray


def _affine_min_norm(P):
    """Min-norm point of the affine hull of the rows of P.

    Returns (x, w) with sum(w) == 1 (entries may be negative), or None when
    the KKT system is too ill-conditioned to trust.
    """
    n = P.shape[0]
    G = P @ P.T
    M = np.zeros((n + 1, n + 1))
    M[:n, :n] = 2.0 * G
    M[:n, n] = 1.0
    M[n, :n] = 1.0
    rhs = np.zeros(n + 1)
    rhs[n] = 1.0
    sol, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    if not np.all(np.isfinite(sol)):
        return None
    if float(np.max(np.abs(M @ sol - rhs))) > 1e-9 * (1.0 + float(np.max(np.abs(G)))):
        return None
    w = sol[:n]
    return P.T @ w, w


def _segment_min_norm(p, q):
    """Min-norm point of the segment [p, q] as (x, t) with x = (1-t)p + tq."""
    d = q - p
    dd = float(d @ d)
    if dd <= 0.0:
        return p.copy(), 0.0
    t = float(np.clip(-(p @ d) / dd, 0.0, 1.0))
    return p + t * d, t


def _min_norm_exact_small(P):
    """Face enumeration for up to three points."""
    n = P.shape[0]
    best_x, best_w = None, None
    best_sq = np.inf

    def consider(x, w):
        nonlocal best_x, best_w, best_sq
        sq = float(x @ x)
        if sq < best_sq - 1e-18:
            best_sq, best_x, best_w = sq, x, w

    for i in range(n):
        w = np.zeros(n)
        w[i] = 1.0
        consider(P[i].copy(), w)
    for i in range(n):
        for j in range(i + 1, n):
            x, t = _segment_min_norm(P[i], P[j])
            w = np.zeros(n)
            w[i], w[j] = 1.0 - t, t
            consider(x, w)
    if n == 3:
        aff = _affine_min_norm(P)
        if aff is not None and np.all(aff[1] >= -1e-12):
            w = np.clip(aff[1], 0.0, None)
            w /= w.sum()
            consider(P.T @ w, w)
    return MinNormResult(best_x, float(np.linalg.norm(best_x)), best_w)


def min_norm_point_weights(points, max_iter=_MAX_ITER) -> MinNormResult:
    """Min-norm element of conv(points) with its convex coefficients."""
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[None, :]
    if P.ndim != 2 or P.shape[0] == 0:
        raise ValueError("points must be a nonempty list of equal-length vectors")
    if not np.all(np.isfinite(P)):
        raise ValueError("points must be finite")
    n = P.shape[0]
    if n <= 3:
        return _min_norm_exact_small(P)

    scale_sq = max(1.0, float(np.max(np.einsum("ij,ij->i", P, P))))
    gap_tol = 1e-16 * scale_sq

    lam = np.zeros(n)
    lam[int(np.argmin(np.einsum("ij,ij->i", P, P)))] = 1.0
    x = P.T @ lam
    for _ in range(max_iter):
        scores = P @ x
        xx = float(x @ x)
        s = int(np.argmin(scores))
        fw_gap = xx - float(scores[s])
        if fw_gap <= gap_tol:
            break
        active = lam > _WEIGHT_EPS
        act_idx = np.nonzero(active)[0]
        a = int(act_idx[np.argmax(scores[act_idx])])
        away_gap = float(scores[a]) - xx
        if fw_gap >= away_gap:
            d = P[s] - x
            gamma_max = 1.0
            fw_step = True
        else:
            d = x - P[a]
            la = lam[a]
            if la >= 1.0 - 1e-15:
                break
            gamma_max = la / (1.0 - la)
            fw_step = False
        dd = float(d @ d)
        if dd <= 0.0:
            break
        gamma = min(max(-float(x @ d) / dd, 0.0), gamma_max)
        if gamma <= 0.0:
            break
        if fw_step:
            lam *= 1.0 - gamma
            lam[s] += gamma
        else:
            lam *= 1.0 + gamma
            lam[a] -= gamma
            lam[lam < 0.0] = 0.0
        x = P.T @ lam
    # polish: exact affine solve on the active support
    sup = np.nonzero(lam > _WEIGHT_EPS)[0]
    if sup.size:
        aff = _affine_min_norm(P[sup])
        if aff is not None and np.all(aff[1] >= -1e-10):
            w = np.clip(aff[1], 0.0, None)
            total = w.sum()
            if total > 0:
                w /= total
                x2 = P[sup].T @ w
                if float(x2 @ x2) <= float(x @ x) + 1e-15 * scale_sq:
                    lam = np.zeros(n)
                    lam[sup] = w
                    x = x2
    final_gap = float(x @ x) - float(np.min(P @ x))
    if final_gap > 1e-7 * scale_sq:
        raise NoConvergence(
            f"min-norm-point certificate residual {final_gap:.3e} after {max_iter} iterations"
        )
    return MinNormResult(x, float(np.linalg.norm(x)), lam)


def min_norm_point(points, max_iter=_MAX_ITER):
    """Minimum-norm element of the convex hull and its norm."""
    res = min_norm_point_weights(points, max_iter)
    return res.point, res.distance
