"""Dykstra alternating projections onto intersections of halfspaces and balls.

The cyclic scheme with per-set correction increments converges to the exact
Euclidean projection onto a nonempty intersection.  For an empty
intersection the cycle stabilizes at a point violating some constraint,
which callers detect through :func:`violation`.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyIntersection, NoConvergence

DEFAULT_MAX_CYCLES = 100000
_MOVE_TOL = 1e-11


def violation(x, normals, offsets, ball_centers, ball_radii):
    """Largest constraint violation of ``x`` (<= 0 means feasible)."""
    worst = -np.inf
    if len(normals):
        worst = float(np.max(normals @ x - offsets))
    for c, r in zip(ball_centers, ball_radii):
        worst = max(worst, float(np.linalg.norm(x - c) - r))
    return worst


def dykstra(
    target,
    normals,
    offsets,
    ball_centers,
    ball_radii,
    max_cycles=DEFAULT_MAX_CYCLES,
    move_tol=_MOVE_TOL,
    feasibility_only=False,
):
    """Project ``target`` onto the intersection of the given halfspaces and balls.

    Returns ``(point, converged)``.  With ``feasibility_only`` the loop exits
    as soon as the iterate lands inside every set, returning that (not
    necessarily nearest) point; this is what bisection-style feasibility
    probes need.
    """
    target = np.asarray(target, dtype=float)
    normals = np.asarray(normals, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    m = len(normals)
    k = len(ball_centers)
    if m:
        nrm_sq = np.einsum("ij,ij->i", normals, normals)
    x = target.copy()
    if m == 0 and k == 0:
        return x, True
    # one correction increment per set
    incs = [np.zeros_like(x) for _ in range(m + k)]
    tol = move_tol * (1.0 + float(np.max(np.abs(target), initial=0.0)))
    for _ in range(max_cycles):
        x_prev = x.copy()
        for i in range(m):
            y = x + incs[i]
            t = float(normals[i] @ y) - offsets[i]
            if t > 0.0:
                xn = y - (t / nrm_sq[i]) * normals[i]
            else:
                xn = y
            incs[i] = y - xn
            x = xn
        for j in range(k):
            y = x + incs[m + j]
            diff = y - ball_centers[j]
            dist = float(np.linalg.norm(diff))
            if dist > ball_radii[j]:
                xn = ball_centers[j] + diff * (ball_radii[j] / dist)
            else:
                xn = y
            incs[m + j] = y - xn
            x = xn
        if feasibility_only and violation(x, normals, offsets, ball_centers, ball_radii) <= 0.0:
            return x, True
        if float(np.max(np.abs(x - x_prev))) <= tol:
            return x, True
    return x, False


def project(target, normals, offsets, ball_centers, ball_radii, max_cycles=DEFAULT_MAX_CYCLES):
    """Exact projection; raises on non-convergence or empty intersection."""
    x, converged = dykstra(target, normals, offsets, ball_centers, ball_radii, max_cycles)
    if not converged:
        raise NoConvergence(
            f"Dykstra projection did not converge within {max_cycles} cycles"
        )
    v = violation(x, normals, offsets, ball_centers, ball_radii)
    scale = 1.0 + float(np.max(np.abs(target), initial=0.0))
    if v > 1e-8 * scale:
        raise EmptyIntersection(
            f"intersection appears empty (residual violation {v:.3e})"
        )
    return x


def feasible_point(
    start, normals, offsets, ball_centers, ball_radii, max_cycles=DEFAULT_MAX_CYCLES
):
    """Return a point of the intersection, or None if it looks empty.

    Exact membership of the final iterate decides; a converged cycle whose
    limit still violates a constraint certifies (numerical) emptiness.  A cap
    hit without a feasibility certificate is also treated as empty, the right
    bias for bisection callers probing just past the critical level.
    """
    start = np.asarray(start, dtype=float)
    if violation(start, normals, offsets, ball_centers, ball_radii) <= 0.0:
        return start.copy()
    x, converged = dykstra(
        start, normals, offsets, ball_centers, ball_radii, max_cycles,
        feasibility_only=True,
    )
    v = violation(x, normals, offsets, ball_centers, ball_radii)
    if v <= 0.0:
        return x
    if converged and v <= 1e-9:
        return x
    return None
