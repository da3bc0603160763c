"""Shared generators and brute-force oracles for the test suite."""

import numpy as np

import convexcover as cc

# positively spanning unit direction sets whose convex hulls contain 0
_SIMPLEX_DIRS = {
    2: np.array(
        [
            [np.cos(np.pi / 2), np.sin(np.pi / 2)],
            [np.cos(np.pi / 2 + 2 * np.pi / 3), np.sin(np.pi / 2 + 2 * np.pi / 3)],
            [np.cos(np.pi / 2 + 4 * np.pi / 3), np.sin(np.pi / 2 + 4 * np.pi / 3)],
        ]
    ),
    3: np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3.0),
}


def unit_vector(rng, d):
    while True:
        v = rng.normal(size=d)
        n = float(np.linalg.norm(v))
        if n > 1e-9:
            return v / n


def random_rotation(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    return q * np.sign(np.diag(r))


def tangent_polygon_2d(rng, center_box=0.3, rho_range=(0.12, 0.25), k_range=(6, 9)):
    """Polygon of tangent lines to a circle; its incircle is that circle.

    Jittered angles keep every gap below pi/2-ish, so the polygon is bounded
    and small enough for dense-grid oracles.
    """
    center = rng.uniform(-center_box, center_box, size=2)
    rho = rng.uniform(*rho_range)
    k = int(rng.integers(k_range[0], k_range[1] + 1))
    angles = 2.0 * np.pi * (np.arange(k) + 0.6 * rng.uniform(size=k)) / k
    normals = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    offsets = normals @ center + rho
    return cc.Polytope.from_arrays(normals, offsets), center, rho


def tangent_polytope(rng, d, center, rho, extras=0):
    """Bounded polytope tangent to sphere(center, rho) from d+1+extras sides.

    The base directions positively span, so the sphere is the inscribed ball
    and the incenter is ``center`` exactly.
    """
    dirs = _SIMPLEX_DIRS[d] @ random_rotation(rng, d).T
    if extras:
        dirs = np.vstack([dirs, [unit_vector(rng, d) for _ in range(extras)]])
    offsets = dirs @ np.asarray(center, dtype=float) + rho
    return cc.Polytope.from_arrays(dirs, offsets)


def random_plank(rng, d, halfwidth, base_box=0.5):
    base = rng.uniform(-base_box, base_box, size=d)
    n = float(np.linalg.norm(base))
    if n > 0.7:
        base = base * (0.7 / n)
    return cc.Plank(base, unit_vector(rng, d), 2.0 * halfwidth)


def random_ball_inside(rng, d):
    rho = rng.uniform(0.1, 0.45)
    c = unit_vector(rng, d) * rng.uniform(0.0, max(0.0, 0.9 - rho))
    return cc.BallBody(c, rho)


def grid_inradius(poly, pitch, chunk=400000):
    """Brute-force inradius of a bounded 2-d polytope on a dense grid.

    Maximizes the minimum normalized slack over grid points of the bounding
    box; the distance-to-boundary function is 1-Lipschitz, so the answer is
    within pitch*sqrt(2)/2 of the true inradius.
    """
    d = poly.dimension
    assert d == 2
    lo = np.empty(d)
    hi = np.empty(d)
    for k in range(d):
        e = np.zeros(d)
        e[k] = 1.0
        hi[k] = cc.support_value(poly, e)
        lo[k] = -cc.support_value(poly, -e)
    xs = np.arange(lo[0], hi[0] + pitch / 2, pitch)
    ys = np.arange(lo[1], hi[1] + pitch / 2, pitch)
    W = poly.normals
    a = poly.offsets
    nn = poly.normal_norms
    best = -np.inf
    rows_per_chunk = max(1, chunk // max(len(ys), 1))
    for start in range(0, len(xs), rows_per_chunk):
        xchunk = xs[start : start + rows_per_chunk]
        pts = np.stack(np.meshgrid(xchunk, ys, indexing="ij"), axis=-1).reshape(-1, 2)
        slack = (a - pts @ W.T) / nn
        best = max(best, float(slack.min(axis=1).max()))
    return best


def min_norm_bruteforce(points):
    """Exact min-norm point over conv(points) by face (subset) enumeration."""
    from itertools import combinations

    P = np.asarray(points, dtype=float)
    n, d = P.shape
    best = np.inf
    for size in range(1, min(n, d + 1) + 1):
        for subset in combinations(range(n), size):
            Q = P[list(subset)]
            if size == 1:
                cand = float(Q[0] @ Q[0])
                best = min(best, cand)
                continue
            G = Q @ Q.T
            M = np.zeros((size + 1, size + 1))
            M[:size, :size] = 2.0 * G
            M[:size, size] = 1.0
            M[size, :size] = 1.0
            rhs = np.zeros(size + 1)
            rhs[size] = 1.0
            sol, *_ = np.linalg.lstsq(M, rhs, rcond=None)
            if not np.all(np.isfinite(sol)):
                continue
            if float(np.max(np.abs(M @ sol - rhs))) > 1e-8 * (1 + float(np.max(np.abs(G)))):
                continue
            w = sol[:size]
            if np.any(w < -1e-9):
                continue
            x = Q.T @ np.clip(w, 0.0, None)
            best = min(best, float(x @ x))
    return float(np.sqrt(max(best, 0.0)))


def separation_pair(rng, eps, d):
    """(x, y) satisfying the separation hypothesis: |x| = 1 + eps, |y| >= 1,
    and the hyperplane generated by y puts x on the far side of the unit
    ball.  Sampled directly on the admissible spherical cap."""
    ydir = unit_vector(rng, d)
    y_norm = rng.uniform(1.0, 1.0 + eps)
    y = y_norm * ydir
    t0 = y_norm / (1.0 + eps)  # cos of the widest admissible angle
    t = rng.uniform(t0, 1.0)
    w = rng.normal(size=d)
    w -= (w @ ydir) * ydir
    wn = float(np.linalg.norm(w))
    if wn < 1e-12:
        w = np.zeros(d)
    else:
        w /= wn
    x = (1.0 + eps) * (t * ydir + np.sqrt(max(0.0, 1.0 - t * t)) * w)
    return x, y


def random_outer_body(rng):
    """A random polytope, ball, or plank suitable for build_outer."""
    pick = rng.integers(3)
    d = int(rng.integers(2, 4))
    if pick == 0:
        center = rng.uniform(-0.2, 0.2, size=d)
        rho = rng.uniform(0.1, 0.3)
        extras = int(rng.integers(0, 3 if d == 2 else 2))
        return tangent_polytope(rng, d, center, rho, extras)
    if pick == 1:
        return random_ball_inside(rng, d)
    return random_plank(rng, d, rng.uniform(0.05, 0.3))


def random_instance(rng, n_max=4):
    """CoveringInstance built from random planks/polytopes, plus the bodies."""
    d = int(rng.integers(2, 4))
    n = int(rng.integers(1, n_max + 1))
    margin = rng.uniform(0.2, 0.7)
    radii = rng.uniform(0.05, 0.8 / n, size=n)
    shapes = []
    for r in radii:
        if rng.random() < 0.5:
            shapes.append(random_plank(rng, d, r))
        else:
            center = unit_vector(rng, d) * rng.uniform(0.0, 0.6)
            extras = int(rng.integers(0, 3 if d == 2 else 2))
            shapes.append(tangent_polytope(rng, d, center, r, extras))
    deltas, epsilons = cc.choose_parameters([float(r) for r in radii], margin)
    params = []
    for shape, e, dl in zip(shapes, epsilons, deltas):
        outer = cc.build_outer(shape, e)
        params.append(
            cc.BodyParams(outer.center, outer.directions, outer.inradius, e, dl)
        )
    instance = cc.CoveringInstance(d, tuple(params)).validate()
    return instance, shapes


def materialized_objective(instance, assignment):
    """Objective via the explicit (N+1)*d block vector (independent oracle)."""
    n = instance.count
    d = instance.dimension
    vec = np.zeros((n + 1) * d)
    for i, (b, idx) in enumerate(zip(instance.bodies, assignment.indices)):
        w = (1.0 + b.delta) * b.directions[idx]
        vec[:d] += w
        vec[(i + 1) * d : (i + 2) * d] = w - b.center
    return float(vec @ vec)


def random_plank_family(rng, d=2, max_planks=5, budget=0.9):
    """Planks whose half-widths sum to at most ``budget``."""
    n = int(rng.integers(1, max_planks + 1))
    hws = rng.uniform(0.03, 0.3, size=n)
    total = float(hws.sum())
    if total > budget:
        hws *= budget * rng.uniform(0.6, 0.999) / total
    return [random_plank(rng, d, float(h)) for h in hws]
