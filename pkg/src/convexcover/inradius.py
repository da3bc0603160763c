"""Largest inscribed balls: LP for polytopes, closed forms, unit-ball clipping.

The polytope case is the classic Chebyshev-center linear program

    maximize r   subject to   <x, w_i> + r * |w_i|  <=  a_i,

solved with the built-in dense simplex.  Balls and planks have closed-form
inscribed balls.  Intersections with the unit ball are handled by bisection
on the candidate radius with Dykstra feasibility probes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import projections, simplex
from .errors import EmptyInterior, EmptyIntersection, Unbounded, UnsupportedBody
from .geometry import BallBody, Body, BodyLike, Plank, Polytope, as_body

_TOUCH_TOL = 1e-7
_CLIP_BISECT_TOL = 1e-7


@dataclass(frozen=True)
class InscribedBall:
    """A maximal inscribed ball together with the constraints it touches."""

    center: np.ndarray
    radius: float
    touching_indices: tuple

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float).copy()
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "touching_indices", tuple(int(i) for i in self.touching_indices))

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "center": self.center.tolist(),
            "touching": list(self.touching_indices),
        }


def inradius_polytope(p: Polytope) -> InscribedBall:
    """Chebyshev center LP.  Raises :class:`Unbounded` when the polytope
    contains arbitrarily large balls and :class:`EmptyInterior` when it has
    no interior."""
    if not isinstance(p, Polytope):
        raise UnsupportedBody("inradius_polytope expects a Polytope")
    m = len(p.halfspaces)
    d = p.dimension
    if m == 0:
        raise Unbounded("whole space contains arbitrarily large balls")
    c = np.zeros(d + 1)
    c[d] = 1.0
    A = np.hstack([p.normals, p.normal_norms[:, None]])
    res = simplex.solve_lp(c, A, p.offsets)
    if res.status == simplex.UNBOUNDED:
        raise Unbounded("polytope contains arbitrarily large balls")
    if res.status == simplex.INFEASIBLE:
        raise EmptyInterior("polytope is empty")
    r = float(res.value)
    if r <= 1e-12:
        raise EmptyInterior(f"polytope has empty interior (max radius {r:.3e})")
    center = res.x[:d]
    resid = p.offsets - p.normals @ center - r * p.normal_norms
    touching = tuple(int(i) for i in np.nonzero(resid <= _TOUCH_TOL)[0])
    return InscribedBall(center, r, touching)


def inradius_body(b: BodyLike) -> InscribedBall:
    """Inscribed ball of any supported body, honoring the unit-ball clip."""
    body = as_body(b)
    shape = body.shape
    if isinstance(shape, Polytope):
        if body.clip_to_unit_ball:
            return inradius_clipped(shape)
        return inradius_polytope(shape)
    if isinstance(shape, BallBody):
        if not body.clip_to_unit_ball:
            return InscribedBall(shape.center, shape.radius, ())
        return _ball_clipped(shape)
    # plank: radius w/2, centered on the median hyperplane; the base point
    # projected onto that hyperplane is the base point itself
    if body.clip_to_unit_ball:
        return inradius_clipped(shape.as_polytope())
    return InscribedBall(shape.base_point, shape.width / 2.0, ())


def _ball_clipped(shape: BallBody) -> InscribedBall:
    """Closed-form inscribed ball of ball(center, rho) intersected with B."""
    t = float(np.linalg.norm(shape.center))
    rho = shape.radius
    if t + rho <= 1.0:
        return InscribedBall(shape.center, rho, ())
    if t + 1.0 <= rho:
        return InscribedBall(np.zeros(shape.dimension), 1.0, ())
    if t >= 1.0 + rho:
        raise EmptyInterior("ball does not meet the unit ball")
    # lens between the two spheres; the largest ball sits on the center line
    r = (1.0 + rho - t) / 2.0
    if r <= 1e-12:
        raise EmptyInterior("ball touches the unit ball only tangentially")
    axis = shape.center / t
    return InscribedBall(axis * (1.0 - r), r, ())


def project_point(p: Polytope, ball_radius: float, target, max_cycles=projections.DEFAULT_MAX_CYCLES) -> np.ndarray:
    """Nearest point of ``{|x| <= ball_radius} ∩ p`` to ``target``.

    Dykstra alternating projections onto the ball and each halfspace;
    raises :class:`EmptyIntersection` or :class:`NoConvergence`.
    """
    if not isinstance(p, Polytope):
        raise UnsupportedBody("project_point expects a Polytope")
    R = float(ball_radius)
    if R <= 0.0:
        raise ValueError("ball_radius must be positive")
    t = np.asarray(target, dtype=float)
    if t.size != p.dimension:
        raise ValueError("target dimension mismatch")
    return projections.project(
        t, p.normals, p.offsets, [np.zeros(p.dimension)], [R], max_cycles
    )


def _shrunk_feasible(p: Polytope, rho: float, start: np.ndarray):
    """A point x with  normals@x <= offsets - rho*|w|  and  |x| <= 1 - rho,
    or None.  This set is nonempty iff a ball of radius rho fits in p ∩ B."""
    R = 1.0 - rho
    if R < 0.0:
        return None
    off = p.offsets - rho * p.normal_norms
    # a halfspace that misses the shrunken ball entirely certifies emptiness
    if np.any(off < -R * p.normal_norms - 1e-15):
        return None
    if float(np.linalg.norm(start)) > R:
        start = start * (R / float(np.linalg.norm(start))) if R > 0 else np.zeros_like(start)
    return projections.feasible_point(
        start, p.normals, off, [np.zeros(p.dimension)], [R]
    )


def inradius_clipped(p: Polytope) -> InscribedBall:
    """Largest ball inside ``p ∩ B`` (B the unit ball), found by bisection.

    Feasibility of radius rho is probed on the shrunken system; the returned
    radius is exact for the returned center and within the bisection
    tolerance (1e-7) of optimal.
    """
    if not isinstance(p, Polytope):
        raise UnsupportedBody("inradius_clipped expects a Polytope")
    d = p.dimension
    zero = np.zeros(d)
    if len(p.halfspaces) == 0 or np.all(p.offsets >= p.normal_norms - 1e-15):
        # the unit ball itself fits
        return InscribedBall(zero, 1.0, ())
    wit = _shrunk_feasible(p, 0.0, zero)
    if wit is None:
        raise EmptyInterior("polytope does not meet the unit ball")
    lo, hi = 0.0, 1.0
    while hi - lo > _CLIP_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        point = _shrunk_feasible(p, mid, wit)
        if point is not None:
            lo, wit = mid, point
        else:
            hi = mid
    # exact inscribed radius at the final center
    slack = (p.offsets - p.normals @ wit) / p.normal_norms
    r = min(float(np.min(slack)), 1.0 - float(np.linalg.norm(wit)))
    if r <= 1e-9:
        raise EmptyInterior("intersection with the unit ball has empty interior")
    touching = tuple(int(i) for i in np.nonzero(slack - r <= 1e-8)[0])
    return InscribedBall(wit, r, touching)
