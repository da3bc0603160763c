"""Outer polytope approximations carrying a convex-hull certificate.

A body with inscribed ball (center, r) gets a finite direction set V on the
radius-r sphere around the center such that

* the body lies inside W = every { h : <h - center, v> < r^2 + slack }, and
* conv(V) passes within ``slack`` of the origin.

The second condition is the certificate the witness engine consumes: it
guarantees the directions surround the incenter.  For polytopes the
directions are the touching normals of the inscribed-ball LP, whose
optimality places the origin exactly in their convex hull; balls and planks
use symmetric closed-form direction sets, so the certificate distance is
zero in every supported case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CertificateFailure, UnsupportedBody
from .geometry import BallBody, Body, BodyLike, Plank, Polytope, as_body, support_value
from .inradius import inradius_clipped, inradius_polytope
from .minnorm import min_norm_point


@dataclass(frozen=True)
class OuterPolytope:
    """Direction-set form of the outer approximation W."""

    center: np.ndarray
    directions: tuple
    inradius: float
    slack: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float).copy()
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        dirs = tuple(np.asarray(v, dtype=float).copy() for v in self.directions)
        for v in dirs:
            v.setflags(write=False)
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "inradius", float(self.inradius))
        object.__setattr__(self, "slack", float(self.slack))

    @property
    def dimension(self) -> int:
        return self.center.size

    def halfspace_form(self) -> Polytope:
        """W with closed inequalities at the r^2 + slack threshold."""
        thresh = self.inradius**2 + self.slack
        normals = np.array(self.directions)
        offsets = normals @ self.center + thresh
        return Polytope.from_arrays(normals, offsets)

    def to_json(self) -> dict:
        return {
            "center": self.center.tolist(),
            "directions": [v.tolist() for v in self.directions],
            "inradius": self.inradius,
            "slack": self.slack,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OuterPolytope":
        return cls(
            obj["center"],
            tuple(np.asarray(v, dtype=float) for v in obj["directions"]),
            obj["inradius"],
            obj["slack"],
        )


def separation_bound(eps: float) -> float:
    """Distance bound sqrt((1+eps)^2 - 1) between a point at norm 1+eps and
    the normal vector of any hyperplane separating it from the unit ball."""
    eps = float(eps)
    if eps < 0.0:
        raise ValueError("eps must be nonnegative")
    return math.sqrt(eps * (2.0 + eps))


def _dedupe(vectors, tol=1e-10):
    kept = []
    for v in vectors:
        if all(float(np.max(np.abs(v - u))) > tol for u in kept):
            kept.append(v)
    return kept


def build_outer(body: BodyLike, eps: float) -> OuterPolytope:
    """Construct the outer approximation with slack ``eps``.

    Both postconditions are re-checked before returning; a failure beyond
    tolerance raises :class:`CertificateFailure` (solver inaccuracy, never a
    counterexample).
    """
    eps = float(eps)
    if not (eps > 0.0):
        raise ValueError("eps must be positive")
    b = as_body(body)
    if b.clip_to_unit_ball:
        raise UnsupportedBody("build_outer expects an unclipped polytope, ball, or plank")
    shape = b.shape
    if isinstance(shape, BallBody):
        center = shape.center
        r = shape.radius
        dirs = []
        for k in range(shape.dimension):
            e = np.zeros(shape.dimension)
            e[k] = r
            dirs.extend([e, -e])
    elif isinstance(shape, Plank):
        center = shape.base_point
        r = shape.width / 2.0
        axis = r * shape.direction
        dirs = [axis, -axis]
    elif isinstance(shape, Polytope):
        ball = inradius_polytope(shape)
        center = ball.center
        r = ball.radius
        normals = shape.normals
        norms = shape.normal_norms
        dirs = _dedupe(
            [r * normals[i] / norms[i] for i in ball.touching_indices]
        )
    else:
        raise UnsupportedBody(f"unsupported body type {type(shape).__name__}")

    thresh = r * r + eps
    for v in dirs:
        s = support_value(shape, v) - float(center @ v)
        if s > thresh - 1e-12:
            raise CertificateFailure(
                f"support {s:.12e} reaches the halfspace threshold {thresh:.12e}"
            )
    _, dist = min_norm_point(dirs)
    if dist > eps:
        raise CertificateFailure(
            f"direction hull misses the origin by {dist:.3e} > slack {eps:.3e}"
        )
    return OuterPolytope(center, tuple(dirs), r, eps)


def check_outer_shrink(body: BodyLike, eps_schedule) -> list:
    """Clipped inradius of the outer approximation along an eps schedule.

    Returns ``[(eps, r(W ∩ B)), ...]``; for bodies inside the unit ball the
    values approach the body's own inscribed radius from above as eps
    shrinks.
    """
    out = []
    for eps in eps_schedule:
        outer = build_outer(body, eps)
        r_clip = inradius_clipped(outer.halfspace_form()).radius
        out.append((float(eps), float(r_clip)))
    return out
