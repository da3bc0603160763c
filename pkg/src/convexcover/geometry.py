"""Convex bodies in R^d: halfspace-intersection polytopes, balls, and planks.

All types are immutable after construction; the operations are pure
functions, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from . import projections, simplex
from .errors import DimensionMismatch, EmptyInterior, Unbounded, UnsupportedBody

DEFAULT_TOL = 1e-9
_UNIT_DIR_TOL = 1e-12


def as_vector(coords) -> np.ndarray:
    """Validate and freeze a coordinate sequence as a read-only float array."""
    v = np.array(coords, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError("expected a nonempty 1-d coordinate sequence")
    if not np.all(np.isfinite(v)):
        raise ValueError("coordinates must be finite")
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace ``{x : <x, normal> <= offset}``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", as_vector(self.normal))
        object.__setattr__(self, "offset", float(self.offset))
        if not np.isfinite(self.offset):
            raise ValueError("offset must be finite")
        if float(np.linalg.norm(self.normal)) == 0.0:
            raise ValueError("halfspace normal must be nonzero")

    @property
    def dimension(self) -> int:
        return self.normal.size


@dataclass(frozen=True)
class Polytope:
    """Intersection of finitely many closed halfspaces (H-representation).

    An empty ``halfspaces`` tuple denotes all of R^d; then
    ``ambient_dimension`` must be given explicitly.
    """

    halfspaces: tuple
    ambient_dimension: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        if not all(isinstance(h, Halfspace) for h in self.halfspaces):
            raise TypeError("halfspaces must be Halfspace instances")
        dims = {h.dimension for h in self.halfspaces}
        if len(dims) > 1:
            raise DimensionMismatch("halfspaces live in different dimensions")
        if self.halfspaces:
            d = self.halfspaces[0].dimension
            if self.ambient_dimension is None:
                object.__setattr__(self, "ambient_dimension", d)
            elif self.ambient_dimension != d:
                raise DimensionMismatch("ambient_dimension disagrees with halfspaces")
        elif self.ambient_dimension is None:
            raise ValueError("empty polytope needs an explicit ambient_dimension")

    @classmethod
    def from_arrays(cls, normals, offsets) -> "Polytope":
        normals = np.asarray(normals, dtype=float)
        offsets = np.asarray(offsets, dtype=float)
        if normals.ndim != 2 or offsets.shape != (normals.shape[0],):
            raise ValueError("normals must be (m, d), offsets (m,)")
        return cls(tuple(Halfspace(n, o) for n, o in zip(normals, offsets)))

    @property
    def dimension(self) -> int:
        return int(self.ambient_dimension)

    @cached_property
    def normals(self) -> np.ndarray:
        if not self.halfspaces:
            return np.zeros((0, self.dimension))
        return np.array([h.normal for h in self.halfspaces])

    @cached_property
    def offsets(self) -> np.ndarray:
        return np.array([h.offset for h in self.halfspaces])

    @cached_property
    def normal_norms(self) -> np.ndarray:
        return np.linalg.norm(self.normals, axis=1) if self.halfspaces else np.zeros(0)

    @cached_property
    def is_bounded(self) -> bool:
        """True iff every coordinate direction has a finite support value."""
        for k in range(self.dimension):
            for sign in (1.0, -1.0):
                u = np.zeros(self.dimension)
                u[k] = sign
                res = simplex.solve_lp(u, self.normals, self.offsets)
                if res.status != simplex.OPTIMAL:
                    return False
        return True


@dataclass(frozen=True)
class BallBody:
    """Closed ball with the given center and radius."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0.0):
            raise ValueError("ball radius must be positive")

    @property
    def dimension(self) -> int:
        return self.center.size


@dataclass(frozen=True)
class Plank:
    """Slab ``{x : |<x - base_point, direction>| <= width / 2}``.

    ``direction`` must already be a unit vector (within 1e-12); planks are
    kept first-class because they are unbounded as polytopes yet have the
    closed-form inscribed radius ``width / 2``.
    """

    base_point: np.ndarray
    direction: np.ndarray
    width: float

    def __post_init__(self):
        object.__setattr__(self, "base_point", as_vector(self.base_point))
        object.__setattr__(self, "direction", as_vector(self.direction))
        object.__setattr__(self, "width", float(self.width))
        if self.base_point.size != self.direction.size:
            raise DimensionMismatch("base_point and direction dimensions differ")
        if abs(float(np.linalg.norm(self.direction)) - 1.0) > _UNIT_DIR_TOL:
            raise ValueError("plank direction must be a unit vector")
        if not (self.width > 0.0):
            raise ValueError("plank width must be positive")

    @property
    def dimension(self) -> int:
        return self.base_point.size

    def as_polytope(self) -> Polytope:
        """Two-halfspace encoding of the slab."""
        b = float(self.direction @ self.base_point)
        return Polytope(
            (
                Halfspace(self.direction, b + self.width / 2.0),
                Halfspace(-self.direction, -b + self.width / 2.0),
            )
        )


Shape = Union[Polytope, BallBody, Plank]


@dataclass(frozen=True)
class Body:
    """Tagged convex body, optionally intersected with the unit ball."""

    shape: Shape
    clip_to_unit_ball: bool = False

    def __post_init__(self):
        if not isinstance(self.shape, (Polytope, BallBody, Plank)):
            raise UnsupportedBody(f"unsupported shape type {type(self.shape).__name__}")

    @property
    def dimension(self) -> int:
        return self.shape.dimension


BodyLike = Union[Body, Polytope, BallBody, Plank]


def as_body(body: BodyLike) -> Body:
    if isinstance(body, Body):
        return body
    return Body(body)


def _check_dim(body_dim: int, vec: np.ndarray):
    if vec.size != body_dim:
        raise DimensionMismatch(
            f"point dimension {vec.size} != body dimension {body_dim}"
        )


def contains(body: BodyLike, point, tolerance: float = DEFAULT_TOL) -> bool:
    """Membership test with additive slack ``tolerance`` on every inequality.

    A negative tolerance demands strict interior membership by that margin.
    """
    b = as_body(body)
    p = np.asarray(point, dtype=float)
    _check_dim(b.dimension, p)
    shape = b.shape
    if isinstance(shape, Polytope):
        if shape.halfspaces:
            ok = float(np.max(shape.normals @ p - shape.offsets)) <= tolerance
        else:
            ok = True
    elif isinstance(shape, BallBody):
        ok = float(np.linalg.norm(p - shape.center)) - shape.radius <= tolerance
    else:
        t = float((p - shape.base_point) @ shape.direction)
        ok = abs(t) - shape.width / 2.0 <= tolerance
    if ok and b.clip_to_unit_ball:
        ok = float(np.linalg.norm(p)) - 1.0 <= tolerance
    return bool(ok)


def contains_batch(body: BodyLike, points, tolerance: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized :func:`contains` over rows of ``points``."""
    b = as_body(body)
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != b.dimension:
        raise DimensionMismatch("points must be (k, d) with the body's dimension")
    shape = b.shape
    if isinstance(shape, Polytope):
        if shape.halfspaces:
            ok = (pts @ shape.normals.T - shape.offsets).max(axis=1) <= tolerance
        else:
            ok = np.ones(len(pts), dtype=bool)
    elif isinstance(shape, BallBody):
        ok = np.linalg.norm(pts - shape.center, axis=1) - shape.radius <= tolerance
    else:
        t = (pts - shape.base_point) @ shape.direction
        ok = np.abs(t) - shape.width / 2.0 <= tolerance
    if b.clip_to_unit_ball:
        ok = ok & (np.linalg.norm(pts, axis=1) - 1.0 <= tolerance)
    return ok


def _shape_constraint_arrays(shape: Shape):
    """(halfspace normals, offsets, ball centers, ball radii) of a shape."""
    if isinstance(shape, Polytope):
        return shape.normals, shape.offsets, [], []
    if isinstance(shape, BallBody):
        return np.zeros((0, shape.dimension)), np.zeros(0), [shape.center], [shape.radius]
    poly = shape.as_polytope()
    return poly.normals, poly.offsets, [], []


def _clipped_support(shape: Shape, u: np.ndarray, tol: float = 1e-9) -> float:
    """sup of <u, x> over shape intersected with the unit ball, by bisection.

    Each level-set probe runs a Dykstra feasibility check; accuracy is
    ``tol * max(1, |u|)`` from below.
    """
    normals, offsets, centers, radii = _shape_constraint_arrays(shape)
    d = u.size
    centers = list(centers) + [np.zeros(d)]
    radii = list(radii) + [1.0]
    start = projections.project(np.zeros(d), normals, offsets, centers, radii)
    u_norm = float(np.linalg.norm(u))
    lo = float(u @ start)
    hi = u_norm  # support of the unit ball bounds everything inside it
    if hi - lo <= 0.0:
        return lo
    witness = start
    tol = tol * max(1.0, u_norm)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        ext_normals = np.vstack([normals, -u[None, :]])
        ext_offsets = np.append(offsets, -mid)
        point = projections.feasible_point(witness, ext_normals, ext_offsets, centers, radii)
        if point is not None:
            lo, witness = mid, point
        else:
            hi = mid
    return lo


def support_value(body: BodyLike, direction) -> float:
    """sup of the linear functional ``<., direction>`` over the body.

    Polytopes go through the LP; balls and planks have closed forms; bodies
    clipped to the unit ball use a bisection on Dykstra feasibility probes.
    Raises :class:`Unbounded` when the body is unbounded in that direction
    and not clipped.
    """
    b = as_body(body)
    u = np.asarray(direction, dtype=float)
    _check_dim(b.dimension, u)
    u_norm = float(np.linalg.norm(u))
    if u_norm == 0.0:
        raise ValueError("direction must be nonzero")
    shape = b.shape
    if b.clip_to_unit_ball:
        return _clipped_support(shape, u)
    if isinstance(shape, Polytope):
        res = simplex.solve_lp(u, shape.normals, shape.offsets)
        if res.status == simplex.UNBOUNDED:
            raise Unbounded("polytope is unbounded in this direction")
        if res.status == simplex.INFEASIBLE:
            raise EmptyInterior("polytope is empty")
        return res.value
    if isinstance(shape, BallBody):
        return float(shape.center @ u) + shape.radius * u_norm
    # plank: finite only along +-direction
    axial = float(shape.direction @ u)
    perp = u - axial * shape.direction
    if float(np.linalg.norm(perp)) > 1e-12 * u_norm:
        raise Unbounded("plank is unbounded in this direction")
    return float(shape.base_point @ u) + (shape.width / 2.0) * abs(axial)


def body_to_json(body: BodyLike) -> dict:
    """Serialize to the shared JSON schema (see README)."""
    b = as_body(body)
    shape = b.shape
    if isinstance(shape, Polytope):
        obj = {
            "type": "polytope",
            "normals": [h.normal.tolist() for h in shape.halfspaces],
            "offsets": [h.offset for h in shape.halfspaces],
        }
        if not shape.halfspaces:
            obj["dimension"] = shape.dimension
    elif isinstance(shape, BallBody):
        obj = {"type": "ball", "center": shape.center.tolist(), "radius": shape.radius}
    else:
        obj = {
            "type": "plank",
            "base": shape.base_point.tolist(),
            "direction": shape.direction.tolist(),
            "width": shape.width,
        }
    if b.clip_to_unit_ball:
        obj["clip_to_unit_ball"] = True
    return obj


def body_from_json(obj: dict) -> Body:
    """Parse the shared body schema; raises ValueError on malformed input."""
    if not isinstance(obj, dict):
        raise ValueError("body must be a JSON object")
    kind = obj.get("type")
    if kind == "polytope":
        normals = obj.get("normals")
        offsets = obj.get("offsets")
        if normals is None or offsets is None or len(normals) != len(offsets):
            raise ValueError("polytope needs matching 'normals' and 'offsets'")
        if len(normals) == 0:
            shape = Polytope((), ambient_dimension=int(obj["dimension"]))
        else:
            shape = Polytope.from_arrays(normals, offsets)
    elif kind == "ball":
        shape = BallBody(obj["center"], obj["radius"])
    elif kind == "plank":
        shape = Plank(obj["base"], obj["direction"], obj["width"])
    else:
        raise ValueError(f"unknown body type {kind!r}")
    return Body(shape, clip_to_unit_ball=bool(obj.get("clip_to_unit_ball", False)))
