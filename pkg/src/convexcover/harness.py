"""Scenario generation and end-to-end verification of the covering inequality.

Partitions of a bounded polytope by random hyperplanes give genuine
coverings, on which the sum of piece inradii must reach the target's
inradius.  Coverage itself is certified by quasi-random sampling (Halton,
base primes 2, 3, 5) and cross-checked by a dense-grid oracle in low
dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegenerateCell, Unbounded, UnsupportedBody
from .geometry import (
    BallBody,
    Body,
    BodyLike,
    Halfspace,
    Plank,
    Polytope,
    as_body,
    contains_batch,
    support_value,
)
from .inradius import inradius_body

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def halton_points(count: int, dim: int, start_index: int = 1) -> np.ndarray:
    """Deterministic Halton sequence in [0, 1)^dim (primes 2, 3, 5, ...)."""
    if dim > len(_PRIMES):
        raise ValueError(f"halton supports up to {len(_PRIMES)} dimensions")
    out = np.empty((count, dim))
    for k in range(dim):
        base = _PRIMES[k]
        for row, i in enumerate(range(start_index, start_index + count)):
            f, value, n = 1.0, 0.0, i
            while n > 0:
                f /= base
                value += f * (n % base)
                n //= base
            out[row, k] = value
    return out


def bounding_box(body: BodyLike):
    """Axis-aligned box containing the body (clip caps it at [-1, 1]^d)."""
    b = as_body(body)
    d = b.dimension
    lo = np.empty(d)
    hi = np.empty(d)
    for k in range(d):
        e = np.zeros(d)
        e[k] = 1.0
        try:
            hi[k] = support_value(b.shape, e)
        except Unbounded:
            if not b.clip_to_unit_ball:
                raise
            hi[k] = 1.0
        try:
            lo[k] = -support_value(b.shape, -e)
        except Unbounded:
            if not b.clip_to_unit_ball:
                raise
            lo[k] = -1.0
        if b.clip_to_unit_ball:
            hi[k] = min(hi[k], 1.0)
            lo[k] = max(lo[k], -1.0)
    return lo, hi


def sample_body_points(body: BodyLike, count: int, tolerance: float = 1e-9,
                       max_factor: int = 2000) -> np.ndarray:
    """``count`` quasi-random points of the body (Halton + rejection)."""
    b = as_body(body)
    lo, hi = bounding_box(b)
    span = hi - lo
    accepted = []
    index = 1
    budget = max(count * max_factor, 1000)
    batch = max(4 * count, 64)
    while len(accepted) < count and budget > 0:
        raw = halton_points(batch, b.dimension, start_index=index)
        index += batch
        budget -= batch
        pts = lo + raw * span
        mask = contains_batch(b, pts, tolerance)
        for p in pts[mask]:
            accepted.append(p)
            if len(accepted) == count:
                break
    if len(accepted) < count:
        raise RuntimeError("rejection sampling failed; body volume too small?")
    return np.array(accepted)


@dataclass(frozen=True)
class Scenario:
    """A target body plus the pieces claimed to cover it."""

    target: Body
    pieces: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "target", as_body(self.target))
        object.__setattr__(self, "pieces", tuple(as_body(p) for p in self.pieces))
        if not self.pieces:
            raise ValueError("scenario needs at least one piece")
        dims = {self.target.dimension} | {p.dimension for p in self.pieces}
        if len(dims) != 1:
            raise ValueError("target and pieces live in different dimensions")

    def to_json(self) -> dict:
        from .geometry import body_to_json

        return {
            "target": body_to_json(self.target),
            "pieces": [body_to_json(p) for p in self.pieces],
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Scenario":
        from .geometry import body_from_json

        return cls(
            body_from_json(obj["target"]),
            tuple(body_from_json(p) for p in obj["pieces"]),
            dict(obj.get("metadata", {})),
        )


@dataclass(frozen=True)
class VerificationResult:
    r_target: float
    piece_radii: tuple
    sum_radii: float
    covered: bool
    inequality_holds: bool
    uncovered_sample: Optional[np.ndarray]

    def to_json(self) -> dict:
        return {
            "r_target": self.r_target,
            "piece_radii": list(self.piece_radii),
            "sum_radii": self.sum_radii,
            "covered": self.covered,
            "inequality_holds": self.inequality_holds,
            "uncovered_sample": None
            if self.uncovered_sample is None
            else np.asarray(self.uncovered_sample).tolist(),
        }


def split_polytope(p: Polytope, point, normal):
    """Split by the hyperplane through ``point`` with ``normal``; the two
    closed cells overlap exactly on the hyperplane."""
    point = np.asarray(point, dtype=float)
    normal = np.asarray(normal, dtype=float)
    a = float(normal @ point)
    left = Polytope(p.halfspaces + (Halfspace(normal, a),))
    right = Polytope(p.halfspaces + (Halfspace(-normal, -a),))
    return left, right


def _interior_point(cell: Polytope, rng, tries: int = 50) -> np.ndarray:
    lo, hi = bounding_box(cell)
    for _ in range(tries):
        p = rng.uniform(lo, hi)
        if contains_batch(cell, p[None, :], -1e-9)[0]:
            return p
    from .inradius import inradius_polytope

    return inradius_polytope(cell).center


def generate_partition(target: BodyLike, cuts: int, seed: int) -> Scenario:
    """Partition a bounded polytope by ``cuts`` random hyperplanes.

    Each cut picks a random cell, a random interior point of it, and a
    random normal; cuts leaving a near-degenerate cell (inradius < 1e-6)
    are redrawn up to 100 times.  Deterministic for a fixed seed.
    """
    from .inradius import inradius_polytope

    body = as_body(target)
    if not isinstance(body.shape, Polytope) or body.clip_to_unit_ball:
        raise UnsupportedBody("generate_partition expects an unclipped polytope")
    poly = body.shape
    if not poly.is_bounded:
        raise ValueError("target polytope must be bounded")
    inradius_polytope(poly)  # raises EmptyInterior / Unbounded as appropriate
    if cuts < 0:
        raise ValueError("cuts must be nonnegative")
    rng = np.random.default_rng(seed)
    cells = [poly]
    for _ in range(cuts):
        for attempt in range(100):
            pick = int(rng.integers(len(cells)))
            cell = cells[pick]
            point = _interior_point(cell, rng)
            normal = rng.normal(size=poly.dimension)
            nrm = float(np.linalg.norm(normal))
            if nrm < 1e-12:
                continue
            normal /= nrm
            left, right = split_polytope(cell, point, normal)
            try:
                r_left = inradius_polytope(left).radius
                r_right = inradius_polytope(right).radius
            except Exception:
                continue
            if min(r_left, r_right) < 1e-6:
                continue
            cells[pick : pick + 1] = [left, right]
            break
        else:
            raise DegenerateCell("could not place a nondegenerate cut in 100 tries")
    return Scenario(
        body,
        tuple(Body(c) for c in cells),
        {"seed": int(seed), "generator": "hyperplane-partition"},
    )


def verify_covering(scenario: Scenario, samples: int) -> VerificationResult:
    """Inradius inequality check plus a sampled coverage verdict."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    r_target = inradius_body(scenario.target).radius
    piece_radii = tuple(inradius_body(p).radius for p in scenario.pieces)
    total = float(sum(piece_radii))
    pts = sample_body_points(scenario.target, samples)
    in_any = np.zeros(len(pts), dtype=bool)
    for piece in scenario.pieces:
        in_any |= contains_batch(piece, pts, 1e-9)
        if in_any.all():
            break
    covered = bool(in_any.all())
    uncovered = None if covered else pts[int(np.argmin(in_any))]
    holds = (not covered) or (total >= r_target - 1e-7)
    return VerificationResult(float(r_target), piece_radii, total, covered, holds, uncovered)


def grid_uncovered_oracle(scenario: Scenario, step: float) -> Optional[np.ndarray]:
    """First cell-centered grid point inside the target missed by all pieces.

    Brute-force oracle for witness validation; dimensions above 3 are
    rejected, grids get large fast.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    d = scenario.target.dimension
    if d > 3:
        raise ValueError("grid oracle supports dimension <= 3")
    lo, hi = bounding_box(scenario.target)
    axes = [np.arange(lo[k] + step / 2.0, hi[k], step) for k in range(d)]
    if any(len(a) == 0 for a in axes):
        return None
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    in_target = contains_batch(scenario.target, pts, -1e-9)
    in_any = np.zeros(len(pts), dtype=bool)
    for piece in scenario.pieces:
        in_any |= contains_batch(piece, pts, 1e-9)
    misses = in_target & ~in_any
    idx = np.nonzero(misses)[0]
    if idx.size == 0:
        return None
    return pts[idx[0]]


def _polygon_halfspaces(vertices: np.ndarray) -> Polytope:
    """H-representation of a convex polygon given counterclockwise vertices."""
    n = len(vertices)
    halves = []
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        t = q - p
        normal = np.array([t[1], -t[0]])  # outward for ccw ordering
        halves.append(Halfspace(normal, float(normal @ p)))
    return Polytope(tuple(halves))


def _ccw(vertices: np.ndarray) -> np.ndarray:
    area = 0.0
    n = len(vertices)
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        area += p[0] * q[1] - q[0] * p[1]
    return vertices if area > 0 else vertices[::-1]


def random_triangle(rng) -> Polytope:
    """Random triangle in [-1, 1]^2 with inradius at least 0.05."""
    while True:
        v = rng.uniform(-1.0, 1.0, size=(3, 2))
        a = float(np.linalg.norm(v[1] - v[0]))
        b = float(np.linalg.norm(v[2] - v[1]))
        c = float(np.linalg.norm(v[0] - v[2]))
        area = 0.5 * abs(float(np.cross(v[1] - v[0], v[2] - v[0])))
        s = (a + b + c) / 2.0
        if s > 0 and area / s >= 0.05:
            return _polygon_halfspaces(_ccw(v))


def random_quadrilateral(rng) -> Polytope:
    """Random convex quadrilateral inscribed in a circle, inradius >= 0.05."""
    from .inradius import inradius_polytope

    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=4))
        gaps = np.diff(np.append(angles, angles[0] + 2.0 * np.pi))
        if gaps.min() < 0.35:
            continue
        radius = rng.uniform(0.5, 1.0)
        center = rng.uniform(-0.2, 0.2, size=2)
        v = center + radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
        poly = _polygon_halfspaces(v)
        if inradius_polytope(poly).radius >= 0.05:
            return poly


def random_tetrahedron(rng) -> Polytope:
    """Random tetrahedron in [-1, 1]^3 with inradius at least 0.05."""
    from .inradius import inradius_polytope

    while True:
        v = rng.uniform(-1.0, 1.0, size=(4, 3))
        vol = abs(float(np.linalg.det(v[1:] - v[0]))) / 6.0
        if vol < 0.05:
            continue
        halves = []
        ok = True
        for i in range(4):
            face = np.delete(np.arange(4), i)
            p0, p1, p2 = v[face]
            normal = np.cross(p1 - p0, p2 - p0)
            nrm = float(np.linalg.norm(normal))
            if nrm < 1e-9:
                ok = False
                break
            normal /= nrm
            if float(normal @ v[i]) > float(normal @ p0):
                normal = -normal
            halves.append(Halfspace(normal, float(normal @ p0)))
        if not ok:
            continue
        poly = Polytope(tuple(halves))
        if inradius_polytope(poly).radius >= 0.05:
            return poly


def random_target(rng, dim: int) -> Polytope:
    if dim == 2:
        return random_triangle(rng) if rng.integers(2) == 0 else random_quadrilateral(rng)
    if dim == 3:
        return random_tetrahedron(rng)
    raise ValueError("random targets support dimension 2 or 3")


def sweep(trials: int, seed: int, dim: int = 2, cuts: int = 3, samples: int = 128):
    """Run ``trials`` random partition scenarios through verification.

    Returns ``(csv_text, results)``; the CSV has header
    ``trial,sum_r,r_target,margin`` with 17-significant-digit values and LF
    line endings, and is byte-identical across runs with the same seed.
    """
    root = np.random.SeedSequence(seed)
    children = root.spawn(trials)
    lines = ["trial,sum_r,r_target,margin"]
    results = []
    for t in range(trials):
        rng = np.random.default_rng(children[t])
        target = random_target(rng, dim)
        part_seed = int(rng.integers(2**63))
        scenario = generate_partition(target, cuts, part_seed)
        vr = verify_covering(scenario, samples)
        results.append(vr)
        margin = vr.sum_radii - vr.r_target
        lines.append(
            f"{t},{vr.sum_radii:.17g},{vr.r_target:.17g},{margin:.17g}"
        )
    return "\n".join(lines) + "\n", results
