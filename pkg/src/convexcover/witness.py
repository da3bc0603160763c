"""Uncovered-point witnesses for families of outer-approximated bodies.

Given N bodies with direction sets V_n on radius-r_n spheres, inflations
delta_n and slacks eps_n satisfying

    (sum)   sum_n (1 + delta_n) r_n < 1
    (slack) (1 + delta_n)(r_n^2 - 6 N eps_n) >= r_n^2 + eps_n
    (hull)  dist(conv V_n, 0) <= eps_n

the point x = sum_n (1 + delta_n) x_n built from a coordinate-maximal
choice (x_1, ..., x_N) in V_1 x ... x V_N lies in the open unit ball and
outside every outer polytope W_n, hence outside every original body.

The maximized objective treats each body's direction as living both in the
ambient space and in its own private orthogonal block, so norms and inner
products expand blockwise; no (N+1)*d vector is ever materialized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleSum, ProductTooLarge, UnsupportedBody, WitnessInvalid
from .geometry import Body, Plank, as_body, contains
from .minnorm import min_norm_point_weights
from .approximation import build_outer

_SWAP_TOL = 1e-12
_EXHAUSTIVE_GUARD = 10**6


@dataclass(frozen=True)
class BodyParams:
    """Per-body record: center, direction set, inradius, slack, inflation."""

    center: np.ndarray
    directions: tuple
    inradius: float
    epsilon: float
    delta: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float).copy()
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        dirs = tuple(np.asarray(v, dtype=float).copy() for v in self.directions)
        for v in dirs:
            v.setflags(write=False)
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "inradius", float(self.inradius))
        object.__setattr__(self, "epsilon", float(self.epsilon))
        object.__setattr__(self, "delta", float(self.delta))


@dataclass(frozen=True)
class CoveringInstance:
    """N bodies in outer-approximated form, ready for the witness search."""

    dimension: int
    bodies: tuple

    def __post_init__(self):
        object.__setattr__(self, "dimension", int(self.dimension))
        object.__setattr__(self, "bodies", tuple(self.bodies))

    @property
    def count(self) -> int:
        return len(self.bodies)

    def product_size(self) -> int:
        size = 1
        for b in self.bodies:
            size *= len(b.directions)
        return size

    def validate(self):
        """Check every instance invariant; raises ValueError on violation."""
        n_bodies = self.count
        total = 0.0
        for i, b in enumerate(self.bodies):
            if b.center.size != self.dimension:
                raise ValueError(f"body {i}: center dimension mismatch")
            if not b.directions:
                raise ValueError(f"body {i}: empty direction set")
            if not (b.inradius > 0.0 and b.epsilon > 0.0 and b.delta > 0.0):
                raise ValueError(f"body {i}: inradius, epsilon, delta must be positive")
            if float(np.linalg.norm(b.center)) > 1.0 + 1e-9:
                raise ValueError(f"body {i}: center lies outside the unit ball")
            for v in b.directions:
                if v.size != self.dimension:
                    raise ValueError(f"body {i}: direction dimension mismatch")
                if abs(float(np.linalg.norm(v)) - b.inradius) > 1e-9:
                    raise ValueError(f"body {i}: direction norm differs from inradius")
            lhs = (1.0 + b.delta) * (b.inradius**2 - 6.0 * n_bodies * b.epsilon)
            rhs = b.inradius**2 + b.epsilon
            if lhs - rhs < -1e-12:
                raise ValueError(f"body {i}: slack condition fails ({lhs:.3e} < {rhs:.3e})")
            _, dist, _ = min_norm_point_weights(b.directions)
            if dist > b.epsilon + 1e-12:
                raise ValueError(
                    f"body {i}: direction hull misses origin by {dist:.3e} > {b.epsilon:.3e}"
                )
            total += (1.0 + b.delta) * b.inradius
        if n_bodies and total > 1.0 - 1e-9:
            raise ValueError(f"inflated radii sum to {total} >= 1")
        return self

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "bodies": [
                {
                    "center": b.center.tolist(),
                    "directions": [v.tolist() for v in b.directions],
                    "inradius": b.inradius,
                    "epsilon": b.epsilon,
                    "delta": b.delta,
                }
                for b in self.bodies
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, validate: bool = True) -> "CoveringInstance":
        if not isinstance(obj, dict) or "dimension" not in obj or "bodies" not in obj:
            raise ValueError("instance needs 'dimension' and 'bodies'")
        bodies = tuple(
            BodyParams(
                rec["center"],
                tuple(np.asarray(v, dtype=float) for v in rec["directions"]),
                rec["inradius"],
                rec["epsilon"],
                rec["delta"],
            )
            for rec in obj["bodies"]
        )
        inst = cls(int(obj["dimension"]), bodies)
        if validate:
            inst.validate()
        return inst


@dataclass(frozen=True)
class Assignment:
    """One direction choice per body, stored by index into each V_n."""

    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))

    def vectors(self, instance: CoveringInstance):
        return [b.directions[i] for b, i in zip(instance.bodies, self.indices)]


@dataclass(frozen=True)
class WitnessReport:
    witness: np.ndarray
    assignment: Assignment
    objective: float
    norm_x: float
    margins: tuple
    valid: bool
    aux_bounds: tuple

    def __post_init__(self):
        w = np.asarray(self.witness, dtype=float).copy()
        w.setflags(write=False)
        object.__setattr__(self, "witness", w)
        object.__setattr__(self, "margins", tuple(float(m) for m in self.margins))
        object.__setattr__(self, "aux_bounds", tuple(float(a) for a in self.aux_bounds))

    def to_json(self) -> dict:
        return {
            "witness": self.witness.tolist(),
            "objective": self.objective,
            "margins": list(self.margins),
            "valid": self.valid,
        }


def choose_parameters(inradii, margin: float = 0.5):
    """Inflations and slacks making the witness engine applicable.

    A uniform delta spends ``1 - margin`` of the gap between sum(r) and 1;
    each eps takes half of the largest value the slack condition allows, so
    every inequality holds with real room.  Raises :class:`InfeasibleSum`
    when sum(r) >= 1.
    """
    radii = [float(r) for r in inradii]
    if not 0.0 < margin < 1.0:
        raise ValueError("margin must lie in (0, 1)")
    for r in radii:
        if not (0.0 < r <= 1.0):
            raise ValueError("each inradius must lie in (0, 1]")
    total = sum(radii)
    if total >= 1.0:
        raise InfeasibleSum(f"inradii sum to {total} >= 1")
    n = len(radii)
    if n == 0:
        return [], []
    delta = (1.0 - margin) * (1.0 / total - 1.0)
    deltas = [delta] * n
    epsilons = [0.5 * delta * r * r / (1.0 + 6.0 * n * (1.0 + delta)) for r in radii]
    inflated = sum((1.0 + d) * r for d, r in zip(deltas, radii))
    if inflated > 1.0 - 1e-9:
        raise ValueError("margin leaves no strict room below 1; increase it")
    for r, e, d in zip(radii, epsilons, deltas):
        if (1.0 + d) * (r * r - 6.0 * n * e) - (r * r + e) < -1e-12:
            raise ValueError("internal slack-condition failure")  # pragma: no cover
    return deltas, epsilons


def _scaled_tables(instance: CoveringInstance):
    """Per-body lists of (1+delta) v and |.(1+delta) v - center|^2."""
    scaled, t_vals = [], []
    for b in instance.bodies:
        factor = 1.0 + b.delta
        vecs = [factor * v for v in b.directions]
        scaled.append(vecs)
        t_vals.append([float((w - b.center) @ (w - b.center)) for w in vecs])
    return scaled, t_vals


def objective(instance: CoveringInstance, assignment: Assignment) -> float:
    """Squared norm of the block objective at the given assignment.

    Equals |sum_n (1+delta_n) g_n|^2 + sum_n |(1+delta_n) g_n - o_n|^2 by
    orthogonality of the per-body blocks.
    """
    if len(assignment.indices) != instance.count:
        raise ValueError("assignment length differs from body count")
    s = np.zeros(instance.dimension)
    t = 0.0
    for b, i in zip(instance.bodies, assignment.indices):
        w = (1.0 + b.delta) * b.directions[i]
        s += w
        diff = w - b.center
        t += float(diff @ diff)
    return float(s @ s) + t


def _maximize_exhaustive(instance, scaled, t_vals) -> Assignment:
    sizes = [len(v) for v in scaled]
    if instance.product_size() > _EXHAUSTIVE_GUARD:
        raise ProductTooLarge(
            f"product space has {instance.product_size()} assignments (> {_EXHAUSTIVE_GUARD})"
        )
    d = instance.dimension
    best_idx, best_val = None, -np.inf
    for combo in itertools.product(*(range(k) for k in sizes)):
        s = np.zeros(d)
        t = 0.0
        for n, i in enumerate(combo):
            s += scaled[n][i]
            t += t_vals[n][i]
        val = float(s @ s) + t
        if val > best_val:
            best_val, best_idx = val, combo
    return Assignment(best_idx)


def _maximize_ascent(instance, scaled, t_vals) -> Assignment:
    n_bodies = instance.count
    d = instance.dimension
    # greedy initialization in index order
    idx = []
    s = np.zeros(d)
    t_sum = 0.0
    for n in range(n_bodies):
        best_i, best_val = 0, -np.inf
        for i, w in enumerate(scaled[n]):
            cand = s + w
            val = float(cand @ cand) + t_vals[n][i]
            if val > best_val:
                best_val, best_i = val, i
        idx.append(best_i)
        s += scaled[n][best_i]
        t_sum += t_vals[n][best_i]
    obj = float(s @ s) + t_sum
    # cyclic single-coordinate improvement passes
    improved = True
    while improved:
        improved = False
        for j in range(n_bodies):
            s_rest = s - scaled[j][idx[j]]
            t_rest = t_sum - t_vals[j][idx[j]]
            best_i, best_obj = idx[j], obj
            for i, w in enumerate(scaled[j]):
                if i == idx[j]:
                    continue
                cand = s_rest + w
                val = float(cand @ cand) + t_rest + t_vals[j][i]
                if val > best_obj + _SWAP_TOL:
                    best_obj, best_i = val, i
            if best_i != idx[j]:
                idx[j] = best_i
                s = s_rest + scaled[j][best_i]
                t_sum = t_rest + t_vals[j][best_i]
                obj = best_obj
                improved = True
    return Assignment(idx)


def maximize(instance: CoveringInstance, mode: str = "ascent") -> Assignment:
    """Coordinate-maximal (ascent) or globally maximal (exhaustive) assignment.

    The validity argument only compares single-coordinate changes, so any
    coordinate-maximal point works; exhaustive mode is kept as the oracle.
    """
    if any(len(b.directions) == 0 for b in instance.bodies):
        raise ValueError("every direction set must be nonempty")
    scaled, t_vals = _scaled_tables(instance)
    if mode == "exhaustive":
        return _maximize_exhaustive(instance, scaled, t_vals)
    if mode == "ascent":
        return _maximize_ascent(instance, scaled, t_vals)
    raise ValueError(f"unknown mode {mode!r}")


def witness(instance: CoveringInstance, mode: str = "ascent") -> WitnessReport:
    """Point of the open unit ball outside every outer polytope.

    Raises :class:`WitnessInvalid` (report attached) if the computed point
    fails its checks, which signals solver tolerance failure or a corrupted
    instance, never a true counterexample.
    """
    assignment = maximize(instance, mode)
    chosen = assignment.vectors(instance)
    d = instance.dimension
    x = np.zeros(d)
    for b, v in zip(instance.bodies, chosen):
        x = x + (1.0 + b.delta) * v
    norm_x = float(np.linalg.norm(x))
    obj = objective(instance, assignment)

    margins = []
    for b, v in zip(instance.bodies, chosen):
        margins.append(float((x - b.center) @ v) - (b.inradius**2 + b.epsilon))

    # |y_j| where y_j is the objective vector minus body j's own contribution:
    # ambient block x - (1+delta_j) x_j, private block -o_j, other bodies
    # keep their (1+delta_n) x_n - o_n blocks.
    t_each = [
        float(((1.0 + b.delta) * v - b.center) @ ((1.0 + b.delta) * v - b.center))
        for b, v in zip(instance.bodies, chosen)
    ]
    t_total = sum(t_each)
    aux = []
    for j, (b, v) in enumerate(zip(instance.bodies, chosen)):
        h_block = x - (1.0 + b.delta) * v
        sq = float(h_block @ h_block) + (t_total - t_each[j]) + float(b.center @ b.center)
        aux.append(np.sqrt(max(sq, 0.0)))

    valid = norm_x < 1.0 - 1e-12 and all(m >= -1e-9 for m in margins)
    report = WitnessReport(x, assignment, obj, norm_x, tuple(margins), valid, tuple(aux))
    if not valid:
        raise WitnessInvalid(
            f"witness checks failed (|x| = {norm_x}, min margin = "
            f"{min(margins, default=0.0):.3e})",
            report,
        )
    return report


def proof_step_diagnostics(instance: CoveringInstance, assignment: Assignment) -> list:
    """Per-body diagnostics of the three internal validity steps.

    For each body j returns the worst single-swap inner-product slack, the
    slack of the hull-averaged lower bound (using the min-norm convex
    weights), and |y_j| (empirically at most 3N).
    """
    chosen = assignment.vectors(instance)
    d = instance.dimension
    x = np.zeros(d)
    for b, v in zip(instance.bodies, chosen):
        x = x + (1.0 + b.delta) * v
    t_each = [
        float(((1.0 + b.delta) * v - b.center) @ ((1.0 + b.delta) * v - b.center))
        for b, v in zip(instance.bodies, chosen)
    ]
    t_total = sum(t_each)
    out = []
    for j, (b, v) in enumerate(zip(instance.bodies, chosen)):
        factor = 1.0 + b.delta
        h_block = x - factor * v
        y_sq = float(h_block @ h_block) + (t_total - t_each[j]) + float(b.center @ b.center)
        y_norm = float(np.sqrt(max(y_sq, 0.0)))
        # <y_j, (1+delta_j)(u + U_j u)> expands blockwise to
        # (1+delta_j) * <h_block - center_j, u>
        lin = factor * (h_block - b.center)
        lhs = float(lin @ v)
        sic_slack = min(lhs - float(lin @ u) for u in b.directions)
        _, _, weights = min_norm_point_weights(b.directions)
        averaged = sum(w * float(lin @ u) for w, u in zip(weights, b.directions))
        avg_lower = -2.0 * b.epsilon * factor * y_norm
        out.append(
            {
                "sic_slack": sic_slack,
                "averaged_value": averaged,
                "averaged_lower_bound": avg_lower,
                "averaged_slack": lhs - avg_lower,
                "y_norm": y_norm,
                "y_norm_bound": 3.0 * instance.count,
            }
        )
    return out


def bang_plank_witness(planks, widths_check: bool = True, margin: float = 0.5,
                       mode: str = "ascent") -> WitnessReport:
    """Uncovered point of the open unit ball for planks of total width < 2.

    Builds the outer approximation of every plank, picks parameters, runs
    the witness search, and re-verifies that the point avoids each original
    (unwidened) plank.
    """
    shapes = []
    for p in planks:
        body = as_body(p)
        if not isinstance(body.shape, Plank) or body.clip_to_unit_ball:
            raise UnsupportedBody("bang_plank_witness expects unclipped planks")
        shapes.append(body.shape)
    if not shapes:
        raise ValueError("need at least one plank")
    dims = {p.dimension for p in shapes}
    if len(dims) != 1:
        raise ValueError("planks live in different dimensions")
    radii = [p.width / 2.0 for p in shapes]
    if widths_check and sum(radii) >= 1.0:
        raise InfeasibleSum(f"plank half-widths sum to {sum(radii)} >= 1")
    deltas, epsilons = choose_parameters(radii, margin)
    bodies = []
    for p, r, e, dl in zip(shapes, radii, epsilons, deltas):
        outer = build_outer(p, e)
        bodies.append(BodyParams(outer.center, outer.directions, outer.inradius, e, dl))
    instance = CoveringInstance(dims.pop(), tuple(bodies)).validate()
    report = witness(instance, mode)
    for p in shapes:
        if contains(p, report.witness, 1e-9):
            raise WitnessInvalid("witness landed inside an original plank", report)
    return report
