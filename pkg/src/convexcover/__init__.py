"""Inscribed balls, outer polytope certificates, and covering witnesses.

The library turns the covering inequality "the inradii of convex bodies
covering a convex body sum to at least the covered body's inradius" into
executable machinery: Chebyshev-center LPs, outer approximations with
convex-hull certificates, an explicit uncovered-point search, and a
sampling harness that verifies the inequality on generated partitions.
"""

from .approximation import (
    OuterPolytope,
    build_outer,
    check_outer_shrink,
    separation_bound,
)
from .errors import (
    CertificateFailure,
    ConvexCoverError,
    DegenerateCell,
    DimensionMismatch,
    EmptyInterior,
    EmptyIntersection,
    InfeasibleSum,
    NoConvergence,
    ProductTooLarge,
    Unbounded,
    UnsupportedBody,
    WitnessInvalid,
)
from .geometry import (
    BallBody,
    Body,
    Halfspace,
    Plank,
    Polytope,
    as_body,
    body_from_json,
    body_to_json,
    contains,
    contains_batch,
    support_value,
)
from .harness import (
    Scenario,
    VerificationResult,
    generate_partition,
    grid_uncovered_oracle,
    halton_points,
    sample_body_points,
    split_polytope,
    sweep,
    verify_covering,
)
from .inradius import (
    InscribedBall,
    inradius_body,
    inradius_clipped,
    inradius_polytope,
    project_point,
)
from .minnorm import MinNormResult, min_norm_point, min_norm_point_weights
from .witness import (
    Assignment,
    BodyParams,
    CoveringInstance,
    WitnessReport,
    bang_plank_witness,
    choose_parameters,
    maximize,
    objective,
    proof_step_diagnostics,
    witness,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BallBody",
    "Body",
    "BodyParams",
    "CertificateFailure",
    "ConvexCoverError",
    "CoveringInstance",
    "DegenerateCell",
    "DimensionMismatch",
    "EmptyInterior",
    "EmptyIntersection",
    "Halfspace",
    "InfeasibleSum",
    "InscribedBall",
    "MinNormResult",
    "NoConvergence",
    "OuterPolytope",
    "Plank",
    "Polytope",
    "ProductTooLarge",
    "Scenario",
    "Unbounded",
    "UnsupportedBody",
    "VerificationResult",
    "WitnessInvalid",
    "WitnessReport",
    "as_body",
    "bang_plank_witness",
    "body_from_json",
    "body_to_json",
    "build_outer",
    "check_outer_shrink",
    "choose_parameters",
    "contains",
    "contains_batch",
    "generate_partition",
    "grid_uncovered_oracle",
    "halton_points",
    "inradius_body",
    "inradius_clipped",
    "inradius_polytope",
    "maximize",
    "min_norm_point",
    "min_norm_point_weights",
    "objective",
    "project_point",
    "proof_step_diagnostics",
    "sample_body_points",
    "separation_bound",
    "split_polytope",
    "support_value",
    "sweep",
    "verify_covering",
    "witness",
]
