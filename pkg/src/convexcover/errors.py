"""Exception types shared across the library."""


class ConvexCoverError(Exception):
    """Base class for all library-specific errors."""


class DimensionMismatch(ConvexCoverError, ValueError):
    """Operands live in different ambient dimensions."""


class EmptyInterior(ConvexCoverError):
    """The body (or an intersection of bodies) has no interior point."""


class Unbounded(ConvexCoverError):
    """A requested quantity is unbounded (support value or inscribed radius)."""


class EmptyIntersection(ConvexCoverError):
    """The requested intersection of convex sets is empty."""


class NoConvergence(ConvexCoverError):
    """An iterative solver hit its iteration cap before reaching tolerance."""


class UnsupportedBody(ConvexCoverError, TypeError):
    """The operation does not support this body representation."""


class CertificateFailure(ConvexCoverError):
    """A constructed certificate failed its own verification checks.

    Indicates solver inaccuracy, not a mathematical counterexample.
    """


class InfeasibleSum(ConvexCoverError):
    """The inradii sum to >= 1, so no uncovered point can be promised."""


class ProductTooLarge(ConvexCoverError):
    """The exhaustive search space exceeds the hard size guard."""


class DegenerateCell(ConvexCoverError):
    """Partitioning kept producing near-degenerate cells after many retries."""


class WitnessInvalid(ConvexCoverError):
    """The computed witness point violates its own validity checks.

    Signals solver tolerance failure or a corrupted instance.  The offending
    report is attached as ``.report`` for diagnostics.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
