"""Exception types shared across the package."""


class GeodiscError(Exception):
    """Base class for all library errors."""


class InfeasibleDataError(GeodiscError):
    """Interpolation data admits no holomorphic closed-disc solution."""


class InconsistentDataError(GeodiscError):
    """Data cannot arise from a map of the stated kind."""


class NotReducibleError(GeodiscError):
    """Schur step attempted on a unimodular-constant pivot."""


class DegenerateInstanceError(GeodiscError):
    """Completion hit a unit-circle root; the instance is on the stratum boundary."""


class PreconditionError(GeodiscError):
    """Input violates a documented precondition."""


class GaugeError(GeodiscError):
    """Gauge evaluation failed (bad weights or no bisection convergence)."""


class AmbiguousClassificationError(GeodiscError):
    """Interior/boundary dichotomy could not be decided inside the dead band."""


class NotCommensurableError(GeodiscError):
    """Exponent ratios admit no small-denominator rational reconstruction."""
