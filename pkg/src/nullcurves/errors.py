"""Exception types raised by the geometry routines."""


class NullCurveError(Exception):
    """Base class for all package errors."""


class DegenerateMetric(NullCurveError):
    """The Gram matrix of a metric is singular at a sample point."""


class ZeroVelocity(NullCurveError):
    """A curve has vanishing velocity where a tangent is required."""


class ForbiddenDegenerate(NullCurveError):
    """Raised for a null curve with a = 0 and b = 0, which cannot exist."""


class DegenerateSlant(NullCurveError):
    """a^4 + b^2 vanishes, so the slant frame is undefined."""


class GeodesicPoint(NullCurveError):
    """k1 vanishes at the requested parameter; no screen vector is defined."""


class NullDirection(NullCurveError):
    """A curve is null for a metric where a non-null parameterization is needed."""


class PreconditionMismatch(NullCurveError):
    """The input curve does not satisfy the hypotheses of the requested check."""


class MalformedA(NullCurveError):
    """A matrix is not of the ad-matrix shape of the solvable algebra."""


class ZeroA(NullCurveError):
    """The closed form adjoint curve needs a nonzero slant constant."""


class ConsistencyError(NullCurveError):
    """Two independent evaluations of the same quantity disagree."""


class ConfigError(NullCurveError):
    """A run configuration could not be parsed or is invalid."""
