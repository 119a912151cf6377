"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class so
experiment drivers can record a status instead of parsing messages.
"""


class CritpairError(Exception):
    """Base class for all package-specific errors."""


class PoleHit(CritpairError):
    """Evaluation point is (numerically) on top of a zero."""


class DegreeTooLarge(CritpairError):
    """Operation has an explicit degree cap and the input exceeds it."""


class ConstantPoly(CritpairError):
    """Differentiation would produce an empty polynomial."""


class DuplicateZeros(CritpairError):
    """Zero list contains a pair closer than the resolvable separation."""


class NotConverged(CritpairError):
    """Iteration budget exhausted. Carries the partial report when available."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class LeftTrustRegion(CritpairError):
    """Newton iterate escaped the allowed disk around its seed."""


class ContourTooClose(CritpairError):
    """A zero or critical point sits too close to the integration circle."""


class NonIntegerWinding(CritpairError):
    """Contour quadrature did not resolve to an integer within tolerance."""


class NoConvergence(CritpairError):
    """QR eigenvalue iteration exceeded its sweep budget or failed its checks."""


class BadCdfTable(CritpairError):
    """Radial CDF table violates the format contract."""


class ZeroTransform(CritpairError):
    """Cauchy-Stieltjes transform vanishes where a reciprocal is needed."""


class ZeroDensity(CritpairError):
    """Density is zero or negative where a positive value is required."""


class EmptySample(CritpairError):
    """Statistical routine called with no data."""


class LengthMismatch(CritpairError):
    """Paired sequences have different lengths."""


class OutOfRange(CritpairError):
    """Argument outside the documented domain."""


class ConfigError(CritpairError):
    """Experiment configuration failed validation."""
