"""Exception types raised across the package."""


class BellRmtError(Exception):
    """Base class for all package-specific errors."""


class InvalidDimensionError(BellRmtError):
    """Matrix or spectrum dimension outside the supported range."""


class NonSquareError(BellRmtError):
    """A square matrix was required."""


class NotHermitianError(BellRmtError):
    """Hermiticity violated beyond the symmetry tolerance."""


class NoConvergenceError(BellRmtError):
    """Eigensolver failed to converge; message carries a matrix digest."""


class RankDeficientError(BellRmtError):
    """QR produced a numerically zero diagonal entry; caller should resample."""


class DimensionMismatchError(BellRmtError):
    """Kernel and spectrum dimensions disagree."""


class InvalidKError(BellRmtError):
    """Structured-ensemble parameter k outside the valid range."""


class NonErgodicConfigError(BellRmtError):
    """Metropolis configuration cannot produce an ergodic chain."""


class SamplerAbortError(BellRmtError):
    """A sampler exhausted its retry budget on zero-probability failures."""


class InsufficientDataError(BellRmtError):
    """Too few values for the requested statistic."""


class QuadratureFailureError(BellRmtError):
    """Numerical integration did not reach the requested accuracy."""
