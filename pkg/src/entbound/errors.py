"""Exception types shared across the library."""


class DimensionMismatch(ValueError):
    """Operands disagree on subsystem or matrix dimensions."""


class NotNormalized(ValueError):
    """State vector or coefficient matrix is not unit norm."""


class InvalidRank(ValueError):
    """Requested rank is outside [1, N1*N2]."""


class OutOfRange(ValueError):
    """Channel parameter lies outside its valid interval."""


class InvalidChannel(ValueError):
    """Kraus set is malformed or would yield probabilities above 1."""


class ZeroProbability(ArithmeticError):
    """Channel (numerically) annihilates the state; normalization is meaningless."""


class TrivialDimension(ValueError):
    """min(N1, N2) = 1, where concurrence is identically zero."""


class SingularProbe(ValueError):
    """Probe coefficient matrix is rank deficient (or numerically so)."""
