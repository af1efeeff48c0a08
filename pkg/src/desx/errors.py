"""Exception types shared across the package."""


class DesxError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(DesxError, ValueError):
    """A scalar parameter is outside its admissible range (e.g. p < 1)."""


class InvalidInputError(DesxError, ValueError):
    """Structurally invalid input (zero vector, empty lattice, bad chain)."""


class DimensionMismatchError(DesxError, ValueError):
    """Operands live in different coordinate dimensions."""


class DegenerateNormError(DesxError, ValueError):
    """A vertex set does not span, so its gauge is not a norm."""


class DegenerateSubspaceError(DesxError, ValueError):
    """A basis is (numerically) linearly dependent."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateInputError(DesxError, ValueError):
    """A point set does not span the space, so no bounded MVEE exists."""


class NonConvergenceError(DesxError, RuntimeError):
    """Iteration budget exhausted before the certificate was reached."""

    def __init__(self, message, kappa=None, violation=None, iterate=None):
        super().__init__(message)
        self.kappa = kappa
        self.violation = violation
        self.iterate = iterate


class NonSmoothNormError(DesxError, ValueError):
    """The duality mapping is multivalued for this norm family."""


class LargeResidualError(DesxError, RuntimeError):
    """A numerically computed duality vector failed its post-checks."""
