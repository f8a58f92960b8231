"""Exception hierarchy shared by all modules."""


class QrealError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(QrealError, ValueError):
    pass


class StructureViolation(QrealError, ValueError):
    """Input violates a required matrix structure (e.g. skew-symmetry)."""


class SingularStructure(QrealError, ValueError):
    pass


class NearPole(QrealError, ValueError):
    """Evaluation point too close to an eigenvalue of the state matrix."""


class NonHurwitz(QrealError, ValueError):
    pass


class ImaginaryAxisEigenvalue(QrealError):
    """The Hamiltonian matrix has an eigenvalue on the imaginary axis."""


class SingularX1(QrealError):
    """The top block of the stable invariant subspace basis is singular.

    In that case the Riccati equation has no solution of the required kind.
    ``ratio`` holds ``sigma_min(X1) / sigma_max(X1)`` when known.
    """

    def __init__(self, message, ratio=None):
        super().__init__(message)
        self.ratio = ratio


class StableSubspaceDimension(QrealError):
    pass


class NotAccepted(QrealError):
    """A Riccati candidate failed its residual, skewness or rank thresholds."""


class NonRealOutput(QrealError):
    pass


class InconsistentSystem(QrealError):
    pass


class HermitianDefect(QrealError):
    pass


class AssumptionError(QrealError):
    """A standing assumption (minimality, stability, ...) does not hold."""


class NotRealizable(QrealError):
    """Raised when no direct-feedthrough realization exists.

    ``cause`` holds the underlying exception (e.g. :class:`SingularX1`).
    """

    def __init__(self, message, cause=None):
        super().__init__(message)
        self.cause = cause

    @property
    def cause_name(self):
        return type(self.cause).__name__ if self.cause is not None else None
