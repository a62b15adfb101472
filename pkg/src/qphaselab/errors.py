"""Exception hierarchy shared by all subpackages."""


class QPhaseLabError(Exception):
    """Base class for every error raised by this package."""


class InvalidSystemSizeError(QPhaseLabError):
    """System size outside the range a routine supports."""


class InvalidOperatorError(QPhaseLabError):
    """Operator violates a structural requirement (e.g. not Hermitian)."""


class NonHermitianObservableError(InvalidOperatorError):
    """Expectation value came out with a non-negligible imaginary part."""


class DimensionError(QPhaseLabError):
    """Mismatched operand dimensions."""


class InvalidGroupError(QPhaseLabError):
    """Qubit group is malformed (duplicates, out of range)."""


class UnsupportedGroupError(QPhaseLabError):
    """Qubit group is well-formed but not supported by this backend."""


class UnsupportedGroupSizeError(UnsupportedGroupError):
    """Group size outside the supported range."""


class InvalidUnitaryError(QPhaseLabError):
    """Matrix is not unitary to the required tolerance."""


class ConvergenceFailureError(QPhaseLabError):
    """Iterative solver failed to reach its tolerance."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class NumericalFailureError(QPhaseLabError):
    """A numerical identity that should hold by construction was violated."""


class UnsupportedRangeError(QPhaseLabError):
    """Interaction range exceeds what the MPO builder handles."""


class EmptyEstimateError(QPhaseLabError):
    """Estimator invoked with no data."""


class DegenerateTrainingSetError(QPhaseLabError):
    """Training data is missing one of the two label classes."""


class UnsupportedCopyCountError(QPhaseLabError):
    """Requested per-test copy count exceeds the classical processing cap."""


class InvalidCopyCountError(QPhaseLabError):
    """Copy count incompatible with the classifier's block size."""


class InvalidProbabilityError(QPhaseLabError):
    """Probability parameter outside [0, 1]."""


class InvalidCountsError(QPhaseLabError):
    """Count vector contains negative or non-integer entries."""


class InvalidGeometryError(QPhaseLabError):
    """Circuit layout incompatible with the system size."""


class InvalidConfigError(QPhaseLabError):
    """Run configuration inconsistent with the requested method."""
