"""Exception types shared across the package."""


class HarmonicValenceError(Exception):
    """Base class for all errors raised by this package."""


class NonConvergence(HarmonicValenceError):
    """An iterative method did not reach its tolerance.

    ``failed`` holds the indices (or a description) of what failed and
    ``partial`` the last iterate, when one is available.
    """

    def __init__(self, message, failed=None, partial=None):
        super().__init__(message)
        self.failed = failed
        self.partial = partial


class DegenerateZero(HarmonicValenceError):
    """A fixed point with ``|p'(z)|`` numerically equal to 1 was found."""

    def __init__(self, message, zero_set=None):
        super().__init__(message)
        self.zero_set = zero_set


class CertificateMismatch(HarmonicValenceError):
    """The index sum of the located zeros disagrees with the winding number."""

    def __init__(self, message, zero_set=None):
        super().__init__(message)
        self.zero_set = zero_set


class NotAZero(HarmonicValenceError):
    pass


class CollapsedCriticalPoints(HarmonicValenceError):
    pass


class LeftHalfplane(HarmonicValenceError):
    pass


class InvalidConfiguration(HarmonicValenceError, ValueError):
    pass


class NotUnitModulus(HarmonicValenceError, ValueError):
    pass


class RotatedConfigInvalid(HarmonicValenceError):
    pass


class VerificationFailed(HarmonicValenceError):
    pass


class InvalidTree(HarmonicValenceError, ValueError):
    pass


class WrongParity(HarmonicValenceError, ValueError):
    pass


class TooLarge(HarmonicValenceError, ValueError):
    pass


class EmbeddingOverlap(HarmonicValenceError):
    pass
