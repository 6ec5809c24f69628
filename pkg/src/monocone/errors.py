class DimensionMismatch(ValueError):
    pass


class ResourceLimitExceeded(RuntimeError):
    """Raised when the double description working set grows past its cap."""


class NotAMonotone(ValueError):
    """The formula violates a facet of the requested monotonicity cone."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class CertificateError(RuntimeError):
    """A freshly built certificate failed re-verification (invariant breach)."""
