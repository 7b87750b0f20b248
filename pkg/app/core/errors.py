"""Exception hierarchy for the scattering library."""


class ScatteringError(Exception):
    """Base class for all errors raised by the package."""
    pass


class InvalidParametersError(ScatteringError, ValueError):
    """Raised when a physical configuration or label is not admissible."""
    pass


class QuadratureError(ScatteringError):
    """Raised when adaptive integration cannot meet its tolerance."""
    pass


class PrincipalValueError(QuadratureError):
    """Raised when principal-value refinement fails to converge."""
    pass


class UnsupportedOverlapError(ScatteringError):
    """Raised when no closed-form overlap exists for a pair of state kinds."""
    pass


class ExportError(ScatteringError):
    """Raised when an output file cannot be written."""

    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f"Failed to write '{path}': {reason}")
        self.path = path
        self.reason = reason
