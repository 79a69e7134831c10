"""
hermlab.core.errors

Custom exception classes for error management in hermlab.
"""

from typing import List, Optional


class AlgebraError(Exception):
    """Raised when structure-constant arrays are malformed."""

    pass


class AlgebraValidationError(Exception):
    """Raised when an algebra violates d² = 0 or integrability."""

    def __init__(self, message: str, diagnostics: Optional[List[str]] = None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])


class AlgebraMismatchError(Exception):
    """Raised when forms over different coframe dimensions are combined."""

    pass


class FormArityError(Exception):
    """Raised when a form is evaluated on the wrong number of directions."""

    pass


class MetricError(Exception):
    """Raised when a metric is not Hermitian positive definite."""

    pass


class FrameError(Exception):
    """Raised when a coframe or a coframe change has the wrong shape or properties."""

    pass


class IndexSignatureError(Exception):
    """Raised when a tensor index signature is missing or inconsistent."""

    pass


class InvariantViolation(Exception):
    """Raised when a constructed object breaks an asserted symmetry."""

    pass


class CheckExecutionError(Exception):
    """Raised when execution of a registered check fails."""

    pass


class SpecFileError(Exception):
    """Raised when a manifold-spec file cannot be read or parsed."""

    pass


class CatalogError(Exception):
    """Raised when a catalog lookup or generator request is invalid."""

    pass


class ConfigError(Exception):
    """Raised when configuration or search options fail validation."""

    pass
