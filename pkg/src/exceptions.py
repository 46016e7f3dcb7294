"""
Error types raised across the package. The CLI maps each family onto an exit status.
"""
from typing import Any, Optional


class IntervalDataError(ValueError):
    """Raised when interval or grouped data fails structural validation."""

    def __init__(self, message: str, record_index: Optional[int] = None):
        if record_index is not None:
            message = f"record {record_index}: {message}"
        super().__init__(message)
        self.record_index = record_index


class EmptyDatasetError(IntervalDataError):
    """Raised when a dataset ends up with no observations."""


class SupportViolationError(IntervalDataError):
    """Raised when a record falls outside the support of the bound model."""


class ZeroMassIntervalError(ArithmeticError):
    """Raised when an interval carries no probability mass under the current parameters."""

    def __init__(self, message: str, observation_index: Optional[int] = None):
        if observation_index is not None:
            message = f"observation {observation_index}: {message}"
        super().__init__(message)
        self.observation_index = observation_index
        # set by run_fit when raised from an E-step
        self.partial_result: Any = None


class FitError(RuntimeError):
    """Base class for failures inside an EM fit.

    Args:
        message (str): Diagnostic message.
        partial_result (Any, optional): The FitResult accumulated up to the failing
            iteration. Attached by run_fit before the error propagates.
    """

    def __init__(self, message: str, partial_result: Any = None):
        super().__init__(message)
        self.partial_result = partial_result


class DegenerateMStepError(FitError):
    """Raised when an M-step collapses to a zero or negative scale."""


class NoUniqueRootError(FitError):
    """Raised when the Weibull shape equation has no unique root."""


class StrategyNotSupportedError(ValueError):
    """Raised when the exact E-step is requested for a model without closed-form moments."""


class ModelMismatchError(ValueError):
    """Raised when parameters of two different models are compared."""


class StudyConfigError(ValueError):
    """Raised when a study configuration file is missing a key or holds a bad value."""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message)
        self.key = key


class OracleBoxError(ValueError):
    """Raised when the likelihood grid search finds its maximizer on the search box boundary."""


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature cannot meet its tolerance within the node budget."""
