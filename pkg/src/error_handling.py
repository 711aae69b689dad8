"""
Error Handling and Recovery Module

This module provides the exception hierarchy of the simulation library, the
step-refinement retry utility used by the time steppers, and error context
logging for robust error handling throughout the system.
"""

import time
import traceback
from typing import Dict, Any, Optional, Callable
from enum import Enum


class ErrorSeverity(Enum):
    """Severity levels for errors"""
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


# Custom Exception Hierarchy

class SimulationError(Exception):
    """Base exception for all simulation errors"""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        """
        Initialize simulation error

        Args:
            message: Error message
            context: Additional context information
        """
        super().__init__(message)
        self.message = message
        self.context = context or {}
        self.severity = ErrorSeverity.MEDIUM

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to dictionary for logging"""
        return {
            "error_type": self.__class__.__name__,
            "message": self.message,
            "context": self.context,
            "severity": self.severity.value,
            "traceback": traceback.format_exc()
        }


class ConfigurationError(SimulationError):
    """Error in system or run configuration"""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message, context)
        self.severity = ErrorSeverity.CRITICAL


class InvalidInputError(SimulationError):
    """Input data failed validation (non-finite samples, bad shapes, bad parameters)"""

    def __init__(self, field: str, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(f"Invalid input for '{field}': {message}", context)
        self.field = field
        self.severity = ErrorSeverity.LOW


class ZeroMassViolationError(SimulationError):
    """The antiderivative is undefined because the mass residual is too large"""

    def __init__(self, residual: float, tolerance: float, context: Optional[Dict[str, Any]] = None):
        super().__init__(
            f"Mass residual {residual:.3e} exceeds tolerance {tolerance:.3e}",
            context
        )
        self.residual = residual
        self.tolerance = tolerance
        self.severity = ErrorSeverity.MEDIUM


class ConstraintViolationError(SimulationError):
    """Sup norm of q reached or exceeded the admissible bound"""

    def __init__(self, max_abs_q: float, bound: float, context: Optional[Dict[str, Any]] = None):
        super().__init__(
            f"max|q| = {max_abs_q:.6f} violates bound {bound:.6f}",
            context
        )
        self.max_abs_q = max_abs_q
        self.bound = bound
        self.severity = ErrorSeverity.HIGH


class StepRejectedError(SimulationError):
    """A time step produced a state outside the working ceiling"""

    def __init__(
        self,
        t: float,
        dt: float,
        max_abs_q: float,
        bound: float,
        context: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            f"Step at t={t:.6g} with dt={dt:.3e} rejected: max|q| = {max_abs_q:.6f} >= {bound:.6f} "
            f"(retry with dt={dt / 2:.3e})",
            context
        )
        self.t = t
        self.dt = dt
        self.max_abs_q = max_abs_q
        self.bound = bound
        self.suggested_dt = dt / 2
        self.severity = ErrorSeverity.MEDIUM


class ContractionFailureError(SimulationError):
    """Picard iterate distances grew for several consecutive iterations"""

    def __init__(self, step_size: float, distances: list, context: Optional[Dict[str, Any]] = None):
        super().__init__(
            f"Picard iteration is not contracting for T={step_size:.3e} "
            f"(last distances {[float(f'{d:.3e}') for d in distances[-4:]]})",
            context
        )
        self.step_size = step_size
        self.distances = list(distances)
        self.severity = ErrorSeverity.MEDIUM


class ConvergenceFailureError(SimulationError):
    """Picard iteration hit its iteration cap before reaching tolerance"""

    def __init__(self, iterations: int, last_distance: float, context: Optional[Dict[str, Any]] = None):
        super().__init__(
            f"Picard iteration did not converge in {iterations} iterations "
            f"(last distance {last_distance:.3e})",
            context
        )
        self.iterations = iterations
        self.last_distance = last_distance
        self.severity = ErrorSeverity.MEDIUM


class InfeasibleStepError(SimulationError):
    """No admissible step size satisfies the step-size inequalities"""

    def __init__(self, delta: float, alpha: float, context: Optional[Dict[str, Any]] = None):
        super().__init__(
            f"No feasible step for delta={delta:.4g}, alpha={alpha:.4g}",
            context
        )
        self.delta = delta
        self.alpha = alpha
        self.severity = ErrorSeverity.HIGH


class DomainError(SimulationError):
    """Argument outside the domain of a function or outside the sampled interval"""

    def __init__(self, operation: str, value: Any, context: Optional[Dict[str, Any]] = None):
        super().__init__(f"'{operation}' is undefined for {value}", context)
        self.operation = operation
        self.value = value
        self.severity = ErrorSeverity.LOW


class NonInvertibleMapError(SimulationError):
    """The hodograph map degenerates (loop-solution regime)"""

    def __init__(self, max_abs_q: float, context: Optional[Dict[str, Any]] = None):
        super().__init__(
            f"Coordinate map is not invertible: max|q| = {max_abs_q:.6f} >= 1",
            context
        )
        self.max_abs_q = max_abs_q
        self.severity = ErrorSeverity.HIGH


# Step Refinement Utility

class StepRefinement:
    """
    Geometric step-size refinement for retry logic.

    Attempt n uses ``initial * factor**n`` bounded below by ``min_step``.
    """

    def __init__(
        self,
        factor: float = 0.5,
        min_step: float = 1e-8,
        node_growth: int = 2
    ):
        """
        Initialize step refinement

        Args:
            factor: Multiplier applied to the step on each retry
            min_step: Smallest step the refinement will propose
            node_growth: Multiplier for collocation node counts on each retry
        """
        if not 0 < factor < 1:
            raise ValueError("factor must be in (0, 1)")
        if min_step <= 0:
            raise ValueError("min_step must be positive")
        if node_growth < 1:
            raise ValueError("node_growth must be >= 1")

        self.factor = factor
        self.min_step = min_step
        self.node_growth = node_growth

    def step_for(self, initial: float, attempt: int) -> float:
        """
        Step size for a given attempt number

        Args:
            initial: Step size of the first attempt
            attempt: Attempt number (0-indexed)

        Returns:
            Refined step size
        """
        if attempt < 0:
            raise ValueError("attempt must be non-negative")
        return max(initial * (self.factor ** attempt), self.min_step)

    def nodes_for(self, initial: int, attempt: int) -> int:
        """Collocation node count for a given attempt number"""
        if attempt < 0:
            raise ValueError("attempt must be non-negative")
        return initial * (self.node_growth ** attempt)


def retry_with_refinement(
    func: Callable[[int], Any],
    max_retries: int = 3,
    exceptions: tuple = (SimulationError,),
    on_retry: Optional[Callable[[Exception, int], None]] = None
) -> Any:
    """
    Retry a step function with progressively refined parameters

    Args:
        func: Callable receiving the attempt number; it derives its step size
            (e.g. through StepRefinement) from that number
        max_retries: Maximum number of retries
        exceptions: Tuple of exceptions to catch and retry
        on_retry: Optional callback called on each retry with (exception, attempt)

    Returns:
        Result of the first successful call

    Raises:
        Last exception if all retries exhausted
    """
    last_exception = None

    for attempt in range(max_retries + 1):
        try:
            return func(attempt)
        except exceptions as e:
            last_exception = e

            if attempt >= max_retries:
                break

            if on_retry:
                on_retry(e, attempt)

    raise last_exception


# Error Context Logging

class ErrorContext:
    """
    Context manager for capturing and logging error context

    Usage:
        with ErrorContext(logger, operation="evolve") as ctx:
            ctx.add("grid_points", grid.n_points)
            run_evolution(...)
    """

    def __init__(self, logger, operation: str):
        """
        Initialize error context

        Args:
            logger: StructuredLogger instance (may be None)
            operation: Name of the operation
        """
        self.logger = logger
        self.operation = operation
        self.context = {"operation": operation}
        self.start_time = None

    def add(self, key: str, value: Any):
        """Add context information"""
        self.context[key] = value

    def __enter__(self):
        """Enter context"""
        self.start_time = time.time()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Exit context and log if error occurred"""
        if exc_type is not None:
            duration = time.time() - self.start_time
            self.context["duration"] = duration
            self.context["error_type"] = exc_type.__name__
            self.context["error_message"] = str(exc_val)
            if isinstance(exc_val, SimulationError):
                self.context["error_context"] = exc_val.context

            if self.logger:
                self.logger.log_error(
                    error_type=exc_type.__name__,
                    error_message=str(exc_val),
                    stack_trace=traceback.format_exc() if exc_tb else "",
                    context=self.context
                )

        # Don't suppress exception
        return False


def safe_execute(
    func: Callable,
    default_value: Any = None,
    logger=None,
    operation: str = "operation"
) -> Any:
    """
    Safely execute a diagnostic with error handling

    Args:
        func: Function to execute
        default_value: Value to return on error
        logger: Optional logger
        operation: Name of the operation

    Returns:
        Function result or default_value on error
    """
    try:
        return func()
    except Exception as e:
        if logger:
            logger.log_error(
                error_type=type(e).__name__,
                error_message=str(e),
                stack_trace=traceback.format_exc(),
                context={"operation": operation}
            )
        return default_value
