"""Middleware to handle logging of operations and their outcomes."""

import logging
import time
import uuid
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

import structlog

from lcgalois.config.operations import GaloisOperationsConfig
from lcgalois.exceptions import GaloisError

logger = structlog.getLogger("lcgalois.operation")


@dataclass(frozen=True)
class OperationRequest:
    """One invocation of a module operation.

    :ivar command: The command path, e.g. ("gset", "galois").
    :ivar arguments: The parsed command arguments.
    :ivar operation_id: An identifier bound to every log event of the operation.
    """

    command: Tuple[str, ...]
    arguments: Dict[str, Any] = field(default_factory=dict)
    operation_id: str = field(default_factory=lambda: str(uuid.uuid4()))

    @property
    def name(self) -> str:
        """Return the command as one string."""
        return " ".join(self.command)


class LogOperationMiddleware:
    """Middleware to log operations with their outcome and run time.

    The level of the finishing event depends on the outcome (success, invariant violation,
    error) and is escalated for slow and very slow operations.
    """

    def __init__(
        self,
        handle: Callable[[OperationRequest], Any],
        thresholds: Optional[GaloisOperationsConfig] = None,
    ) -> None:
        """Initialize the middleware.

        :param handle: A reference to the next handler in the chain.
        :param thresholds: Timing thresholds; the process configuration when omitted.
        """
        self.handle = handle
        if thresholds is None:
            from lcgalois.settings import config  # noqa

            thresholds = config.operations
        self.thresholds = thresholds

    def __call__(self, request: OperationRequest) -> Any:
        """Run the operation and log around it.

        :param request: The incoming operation.
        :return: Whatever the handler returns.
        """
        start_time = time.time()
        self.log_request(request)
        try:
            result = self.handle(request)
        except GaloisError as exc:
            self.log_outcome(request, start_time, exit_code=exc.exit_code, error=str(exc))
            raise
        self.log_outcome(request, start_time, exit_code=getattr(result, "exit_code", 0))
        return result

    def log_request(self, request: OperationRequest) -> None:
        """Log the operation and bind its identifier."""
        structlog.contextvars.bind_contextvars(operation_id=request.operation_id)
        logger.bind(command=request.name, arguments=request.arguments).info("operation")

    def _escalate(self, run_time_ms: float, log_level: int, extra: Dict[str, Any]) -> int:
        """Escalate the log level of slow operations."""
        speed = self.thresholds.classify(run_time_ms)
        if speed is None:
            return log_level
        extra["original_log_level"] = log_level
        extra[f"{speed}_operation"] = True
        return self.thresholds.escalation_level(speed)

    def log_outcome(
        self,
        request: OperationRequest,
        start_time: float,
        exit_code: int,
        error: str = "",
    ) -> None:
        """Log the outcome of the operation and clear the bound context."""
        run_time_ms = (time.time() - start_time) * 1000

        if error:
            log_level = logging.ERROR
        elif exit_code:
            log_level = logging.WARNING
        else:
            log_level = logging.INFO

        extra_data: Dict[str, Any] = {}
        log_level = self._escalate(run_time_ms, log_level, extra_data)
        if error:
            extra_data["error"] = error

        logger.bind(
            command=request.name,
            exit_code=exit_code,
            **extra_data,
            run_time_ms=round(run_time_ms, 2),
        ).log(log_level, "operation_finished")

        structlog.contextvars.clear_contextvars()
