"""Configuration parser for lcgalois."""

from typing import Any, Dict, Union

from rich.console import Console

from .abstract import GaloisAbstractConfig
from .budget import GaloisBudgetConfig
from .logging import GaloisLoggingConfig
from .operations import GaloisOperationsConfig
from .sentry import GaloisSentryConfig


class GaloisBaseConfig(GaloisAbstractConfig):
    """A configuration class for lcgalois.

    Args: Dict[str, Any]: The environment variables.
    """

    # List of accepted environment variables and their defaults.
    # These are keys without the prefix listed above.
    VALID_KEYS: Dict[str, Union[None, int, str, bool]] = {
        # Used by tox during testing
        "TESTING_PARALLEL": 2,
    }

    def __init__(self, env: Dict[str, Any]) -> None:  # pylint: disable=super-init-not-called
        """Initialize the configuration class."""
        self._prefix = GaloisAbstractConfig.ROOT_PREFIX
        self._config = self.get_prefixed_pairs(self._prefix, env)

        self.budget = GaloisBudgetConfig("BUDGET", env)
        self.logging = GaloisLoggingConfig("LOGGING", env)
        self.operations = GaloisOperationsConfig("OPERATIONS", env)
        self.sentry = GaloisSentryConfig("SENTRY", env)

        self.validate()

    def validate(self) -> None:
        """Validate the configuration."""
        try:
            int(self.get("TESTING_PARALLEL"))
        except ValueError as exc:
            if self.get("TESTING_PARALLEL") != "auto":
                raise ValueError(
                    (
                        f"Invalid value for TESTING_PARALLEL: {self.get('TESTING_PARALLEL')}. "
                        "Supported values: int or 'auto'"
                    )
                ) from exc

    def is_production(self) -> bool:
        """Check if logging runs in production (JSON) mode."""
        return self.logging.get("PRODUCTION") is True

    def show_config(self, console: Union[Console, None] = None) -> None:
        """Print the configuration."""
        console = console or Console(stderr=True)
        self.show(console)
        self.budget.show(console)
        self.logging.show(console)
        self.operations.show(console)
        self.sentry.show(console)
