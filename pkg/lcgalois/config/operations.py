"""Configuration for the scope GALOIS_OPERATIONS."""

from typing import Dict, Optional, Union

from .abstract import (
    GaloisAbstractConfig,
    valid_logging_levels,
    validator_valid_logging_level,
)

# Speed classes, slowest first.
SPEEDS = ("very_slow", "slow")


class GaloisOperationsConfig(GaloisAbstractConfig):
    """Run time thresholds for command line operations, in milliseconds.

    An operation at or over a threshold has its ``operation_finished`` event escalated to the
    level configured for that speed class.
    """

    VALID_KEYS: Dict[str, Union[str, int]] = {
        "THRESHOLD_SLOW": 1000,
        "THRESHOLD_VERY_SLOW": 5000,
        "LOG_LEVEL_SLOW": "WARNING",
        "LOG_LEVEL_VERY_SLOW": "ERROR",
    }

    def validate(self) -> None:
        """Validate thresholds and escalation levels."""
        for speed in SPEEDS:
            threshold = self.threshold(speed)
            if threshold < 0:
                raise ValueError(
                    f"Invalid value for {self.fq_key(f'THRESHOLD_{speed.upper()}')}: "
                    f"{threshold}. Supported values: int >= 0"
                )
            level = self.get(f"LOG_LEVEL_{speed.upper()}")
            if not validator_valid_logging_level(level):
                raise ValueError(
                    f"Invalid logging level for {speed} operations: {level}. "
                    f"Supported levels: {','.join(valid_logging_levels())}"
                )

        if self.threshold("slow") > self.threshold("very_slow"):
            slow = self.fq_key("THRESHOLD_SLOW")
            very_slow = self.fq_key("THRESHOLD_VERY_SLOW")
            raise ValueError(f"{slow} must be smaller than {very_slow}.")

    def threshold(self, speed: str) -> int:
        """Return the threshold of a speed class."""
        return self.get_int(f"THRESHOLD_{speed.upper()}")

    def classify(self, run_time_ms: float) -> Optional[str]:
        """Return the speed class of a run time, or None for a normal operation."""
        for speed in SPEEDS:
            if run_time_ms >= self.threshold(speed):
                return speed
        return None

    def escalation_level(self, speed: str) -> int:
        """Return the log level a speed class escalates to."""
        return self.get_log_level(f"LOG_LEVEL_{speed.upper()}")
