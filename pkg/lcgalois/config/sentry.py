"""Configuration for the scope GALOIS_SENTRY."""

from typing import Dict, Union

import sentry_sdk

from lcgalois import __version__

from .abstract import (
    ConfigValue,
    GaloisAbstractConfig,
    as_bool,
    valid_logging_levels,
    validator_valid_logging_level,
)

DEFAULT_SENTRY_LEVEL = "ERROR"
MASK = "<set>"


class GaloisSentryConfig(GaloisAbstractConfig):
    """Error reporting to Sentry, enabled by a DSN."""

    VALID_KEYS: Dict[str, Union[None, str, int, float]] = {
        "DSN": None,
        "LEVEL": DEFAULT_SENTRY_LEVEL,
        "TRACES_SAMPLE_RATE": 1.0,
        "PII": False,
        "ENVIRONMENT": "production",
    }

    def validate(self) -> None:
        """Validate the level and the sample rate."""
        if not validator_valid_logging_level(self.get("LEVEL")):
            level_string = ",".join(valid_logging_levels())
            raise ValueError(
                f"Invalid Sentry logging level: {self.get('LEVEL')}. "
                f"Supported levels: {level_string}"
            )

        rate = self.sample_rate()
        if not 0.0 <= rate <= 1.0:
            raise ValueError(
                f"Invalid value for {self.fq_key('TRACES_SAMPLE_RATE')}: {rate}. "
                "Supported values: 0 to 1"
            )

    def sample_rate(self) -> float:
        """Return TRACES_SAMPLE_RATE as a float."""
        value = self.get("TRACES_SAMPLE_RATE")
        try:
            return float(value)
        except (TypeError, ValueError) as exc:
            raise ValueError(
                f"Invalid value for {self.fq_key('TRACES_SAMPLE_RATE')}: {value}. "
                "Supported values: 0 to 1"
            ) from exc

    @property
    def enabled(self) -> bool:
        """Check if a DSN is configured."""
        return bool(self.get("DSN"))

    def masked_items(self) -> Dict[str, ConfigValue]:
        """Return the configuration with the DSN hidden."""
        items = self.items()
        dsn_key = self.fq_key("DSN")
        if items.get(dsn_key):
            items[dsn_key] = MASK
        return items

    def init(self) -> None:
        """Initialize Sentry, tagging events with the lcgalois release."""
        if not self.enabled:
            return
        sentry_sdk.init(
            dsn=self.get("DSN"),
            send_default_pii=as_bool(self.get("PII")),
            traces_sample_rate=self.sample_rate(),
            environment=self.get("ENVIRONMENT"),
            release=f"lcgalois@{__version__}",
        )
