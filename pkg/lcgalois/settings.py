"""Process-wide settings for lcgalois.

The configuration is read from the environment once, on import.
"""

import logging.config
import os
from typing import Any, Dict, List

import structlog
from structlog_sentry import SentryProcessor

from lcgalois.config.base import GaloisBaseConfig
from lcgalois.config.logging import Renderer
from lcgalois.log import truncate_payload

config = GaloisBaseConfig(os.environ)


def logging_dict(base: GaloisBaseConfig) -> Dict[str, Any]:
    """Build the stdlib logging configuration, one logger per source."""
    loggers: Dict[str, Any] = {}
    for source in base.logging.SOURCES:
        loggers[f"lcgalois.{source.lower()}"] = {
            "handlers": ["console"],
            "level": base.logging.level_for_source(source),
            "propagate": False,
        }

    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "plain": {"format": "%(message)s"},
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "formatter": "plain",
                "level": "DEBUG",
                "stream": "ext://sys.stderr",
            },
        },
        "loggers": loggers,
    }


def configure_logging(base: GaloisBaseConfig) -> None:
    """Configure structlog and the stdlib loggers from a configuration."""
    processors: List[Renderer] = [
        structlog.contextvars.merge_contextvars,
        truncate_payload,
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.UnicodeDecoder(),
        SentryProcessor(event_level=base.sentry.get_log_level("LEVEL")),
    ]

    # Append the final renderer (either JSON or Console), and any additional processors
    processors.extend(base.logging.get_logging_output())

    logging.config.dictConfig(logging_dict(base))
    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


configure_logging(config)
config.sentry.init()
