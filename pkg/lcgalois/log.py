"""Logging tools for lcgalois."""

from collections import defaultdict
from functools import singledispatch
from typing import Any

import numpy as np
from rich.console import Console
from rich.text import Text
from structlog.types import EventDict

MIN_ID_LENGTH = 10
MAX_PAYLOAD_ITEMS = 32


def _shorten_id(operation_id: str) -> str:
    """Replace an identifier with a shortened version of it."""
    if len(operation_id) > MIN_ID_LENGTH:
        return operation_id[:3] + "..." + operation_id[-3:]

    return "..."


# Permutation tables and carriers can be large; events keep a bounded prefix of them.
@singledispatch
def _truncate_payload(record: Any) -> Any:
    """Render unknown records by their repr."""
    return repr(record)


@_truncate_payload.register(None.__class__)
@_truncate_payload.register(bool)
@_truncate_payload.register(int)
@_truncate_payload.register(float)
@_truncate_payload.register(str)
def _(record: Any) -> Any:
    """Return scalar values as-is."""
    return record


@_truncate_payload.register(list)
@_truncate_payload.register(tuple)
def _(record: Any) -> Any:
    """Keep a bounded prefix of long sequences."""
    items = [_truncate_payload(item) for item in record[:MAX_PAYLOAD_ITEMS]]
    if len(record) > MAX_PAYLOAD_ITEMS:
        items.append(f"... {len(record) - MAX_PAYLOAD_ITEMS} more")
    return items


@_truncate_payload.register(np.integer)
def _(record: np.integer) -> int:
    """Return numpy integers as plain ints."""
    return int(record)


@_truncate_payload.register(np.ndarray)
def _(record: np.ndarray) -> Any:
    """Treat arrays as nested lists."""
    return _truncate_payload(record.tolist())


@_truncate_payload.register(dict)
def _(record: EventDict) -> EventDict:
    """Traverse the dict."""
    for key, value in record.items():
        record[key] = _truncate_payload(value)
    return record


def truncate_payload(_: Any, __: Any, event_dict: EventDict) -> EventDict:
    """Truncate long payloads in a structlogs event_dict."""
    return _truncate_payload(event_dict)


def collapse_operation_id(_: Any, __: Any, event_dict: EventDict) -> EventDict:
    """Collapse operation_id into a short form."""
    if "operation_id" in event_dict:
        event_dict["operation_id"] = _shorten_id(event_dict["operation_id"])
    return event_dict


def reorder_keys_processor(_: Any, __: Any, event_dict: EventDict) -> EventDict:
    """Reorder keys in a structlogs event_dict, ensuring that operation_id is first."""
    event_dict = {
        k: event_dict[k] for k in sorted(event_dict.keys(), key=lambda k: k != "operation_id")
    }
    return event_dict


class OperationColorTracker:
    """Add an easy to track colored bubble based on an events operation_id.

    :ivar COLORS: A list of color names to use for the bubbles.
    :ivar operation_to_color: A dictionary mapping operation_ids to colors.
    """

    COLORS = ["red", "white", "green", "yellow", "blue", "magenta", "cyan"]

    def __init__(self) -> None:
        """Initialize a new OperationColorTracker."""
        self.console = Console()
        self.operation_to_color = defaultdict(self._color_generator().__next__)

    def _colorize(self, color: str, s: str) -> str:
        """Colorize a string using Rich.

        :param color: The name of the color to use.
        :param s: The string to colorize.
        :return: The colorized string.
        """
        text = Text(s, style=f"bold {color}")

        with self.console.capture() as capture:
            self.console.print(text)

        return capture.get().rstrip()

    def _color_generator(self):
        """Create a generator that cycles through the colors.

        :yield: A color from the COLORS list.
        """
        i = 0
        while True:
            yield self.COLORS[i % len(self.COLORS)]
            i += 1

    def __call__(self, _: Any, __: Any, event_dict: EventDict) -> EventDict:
        """Add a colored bubble to the event message.

        :param _: The logger instance. This argument is ignored.
        :param __: The log level. This argument is ignored.
        :param event_dict: The event dictionary of the log entry.
        :return: The modified event dictionary.
        """
        operation_id = event_dict.get("operation_id")

        color = "black"
        if operation_id:
            color = self.operation_to_color[operation_id]

        colored_bubble = self._colorize(color, " • ")
        event_dict["event"] = colored_bubble + event_dict.get("event", "")

        return event_dict
