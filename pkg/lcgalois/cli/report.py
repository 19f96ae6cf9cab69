"""Canonical reports of command line operations."""

import json
from dataclasses import dataclass, field
from functools import singledispatch
from typing import Any, Dict, Optional, Sequence

import numpy as np
from jsonschema import Draft7Validator
from rich.console import Console
from rich.table import Table

from lcgalois import __version__
from lcgalois.config.budget import GaloisBudgetConfig
from lcgalois.exceptions import (
    EXIT_INVARIANT,
    EXIT_OK,
    BudgetExceeded,
    GaloisError,
    InvariantViolation,
    ParseError,
)
from lcgalois.middleware.logging_operation import OperationRequest

REPORT_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["command", "arguments", "inputs", "ok", "exit_code", "budget", "version"],
    "properties": {
        "command": {"type": "string", "minLength": 1},
        "arguments": {"type": "object"},
        "inputs": {
            "type": "object",
            "required": ["digest", "files"],
            "properties": {
                "digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
                "files": {"type": "array", "items": {"type": "string"}},
            },
        },
        "ok": {"type": "boolean"},
        "exit_code": {"type": "integer", "enum": [0, 1, 2]},
        "result": {"type": "object"},
        "error": {
            "type": "object",
            "required": ["type", "message"],
            "properties": {
                "type": {"type": "string"},
                "message": {"type": "string"},
            },
        },
        "budget": {
            "type": "object",
            "required": ["override", "limits"],
            "properties": {
                "override": {"type": "boolean"},
                "limits": {
                    "type": "object",
                    "additionalProperties": {"type": "integer", "minimum": 1},
                },
            },
        },
        "version": {"type": "string"},
    },
    "oneOf": [{"required": ["result"]}, {"required": ["error"]}],
}

Draft7Validator.check_schema(REPORT_SCHEMA)
_VALIDATOR = Draft7Validator(REPORT_SCHEMA)


@dataclass(frozen=True)
class Outcome:
    """What an operation hands back to the command line: a verdict and its payload.

    :ivar ok: Whether every claim the operation checks holds.
    :ivar result: The payload; enough to re-verify the claim without re-running enumeration.
    :ivar headline: Short key figures for the summary on standard error.
    """

    ok: bool
    result: Dict[str, Any]
    headline: Dict[str, Any] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        """Return 0 on success and 1 when a claim fails."""
        return EXIT_OK if self.ok else EXIT_INVARIANT


@singledispatch
def plain(value: Any) -> Any:
    """Convert a payload to JSON types; unknown objects are rendered by str."""
    return str(value)


@plain.register(type(None))
@plain.register(bool)
@plain.register(int)
@plain.register(str)
def _(value: Any) -> Any:
    return value


@plain.register(float)
def _(value: float) -> Any:
    return int(value) if value.is_integer() else round(value, 12)


@plain.register(np.integer)
def _(value: np.integer) -> int:
    return int(value)


@plain.register(np.bool_)
def _(value: np.bool_) -> bool:
    return bool(value)


@plain.register(np.ndarray)
def _(value: np.ndarray) -> Any:
    return plain(value.tolist())


@plain.register(list)
@plain.register(tuple)
def _(value: Sequence[Any]) -> Any:
    return [plain(item) for item in value]


@plain.register(set)
@plain.register(frozenset)
def _(value: Any) -> Any:
    return sorted(plain(item) for item in value)


@plain.register(dict)
def _(value: Dict[Any, Any]) -> Any:
    return {str(key): plain(item) for key, item in value.items()}


def budget_notes(budget: GaloisBudgetConfig) -> Dict[str, Any]:
    """Return the effective limits of a run."""
    return {
        "override": budget.unlocked,
        "limits": {key: budget.limit(key) for key in budget.LIMITS},
    }


def _envelope(
    request: OperationRequest,
    budget: GaloisBudgetConfig,
    digest: str,
    files: Sequence[str],
) -> Dict[str, Any]:
    return {
        "command": request.name,
        "arguments": plain(request.arguments),
        "inputs": {"digest": digest, "files": list(files)},
        "budget": budget_notes(budget),
        "version": __version__,
    }


def build_report(
    request: OperationRequest,
    outcome: Outcome,
    budget: GaloisBudgetConfig,
    digest: str,
    files: Sequence[str],
) -> Dict[str, Any]:
    """Assemble the report of a finished operation and check it against the schema."""
    report = _envelope(request, budget, digest, files)
    report.update(ok=outcome.ok, exit_code=outcome.exit_code, result=plain(outcome.result))
    return checked(report)


def error_report(
    request: OperationRequest,
    exc: GaloisError,
    budget: GaloisBudgetConfig,
    digest: str,
    files: Sequence[str],
) -> Dict[str, Any]:
    """Assemble the report of an operation that raised."""
    error: Dict[str, Any] = {"type": exc.__class__.__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        error.update(source=exc.source, line=exc.line, column=exc.column)
    if isinstance(exc, BudgetExceeded):
        error.update(what=exc.what, requested=exc.requested, limit=exc.limit)
    if isinstance(exc, InvariantViolation):
        error.update(diagnostics=list(exc.diagnostics))
    report = _envelope(request, budget, digest, files)
    report.update(ok=False, exit_code=exc.exit_code, error=error)
    return checked(report)


def checked(report: Dict[str, Any]) -> Dict[str, Any]:
    """Return the report if it matches the report schema.

    :raises InvariantViolation: listing the schema violations.
    """
    errors = sorted(_VALIDATOR.iter_errors(report), key=lambda e: list(e.absolute_path))
    if errors:
        raise InvariantViolation([f"report schema: {e.message}" for e in errors])
    return report


def render(report: Dict[str, Any]) -> str:
    """Serialize a report canonically: sorted keys, two-space indentation, one final newline."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def summarize(
    report: Dict[str, Any], headline: Optional[Dict[str, Any]] = None, console: Any = None
) -> None:
    """Print a short human summary of a report, on standard error by default."""
    console = console or Console(stderr=True)
    status = "ok" if report["ok"] else "FAILED"
    table = Table(title=f"{report['command']}: {status}", show_header=False)
    table.add_column("key")
    table.add_column("value")
    if "error" in report:
        table.add_row(report["error"]["type"], report["error"]["message"])
    for key, value in (headline or {}).items():
        table.add_row(str(key), str(value))
    table.add_row("exit code", str(report["exit_code"]))
    console.print(table)
