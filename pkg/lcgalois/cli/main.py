"""Entry point of the lcgalois command line."""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

import structlog

from lcgalois.config.budget import GaloisBudgetConfig
from lcgalois.exceptions import GaloisError, UnknownCommand
from lcgalois.middleware.logging_operation import LogOperationMiddleware, OperationRequest
from lcgalois.tools import digest

from .parser import parse_args
from .report import build_report, error_report, render, summarize
from .workspace import Workspace, load_workspace

logger = structlog.getLogger("lcgalois.cli")

_RUN_KEYS = ("func", "operation", "operation_name", "module", "output", "quiet")


def _arguments(args: argparse.Namespace) -> Dict[str, Any]:
    """Return the operation's own arguments, as they go into the report."""
    return {key: value for key, value in sorted(vars(args).items()) if key not in _RUN_KEYS}


def run_budget(args: argparse.Namespace, budget: GaloisBudgetConfig) -> GaloisBudgetConfig:
    """Apply the per-run budget flags."""
    return budget.with_limits(
        DEGREE_CAP=args.degree_cap,
        SPECTRUM_DEGREE=args.spectrum_degree,
        GROUP_ORDER=args.group_order_cap,
    )


def _emit(
    report: Dict[str, Any],
    headline: Dict[str, Any],
    output: Optional[str] = None,
    quiet: bool = False,
) -> int:
    """Write the report and the summary; return the exit code."""
    text = render(report)
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if not quiet:
        summarize(report, headline)
    return report["exit_code"]


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one operation and print its report; return 0, 1 or 2."""
    from lcgalois.settings import config  # noqa

    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except UnknownCommand as exc:
        logger.bind(argv=argv).warning("unknown_command")
        request = OperationRequest(("lcgalois",), {"argv": argv})
        return _emit(error_report(request, exc, config.budget, digest([]), []), {})

    budget = run_budget(args, config.budget)
    files: List[str] = list(args.input)
    request = OperationRequest(tuple(args.operation.split()), _arguments(args))
    loaded: List[Workspace] = []

    def handle(request: OperationRequest) -> Any:
        workspace = load_workspace(files, budget)
        loaded.append(workspace)
        return args.func(args, workspace, budget)

    try:
        outcome = LogOperationMiddleware(handle)(request)
    except GaloisError as exc:
        inputs = loaded[0].digest if loaded else digest([])
        report = error_report(request, exc, budget, inputs, files)
        return _emit(report, {}, args.output, args.quiet)

    report = build_report(request, outcome, budget, loaded[0].digest, files)
    return _emit(report, outcome.headline, args.output, args.quiet)
