"""The argument parser of the lcgalois command line."""

import argparse
from typing import Callable, Optional, Sequence

from lcgalois import __version__
from lcgalois.exceptions import UnknownCommand

from . import commands

Command = Callable[..., commands.Outcome]


class GaloisArgumentParser(argparse.ArgumentParser):
    """An argument parser that raises instead of exiting on bad usage."""

    def error(self, message: str) -> None:  # type: ignore[override]
        """Refuse the command line.

        :raises UnknownCommand: carrying the usage message.
        """
        raise UnknownCommand(f"{self.prog}: {message}")


def positive_int(text: str) -> int:
    """Parse a positive integer flag."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _common() -> argparse.ArgumentParser:
    """Return the flags every operation accepts."""
    common = GaloisArgumentParser(add_help=False)
    common.add_argument(
        "-i",
        "--input",
        action="append",
        default=[],
        metavar="FILE",
        help="Input file in the lcgalois text format; repeatable, read in order.",
    )
    common.add_argument(
        "--degree-cap", type=positive_int, help="Override the DEGREE_CAP budget for this run."
    )
    common.add_argument(
        "--spectrum-degree",
        type=positive_int,
        help="Override the SPECTRUM_DEGREE budget for this run.",
    )
    common.add_argument(
        "--group-order-cap",
        type=positive_int,
        help="Override the GROUP_ORDER budget for this run.",
    )
    common.add_argument("--output", metavar="FILE", help="Write the report here, not stdout.")
    common.add_argument("--quiet", action="store_true", help="Skip the summary on stderr.")
    return common


def _operation(
    group: "argparse._SubParsersAction[GaloisArgumentParser]",
    module: str,
    name: str,
    func: Command,
    common: argparse.ArgumentParser,
    help: Optional[str] = None,  # noqa: A002
    aliases: Sequence[str] = (),
) -> argparse.ArgumentParser:
    parser = group.add_parser(
        name,
        parents=[common],
        aliases=list(aliases),
        help=help or func.__doc__.splitlines()[0],
    )
    parser.set_defaults(func=func, operation=f"{module} {name}")
    return parser


def _subcommands(parser: argparse.ArgumentParser, module: str, help: str):  # noqa: A002
    return parser.add_parser(module, help=help).add_subparsers(
        dest="operation_name", metavar="OPERATION", required=True
    )


def _add_core_args(modules, common: argparse.ArgumentParser) -> None:
    group = _subcommands(modules, "core", "Finite groups, groupoids and pro-groupoids.")
    parser = _operation(group, "core", "validate", commands.core_validate, common)
    parser.add_argument("--name", help="Validate one entity; all entities when omitted.")
    parser = _operation(group, "core", "quotients", commands.core_quotients, common)
    parser.add_argument("--group", required=True)


def _add_gset_args(modules, common: argparse.ArgumentParser) -> None:
    group = _subcommands(modules, "gset", "Finite G-sets and the Galois criteria.")
    parser = _operation(group, "gset", "orbits", commands.gset_orbits, common)
    parser.add_argument("--gset", required=True)

    parser = _operation(group, "gset", "galois", commands.gset_galois, common)
    parser.add_argument("--gset", required=True)
    parser.add_argument("--point", help="Point whose stabilizer is tested for normality.")

    parser = _operation(group, "gset", "slice", commands.gset_slice, common)
    parser.add_argument("--map", required=True, help="An equivariant map Z -> Y.")
    parser.add_argument("--base", help="The point of Y; its first point when omitted.")
    parser.add_argument("--other", help="A second map Z' -> Y for the hom-set transport.")

    parser = _operation(group, "gset", "exact-seq", commands.gset_exact_seq, common)
    parser.add_argument("--gset", required=True)
    parser.add_argument("--point")

    parser = _operation(group, "gset", "aut-card", commands.gset_aut_card, common)
    parser.add_argument("--morphism", required=True)
    parser.add_argument(
        "--enumerate",
        action="store_true",
        help="Also enumerate End as a set of maps, not only by counting.",
    )


def _add_fp_args(modules, common: argparse.ArgumentParser) -> None:
    group = _subcommands(modules, "fp", "Finitely presented groups and their finite actions.")
    parser = _operation(group, "fp", "actions", commands.fp_actions, common)
    parser.add_argument("--presentation", required=True)
    parser.add_argument("--degree", type=positive_int, required=True)
    parser.add_argument(
        "--transitive", action="store_true", help="Transitive actions up to relabelling only."
    )

    parser = _operation(group, "fp", "spectrum", commands.fp_spectrum, common)
    parser.add_argument("--presentation", required=True)
    parser.add_argument(
        "--degree", type=positive_int, help="Highest degree; the SPECTRUM_DEGREE budget."
    )

    parser = _operation(group, "fp", "abel", commands.fp_abel, common)
    parser.add_argument("--presentation", required=True)


def _add_cover_args(modules, common: argparse.ArgumentParser) -> None:
    group = _subcommands(modules, "cover", "Covers of finite graphs and their monodromy.")
    parser = _operation(group, "cover", "pi1", commands.cover_pi1, common)
    parser.add_argument("--graph", required=True)
    parser.add_argument("--base", help="Base vertex; the first vertex when omitted.")

    parser = _operation(group, "cover", "monodromy", commands.cover_monodromy, common)
    parser.add_argument("--cover", required=True)
    parser.add_argument("--base")

    parser = _operation(group, "cover", "build", commands.cover_build, common)
    parser.add_argument("--graph", required=True)
    parser.add_argument("--base")
    parser.add_argument("--degree", type=positive_int, required=True)
    parser.add_argument(
        "--image",
        action="append",
        metavar="GEN=CYCLES",
        help="Image of a pi1 generator, e.g. x4=(1 2); omitted generators act trivially.",
    )

    parser = _operation(group, "cover", "deck", commands.cover_deck, common)
    parser.add_argument("--cover", required=True)
    parser.add_argument("--base")

    parser = _operation(group, "cover", "trivquot", commands.cover_trivquot, common)
    parser.add_argument("--cover", required=True)
    parser.add_argument("--base")
    parser.add_argument("--check", metavar="COVER", help="Test if this cover is trivialized.")

    parser = _operation(group, "cover", "prosystem", commands.cover_prosystem, common)
    parser.add_argument("--graph", required=True)
    parser.add_argument("--base")
    parser.add_argument("--depth", type=positive_int, required=True)


def _add_orbifold_args(modules, common: argparse.ArgumentParser) -> None:
    group = _subcommands(modules, "orbifold", "Finite groups acting on graphs.")
    parser = _operation(group, "orbifold", "pi1", commands.orbifold_pi1_command, common)
    parser.add_argument("--action", required=True)
    parser.add_argument("--base")

    parser = _operation(group, "orbifold", "canonical", commands.orbifold_canonical, common)
    parser.add_argument("--action", required=True)

    parser = _operation(group, "orbifold", "exact-seq", commands.orbifold_exact_seq, common)
    parser.add_argument("--action", required=True)
    parser.add_argument("--base")

    parser = _operation(group, "orbifold", "enumerate", commands.orbifold_enumerate, common)
    parser.add_argument("--action", required=True)
    parser.add_argument("--degree", type=positive_int, required=True)


def _add_simplicial_args(modules, common: argparse.ArgumentParser) -> None:
    group = _subcommands(modules, "simplicial", "Cech nerves and truncated simplicial sets.")
    parser = _operation(group, "simplicial", "nerve", commands.simplicial_nerve, common)
    parser.add_argument("--cover", required=True)
    parser.add_argument("--trunc", type=positive_int, default=2)

    parser = _operation(group, "simplicial", "pi1", commands.simplicial_pi1, common)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--simplicial")
    source.add_argument("--cover", help="Use pi0 of the 2-truncated Cech nerve of a cover.")
    parser.add_argument("--base", help="Base vertex name; the first vertex when omitted.")

    parser = _operation(group, "simplicial", "cosk", commands.simplicial_cosk, common)
    parser.add_argument("--simplicial", required=True)
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--level", type=int, help="Build up to this level.")
    parser.add_argument("--against", metavar="SIMPLICIAL", help="Check the adjunction.")

    parser = _operation(group, "simplicial", "hypercheck", commands.simplicial_hypercheck, common)
    parser.add_argument("--cover", required=True)
    parser.add_argument("--trunc", type=positive_int, default=2)
    parser.add_argument(
        "--keep", metavar="NAMES", help="Keep only these top level vertices, comma separated."
    )

    parser = _operation(
        group,
        "simplicial",
        "prop53",
        commands.simplicial_nerve_check,
        common,
        aliases=["nerve-check"],
    )
    parser.add_argument("--cover", required=True)
    parser.add_argument("--base")


def build_parser() -> GaloisArgumentParser:
    """Build the parser: a module, then an operation, then the operation's flags."""
    parser = GaloisArgumentParser(
        prog="lcgalois",
        description="Galois groupoids of finite G-sets, graph covers and simplicial objects.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    modules = parser.add_subparsers(dest="module", metavar="MODULE", required=True)
    common = _common()

    _add_core_args(modules, common)
    _add_gset_args(modules, common)
    _add_fp_args(modules, common)
    _add_cover_args(modules, common)
    _add_orbifold_args(modules, common)
    _add_simplicial_args(modules, common)

    config = modules.add_parser("config", parents=[common], help="Show the configuration.")
    config.set_defaults(func=commands.show_config, operation="config")
    return parser


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    """Parse a command line.

    :raises UnknownCommand: for unknown operations and malformed flags.
    """
    return build_parser().parse_args(list(argv))
