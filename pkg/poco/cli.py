"""Command-line interface.

Every subcommand prints a JSON document to stdout. Exit codes: ``0`` on
success (including comparisons that find differing groups), ``1`` for
malformed input and ``2`` when an operation does not apply to its input.
"""

import argparse
import logging
from pathlib import Path
import sys
from typing import (
    List,
    NoReturn,
    Optional,
)

from poco.builders.io import (
    dumps,
    write_poset,
    write_presheaf,
)
from poco.errors.exceptions import (
    InputError,
    handle_exception,
)
from poco.poco import (
    FAMILIES,
    METHODS,
    Poco,
)
from poco.version import __version__

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Parser that reports bad arguments as malformed input."""

    def error(self, message: str) -> NoReturn:
        raise InputError(f"{self.prog}: {message}")


def _parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=Path,
        metavar="FILE",
        help="configuration file in YAML format",
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        help="only log warnings and errors to stderr",
    )
    parser = _ArgumentParser(
        prog="poco",
        description="Singular and cellular cohomology of finite posets.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser(
        "build", parents=[common], help="build an example poset",
    )
    build.add_argument("family", choices=sorted(FAMILIES))
    build.add_argument(
        "args", nargs="*", help="sizes, or an input file for cw/khovanov"
    )
    build.add_argument("--out", type=Path, required=True, metavar="FILE")
    build.add_argument("--presheaf-out", type=Path, metavar="FILE")

    check = commands.add_parser(
        "check", parents=[common],
        help="report grading, diamond property and cellularity",
    )
    check.add_argument("poset", type=Path)

    for name, text in (
        ("cohomology", "compute cohomology groups"),
        ("compare", "compare singular and cellular cohomology"),
    ):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument("--poset", type=Path, required=True)
        sub.add_argument(
            "--presheaf", type=Path,
            help="presheaf file; constant coefficients if omitted",
        )
        if name == "cohomology":
            sub.add_argument("--method", choices=METHODS, default="singular")

    signs = commands.add_parser(
        "signs", parents=[common], help="incidence signs of a cell poset",
    )
    signs.add_argument("--poset", type=Path, required=True)
    return parser


def _run(poco: Poco, args: argparse.Namespace) -> str:
    if args.command == "build":
        poset, presheaf = poco.build(args.family, args.args)
        write_poset(args.out, poset)
        written = {"poset": str(args.out)}
        if args.presheaf_out is not None:
            write_presheaf(args.presheaf_out, presheaf)
            written["presheaf"] = str(args.presheaf_out)
        return dumps({
            "elements": len(poset),
            "covers": len(poset.covers),
            "files": written,
        })
    if args.command == "check":
        report = poco.check(poco.load_poset(args.poset))
        return report.model_dump_json(indent=2) + "\n"
    poset = poco.load_poset(args.poset)
    if args.command == "signs":
        return poco.signs(poset).model_dump_json(indent=2) + "\n"
    presheaf = poco.load_presheaf(args.presheaf, poset)
    if args.command == "cohomology":
        report = poco.cohomology(poset, presheaf, method=args.method)
    else:
        report = poco.compare(poset, presheaf)
    return report.model_dump_json(indent=2) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line interface.

    Args:
        argv: Arguments without the program name; ``sys.argv`` if omitted.

    Returns:
        Process exit code.
    """
    try:
        args = _parser().parse_args(argv)
    except InputError as exc:
        return handle_exception(exc)
    try:
        poco = Poco(config_file=args.config, quiet=args.quiet)
    except Exception as exc:
        return handle_exception(exc)
    try:
        output = _run(poco, args)
    except Exception as exc:
        return handle_exception(exc, poco.conf.exceptions)
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
