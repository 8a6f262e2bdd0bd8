"""
Command-line front end for RecurrentGF.

Usage:
    python -m app.cli genfunc PROBLEM [--out PATH] [--short-names]
    python -m app.cli solve   PROBLEM --box N [--out PATH]
    python -m app.cli green   PROBLEM --tau T [--out PATH] [--short-names]
    python -m app.cli expand  GF --order d [--out PATH]
    python -m app.cli verify  PROBLEM [--box N] [--out PATH]

Results go to --out or standard output; logs and error messages go to
standard error. Exit codes: 0 success, 1 input error, 2 unsupported
construction, 3 verification failure.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ValidationError

from app.__version__ import __title__, __version__
from app.api.schemas import GfFile, ProblemFile, TableFile
from app.core.algebra import expand_at_infinity
from app.core.config import CONFIG, variable_names
from app.core.errors import EngineError, InputError, VerificationFailed
from app.core.lattice import parse_index
from app.models.genfun import assemble_gf, green_gf, verify
from app.models.problem import Problem, ensure_problem
from app.models.solver import solve_box

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as input errors (exit 1)."""

    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _index(text: str):
    try:
        return parse_index(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def load_problem(path: Union[str, Path]) -> Problem:
    """Read and validate a problem file."""
    text = Path(path).read_text(encoding="utf-8")
    return ProblemFile.model_validate_json(text).to_problem()


def load_gf(path: Union[str, Path]) -> GfFile:
    return GfFile.model_validate_json(Path(path).read_text(encoding="utf-8"))


def _emit(payload: BaseModel, out: Optional[str]):
    text = payload.model_dump_json(indent=2, exclude_none=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_genfunc(args) -> int:
    problem = ensure_problem(load_problem(args.input))
    F = assemble_gf(problem.equation, problem.data)
    names = variable_names(problem.dim, args.short_names)
    _emit(GfFile.from_ratfn(F, names), args.out)
    return 0


def cmd_solve(args) -> int:
    if args.box is None:
        raise InputError("solve needs --box")
    problem = ensure_problem(load_problem(args.input))
    table = solve_box(problem.equation, problem.data, args.box)
    _emit(TableFile.from_solution(table), args.out)
    return 0


def cmd_green(args) -> int:
    if args.tau is None:
        raise InputError("green needs --tau")
    problem = load_problem(args.input)
    F = green_gf(problem.equation, args.tau)
    names = variable_names(problem.dim, args.short_names)
    _emit(GfFile.from_ratfn(F, names), args.out)
    return 0


def cmd_expand(args) -> int:
    if args.order is None:
        raise InputError("expand needs --order")
    table = expand_at_infinity(load_gf(args.input).to_ratfn(), args.order)
    _emit(TableFile.from_expansion(table), args.out)
    return 0


def cmd_verify(args) -> int:
    problem = ensure_problem(load_problem(args.input))
    box = args.box
    if box is None:
        box = (CONFIG.get("verify", {}).get("default_box", 8),) * problem.dim
    report = verify(problem.equation, problem.data, box, problem.expected)
    names = variable_names(problem.dim, args.short_names)
    if args.out:
        Path(args.out).write_text(
            json.dumps(report.to_dict(names), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
    sys.stdout.write(report.format(names) + "\n")
    return 0 if report.passed else VerificationFailed.exit_code


COMMANDS = {
    "genfunc": (cmd_genfunc, "generating function of the solution"),
    "solve": (cmd_solve, "solve the problem on the box 0..N"),
    "green": (cmd_green, "closed-form Green's function generating function"),
    "expand": (cmd_expand, "expand a generating-function file at infinity"),
    "verify": (cmd_verify, "cross-check the generating function against the solver"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="recurrentgf", description=f"{__title__} v{__version__}")
    parser.add_argument("--log-level", default=None, help="override logging.level from config.yaml")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (handler, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="problem file (JSON); a generating-function file for expand")
        p.add_argument("--box", type=_index, default=None, help="box corner N, e.g. 10,6")
        p.add_argument("--tau", type=_index, default=None, help="Green's function source point, e.g. 0,0")
        p.add_argument("--order", type=int, default=None, help="truncation order d for expand")
        p.add_argument("--out", default=None, help="output path (default: standard output)")
        p.add_argument("--short-names", action="store_true", help="name the variables z, w for n = 2")
        p.set_defaults(handler=handler)
    return parser


def _report_validation(e: ValidationError, source: str):
    for err in e.errors():
        loc = ".".join(str(part) for part in err["loc"]) or "<root>"
        print(f"{source}: {loc}: {err['msg']}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        int: Process exit code
    """
    try:
        args = build_parser().parse_args(argv)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    level = args.log_level or CONFIG.get("logging", {}).get("level", "INFO")
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    started = time.time()
    try:
        code = args.handler(args)
    except ValidationError as e:
        _report_validation(e, args.input)
        return 1
    except EngineError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    logger.info(
        "%s %s finished with exit %d in %.3fs", args.command, args.input, code, time.time() - started
    )
    return code


if __name__ == "__main__":
    sys.exit(main())
