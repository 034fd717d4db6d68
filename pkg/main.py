"""
Main entry point for the Rigid Design Toolkit.
Generate, verify, encode, certify and bound spherical designs from the command line.

Every subcommand prints JSON on standard output; diagnostics and logs go to
standard error. Exit codes: 0 success, 1 verify found no design, 2 input error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from config import configure_logging, settings
from core.bound import bound_table, max_feasible_n, theorem_check
from core.design import (
    configuration_to_dict,
    convert_mode,
    generate,
    read_configuration,
    verify_design,
    write_configuration,
)
from core.rigidity import build_witness, certificate_to_dict, certify, matrix_rank, project_flex
from core.system import build_system, design_assignment, export_system, jacobian
from families import FAMILIES
from models import DesignVerdict, PointConfiguration, RunConfiguration, ScalarMode
from utils import ConfigurationFormatError, RigidDesignError, UnsupportedParameterError, dump_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_DESIGN = 1
EXIT_INPUT_ERROR = 2


class _ArgumentParser(argparse.ArgumentParser):
    """Raises instead of printing usage, so every failure gets one diagnostic line."""

    def error(self, message: str):
        raise RigidDesignError(message, "argv")


def _parse_range(text: str, field: str) -> Tuple[int, int]:
    """'A' or 'A-B' -> (A, B)."""
    low, _, high = text.partition("-")
    try:
        bounds = (int(low), int(high or low))
    except ValueError:
        raise UnsupportedParameterError(f"expected an integer or a range A-B, got {text!r}", field)
    if bounds[0] > bounds[1]:
        raise UnsupportedParameterError(f"empty range {text!r}", field)
    return bounds


LOG_LEVEL_HELP = "log level for stderr (default from RIGID_DESIGN_LOG_LEVEL)"


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="rigid-design", description="Polynomial encoding of spherical t-designs")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--float", dest="mode_override", action="store_const", const=ScalarMode.FLOAT,
                      help="convert input configurations to float arithmetic")
    mode.add_argument("--exact", dest="mode_override", action="store_const", const=ScalarMode.EXACT,
                      help="convert input configurations to exact rationals")
    parser.add_argument("--log-level", default=None, help=LOG_LEVEL_HELP)

    # Subcommands accept --log-level too.
    common = _ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=argparse.SUPPRESS, help=LOG_LEVEL_HELP)

    sub = parser.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate a classical configuration")
    gen.add_argument("family", choices=sorted(FAMILIES))
    gen.add_argument("--n", type=int)
    gen.add_argument("--d", type=int)
    gen.add_argument("--output", dest="output_path")

    verify = sub.add_parser("verify", parents=[common], help="check the design property")
    verify.add_argument("input_path")
    verify.add_argument("--t", type=int, required=True)
    verify.add_argument("--tolerance", type=float)

    system = sub.add_parser("system", parents=[common], help="build and optionally export the pinned system")
    system.add_argument("input_path")
    system.add_argument("--t", type=int, required=True)
    system.add_argument("--export", dest="export_path")
    system.add_argument("--anchors", choices=("full", "hyperplane"), default="full")

    rigidity = sub.add_parser("rigidity", parents=[common], help="certify the isolated pinned root or find a flex")
    rigidity.add_argument("input_path")
    rigidity.add_argument("--t", type=int, required=True)
    rigidity.add_argument("--rank-tolerance", type=float)

    flex = sub.add_parser("flex", parents=[common], help="Gauss-Newton flex search along one direction")
    flex.add_argument("input_path")
    flex.add_argument("--t", type=int, required=True)
    flex.add_argument("--direction", default="auto")
    flex.add_argument("--anchors", choices=("full", "hyperplane"), default="full")
    flex.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)

    bound = sub.add_parser("bound", parents=[common], help="evaluate the size inequality")
    bound.add_argument("--t", type=int, required=True)
    bound.add_argument("--d", type=int, required=True)
    bound.add_argument("--n", type=int)

    max_n = sub.add_parser("max-n", parents=[common], help="largest n satisfying the inequality, per (t, d)")
    max_n.add_argument("--t", dest="t_range", required=True)
    max_n.add_argument("--d", dest="d_range", required=True)

    return parser


def parse_run_configuration(argv: List[str]) -> RunConfiguration:
    """Parse and validate an argument vector."""
    args = vars(build_parser().parse_args(argv))
    args.pop("log_level", None)
    for key in ("t_range", "d_range"):
        if args.get(key) is not None:
            args[key] = _parse_range(args[key], key.split("_")[0])
    return RunConfiguration(**{key: value for key, value in args.items() if value is not None})


def _load(config: RunConfiguration) -> PointConfiguration:
    X = read_configuration(config.input_path)
    if config.mode_override is not None:
        X = convert_mode(X, config.mode_override)
    return X


def _emit(payload) -> None:
    sys.stdout.write(dump_json(payload) + "\n")


# ===== SUBCOMMANDS =====

def cmd_gen(config: RunConfiguration) -> int:
    params = {key: getattr(config, key) for key in ("n", "d") if getattr(config, key) is not None}
    X = generate(config.family, **params)
    if config.mode_override is not None:
        X = convert_mode(X, config.mode_override)
    if config.output_path:
        write_configuration(X, config.output_path)
    else:
        _emit(configuration_to_dict(X))
    return EXIT_OK


def cmd_verify(config: RunConfiguration) -> int:
    report = verify_design(_load(config), config.t, config.tolerance)
    _emit(report.to_dict())
    return EXIT_OK if report.verdict is DesignVerdict.IS_DESIGN else EXIT_NOT_DESIGN


def _num_pins(config: RunConfiguration, X: PointConfiguration) -> Optional[int]:
    return X.dimension_d if config.anchors == "hyperplane" else None


def cmd_system(config: RunConfiguration) -> int:
    X = _load(config)
    S = build_system(X, config.t, _num_pins(config, X))
    if config.export_path:
        try:
            Path(config.export_path).write_text(export_system(S))
        except OSError as e:
            raise ConfigurationFormatError(f"cannot write file: {e.strerror}", config.export_path)
        logger.info("exported %d equations to %s", S.num_equations, config.export_path)
    _emit({
        "t": S.t,
        "mode": S.mode.value,
        "num_pins": S.num_pins,
        "permutation": list(S.permutation),
        "num_variables": S.k,
        "num_sphere_equations": S.num_sphere_equations,
        "num_design_equations": S.num_design_equations,
        "num_equations": S.num_equations,
        "degree": S.degree,
        "export": config.export_path,
    })
    return EXIT_OK


def cmd_rigidity(config: RunConfiguration) -> int:
    certificate = certify(_load(config), config.t, config.rank_tolerance)
    _emit(certificate_to_dict(certificate))
    return EXIT_OK


def cmd_flex(config: RunConfiguration) -> int:
    X = _load(config)
    S = build_system(X, config.t, _num_pins(config, X))
    rank = matrix_rank(jacobian(S, design_assignment(S)), S.mode, columns=S.k)

    if config.direction == "auto":
        if rank.kernel:
            index, direction = 0, np.array([float(v) for v in rank.kernel[0]])
        else:
            index, direction = None, np.random.default_rng(config.seed).standard_normal(S.k)
    else:
        try:
            index = int(config.direction)
        except ValueError:
            raise UnsupportedParameterError(f"expected 'auto' or a kernel index, got {config.direction!r}", "direction")
        if not 0 <= index < len(rank.kernel):
            raise UnsupportedParameterError(
                f"kernel index {index} out of range (kernel dimension {len(rank.kernel)})", "direction"
            )
        direction = np.array([float(v) for v in rank.kernel[index]])
    if S.k == 0:
        raise UnsupportedParameterError("the system has no variables to move", "direction")
    direction /= np.linalg.norm(direction)

    result = project_flex(S, direction)
    witness = None
    if result.succeeded and index is not None:
        witness = build_witness(S, result, "pinned" if S.num_pins == S.width else "hyperplane", index, 1)

    _emit({
        "direction_index": index,
        "jacobian_rank": rank.rank,
        "kernel_dimension": rank.kernel_dimension,
        "result": result.to_dict(),
        "witness": configuration_to_dict(witness.configuration) if witness else None,
    })
    return EXIT_OK


def cmd_bound(config: RunConfiguration) -> int:
    n = config.n if config.n is not None else max_feasible_n(config.t, config.d)
    _emit(theorem_check(config.t, config.d, n).to_dict())
    return EXIT_OK


def cmd_max_n(config: RunConfiguration) -> int:
    t_values = range(config.t_range[0], config.t_range[1] + 1)
    d_values = range(config.d_range[0], config.d_range[1] + 1)
    for row in bound_table(t_values, d_values):
        sys.stdout.write(dump_json(row, lines=True) + "\n")
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "system": cmd_system,
    "rigidity": cmd_rigidity,
    "flex": cmd_flex,
    "bound": cmd_bound,
    "max-n": cmd_max_n,
}


def _diagnostic(error: Exception) -> str:
    if isinstance(error, ValidationError):
        first = error.errors()[0]
        field = ".".join(str(part) for part in first.get("loc", ())) or "input"
        return f"{field}: {first['msg']}"
    return error.diagnostic()


def _log_level(argv: List[str]) -> Optional[str]:
    """Read --log-level wherever it appears, before the full parse."""
    pre = _ArgumentParser(add_help=False)
    pre.add_argument("--log-level", default=None)
    known, _ = pre.parse_known_args(argv)
    return known.log_level


def run(argv: List[str]) -> int:
    """
    Run one CLI invocation.

    Args:
        argv: Arguments without the program name

    Returns:
        Exit code
    """
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)

    try:
        configure_logging(_log_level(argv))
        config = parse_run_configuration(argv)
        return COMMANDS[config.subcommand](config)
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except (RigidDesignError, ValidationError) as e:
        sys.stderr.write(f"error: {_diagnostic(e)}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
