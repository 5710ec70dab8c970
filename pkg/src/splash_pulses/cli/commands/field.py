"""evaluate a pulse on a grid and export it

Writes field.csv (one row per cell: coordinates, Re, Im), optionally a
legacy VTK structured-points file, a json report and the run manifest.
Without --window the grid is the x-z half plane around the pulse at ct.
With --backflow the cells where the chosen part of the pulse carries energy
backwards (S_z < 0) are counted and the smallest v_E,z is reported.
"""

import argparse
from typing import Dict, List

import numpy as np

from splash_pulses.cli.arguments import CLIArgumentNamespace, add_nu_argument, add_pulse_arguments
from splash_pulses.cli.utils import fail, finish, guard, parse_fixed, parse_window, positive_int, pulse_params_from_args, window_axes
from splash_pulses.config import SplashConfig
from splash_pulses.constants import defaults
from splash_pulses.core import evaluate_on_grid, make_grid
from splash_pulses.diagnostics import backflow_scan
from splash_pulses.errors import SplashError
from splash_pulses.pulses import is_regular, pulse_field
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)

_MIN_HALF_WIDTH = 8.0


def add_parser_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds field-related options to the argument parser.

    Args:
        parser: The argument parser to add options to.
    """
    add_pulse_arguments(parser)
    add_nu_argument(parser)
    parser.add_argument("--ct", type=float, help="time c*t, unless ct is a window axis")
    parser.add_argument(
        "--window",
        type=parse_window,
        nargs="+",
        metavar="AXIS=MIN:MAX",
        help="grid axes among x, y, z, R, ct. default is x and z around the pulse",
    )
    parser.add_argument("--n", type=positive_int, default=101, help="samples per axis. default is 101")
    parser.add_argument(
        "--fixed",
        type=parse_fixed,
        nargs="+",
        default=[],
        metavar="NAME=VALUE",
        help="values of coordinates that are not grid axes (x and y default to 0)",
    )
    parser.add_argument("--vtk", action="store_true", help="also write a legacy VTK file")
    parser.add_argument(
        "--backflow",
        action="store_true",
        help="also scan the grid for negative axial energy flux (S_z < 0)",
    )
    parser.add_argument(
        "--part",
        choices=("re", "im", "complex"),
        default="re",
        help="part of the pulse whose energy flux is scanned. default is re",
    )


def add_subparser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:  # noqa: ANN001
    parser = subparsers.add_parser(
        "field",
        help="evaluate a pulse on a grid",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=parents,
    )
    parser.set_defaults(func=main)
    add_parser_arguments(parser)
    return parser


def setup(subparsers, parents: List[argparse.ArgumentParser]) -> None:  # noqa: ANN001
    add_subparser(subparsers, parents)


def default_window(ct: float) -> List[tuple]:
    half = max(_MIN_HALF_WIDTH, 1.25 * abs(ct) + 4.0)
    return [("x", -half, half), ("z", -half, half)]


@guard
def main(args: CLIArgumentNamespace) -> int:
    """CLI entry point for the 'field' command.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0 for success, 3 when most samples are singular).
    """
    logger.debug("running field subcommand")

    config = SplashConfig.from_cli_namespace(args)
    logger.debug(config)

    windows = args.window or default_window(args.ct or 0.0)
    names = [name for name, _, _ in windows]
    fixed: Dict[str, float] = dict(args.fixed)
    if "ct" in names:
        if args.ct is not None:
            return fail(SplashError.invalid_argument("--ct conflicts with a ct window"))
    elif args.ct is None:
        return fail(SplashError.invalid_argument("--ct is required unless ct is a window axis"))
    else:
        fixed["ct"] = args.ct
    if "R" not in names and "z" not in names:
        fixed.setdefault("z", 0.0)

    params = pulse_params_from_args(args)
    grid_res = make_grid(window_axes(windows, args.n))
    if grid_res.is_err():
        return fail(grid_res.error)

    filled = evaluate_on_grid(args.pulse, params, grid_res.value, fixed, threads=config.threads, k=args.k)
    if filled.is_err():
        return fail(filled.error)
    grid = filled.value
    if grid.nan_count > defaults.GRID_NAN_FRACTION_LIMIT * grid.size:
        return fail(SplashError.sampling(grid.nan_count, grid.size))

    values = grid.values
    finite = values[np.isfinite(values)]
    report = {
        "pulse": args.pulse,
        "params": params.to_dict(),
        "k": args.k,
        "axes": [str(axis) for axis in grid.axes],
        "fixed": dict(grid.fixed),
        "cells": grid.size,
        "non_finite": grid.nan_count,
        "max_abs_re": float(np.max(np.abs(finite.real))) if finite.size else None,
        "max_abs_im": float(np.max(np.abs(finite.imag))) if finite.size else None,
    }
    summary = [
        f"{args.pulse} on {' '.join(report['axes'])} "
        f"({', '.join(f'{k}={v:g}' for k, v in grid.fixed)})",
        f"  cells: {grid.size}, non-finite: {grid.nan_count}",
        f"  max |Re|: {report['max_abs_re']}, max |Im|: {report['max_abs_im']}",
    ]
    if args.backflow:
        field = pulse_field(args.pulse, params, k=args.k).unwrap()
        regular = is_regular(args.pulse, params)
        scan = backflow_scan(field, grid_res.value, params, fixed, regular=regular, part=args.part)
        if scan.is_err():
            return fail(scan.error)
        report["backflow"] = {"part": args.part, **scan.value.to_dict()}
        summary.append(f"  backflow ({args.part}): {scan.value.count} cells, min v_Ez: {scan.value.min_vez:.4g}")
    parameters = {**report["params"], "pulse": args.pulse, "k": args.k, "axes": report["axes"], "fixed": report["fixed"]}
    return finish(args, config.output_dir, "field", parameters, report, summary, grid=grid, vtk=args.vtk)
