"""acoustic observables of a pulse used as a velocity potential

With v = -grad Re f and p = rho0 dRe f/dt the linearized continuity and
Euler equations are checked at random points; the convective term
(v.grad)v is reported next to dv/dt. For the fractional pulse the pressure
is also probed along the forward ray, where it inherits the ct^(-nu) growth
of f. --r-a adds the Rayleigh distance 2 r_a^2 / a1 of an aperture of radius r_a.
"""

import argparse
from typing import List

import numpy as np

from splash_pulses.calculus import StencilConfig
from splash_pulses.cli.arguments import CLIArgumentNamespace, add_nu_argument, add_pulse_arguments
from splash_pulses.cli.utils import fail, finish, guard, positive_float, positive_int, pulse_params_from_args
from splash_pulses.config import SplashConfig
from splash_pulses.constants import defaults
from splash_pulses.core import FieldPoint, PulseParams, ScalarField, random_points
from splash_pulses.diagnostics import limit_probe
from splash_pulses.em_acoustics import acoustic_observables, derived_probe_ray, fluid_residuals, rayleigh_distance
from splash_pulses.errors import SplashError
from splash_pulses.expected import Check, check
from splash_pulses.pulses import is_regular, pulse_field
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)


def add_parser_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds acoustic options to the argument parser.

    Args:
        parser: The argument parser to add options to.
    """
    add_pulse_arguments(parser, default="f")
    add_nu_argument(parser)
    parser.add_argument(
        "--rho0",
        type=positive_float,
        default=defaults.RHO0,
        help=f"ambient mass density. default is {defaults.RHO0:g}",
    )
    parser.add_argument("--r-a", type=positive_float, dest="r_a", help="aperture radius for the Rayleigh distance")
    parser.add_argument("--points", type=positive_int, default=100, help="random residual points. default is 100")
    parser.add_argument("--seed", type=int, default=0, help="seed of the random points. default is 0")


def add_subparser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:  # noqa: ANN001
    parser = subparsers.add_parser(
        "acoustics",
        help="linearized fluid residuals and acoustic asymptotics",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=parents,
    )
    parser.set_defaults(func=main)
    add_parser_arguments(parser)
    return parser


def setup(subparsers, parents: List[argparse.ArgumentParser]) -> None:  # noqa: ANN001
    add_subparser(subparsers, parents)


def pressure_field(field: ScalarField, params: PulseParams, rho0: float, stencil: StencilConfig) -> ScalarField:
    def pressure(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        sample = acoustic_observables(field, FieldPoint(np.abs(rho), z, ct), params, rho0, stencil).unwrap()
        return np.asarray(sample.p, dtype=complex)

    return pressure


@guard
def main(args: CLIArgumentNamespace) -> int:
    """CLI entry point for the 'acoustics' command.

    Returns:
        Exit code (0 pass, 1 residual or decay mismatch, 3 singular samples).
    """
    logger.debug("running acoustics subcommand")

    config = SplashConfig.from_cli_namespace(args)
    logger.debug(config)

    params = pulse_params_from_args(args)
    field_res = pulse_field(args.pulse, params, k=args.k)
    if field_res.is_err():
        return fail(field_res.error)
    field = field_res.value
    stencil = StencilConfig(order=config.stencil_order)
    checks: List[Check] = []
    summary = [f"{args.pulse} as velocity potential, rho0={args.rho0:g}"]

    points = random_points(args.points, args.seed)
    fluid = fluid_residuals(field, points, params, args.rho0, stencil, is_regular(args.pulse, params))
    if fluid.is_err():
        return fail(fluid.error)
    checks.append(check("fluid_residual", fluid.value.max_relative))
    report: dict = {"pulse": args.pulse, "params": params.to_dict(), "rho0": args.rho0, "fluid": fluid.value.to_dict()}
    summary.append(
        f"  continuity residual: {fluid.value.continuity.max_relative:.3g}, "
        f"Euler residual: {fluid.value.euler.max_relative:.3g}"
    )
    summary.append(f"  max |(v.grad)v| / |dv/dt|: {report['fluid']['max_convective_ratio']:.3g}")

    error = None
    if args.pulse == "f":
        ray = derived_probe_ray("forward-z")
        far = StencilConfig(order=config.stencil_order, scale=params.a1)
        probed = limit_probe(pressure_field(field, params, args.rho0, far), ray, rtol=defaults.PROBE_RTOL_DERIVED)
        if probed.is_err():
            return fail(probed.error)
        result = probed.value
        report["pressure"] = result.to_dict()
        summary.append(f"  ct*p on {ray.describe()}: {result.describe()}")
        if result.classification == "ambiguous":
            error = SplashError.ambiguous(*result.candidates())
        elif params.nu < 0:
            exponent = check("acoustic_exponent", result.exponent, expected=-params.nu)
            report["pressure"]["check"] = exponent.to_dict()
            checks.append(exponent)

    if args.r_a is not None:
        z_r = rayleigh_distance(params.a1, args.r_a, params.c)
        report["rayleigh_distance"] = z_r
        summary.append(f"  Rayleigh distance for r_a={args.r_a:g}: {z_r:g}")
    report["checks"] = {c.name: c.to_dict() for c in checks}

    parameters = {
        **params.to_dict(),
        "pulse": args.pulse,
        "k": args.k,
        "rho0": args.rho0,
        "r_a": args.r_a,
        "points": args.points,
        "seed": args.seed,
        "stencil_order": config.stencil_order,
    }
    passed = all(c.passed for c in checks)
    return finish(args, config.output_dir, "acoustics", parameters, report, summary, passed, error=error)
