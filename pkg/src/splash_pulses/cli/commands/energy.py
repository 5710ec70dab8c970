"""square norm, spectral bound and total energy of the fractional pulse

The spatial norm is integrated at each requested time and compared with the
E1-weighted spectral norm and its logarithmic upper bound B. For the
reference pulse (nu=-0.25, a1=1, a2=2) the values are also compared with
the bundled table. nu <= -0.5 is reported as divergent with exit code 5.
"""

import argparse
import math
from typing import List, Optional

from splash_pulses.cli.arguments import CLIArgumentNamespace, add_fractional_arguments
from splash_pulses.cli.utils import fail, finish, guard, parse_float_list, pulse_params_from_args
from splash_pulses.config import SplashConfig
from splash_pulses.core import PulseParams
from splash_pulses.energy import key_integral_check, norm_spatial, spectral_bound, total_energy_scalar
from splash_pulses.errors import SplashError
from splash_pulses.expected import Check, check
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)

REFERENCE = PulseParams(nu=-0.25, a1=1.0, a2=2.0)


def add_parser_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds energy-related options to the argument parser.

    Args:
        parser: The argument parser to add options to.
    """
    add_fractional_arguments(parser)
    parser.add_argument(
        "--t",
        type=parse_float_list,
        default=[0.0],
        metavar="T[,T...]",
        help="times at which the spatial norm is integrated. default is 0",
    )
    parser.add_argument(
        "--total-energy",
        action="store_true",
        help="also integrate the scalar energy density at each time",
    )
    parser.add_argument(
        "--key-integral",
        type=parse_float_list,
        metavar="LAMBDA,DK[,T]",
        help="check the oscillatory z-integral for lambda, dk and an optional truncation (default 2500)",
    )


def add_subparser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:  # noqa: ANN001
    parser = subparsers.add_parser(
        "energy",
        help="norm, bound and energy of the fractional pulse",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=parents,
    )
    parser.set_defaults(func=main)
    add_parser_arguments(parser)
    return parser


def setup(subparsers, parents: List[argparse.ArgumentParser]) -> None:  # noqa: ANN001
    add_subparser(subparsers, parents)


def _is_reference(params: PulseParams) -> bool:
    return (params.nu, params.a1, params.a2) == (REFERENCE.nu, REFERENCE.a1, REFERENCE.a2)


def _spatial_check(value: float, error: float, spectral: float, reference: bool) -> Check:
    # away from the reference only the two routes to the norm can be compared
    return check("norm_spatial", value, error, expected=None if reference else spectral)


@guard
def main(args: CLIArgumentNamespace) -> int:
    """CLI entry point for the 'energy' command.

    Returns:
        Exit code (0 pass, 1 check failed, 5 divergent or unconverged).
    """
    logger.debug("running energy subcommand")

    config = SplashConfig.from_cli_namespace(args)
    logger.debug(config)

    params = pulse_params_from_args(args)
    reference = _is_reference(params)
    report: dict = {"params": params.to_dict(), "reference": reference, "square_integrable": params.square_integrable}
    summary = [f"fractional pulse nu={params.nu:g}, a1={params.a1:g}, a2={params.a2:g}"]
    parameters = {**params.to_dict(), "t": args.t, "total_energy": args.total_energy, "key_integral": args.key_integral}
    checks: List[Check] = []
    error: Optional[SplashError] = None

    bound_res = spectral_bound(params, tol=config.tol)
    if bound_res.is_err():
        return fail(bound_res.error)
    bound = bound_res.value
    report["bound_B_nu"] = bound.b_nu.to_dict()
    report["norm_spectral"] = bound.norm_spectral.to_dict()
    if bound.norm_spectral.divergent:
        summary.append("  spectral norm and bound: divergent")
        error = SplashError.divergent(f"the norm of f with nu={params.nu:g} does not exist")
    else:
        spectral = bound.norm_spectral.value
        summary.append(f"  spectral norm: {spectral:.6f} +- {bound.norm_spectral.abs_error:.2g}")
        summary.append(f"  bound B:       {bound.b_nu.value:.6f} (dominates: {bound.dominates})")
        if reference:
            checks.append(check("norm_spectral", spectral, bound.norm_spectral.abs_error))
            checks.append(check("bound_B_nu", bound.b_nu.value, bound.b_nu.abs_error))
        checks.append(Check("bound_dominates", bound.b_nu.value, 0.0, spectral, bound.dominates))

    spatial: List[dict] = []
    for t in args.t:
        res = norm_spatial(params, t=t, tol=config.tol)
        if res.is_err():
            return fail(res.error)
        norm = res.value
        entry = {"t": t, **norm.to_dict()}
        entry.pop("trace")
        if norm.divergent:
            summary.append(f"  spatial norm at t={t:g}: divergent")
            error = error or SplashError.divergent(f"spatial norm at t={t:g}")
        else:
            summary.append(f"  spatial norm at t={t:g}: {norm.value:.6f} +- {norm.abs_error:.2g}")
            if not bound.norm_spectral.divergent:
                result = _spatial_check(norm.value, norm.abs_error, bound.norm_spectral.value, reference)
                entry["check"] = result.to_dict()
                checks.append(result)
            if not norm.converged:
                error = error or SplashError.quadrature(f"spatial norm at t={t:g}")
        if args.total_energy:
            energy = total_energy_scalar(params, t=t, tol=config.tol)
            if energy.is_err():
                return fail(energy.error)
            entry["total_energy"] = energy.value.value
            summary.append(f"  total energy at t={t:g}: {energy.value.value:.6f}")
        spatial.append(entry)
    report["norm_spatial"] = spatial

    if args.key_integral:
        lam, dk, *rest = args.key_integral
        key_res = key_integral_check(lam, dk, rest[0] if rest else 2500.0)
        if key_res.is_err():
            return fail(key_res.error)
        key = key_res.value
        report["key_integral"] = key.to_dict()
        summary.append(
            f"  key integral: I1+I2={abs(key.total):.3g}, (I1-I2)/2 vs closed form: "
            f"{abs(key.antisymmetric - key.closed):.3g}, truncated sums decreasing: {key.decreasing}"
        )
        scale = 1e-6 * max(1.0, abs(key.closed))
        mismatch = max(abs(key.total), abs(key.antisymmetric - key.closed))
        checks.append(Check("key_integral", mismatch, 0.0, 0.0, mismatch <= scale and key.decreasing))

    report["checks"] = {c.name: c.to_dict() for c in checks}
    passed = all(c.passed for c in checks)
    if math.isinf(bound.b_nu.value):
        summary.append("  (nu <= -0.5: the pulse is not square integrable)")
    return finish(args, config.output_dir, "energy", parameters, report, summary, passed, error=error)
