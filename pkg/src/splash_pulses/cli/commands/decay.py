"""fit the far-zone decay law of ct*field along a ray

ln|ct*field| is fitted against ln ct over the probe times. On the forward
ray of the fractional pulse the slope must be -nu; with a comma separated
--nu the whole family is swept and square integrability reported per nu.
--profile adds the axial series of ct*f around z = ct next to the C*ct^(-nu)
asymptote.
"""

import argparse
from typing import List, Optional

import numpy as np

from splash_pulses.cli.arguments import CLIArgumentNamespace, add_nu_argument, add_pulse_arguments
from splash_pulses.cli.utils import fail, finish, guard, positive_float, positive_int, pulse_params_from_args
from splash_pulses.config import SplashConfig
from splash_pulses.constants import defaults
from splash_pulses.core import PulseParams, RaySpec
from splash_pulses.diagnostics import decay_fit, peak_profile
from splash_pulses.errors import SplashError
from splash_pulses.expected import Check, check
from splash_pulses.pulses import pulse_field
from splash_pulses.types import RAY_KINDS
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)

PROFILE_CTS = (1e2, 1e3, 1e4)
PROFILE_HALFWIDTH = 6.0
PROFILE_SAMPLES = 241


def add_parser_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds decay-fit options to the argument parser.

    Args:
        parser: The argument parser to add options to.
    """
    add_pulse_arguments(parser, default="f")
    add_nu_argument(parser, multiple=True)
    parser.add_argument("--ray", choices=RAY_KINDS, default="forward-z", help="ray kind. default is forward-z")
    parser.add_argument("--delta", type=float, default=0.0, help="offset of the ray from the peak. default is 0")
    parser.add_argument("--alpha", type=float, default=0.1, help="polar angle of the oblique ray. default is 0.1")
    parser.add_argument(
        "--ct0", type=positive_float, default=defaults.PROBE_CT0, help=f"first probe time. default is {defaults.PROBE_CT0:g}"
    )
    parser.add_argument(
        "--doublings",
        type=positive_int,
        default=defaults.PROBE_DOUBLINGS,
        help=f"number of probe time doublings. default is {defaults.PROBE_DOUBLINGS}",
    )
    parser.add_argument(
        "--profile",
        action="store_true",
        help=f"add axial profiles of ct*f at ct={', '.join(f'{ct:g}' for ct in PROFILE_CTS)} to the report",
    )


def add_subparser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:  # noqa: ANN001
    parser = subparsers.add_parser(
        "decay",
        help="fit the decay law along a ray",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=parents,
    )
    parser.set_defaults(func=main)
    add_parser_arguments(parser)
    return parser


def setup(subparsers, parents: List[argparse.ArgumentParser]) -> None:  # noqa: ANN001
    add_subparser(subparsers, parents)


def _profiles(params: PulseParams) -> List[dict]:
    field = pulse_field("f", params).unwrap()
    offsets = np.linspace(-PROFILE_HALFWIDTH, PROFILE_HALFWIDTH, PROFILE_SAMPLES)
    return [
        {"ct": series.ct, "offsets": series.offsets, "values": series.values, "asymptote": series.asymptote}
        for series in peak_profile(field, PROFILE_CTS, offsets, params)
    ]


@guard
def main(args: CLIArgumentNamespace) -> int:
    """CLI entry point for the 'decay' command.

    Returns:
        Exit code (0 pass, 1 slope mismatch or poor fit).
    """
    logger.debug("running decay subcommand")

    config = SplashConfig.from_cli_namespace(args)
    logger.debug(config)

    if args.profile and args.pulse != "f":
        return fail(SplashError.invalid_argument("--profile needs --pulse f"))

    base = pulse_params_from_args(args)
    nus = args.nu_list or [base.nu]
    ray = RaySpec.geometric(args.ray, args.delta, args.ct0, args.doublings, alpha=args.alpha)  # type: ignore[arg-type]
    # the slope law -nu is only known for f on the forward ray
    checked = args.pulse == "f" and args.ray == "forward-z"

    fits: List[dict] = []
    checks: List[Check] = []
    error: Optional[SplashError] = None
    summary = [f"{args.pulse} decay of |ct*field| along {ray.describe()}"]
    for nu in nus:
        params = base.replace(nu=nu)
        entry: dict = {"nu": nu, "square_integrable": params.square_integrable}
        field_res = pulse_field(args.pulse, params, k=args.k)
        if field_res.is_err():
            return fail(field_res.error)
        fit = decay_fit(field_res.value, ray)
        if fit.is_err():
            entry["error"] = str(fit.error)
            summary.append(f"  nu={nu:g}: {fit.error}")
            error = error or fit.error
        else:
            entry.update(fit.value.to_dict())
            line = f"  nu={nu:g}: slope {fit.value.slope:.4f}"
            if checked:
                result = check("forward_slope", fit.value.slope, fit.value.rms_log_residual, expected=-nu)
                entry["check"] = result.to_dict()
                checks.append(result)
                line += f" (expected {-nu:g}{'' if result.passed else ', MISMATCH'})"
            if args.pulse == "f":
                line += f", square integrable: {params.square_integrable}"
            summary.append(line)
        fits.append(entry)

    report: dict = {"pulse": args.pulse, "params": base.to_dict(), "ray": ray.describe(), "fits": fits}
    if args.profile:
        report["profiles"] = {f"{nu:g}": _profiles(base.replace(nu=nu)) for nu in nus}
        summary.append(f"  profiles at ct={', '.join(f'{ct:g}' for ct in PROFILE_CTS)} written to the report")
    report["checks"] = [c.to_dict() for c in checks]

    parameters = {
        **base.to_dict(),
        "pulse": args.pulse,
        "nu": nus,
        "ray": args.ray,
        "delta": args.delta,
        "alpha": args.alpha,
        "ct0": args.ct0,
        "doublings": args.doublings,
        "profile": args.profile,
    }
    passed = all(c.passed for c in checks)
    return finish(args, config.output_dir, "decay", parameters, report, summary, passed, error=error)
