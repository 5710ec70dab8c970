"""solid angle of a pulse peak as it travels

At each ct the peak of |Re| (or |Im|) of the pulse, f by default, is located
near the sphere R = ct, its transverse half width at half maximum measured
and the solid angle pi*HWHM^2/ct^2 reported. For f the log-log slope of the
solid angle against ct is checked against -1, the slope of a peak whose width
grows like sqrt(ct). --em repeats the measurement for E_x derived from the
Hertz vector (1, 1, 0) times the pulse at the last ct. For f with
-1 < nu < 0 the large-ct limits of the on-axis peak shifts are reported next
to the measured ones.
"""

import argparse
from typing import List, Optional

import numpy as np

from splash_pulses.calculus import StencilConfig
from splash_pulses.cli.arguments import CLIArgumentNamespace, add_nu_argument, add_pulse_arguments
from splash_pulses.cli.utils import fail, finish, guard, parse_float_list, pulse_params_from_args
from splash_pulses.config import SplashConfig
from splash_pulses.core import PulseParams
from splash_pulses.diagnostics import PeakSearch, asymptotic_peak_shift, peak_geometry, peak_shift
from splash_pulses.em_acoustics import HertzConfig, em_component_field
from splash_pulses.errors import SplashError
from splash_pulses.expected import Check, check, solid_angle_check, solid_angle_table
from splash_pulses.pulses import pulse_field
from splash_pulses.types import PARTS
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_CTS = [10.0, 100.0, 1000.0, 10000.0]


def add_parser_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds solid-angle options to the argument parser.

    Args:
        parser: The argument parser to add options to.
    """
    add_pulse_arguments(parser, default="f")
    add_nu_argument(parser)
    parser.add_argument(
        "--ct",
        type=parse_float_list,
        dest="ct_list",
        default=DEFAULT_CTS,
        metavar="CT[,CT...]",
        help="times c*t of the measurements. default is 10,100,1000,10000",
    )
    parser.add_argument(
        "--part",
        choices=[p for p in PARTS if p != "complex"],
        default="re",
        help="part of the pulse whose magnitude peaks. default is re",
    )
    parser.add_argument("--em", action="store_true", help="also measure the E_x peak at the last ct")


def add_subparser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:  # noqa: ANN001
    parser = subparsers.add_parser(
        "solidangle",
        help="peak half width and solid angle against ct",
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
    return (params.nu, params.a1, params.a2) == (-0.25, 1.0, 2.0)


@guard
def main(args: CLIArgumentNamespace) -> int:
    """CLI entry point for the 'solidangle' command.

    Returns:
        Exit code (0 pass, 1 mismatch or no measurable peak).
    """
    logger.debug("running solidangle subcommand")

    config = SplashConfig.from_cli_namespace(args)
    logger.debug(config)

    cts = sorted(args.ct_list)
    if any(ct <= 0 for ct in cts):
        return fail(SplashError.invalid_argument("every ct must be positive"))
    params = pulse_params_from_args(args)
    reference = args.pulse == "f" and _is_reference(params)
    table = solid_angle_table() if reference else {}
    bound = pulse_field(args.pulse, params, k=args.k)
    if bound.is_err():
        return fail(bound.error)
    field = bound.value
    search = PeakSearch(part=args.part)

    checks: List[Check] = []
    peaks: List[dict] = []
    error: Optional[SplashError] = None
    summary = [
        f"solid angle of the |{args.part} {args.pulse}| peak, nu={params.nu:g}, a1={params.a1:g}, a2={params.a2:g}"
    ]
    for ct in cts:
        found = peak_geometry(field, ct, search)
        if found.is_err():
            peaks.append({"ct": ct, "error": str(found.error)})
            summary.append(f"  ct={ct:<8g} {found.error}")
            error = error or found.error
            continue
        peak = found.value
        entry = peak.to_dict()
        shift = peak_shift(field, ct, search)
        if shift.is_ok():
            entry["shift"] = {"re": shift.value[0], "im": shift.value[1]}
        line = f"  ct={ct:<8g} hwhm={peak.hwhm:.4g}  omega={peak.omega:.4g} sr"
        if float(ct) in table:
            result = solid_angle_check(ct, peak.omega)
            entry["check"] = result.to_dict()
            checks.append(result)
            line += f" (expected {result.expected:g}{'' if result.passed else ', MISMATCH'})"
        summary.append(line)
        peaks.append(entry)

    report: dict = {"pulse": args.pulse, "params": params.to_dict(), "part": args.part, "peaks": peaks}
    if args.pulse == "f" and -1.0 < params.nu < 0.0:
        re_shift, im_shift = asymptotic_peak_shift(params.a1, params.nu)
        report["shift_asymptote"] = {"re": re_shift, "im": im_shift}
        summary.append(f"  large-ct peak shifts: re {re_shift:+.4g}, im {im_shift:+.4g}")
    measured = [p for p in peaks if "omega" in p]
    if len(measured) >= 2:
        slope = float(np.polyfit(np.log([p["ct"] for p in measured]), np.log([p["omega"] for p in measured]), 1)[0])
        if args.pulse == "f":
            result = check("solid_angle_slope", slope)
            report["slope"] = result.to_dict()
            checks.append(result)
        else:
            report["slope"] = {"value": slope}
        summary.append(f"  log-log slope: {slope:.4f}")

    if args.em:
        ct = cts[-1]
        stencil = StencilConfig(order=config.stencil_order, scale=params.a1)
        ex = em_component_field(field, HertzConfig(c=params.c), "Ex", stencil)
        found = peak_geometry(ex, ct, search)
        if found.is_err():
            return fail(found.error)
        report["em"] = {"component": "Ex", "m": [1, 1, 0], **found.value.to_dict()}
        summary.append(f"  E_x at ct={ct:g}: omega={found.value.omega:.4g} sr")
        if reference and ct == 1e4:
            result = check("em_solid_angle", found.value.omega)
            report["em"]["check"] = result.to_dict()
            checks.append(result)
    report["checks"] = [c.to_dict() for c in checks]

    parameters = {**params.to_dict(), "pulse": args.pulse, "ct": cts, "part": args.part, "em": args.em}
    passed = all(c.passed for c in checks)
    return finish(args, config.output_dir, "solidangle", parameters, report, summary, passed, error=error)
