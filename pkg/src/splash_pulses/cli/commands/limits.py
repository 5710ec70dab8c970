"""classify the far-zone limits of ct*field along rays

For each ray, ct*field is sampled at ct = ct0 * 2^j and classified as
finite, zero, log-divergent or power-divergent. The command passes when
every classification (and closed-form value, where one is known) matches
the bundled table.
"""

import argparse
from typing import Dict, List, Optional

from splash_pulses.cli.arguments import CLIArgumentNamespace, add_nu_argument, add_pulse_arguments
from splash_pulses.cli.utils import fail, finish, guard, positive_float, positive_int, pulse_params_from_args
from splash_pulses.config import SplashConfig
from splash_pulses.constants import defaults
from splash_pulses.core import RaySpec
from splash_pulses.diagnostics import limit_probe
from splash_pulses.errors import SplashError, SplashErrorType
from splash_pulses.expected import expected_limits
from splash_pulses.pulses import pulse_field
from splash_pulses.types import LIMIT_RAY_KINDS, PARTS, RAY_KINDS
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)


def add_parser_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds limit-probe options to the argument parser.

    Args:
        parser: The argument parser to add options to.
    """
    add_pulse_arguments(parser)
    add_nu_argument(parser)
    parser.add_argument("--delta", type=float, default=0.0, help="offset of the ray from the peak. default is 0")
    parser.add_argument(
        "--rays",
        nargs="+",
        choices=RAY_KINDS,
        default=list(LIMIT_RAY_KINDS),
        help="ray kinds to probe. default is all but oblique",
    )
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
    parser.add_argument("--part", choices=PARTS, default="complex", help="probe the complex value or one part")


def add_subparser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:  # noqa: ANN001
    parser = subparsers.add_parser(
        "limits",
        help="classify far-zone limits along rays",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=parents,
    )
    parser.set_defaults(func=main)
    add_parser_arguments(parser)
    return parser


def setup(subparsers, parents: List[argparse.ArgumentParser]) -> None:  # noqa: ANN001
    add_subparser(subparsers, parents)


@guard
def main(args: CLIArgumentNamespace) -> int:
    """CLI entry point for the 'limits' command.

    Returns:
        Exit code: 0 when every ray matches, 1 on a mismatch, 4 when a
        classification is ambiguous, the error's code when a probe fails.
    """
    logger.debug("running limits subcommand")

    config = SplashConfig.from_cli_namespace(args)
    logger.debug(config)

    params = pulse_params_from_args(args)
    field_res = pulse_field(args.pulse, params, k=args.k)
    if field_res.is_err():
        return fail(field_res.error)
    field = field_res.value
    expected = expected_limits(args.pulse, params, args.delta) if args.part == "complex" else {}

    rays: Dict[str, dict] = {}
    summary = [f"{args.pulse} limits of ct*field (delta={args.delta:g}, part={args.part})"]
    passed = True
    error: Optional[SplashError] = None
    for kind in args.rays:
        ray = RaySpec.geometric(kind, args.delta, args.ct0, args.doublings, alpha=args.alpha)  # type: ignore[arg-type]
        want = expected.get(kind)
        entry: dict = {"expected": want.to_dict() if want else None}
        probed = limit_probe(field, ray, args.part)
        if probed.is_err():
            entry.update({"error": str(probed.error), "pass": False})
            summary.append(f"  {kind:<11} error: {probed.error}")
            error = error or probed.error
            passed = False
        else:
            result = probed.value
            ok = want.matches(result) if want else True
            entry.update(result.to_dict())
            entry["pass"] = ok
            summary.append(f"  {kind:<11} {result.describe()}{'' if ok else '  MISMATCH'}")
            passed = passed and ok
            if result.classification == "ambiguous":
                ambiguous = SplashError.ambiguous(*result.candidates())
                # an ambiguous decision outranks any other failure
                if error is None or error.type is not SplashErrorType.AMBIGUOUS:
                    error = ambiguous
        rays[kind] = entry

    report = {"pulse": args.pulse, "params": params.to_dict(), "delta": args.delta, "part": args.part, "rays": rays, "pass": passed}
    parameters = {
        **params.to_dict(),
        "pulse": args.pulse,
        "delta": args.delta,
        "rays": list(args.rays),
        "ct0": args.ct0,
        "doublings": args.doublings,
        "part": args.part,
        "alpha": args.alpha,
    }
    return finish(args, config.output_dir, "limits", parameters, report, summary, passed, error=error)
