"""electromagnetic fields from the Hertz vector m*f

Checks that the Riemann-Silberstein vector F built from Pi = m*f solves the
source-free Maxwell equations at random points, then probes the field
components along the forward ray. A transverse m (m_x or m_y nonzero) must
give abnormally decaying transverse fields growing like ct^(-nu); the
longitudinal m = (0, 0, m_z) must not.
"""

import argparse
from typing import Dict, List, Optional

from splash_pulses.calculus import StencilConfig
from splash_pulses.cli.arguments import CLIArgumentNamespace, add_fractional_arguments
from splash_pulses.cli.utils import fail, finish, guard, parse_complex_vector, positive_int, pulse_params_from_args
from splash_pulses.config import SplashConfig
from splash_pulses.core import random_points
from splash_pulses.em_acoustics import (
    HertzConfig,
    derived_probe_ray,
    em_asymptotics,
    em_term_asymptotics,
    maxwell_residual,
)
from splash_pulses.errors import SplashError
from splash_pulses.expected import Check, check
from splash_pulses.pulses import is_regular, pulse_field
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)

TRANSVERSE = ("Ex", "Ey", "Bx", "By")


def add_parser_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds Maxwell-check options to the argument parser.

    Args:
        parser: The argument parser to add options to.
    """
    add_fractional_arguments(parser)
    parser.add_argument(
        "--m",
        type=parse_complex_vector,
        default=[1.0, 1.0, 0.0],
        metavar="MX,MY,MZ",
        help="complex Hertz direction, e.g. 1,1i,0. default is 1,1,0",
    )
    parser.add_argument("--points", type=positive_int, default=100, help="random residual points. default is 100")
    parser.add_argument("--seed", type=int, default=0, help="seed of the random points. default is 0")
    parser.add_argument("--delta", type=float, default=0.0, help="offset of the probe ray from the peak. default is 0")
    parser.add_argument(
        "--terms",
        action="store_true",
        help="also classify each second-derivative term of F_x along the ray",
    )


def add_subparser(subparsers, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:  # noqa: ANN001
    parser = subparsers.add_parser(
        "maxwell",
        help="Maxwell residual and decay of the derived EM fields",
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
    """CLI entry point for the 'maxwell' command.

    Returns:
        Exit code (0 pass, 1 residual or decay mismatch, 3 singular samples, 4 ambiguous).
    """
    logger.debug("running maxwell subcommand")

    config = SplashConfig.from_cli_namespace(args)
    logger.debug(config)

    params = pulse_params_from_args(args)
    cfg = HertzConfig(m=tuple(args.m), c=params.c)  # type: ignore[arg-type]
    stencil = StencilConfig(order=config.stencil_order)
    field = pulse_field("f", params).unwrap()
    checks: List[Check] = []
    error: Optional[SplashError] = None
    m_text = ", ".join(f"{v:g}" for v in cfg.m)
    summary = [f"Hertz vector ({m_text}) * f with nu={params.nu:g}"]

    points = random_points(args.points, args.seed)
    residual = maxwell_residual(field, cfg, points, stencil, is_regular("f", params))
    if residual.is_err():
        return fail(residual.error)
    checks.append(check("maxwell_residual", residual.value.max_relative))
    summary.append(f"  Maxwell residual: max relative {residual.value.max_relative:.3g} over {args.points} points")

    ray = derived_probe_ray("forward-z", args.delta)
    probed = em_asymptotics(cfg, params, ray, field)
    if probed.is_err():
        return fail(probed.error)
    components: Dict[str, dict] = {}
    for name, result in probed.value.items():
        components[name] = result.to_dict()
        summary.append(f"  {name:<3} {result.describe()}")
        if result.classification == "ambiguous":
            error = error or SplashError.ambiguous(*result.candidates())
        elif result.classification == "power-divergent" and name in TRANSVERSE:
            exponent = check("em_exponent", result.exponent, expected=-params.nu)
            components[name]["check"] = exponent.to_dict()
            checks.append(exponent)

    transverse_m = cfg.m[0] != 0 or cfg.m[1] != 0
    abnormal = [name for name, result in probed.value.items() if result.divergent]
    # a transverse Hertz vector must decay abnormally, a longitudinal one must not
    expected_abnormal = transverse_m and params.nu < 0
    transverse_abnormal = any(name in TRANSVERSE for name in abnormal)
    checks.append(Check("abnormal_decay", float(len(abnormal)), 0.0, None, transverse_abnormal == expected_abnormal))
    longitudinal = [name for name in abnormal if name not in TRANSVERSE]
    checks.append(Check("longitudinal_normal", float(len(longitudinal)), 0.0, 0.0, not longitudinal))
    summary.append(f"  abnormal components: {', '.join(abnormal) or 'none'} (expected {'some' if expected_abnormal else 'none'})")

    report: dict = {
        "m": list(cfg.m),
        "params": params.to_dict(),
        "residual": residual.value.to_dict(),
        "ray": ray.describe(),
        "components": components,
        "abnormal": abnormal,
    }
    if args.terms:
        terms = em_term_asymptotics(cfg, params, ray)
        if terms.is_err():
            return fail(terms.error)
        report["terms"] = {name: result.to_dict() for name, result in terms.value.items()}
        for name, result in terms.value.items():
            summary.append(f"  term {name}: {result.describe()}")
    report["checks"] = {c.name: c.to_dict() for c in checks}

    parameters = {
        **params.to_dict(),
        "m": list(cfg.m),
        "points": args.points,
        "seed": args.seed,
        "delta": args.delta,
        "terms": args.terms,
        "stencil_order": config.stencil_order,
    }
    passed = all(c.passed for c in checks)
    return finish(args, config.output_dir, "maxwell", parameters, report, summary, passed, error=error)
