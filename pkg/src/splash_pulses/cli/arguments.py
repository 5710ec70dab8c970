import argparse
from typing import List, Optional, Sequence, Tuple

from splash_pulses.constants import defaults, keys
from splash_pulses.types import PULSE_NAMES, STENCIL_ORDERS, Part, PulseName, RayKind
from splash_pulses.utils.logging import get_logger

from .utils import parse_float_list, positive_float, positive_int

logger = get_logger(__name__)


def get_standard_options_parser() -> argparse.ArgumentParser:
    standard_options_parser = argparse.ArgumentParser(add_help=False)
    standard_options_parser.add_argument(
        "--output-dir",
        metavar="PATH",
        help=f"directory for reports and the run manifest. default is '{defaults.OUTPUT_DIR}' (env {keys.ENV_OUTPUT_DIR})",
    )
    standard_options_parser.add_argument(
        "--threads",
        type=positive_int,
        metavar="N",
        help=f"worker threads for grid sweeps (env {keys.ENV_THREADS})",
    )
    standard_options_parser.add_argument(
        "--tol",
        type=positive_float,
        metavar="REL",
        help=f"relative quadrature tolerance. default is {defaults.TOL:g} (env {keys.ENV_TOL})",
    )
    standard_options_parser.add_argument(
        "--stencil-order",
        type=int,
        choices=STENCIL_ORDERS,
        help=f"finite-difference accuracy order (env {keys.ENV_STENCIL_ORDER})",
    )
    standard_options_parser.add_argument(
        "--json",
        action="store_true",
        default=False,
        dest="output_json",
        help="print the report as json instead of a summary",
    )
    return standard_options_parser


def get_log_level_options_parser() -> argparse.ArgumentParser:
    log_level_parser = argparse.ArgumentParser(add_help=False)
    log_level_parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="be more verbose",
    )
    log_level_parser.add_argument(
        "-q",
        "--quiet",
        action="count",
        default=0,
        help="be more quiet",
    )
    return log_level_parser


def add_pulse_arguments(
    parser: argparse.ArgumentParser,
    pulses: Sequence[str] = PULSE_NAMES,
    default: Optional[str] = None,
) -> None:
    """Adds --pulse and the pulse parameters; unset parameters keep the PulseParams defaults."""
    group = parser.add_argument_group("pulse")
    group.add_argument(
        "--pulse",
        choices=pulses,
        default=default,
        required=default is None,
        help="pulse family",
    )
    group.add_argument("--c", type=positive_float, help="wave speed. default is 1")
    group.add_argument("--cts", type=positive_float, help="temporal width c*t_s. default is 1")
    group.add_argument("--zs", type=float, help="axial width z_s of u and U. default is 0")
    group.add_argument("--a1", type=positive_float, help="focus-wave-mode width a1. default is 1")
    group.add_argument("--a2", type=positive_float, help="spectral decay a2. default is 2")
    group.add_argument("--k", type=positive_float, default=1.0, help="wavenumber of the focus wave mode G")


def add_nu_argument(parser: argparse.ArgumentParser, multiple: bool = False) -> None:
    if multiple:
        parser.add_argument(
            "--nu",
            type=parse_float_list,
            dest="nu_list",
            metavar="NU[,NU...]",
            help="spectral power(s) of f, each greater than -1. default is -0.25",
        )
    else:
        parser.add_argument("--nu", type=float, help="spectral power of f. default is -0.25")


def add_fractional_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds the parameters of the fractional pulse f."""
    group = parser.add_argument_group("fractional pulse")
    group.add_argument("--nu", type=float, help="spectral power of f. default is -0.25")
    group.add_argument("--a1", type=positive_float, help="focus-wave-mode width a1. default is 1")
    group.add_argument("--a2", type=positive_float, help="spectral decay a2. default is 2")
    group.add_argument("--c", type=positive_float, help="wave speed. default is 1")


class CLIArgumentNamespace(argparse.Namespace):
    # initial options, only used in main cli func
    verbose: int
    quiet: int

    # config options
    output_dir: Optional[str]
    threads: Optional[int]
    tol: Optional[float]
    stencil_order: Optional[int]
    output_json: bool

    # pulse options
    pulse: PulseName
    c: Optional[float]
    cts: Optional[float]
    zs: Optional[float]
    a1: Optional[float]
    a2: Optional[float]
    nu: Optional[float]
    k: float

    # field
    ct: Optional[float]
    window: Optional[List[Tuple[str, float, float]]]
    n: int
    fixed: List[Tuple[str, float]]
    vtk: bool
    backflow: bool

    # limits, decay, maxwell
    delta: float
    rays: List[RayKind]
    ray: RayKind
    alpha: float
    ct0: float
    doublings: int
    part: Part

    # decay
    nu_list: Optional[List[float]]
    profile: bool

    # energy
    t: List[float]
    total_energy: bool
    key_integral: Optional[List[float]]

    # maxwell
    m: List[complex]
    points: int
    seed: int
    terms: bool

    # acoustics
    rho0: float
    r_a: Optional[float]

    # solidangle
    ct_list: List[float]
    em: bool

    @staticmethod
    def func(args: "CLIArgumentNamespace") -> int:  # type: ignore
        ...
