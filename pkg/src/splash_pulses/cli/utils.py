import argparse
import functools
import math
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Mapping, Optional, Tuple

from splash_pulses.core import AxisSpec, FieldGrid, PulseParams
from splash_pulses.errors import SplashError, SplashException
from splash_pulses.export import dumps, write_outputs
from splash_pulses.types import AXES
from splash_pulses.utils.logging import get_logger

if TYPE_CHECKING:
    from .arguments import CLIArgumentNamespace

logger = get_logger(__name__)


def positive_float(value: str) -> float:
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not number > 0 or not math.isfinite(number):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {value!r}")
    return number


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value!r}")
    return number


def parse_float_list(value: str) -> List[float]:
    """'0,10,100' -> [0.0, 10.0, 100.0]"""
    try:
        numbers = [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {value!r}") from None
    if not numbers:
        raise argparse.ArgumentTypeError("value cannot be empty")
    return numbers


def parse_complex_vector(value: str) -> List[complex]:
    """'1,1j,0' -> [1, 1j, 0]"""
    try:
        numbers = [complex(item.strip().replace("i", "j")) for item in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 3 comma separated complex numbers, got {value!r}") from None
    if len(numbers) != 3:
        raise argparse.ArgumentTypeError(f"expected 3 components, got {len(numbers)}")
    return numbers


def parse_assignment(value: str) -> Tuple[str, str]:
    name, sep, rest = value.partition("=")
    if not sep or not name.strip() or not rest.strip():
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {value!r}")
    return name.strip(), rest.strip()


def parse_window(value: str) -> Tuple[str, float, float]:
    """'x=-8:8' -> ('x', -8.0, 8.0)"""
    name, span = parse_assignment(value)
    if name not in AXES:
        raise argparse.ArgumentTypeError(f"unknown axis {name!r}, expected one of {AXES}")
    lo, sep, hi = span.partition(":")
    try:
        bounds = float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected AXIS=MIN:MAX, got {value!r}") from None
    if not sep:
        raise argparse.ArgumentTypeError(f"expected AXIS=MIN:MAX, got {value!r}")
    return name, bounds[0], bounds[1]


def parse_fixed(value: str) -> Tuple[str, float]:
    name, number = parse_assignment(value)
    try:
        return name, float(number)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {value!r}") from None


def window_axes(windows: Iterable[Tuple[str, float, float]], count: int) -> List[AxisSpec]:
    return [AxisSpec(name, lo, hi, count) for name, lo, hi in windows]  # type: ignore[arg-type]


def pulse_params_from_args(args: "CLIArgumentNamespace", nu: Optional[float] = None) -> PulseParams:
    """PulseParams from whichever pulse options were given.

    Raises:
        SplashException: the combination violates a PulseParams invariant.
    """
    given: Dict[str, float] = {}
    for name in ("c", "zs", "a1", "a2", "nu"):
        value = getattr(args, name, None)
        if value is not None:
            given[name] = value
    if nu is not None:
        given["nu"] = nu
    c = given.pop("c", 1.0)
    cts = getattr(args, "cts", None)
    if cts is not None:
        return PulseParams.from_cts(cts, c=c, **given)
    return PulseParams(c=c, **given)


def fail(error: SplashError) -> int:
    logger.error("%s", error)
    return error.exit_code


def finish(
    args: "CLIArgumentNamespace",
    output_dir: Path,
    command: str,
    parameters: Mapping[str, Any],
    report: Mapping[str, Any],
    summary: List[str],
    passed: bool = True,
    grid: Optional[FieldGrid] = None,
    vtk: bool = False,
    error: Optional[SplashError] = None,
) -> int:
    """Writes the outputs and the manifest, prints the report or summary, returns the exit code.

    A report is written even for a failed run; `error` then decides the exit
    code, otherwise `passed` does.
    """
    written = write_outputs(output_dir, command, parameters, report, grid, vtk)
    if written.is_err():
        return fail(written.error)
    logger.info("wrote %s to %s", ", ".join(path.name for path in written.value), output_dir)

    if args.output_json:
        print(dumps(report), end="")
    else:
        for line in summary:
            print(line)
    if error is not None:
        return fail(error)
    if not passed:
        logger.error("%s: check failed", command)
        return SplashError.check_failed().exit_code
    return 0


def guard(func):  # noqa: ANN001, ANN201
    """Turns a SplashException raised while assembling inputs into its exit code."""

    @functools.wraps(func)
    def wrapper(args: "CLIArgumentNamespace") -> int:
        try:
            return func(args)
        except SplashException as ex:
            return fail(ex.error)

    return wrapper
