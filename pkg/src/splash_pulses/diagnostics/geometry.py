"""Peak location, transverse half width and solid angle of a pulse peak."""

import dataclasses
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from splash_pulses.core import PulseParams, ScalarField
from splash_pulses.errors import SplashError
from splash_pulses.result import Result
from splash_pulses.types import Part, PulseName
from splash_pulses.utils.logging import LogSection, get_logger

logger = get_logger(__name__)

_TRANSVERSE_SAMPLES = 2001


@dataclasses.dataclass(frozen=True)
class PeakSearch:
    """Controls of the peak search.

    Attributes:
        angle_samples: polar angles scanned on the sphere R = ct.
        axial_halfwidth: half length of the line scanned through the peak,
            max(10, 0.01*ct) when None.
        axial_samples: samples on that line.
        xtol: relative tolerance (times ct) of the refinements.
        part: which part of the field is maximized in magnitude.
    """

    angle_samples: int = 721
    axial_halfwidth: Optional[float] = None
    axial_samples: int = 4001
    xtol: float = 1e-4
    part: Part = "re"

    def halfwidth(self, ct: float) -> float:
        if self.axial_halfwidth is not None:
            return self.axial_halfwidth
        return max(10.0, 0.01 * ct)


@dataclasses.dataclass(frozen=True)
class PeakGeometry:
    ct: float
    rho: float
    z: float
    value: float
    hwhm: float

    @property
    def omega(self) -> float:
        """Solid angle pi*HWHM^2/ct^2 in steradian."""
        return math.pi * self.hwhm**2 / self.ct**2

    def to_dict(self) -> dict:
        return {
            "ct": self.ct,
            "rho": self.rho,
            "z": self.z,
            "value": self.value,
            "hwhm": self.hwhm,
            "omega": self.omega,
        }


def _magnitude(field: ScalarField, part: Part) -> Callable[[np.ndarray, np.ndarray, float], np.ndarray]:
    def evaluate(rho: np.ndarray, z: np.ndarray, ct: float) -> np.ndarray:
        with np.errstate(all="ignore"):
            values = np.asarray(field(rho, z, np.full(np.shape(rho), ct)), dtype=complex)
        if part == "re":
            values = values.real
        elif part == "im":
            values = values.imag
        out = np.abs(values)
        out[~np.isfinite(out)] = 0.0
        return out

    return evaluate


def _refine_max(func: Callable[[float], float], grid: np.ndarray, values: np.ndarray, xatol: float) -> float:
    """Bounded refinement of the sampled maximum between its two neighbors."""
    i = int(np.argmax(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    found = optimize.minimize_scalar(lambda t: -func(t), bounds=(lo, hi), method="bounded", options={"xatol": xatol})
    return float(found.x) if -found.fun >= values[i] else float(grid[i])


def peak_geometry(field: ScalarField, ct: float, search: PeakSearch = PeakSearch()) -> Result[PeakGeometry]:
    """Locates the peak of |part(field)| near the sphere R = ct and measures its HWHM.

    The polar angle is scanned on R = ct and refined; the peak is then
    refined along the line from the origin through it, since a peak may sit
    slightly off the sphere. The half width is measured transversally (in
    rho at the peak's z) by bracketing and root finding.
    """
    if not ct > 0:
        return Result(error=SplashError.invalid_argument(f"ct must be positive, got {ct}"))
    magnitude = _magnitude(field, search.part)
    xatol = search.xtol * ct

    with LogSection(f"peak geometry at ct={ct:g}", logger_name=__name__):
        theta = np.linspace(0.0, math.pi, search.angle_samples)
        on_sphere = magnitude(ct * np.sin(theta), ct * np.cos(theta), ct)
        if not np.any(on_sphere > 0):
            return Result(error=SplashError.geometry(f"field vanishes on the sphere R = ct = {ct:g}"))

        def at_angle(t: float) -> float:
            return float(magnitude(np.array([ct * math.sin(t)]), np.array([ct * math.cos(t)]), ct)[0])

        angle = _refine_max(at_angle, theta, on_sphere, search.xtol)

        # radial line through the sphere peak
        halfwidth = search.halfwidth(ct)
        radius = np.linspace(max(ct - halfwidth, 0.0), ct + halfwidth, search.axial_samples)
        sin_a, cos_a = math.sin(angle), math.cos(angle)
        along = magnitude(radius * sin_a, radius * cos_a, ct)
        i = int(np.argmax(along))
        if i in (0, radius.size - 1):
            return Result(
                error=SplashError.geometry(f"no interior maximum within {halfwidth:g} of R = {ct:g}")
            )

        def on_line(r: float) -> float:
            return float(magnitude(np.array([r * sin_a]), np.array([r * cos_a]), ct)[0])

        r_peak = _refine_max(on_line, radius, along, xatol)
        rho_p, z_p = r_peak * sin_a, r_peak * cos_a
        peak = on_line(r_peak)
        half = 0.5 * peak

        def excess(d: float) -> float:
            return float(magnitude(np.array([rho_p + d]), np.array([z_p]), ct)[0]) - half

        offsets = np.geomspace(1e-6 * ct, 2.0 * ct, _TRANSVERSE_SAMPLES)
        profile = magnitude(rho_p + offsets, np.full_like(offsets, z_p), ct) - half
        below = np.nonzero(profile <= 0)[0]
        if below.size == 0:
            return Result(error=SplashError.geometry(f"no half maximum within 2ct of the peak at ct={ct:g}"))
        j = int(below[0])
        if j == 0:
            return Result(error=SplashError.geometry(f"peak at ct={ct:g} is narrower than the transverse scan"))
        hwhm = float(optimize.brentq(excess, offsets[j - 1], offsets[j], xtol=xatol * 1e-3))

    result = PeakGeometry(float(ct), float(rho_p), float(z_p), peak, hwhm)
    logger.debug("peak at ct=%g: rho=%.4g z=%.6g hwhm=%.4g omega=%.4g", ct, rho_p, z_p, hwhm, result.omega)
    return Result(result)


def _axial_peak(
    field: ScalarField, ct: float, part: Part, search: PeakSearch
) -> Result[float]:
    magnitude = _magnitude(field, part)
    halfwidth = search.halfwidth(ct)
    offsets = np.linspace(-halfwidth, halfwidth, search.axial_samples)
    values = magnitude(np.zeros_like(offsets), ct + offsets, ct)
    i = int(np.argmax(values))
    if i in (0, offsets.size - 1) or values[i] == 0:
        return Result(error=SplashError.geometry(f"the {part} part has no interior axial peak at ct={ct:g}"))

    def at(d: float) -> float:
        return float(magnitude(np.zeros(1), np.array([ct + d]), ct)[0])

    return Result(_refine_max(at, offsets, values, search.xtol))


def peak_shift(field: ScalarField, ct: float, search: PeakSearch = PeakSearch()) -> Result[Tuple[float, float]]:
    """Axial offsets z - ct of the peaks of |Re field| and |Im field| on the axis."""
    shifts = []
    for part in ("re", "im"):
        found = _axial_peak(field, ct, part, search)  # type: ignore[arg-type]
        if found.is_err():
            return Result(error=found.error)
        shifts.append(found.value)
    logger.debug("peak shifts at ct=%g: re %+.4g, im %+.4g", ct, shifts[0], shifts[1])
    return Result((shifts[0], shifts[1]))


def asymptotic_peak_shift(a1: float, nu: float) -> Tuple[float, float]:
    """Large-ct limits of the on-axis peak offsets z - ct of |Re f| and |Im f|.

    On the axis f ~ (a1 - i(z - ct))^-(nu+1) up to a constant phase, so with
    theta = (nu + 1)*pi/2 the peaks sit at a1*tan(theta/2) and
    -a1*tan(pi/4 - theta/2); about +2a1/3 and -a1/5 for nu = -1/4.
    """
    if not a1 > 0:
        raise ValueError(f"a1 must be positive, got {a1}")
    if not -1.0 < nu < 0.0:
        raise ValueError(f"the peaks are single only for -1 < nu < 0, got {nu}")
    theta = 0.5 * math.pi * (nu + 1.0)
    return a1 * math.tan(0.5 * theta), -a1 * math.tan(0.25 * math.pi - 0.5 * theta)


@dataclasses.dataclass(frozen=True)
class SplitPeak:
    """Extremum of R*part(field) on the equator near R = ct.

    `extremum` is the weighted value there; `height` is measured from the
    mean of the window edges.
    """

    ct: float
    R: float
    extremum: float
    height: float

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def split_peaks(
    name: PulseName,
    params: PulseParams,
    cts: Sequence[float],
    part: Part = "im",
    halfwidth: Optional[float] = None,
    samples: int = 2001,
) -> Result[List[SplitPeak]]:
    """Peak heights of the R-weighted profile of a pulse for a series of times."""
    from splash_pulses.pulses import pulse_field

    bound = pulse_field(name, params)
    if bound.is_err():
        return Result(error=bound.error)
    field = bound.value
    width = 10.0 * params.cts if halfwidth is None else halfwidth

    def weighted(r: np.ndarray, ct: float) -> np.ndarray:
        with np.errstate(all="ignore"):
            values = r * np.asarray(field(r, np.zeros_like(r), np.full_like(r, ct)), dtype=complex)
        return values.imag if part == "im" else values.real

    peaks = []
    for ct in cts:
        radius = np.linspace(max(ct - width, 1e-3 * width), ct + width, samples)
        values = weighted(radius, ct)
        if not np.all(np.isfinite(values)):
            return Result(error=SplashError.singular_point(f"{name} on the equator at ct={ct:g}"))
        edge = 0.5 * (values[0] + values[-1])

        def lift(r: float, ct: float = ct, edge: float = edge) -> float:
            return abs(float(weighted(np.array([r]), ct)[0]) - edge)

        r_peak = _refine_max(lift, radius, np.abs(values - edge), 1e-6 * width)
        extremum = float(weighted(np.array([r_peak]), ct)[0])
        peaks.append(SplitPeak(float(ct), r_peak, extremum, extremum - edge))
        logger.debug("%s %s peak at ct=%g: R=%.6g, extremum %.6g", name, part, ct, r_peak, extremum)
    return Result(peaks)
