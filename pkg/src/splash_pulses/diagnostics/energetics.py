"""Scalar energy density, Poynting vector, energy backflow and time integrals of fields.

For a complex scalar wave f the energy density and flux are taken as

    w = |df/dct|^2 / 2 + |grad f|^2 / 2,    S = -c Re[conj(df/dct) grad f],

which satisfy c dw/dct + div S = 0 for every solution. The energy velocity
v_E = S/w therefore never exceeds c in magnitude.
"""

import dataclasses
import math
from typing import Callable, Mapping, Optional, Tuple

import numpy as np
from scipy import integrate

from splash_pulses.calculus import DEFAULT_STENCIL, Mask, ResidualReport, StencilConfig, gradient, partial, select_regular
from splash_pulses.core import FieldGrid, FieldPoint, PulseParams, ScalarField, grid_points
from splash_pulses.errors import SplashError, StencilError
from splash_pulses.result import Result
from splash_pulses.types import EnergyQuantity, Part
from splash_pulses.utils.logging import LogSection, get_logger

logger = get_logger(__name__)

_CARTESIAN = ("x", "y", "z")
_SCALE_SAMPLES = 401


@dataclasses.dataclass(frozen=True, eq=False)
class FieldDiagnostics:
    """Energy density w, flux S (3, ...) and energy velocity v_E (NaN where w = 0)."""

    w: np.ndarray
    S: np.ndarray
    v_E: np.ndarray

    @property
    def speed(self) -> np.ndarray:
        return np.sqrt(np.sum(self.v_E**2, axis=0))


def _take(values: np.ndarray, part: Part) -> np.ndarray:
    if part == "re":
        return np.real(values)
    if part == "im":
        return np.imag(values)
    return values


def _diagnostics(ft: np.ndarray, grad: np.ndarray, c: float, part: Part = "complex") -> FieldDiagnostics:
    """w and S of one part of the field; the derivatives of Re f and Im f are the parts of those of f."""
    ft, grad = _take(ft, part), _take(grad, part)
    w = 0.5 * np.abs(ft) ** 2 + 0.5 * np.sum(np.abs(grad) ** 2, axis=0)
    S = -c * np.real(np.conj(ft) * grad)
    with np.errstate(divide="ignore", invalid="ignore"):
        v_E = np.where(w > 0, S / w, np.nan)
    return FieldDiagnostics(w, S, v_E)


def scalar_energetics(
    field: ScalarField,
    p: FieldPoint,
    params: PulseParams,
    cfg: StencilConfig = DEFAULT_STENCIL,
    part: Part = "complex",
) -> Result[FieldDiagnostics]:
    """w, S and v_E at the points, of the complex field or of its real or imaginary part."""
    try:
        ft = partial(field, p, "ct", 1, cfg)
        grad = gradient(field, p, cfg)
    except StencilError as ex:
        return Result(error=ex.error)
    return Result(_diagnostics(ft, grad, params.c, part))


def energetics_field(
    field: ScalarField,
    params: PulseParams,
    quantity: EnergyQuantity = "w",
    cfg: StencilConfig = DEFAULT_STENCIL,
    part: Part = "complex",
) -> ScalarField:
    """ct times w or a component of S, as a field(rho, z, ct) on the half plane y = 0.

    A limit probe weights the samples by ct once more, so it classifies
    (ct)^2 w, the weighting under which a normally decaying energy density
    has a finite limit. Points with a singular stencil evaluate to nan.
    """

    def value(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        rho, z, ct = np.broadcast_arrays(np.asarray(rho, dtype=float), z, ct)
        diag = scalar_energetics(field, FieldPoint(rho, z, ct), params, cfg, part)
        if diag.is_err():
            return np.full(rho.shape, np.nan, dtype=complex)
        picked = diag.value.w if quantity == "w" else diag.value.S[_CARTESIAN.index(quantity[1])]
        return (ct * picked).astype(complex)

    return value


def energy_conservation_residual(
    field: ScalarField,
    points: FieldPoint,
    params: PulseParams,
    cfg: StencilConfig = DEFAULT_STENCIL,
    regular: Optional[Mask] = None,
) -> Result[ResidualReport]:
    """Relative residual of c dw/dct + div S = 0, assembled term by term from partials."""
    selected = select_regular(points, regular)
    if selected.is_err():
        return Result(error=selected.error)
    accepted, rejected = selected.value
    c = params.c

    try:
        ft = partial(field, accepted, "ct", 1, cfg)
        ftt = partial(field, accepted, "ct", 2, cfg)
        grad = [partial(field, accepted, axis, 1, cfg) for axis in _CARTESIAN]
        grad_t = [partial(field, accepted, (axis, "ct"), 1, cfg) for axis in _CARTESIAN]
        second = [partial(field, accepted, axis, 2, cfg) for axis in _CARTESIAN]
    except StencilError as ex:
        return Result(error=ex.error)

    terms = [c * np.real(np.conj(ft) * ftt)]
    terms += [c * np.real(np.conj(g) * gt) for g, gt in zip(grad, grad_t)]
    # div S = -c Re[conj(d_i f_t) d_i f + conj(f_t) d_ii f]
    terms += [-c * np.real(np.conj(gt) * g) for g, gt in zip(grad, grad_t)]
    terms += [-c * np.real(np.conj(ft) * s) for s in second]
    stacked = np.stack(terms)
    residual = np.abs(stacked.sum(axis=0))
    report = ResidualReport(accepted, residual, np.abs(stacked).max(axis=0), accepted.rho.size + rejected, rejected)
    logger.debug("energy conservation: max relative %.3g", report.max_relative)
    return Result(report)


@dataclasses.dataclass(frozen=True, eq=False)
class BackflowReport:
    """Cells of a grid where the axial energy flux points backwards.

    Attributes:
        grid: the scanned grid; values hold v_E,z (NaN where undefined).
        cells: boolean mask of the grid shape, S_z < 0.
        min_vez: smallest axial energy velocity found.
        max_speed: largest |v_E| found.
    """

    grid: FieldGrid
    cells: np.ndarray
    min_vez: float
    max_speed: float

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.cells))

    @property
    def fraction(self) -> float:
        return self.count / self.cells.size if self.cells.size else 0.0

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "fraction": self.fraction,
            "min_vez": self.min_vez,
            "max_speed": self.max_speed,
        }


def backflow_scan(
    field: ScalarField,
    grid: FieldGrid,
    params: PulseParams,
    fixed: Mapping[str, float],
    cfg: StencilConfig = DEFAULT_STENCIL,
    regular: Optional[Mask] = None,
    part: Part = "complex",
) -> Result[BackflowReport]:
    """Scans the grid for S_z < 0; points off the regular set or with a singular stencil are skipped.

    `part` selects Re f or Im f as the scanned field; "complex" uses the
    complex bilinear forms.
    """
    points_res = grid_points(grid, fixed)
    if points_res.is_err():
        return Result(error=points_res.error)
    points = points_res.value

    loose = dataclasses.replace(cfg, strict=False)
    with LogSection(f"backflow scan over {grid.size} cells", logger_name=__name__):
        diag = scalar_energetics(field, points, params, loose, part).value
    vez = diag.v_E[2]
    if regular is not None:
        vez = np.where(regular(points.rho, points.z, points.ct), vez, np.nan)
    finite = np.isfinite(vez)
    cells = finite & (diag.S[2] < 0)
    speed = np.where(finite, diag.speed, np.nan)
    report = BackflowReport(
        grid.with_values(vez.astype(complex), fixed),
        cells.reshape(grid.shape),
        float(np.min(vez[finite])) if np.any(finite) else math.nan,
        float(np.max(speed[finite])) if np.any(finite) else math.nan,
    )
    logger.debug("backflow in %d of %d cells, min v_Ez = %.4g", report.count, grid.size, report.min_vez)
    return Result(report)


@dataclasses.dataclass(frozen=True)
class StrangeIntegral:
    """Time integral over (-inf, inf) of one part of a field at a fixed point.

    `value` includes the extrapolated tails beyond the window (-T, T);
    `tail_bound` is the magnitude of that extrapolation.
    """

    value: float
    abs_error: float
    tail_bound: float
    window: float

    @property
    def error_bound(self) -> float:
        return self.abs_error + self.tail_bound

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _tail(g: Callable[[float], float], t: float, sign: float) -> Tuple[float, float]:
    """Tail integral beyond ct = sign*t from the local power-law decay of g."""
    near, far = g(sign * t / 2.0), g(sign * t)
    if far == 0.0:
        return 0.0, math.inf
    if near == 0.0 or abs(far) >= abs(near):
        return math.nan, 0.0
    n = math.log2(abs(near) / abs(far))
    return t * far / (n - 1.0), n


def strange_integral(
    field: ScalarField,
    rho: float,
    z: float,
    window: float,
    params: PulseParams,
    tol: float = 1e-10,
    part: Part = "im",
    limit: int = 500,
) -> Result[StrangeIntegral]:
    """Integral of part(field) over all times t at the point (rho, z).

    The window (-T, T) in ct is integrated adaptively with breakpoints where
    the pulse passes the point; the tails are extrapolated assuming power
    decay g ~ |ct|^-n, measured from g(T/2)/g(T), and must have n > 1.2.
    The absolute tolerance is tol times the largest |g| sampled on the window.
    """
    if not window > 0:
        return Result(error=SplashError.invalid_argument(f"window must be positive, got {window}"))
    take = np.imag if part == "im" else np.real

    def g(ct: float) -> float:
        value = field(np.array([rho]), np.array([z]), np.array([ct]))
        return float(take(np.asarray(value)[0]))

    radius = math.hypot(rho, z)
    points = [p for p in (-radius, 0.0, radius) if -window < p < window]
    samples = np.concatenate([np.linspace(-window, window, _SCALE_SAMPLES), points])
    values = np.abs(take(np.asarray(field(np.full_like(samples, rho), np.full_like(samples, z), samples))))
    finite = values[np.isfinite(values)]
    scale = float(finite.max()) if finite.size else 0.0
    with LogSection(f"time integral at rho={rho:g} z={z:g} over |ct| < {window:g}", logger_name=__name__):
        out = integrate.quad(
            g, -window, window, points=points or None, epsabs=tol * scale, epsrel=tol, limit=limit, full_output=1
        )
    inner, abs_error = out[0], out[1]
    if len(out) > 3:
        return Result(error=SplashError.quadrature(f"time integral at rho={rho:g}, z={z:g}: {out[3]}"))

    tails = 0.0
    for sign in (1.0, -1.0):
        tail, n = _tail(g, window, sign)
        if not math.isfinite(tail) or n <= 1.2:
            return Result(
                error=SplashError.divergent(
                    f"time tail at ct={sign * window:g} decays with exponent {n:.3g}; widen the window"
                )
            )
        tails += tail
        logger.trace("tail at %+g: %.6g (exponent %.3g)", sign * window, tail, n)

    c = params.c
    result = StrangeIntegral((inner + tails) / c, abs_error / c, abs(tails) / c, window)
    logger.debug("time integral %.8g +- %.2g (tail %.2g)", result.value, result.abs_error, result.tail_bound)
    return Result(result)
