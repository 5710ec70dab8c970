"""Central finite differences of complex fields of real coordinates, and wave-operator residuals.

Derivatives are taken in Cartesian coordinates (x, y, z, ct) plus the radial
direction "rho" at the point's azimuth. Time derivatives are with respect to
ct, so d/dt = c * d/dct. Mixed derivatives nest one-axis stencils.
"""

import collections
import dataclasses
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from splash_pulses.constants import defaults
from splash_pulses.core import FieldPoint, ScalarField
from splash_pulses.errors import SplashError, StencilError
from splash_pulses.result import Result
from splash_pulses.types import STENCIL_ORDERS, StencilOrder
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)

CartesianField = Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray]
"""field(x, y, z, ct) for quantities without axial symmetry"""

Mask = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

DERIVATIVE_AXES = ("rho", "x", "y", "z", "ct")

# offsets, integer weights, common denominator
_STENCILS: Dict[Tuple[int, int], Tuple[Tuple[int, ...], Tuple[int, ...], int]] = {
    (1, 4): ((-2, -1, 1, 2), (1, -8, 8, -1), 12),
    (1, 6): ((-3, -2, -1, 1, 2, 3), (-1, 9, -45, 45, -9, 1), 60),
    (2, 4): ((-2, -1, 0, 1, 2), (-1, 16, -30, 16, -1), 12),
    (2, 6): ((-3, -2, -1, 0, 1, 2, 3), (2, -27, 270, -490, 270, -27, 2), 180),
}

_AXIS_RADIUS = 1e-4
"""below this rho the transverse operator is replaced by its on-axis limit 2 d2/drho2"""


@dataclasses.dataclass(frozen=True)
class StencilConfig:
    """Central-difference settings.

    Attributes:
        order: accuracy order, 4 or 6.
        base_step: relative step; the step on axis q is base_step * max(1, |q|).
        richardson: extrapolate from steps h and h/2 and report an error estimate.
        scale: when set, the step is base_step * scale on every axis,
            independent of the coordinates. Far-zone probes use this so the
            truncation error does not grow with ct.
        strict: raise StencilError on a non-finite sample; otherwise the
            derivative is NaN there.
    """

    order: StencilOrder = defaults.STENCIL_ORDER
    base_step: float = defaults.BASE_STEP
    richardson: bool = False
    scale: Optional[float] = None
    strict: bool = True

    def __post_init__(self) -> None:
        if self.order not in STENCIL_ORDERS:
            raise ValueError(f"stencil order must be one of {STENCIL_ORDERS}, got {self.order}")
        if not self.base_step > 0:
            raise ValueError(f"base step must be positive, got {self.base_step}")
        if self.scale is not None and not self.scale > 0:
            raise ValueError(f"stencil scale must be positive, got {self.scale}")

    def step(self, coordinate: np.ndarray) -> np.ndarray:
        if self.scale is not None:
            return np.full(np.shape(coordinate), self.base_step * self.scale)
        return self.base_step * np.maximum(1.0, np.abs(coordinate))


DEFAULT_STENCIL = StencilConfig()


def cartesian_field(field: ScalarField) -> CartesianField:
    """Lifts an axisymmetric field(rho, z, ct) to field(x, y, z, ct)."""

    def wrapped(x: np.ndarray, y: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        return field(np.hypot(x, y), z, ct)

    return wrapped


def _describe(coords: Dict[str, np.ndarray], bad: np.ndarray) -> str:
    idx = tuple(np.argwhere(bad)[0]) if bad.ndim else ()
    parts = []
    for name in ("x", "y", "z", "ct"):
        value = np.broadcast_to(coords[name], bad.shape)[idx]
        parts.append(f"{name}={float(value):.6g}")
    return ", ".join(parts)


def _normalize_axes(axis: Union[str, Sequence[str]], n: int) -> List[Tuple[str, int]]:
    names = [axis] * n if isinstance(axis, str) else list(axis)
    for name in names:
        if name not in DERIVATIVE_AXES:
            raise StencilError(f"unknown derivative axis {name!r}")
    counts = collections.Counter(names)
    if any(count > 2 for count in counts.values()):
        raise StencilError("derivatives above second order per axis are not supported")
    # first-seen order keeps nesting deterministic
    return [(name, counts[name]) for name in dict.fromkeys(names)]


class _Stencil:
    def __init__(self, field: CartesianField, p: FieldPoint, cfg: StencilConfig) -> None:
        self.field = field
        self.cfg = cfg
        self.cos_phi = np.cos(p.phi)
        self.sin_phi = np.sin(p.phi)
        self.base = {"x": p.x, "y": p.y, "z": p.z, "ct": p.ct}
        self.origin = {"rho": p.rho, **self.base}

    def step(self, axis: str, factor: float) -> np.ndarray:
        """Step rounded so that every stencil coordinate is exactly representable."""
        origin = self.origin[axis]
        h = self.cfg.step(origin) * factor
        return (origin + h) - origin

    def _shift(self, coords: Dict[str, np.ndarray], axis: str, delta: np.ndarray) -> Dict[str, np.ndarray]:
        shifted = dict(coords)
        if axis == "rho":
            shifted["x"] = coords["x"] + delta * self.cos_phi
            shifted["y"] = coords["y"] + delta * self.sin_phi
        else:
            shifted[axis] = coords[axis] + delta
        return shifted

    def apply(self, derivs: List[Tuple[str, int]], factor: float, coords: Optional[Dict[str, np.ndarray]] = None) -> np.ndarray:
        coords = self.base if coords is None else coords
        if not derivs:
            with np.errstate(all="ignore"):
                values = np.asarray(
                    self.field(coords["x"], coords["y"], coords["z"], coords["ct"]), dtype=complex
                )
            bad = ~np.isfinite(values)
            if self.cfg.strict and np.any(bad):
                raise StencilError(_describe(coords, bad))
            return values

        (axis, n), rest = derivs[0], derivs[1:]
        offsets, weights, denom = _STENCILS[(n, self.cfg.order)]
        h = self.step(axis, factor)
        samples = {
            offset: weight * self.apply(rest, factor, self._shift(coords, axis, offset * h))
            for offset, weight in zip(offsets, weights)
        }
        # mirrored samples are combined first so a field even (odd) in the
        # axis gives exactly zero odd (even) derivatives
        total: np.ndarray = samples.get(0, np.zeros((), dtype=complex))
        for offset in sorted(o for o in offsets if o > 0):
            total = total + (samples[offset] + samples[-offset])
        return total / (denom * h**n)


def cartesian_partial_estimate(
    field: CartesianField,
    p: FieldPoint,
    axis: Union[str, Sequence[str]],
    n: int = 1,
    cfg: StencilConfig = DEFAULT_STENCIL,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Derivative of a field(x, y, z, ct) plus, with Richardson on, an error estimate.

    `axis` names one axis differentiated `n` times (n = 1 or 2), or a
    sequence of axes for a mixed derivative, e.g. ("z", "ct").

    Raises:
        StencilError: a stencil sample is non-finite; names the sample.
    """
    derivs = _normalize_axes(axis, n)
    stencil = _Stencil(field, p, cfg)
    coarse = stencil.apply(derivs, 1.0)
    if not cfg.richardson:
        return coarse, None
    fine = stencil.apply(derivs, 0.5)
    gain = 2.0**cfg.order - 1.0
    return fine + (fine - coarse) / gain, np.abs(fine - coarse) / gain


def cartesian_partial(
    field: CartesianField,
    p: FieldPoint,
    axis: Union[str, Sequence[str]],
    n: int = 1,
    cfg: StencilConfig = DEFAULT_STENCIL,
) -> np.ndarray:
    return cartesian_partial_estimate(field, p, axis, n, cfg)[0]


def partial_estimate(
    field: ScalarField,
    p: FieldPoint,
    axis: Union[str, Sequence[str]],
    n: int = 1,
    cfg: StencilConfig = DEFAULT_STENCIL,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    return cartesian_partial_estimate(cartesian_field(field), p, axis, n, cfg)


def partial(
    field: ScalarField,
    p: FieldPoint,
    axis: Union[str, Sequence[str]],
    n: int = 1,
    cfg: StencilConfig = DEFAULT_STENCIL,
) -> np.ndarray:
    """Derivative of an axisymmetric field(rho, z, ct) at p.

    Fields of this package depend on rho through rho**2, so radial stencils
    may cross the axis.
    """
    return partial_estimate(field, p, axis, n, cfg)[0]


def cartesian_gradient(field: CartesianField, p: FieldPoint, cfg: StencilConfig = DEFAULT_STENCIL) -> np.ndarray:
    return np.stack([cartesian_partial(field, p, axis, 1, cfg) for axis in ("x", "y", "z")])


def gradient(field: ScalarField, p: FieldPoint, cfg: StencilConfig = DEFAULT_STENCIL) -> np.ndarray:
    """Cartesian gradient (d/dx, d/dy, d/dz), stacked along the first axis."""
    return cartesian_gradient(cartesian_field(field), p, cfg)


@dataclasses.dataclass(frozen=True, eq=False)
class ResidualReport:
    """Per-point residuals of a governing equation.

    Attributes:
        points: the accepted sample points.
        residual: |operator applied to the field| per point.
        scale: magnitude of the largest term of the operator per point.
        requested: number of points asked for.
        rejected: points dropped as singular before differentiation.
    """

    points: FieldPoint
    residual: np.ndarray
    scale: np.ndarray
    requested: int
    rejected: int = 0

    @property
    def relative(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.scale > 0, self.residual / self.scale, self.residual)

    @property
    def max_relative(self) -> float:
        rel = self.relative
        return float(np.max(rel)) if rel.size else 0.0

    def passed(self, threshold: float) -> bool:
        return self.max_relative < threshold

    def to_dict(self) -> Dict[str, float]:
        rel = self.relative
        return {
            "requested": self.requested,
            "rejected": self.rejected,
            "max_relative": self.max_relative,
            "median_relative": float(np.median(rel)) if rel.size else 0.0,
        }


def select_regular(points: FieldPoint, regular: Optional[Mask]) -> Result[Tuple[FieldPoint, int]]:
    """Drops points outside the regular set; more than 10% dropped is a sampling error."""
    rho, z, ct = np.broadcast_arrays(points.rho, points.z, points.ct)
    phi = np.broadcast_to(points.phi, rho.shape)
    requested = rho.size
    if regular is None:
        return Result((FieldPoint(rho.ravel(), z.ravel(), ct.ravel(), phi.ravel()), 0))
    keep = np.asarray(regular(rho, z, ct), dtype=bool)
    rejected = int(requested - np.count_nonzero(keep))
    if rejected > defaults.SINGULAR_FRACTION_LIMIT * requested:
        return Result(error=SplashError.sampling(rejected, requested))
    if rejected > 0.01 * requested:
        logger.warning("rejected %d of %d sample points as singular", rejected, requested)
    elif rejected:
        logger.debug("rejected %d of %d sample points as singular", rejected, requested)
    return Result((FieldPoint(rho[keep], z[keep], ct[keep], phi[keep]), rejected))


def wave_residual(
    field: ScalarField,
    points: FieldPoint,
    cfg: StencilConfig = DEFAULT_STENCIL,
    regular: Optional[Mask] = None,
) -> Result[ResidualReport]:
    """Relative residual of d2/dct2 f = d2/drho2 f + (1/rho) d/drho f + d2/dz2 f.

    The time variable is ct, so the wave speed does not enter. Points closer
    to the axis than 1e-4 use the regular form 2 d2/drho2 for the transverse
    operator. The normalization is the largest of the four terms.
    """
    selected = select_regular(points, regular)
    if selected.is_err():
        return Result(error=selected.error)
    accepted, rejected = selected.value
    requested = accepted.rho.size + rejected

    try:
        f_rr = partial(field, accepted, "rho", 2, cfg)
        f_r = partial(field, accepted, "rho", 1, cfg)
        f_zz = partial(field, accepted, "z", 2, cfg)
        f_tt = partial(field, accepted, "ct", 2, cfg)
    except StencilError as ex:
        return Result(error=ex.error)

    on_axis = accepted.rho < _AXIS_RADIUS
    with np.errstate(divide="ignore", invalid="ignore"):
        radial = np.where(on_axis, f_rr, f_r / accepted.rho)
    terms = np.stack([np.abs(f_rr), np.abs(radial), np.abs(f_zz), np.abs(f_tt)])
    residual = np.abs(f_rr + radial + f_zz - f_tt)
    report = ResidualReport(accepted, residual, terms.max(axis=0), requested, rejected)
    logger.debug(
        "wave residual: max relative %.3g over %d points", report.max_relative, accepted.rho.size
    )
    return Result(report)
