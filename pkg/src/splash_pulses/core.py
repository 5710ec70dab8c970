"""Parameter, coordinate and grid types shared by every module.

Fields are evaluated in natural units where lengths and c*t share one unit.
Every scalar field in the package is exposed as a vectorized callable
``field(rho, z, ct) -> complex ndarray`` that depends on rho only through
rho**2, so it may be called with negative rho (the x axis of a plot).
"""

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from splash_pulses.constants import defaults
from splash_pulses.errors import SplashError, SplashException
from splash_pulses.result import Result
from splash_pulses.types import AXES, RAY_KINDS, Axis, PulseName, RayKind
from splash_pulses.utils.logging import LogSection, get_logger

logger = get_logger(__name__)

ScalarField = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
ArrayLike = Union[float, np.ndarray]

_BLOCK = 4096
"""grid cells per evaluation block; block boundaries never depend on the thread count"""


def _invalid(reason: str) -> SplashException:
    return SplashException(SplashError.invalid_argument(reason))


@dataclasses.dataclass(frozen=True)
class PulseParams:
    """Physical constants and pulse-shape parameters.

    Attributes:
        c: wave speed.
        ts: temporal width t_s; c*ts must be positive.
        zs: axial width z_s of the unidirectional pulse, non-negative.
        a1: focus-wave-mode width parameter, positive.
        a2: spectral decay parameter, positive.
        nu: spectral power, greater than -1.
    """

    c: float = 1.0
    ts: float = 1.0
    zs: float = 0.0
    a1: float = 1.0
    a2: float = 2.0
    nu: float = -0.25

    def __post_init__(self) -> None:
        for name in ("c", "ts", "zs", "a1", "a2", "nu"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise _invalid(f"{name} must be finite, got {value}")
        if self.c <= 0:
            raise _invalid(f"c must be positive, got {self.c}")
        if self.c * self.ts <= 0:
            raise _invalid(f"c*ts must be positive, got {self.c * self.ts}")
        if self.zs < 0:
            raise _invalid(f"zs must be non-negative, got {self.zs}")
        if self.a1 <= 0:
            raise _invalid(f"a1 must be positive, got {self.a1}")
        if self.a2 <= 0:
            raise _invalid(f"a2 must be positive, got {self.a2}")
        if self.nu <= -1:
            raise _invalid(f"nu must exceed -1, got {self.nu}")
        if self.zs > 0 and self.zs >= self.cts:
            logger.warning(
                "zs=%g is not below c*ts=%g; principal-branch continuity of U is not guaranteed",
                self.zs,
                self.cts,
            )

    @classmethod
    def from_cts(cls, cts: float, c: float = 1.0, **kwargs: float) -> "PulseParams":
        return cls(c=c, ts=cts / c, **kwargs)

    @property
    def cts(self) -> float:
        return self.c * self.ts

    @property
    def square_integrable(self) -> bool:
        """True iff the fractional pulse of power nu+1 has a finite norm."""
        return self.nu > -0.5

    def replace(self, **changes: float) -> "PulseParams":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, float]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True, eq=False)
class FieldPoint:
    """Spacetime evaluation coordinates, scalar or array valued (broadcast together)."""

    rho: ArrayLike
    z: ArrayLike
    ct: ArrayLike
    phi: ArrayLike = 0.0

    def __post_init__(self) -> None:
        for name in ("rho", "z", "ct", "phi"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if np.any(self.rho < 0):
            raise _invalid("rho must be non-negative")

    @classmethod
    def from_cartesian(cls, x: ArrayLike, y: ArrayLike, z: ArrayLike, ct: ArrayLike) -> "FieldPoint":
        return cls(np.hypot(x, y), z, ct, np.arctan2(y, x))

    @property
    def R(self) -> np.ndarray:
        return np.hypot(self.rho, self.z)

    @property
    def x(self) -> np.ndarray:
        return self.rho * np.cos(self.phi)

    @property
    def y(self) -> np.ndarray:
        return self.rho * np.sin(self.phi)


def random_points(
    count: int, seed: int = 0, extent: float = 4.0, ct_range: Tuple[float, float] = (-4.0, 4.0)
) -> FieldPoint:
    """Uniform points in the cube |x|, |y|, |z| < extent at times drawn from ct_range."""
    if count < 1:
        raise _invalid(f"count must be positive, got {count}")
    rng = np.random.default_rng(seed)
    x, y, z = rng.uniform(-extent, extent, size=(3, count))
    ct = rng.uniform(*ct_range, size=count)
    return FieldPoint.from_cartesian(x, y, z, ct)


@dataclasses.dataclass(frozen=True)
class AxisSpec:
    name: Axis
    lo: float
    hi: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)

    def __str__(self) -> str:
        return f"{self.name}={self.lo:g}:{self.hi:g}:{self.count}"


@dataclasses.dataclass(frozen=True, eq=False)
class FieldGrid:
    """Axis metadata plus row-major complex samples (first axis varies slowest)."""

    axes: Tuple[AxisSpec, ...]
    values: Optional[np.ndarray] = None
    fixed: Tuple[Tuple[str, float], ...] = ()

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(axis.count for axis in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def axis_names(self) -> Tuple[str, ...]:
        return tuple(axis.name for axis in self.axes)

    @property
    def nan_count(self) -> int:
        if self.values is None:
            return 0
        return int(np.count_nonzero(~np.isfinite(self.values)))

    def mesh(self) -> Dict[str, np.ndarray]:
        """Coordinate arrays for every grid axis, each shaped like the grid."""
        arrays = np.meshgrid(*(axis.values() for axis in self.axes), indexing="ij")
        return dict(zip(self.axis_names, arrays))

    def enumerate_points(self) -> Iterator[Dict[str, float]]:
        mesh = self.mesh()
        for idx in np.ndindex(*self.shape):
            yield {name: float(arr[idx]) for name, arr in mesh.items()}

    def with_values(self, values: np.ndarray, fixed: Mapping[str, float]) -> "FieldGrid":
        return FieldGrid(self.axes, values.reshape(self.shape), tuple(sorted(fixed.items())))


def make_grid(axes: Sequence[AxisSpec]) -> Result[FieldGrid]:
    if not axes:
        return Result(error=SplashError.invalid_argument("a grid needs at least one axis"))
    seen: List[str] = []
    for axis in axes:
        if axis.name not in AXES:
            return Result(error=SplashError.invalid_argument(f"unknown axis {axis.name!r}"))
        if axis.name in seen:
            return Result(error=SplashError.invalid_argument(f"axis {axis.name!r} given twice"))
        if axis.count < 2:
            return Result(
                error=SplashError.invalid_argument(f"axis {axis.name} needs at least 2 samples")
            )
        if not axis.lo < axis.hi:
            return Result(
                error=SplashError.invalid_argument(f"axis {axis.name} needs min < max")
            )
        seen.append(axis.name)
    if "R" in seen and {"x", "y", "z"} & set(seen):
        return Result(error=SplashError.invalid_argument("the R axis cannot be mixed with x, y, z"))
    return Result(FieldGrid(tuple(axes)))


def _cylindrical(coords: Mapping[str, np.ndarray]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    ct = coords["ct"]
    if "R" in coords:
        # equatorial line: rho = R, z = 0
        rho = np.asarray(coords["R"], dtype=float)
        return rho, np.zeros_like(rho), ct
    x = coords.get("x", 0.0)
    y = coords.get("y", 0.0)
    return np.hypot(x, y), coords["z"], ct


def _grid_coords(grid: FieldGrid, fixed: Mapping[str, float]) -> Result[Dict[str, np.ndarray]]:
    overlap = set(fixed) & set(grid.axis_names)
    if overlap:
        return Result(
            error=SplashError.invalid_argument(f"fixed coordinates also vary on the grid: {sorted(overlap)}")
        )
    coords: Dict[str, np.ndarray] = {
        name: np.asarray(value, dtype=float) for name, value in fixed.items()
    }
    coords.update(grid.mesh())
    for required in ("ct",) if "R" in coords else ("ct", "z"):
        if required not in coords:
            return Result(error=SplashError.invalid_argument(f"missing coordinate {required!r}"))
    return Result(coords)


def grid_points(grid: FieldGrid, fixed: Optional[Mapping[str, float]] = None) -> Result[FieldPoint]:
    """Flattened points of the grid in C order, azimuth included."""
    coords_res = _grid_coords(grid, dict(fixed or {}))
    if coords_res.is_err():
        return Result(error=coords_res.error)
    coords = coords_res.value
    if "R" in coords:
        x, y, z = coords["R"], 0.0, 0.0
    else:
        x, y, z = coords.get("x", 0.0), coords.get("y", 0.0), coords["z"]
    x, y, z, ct = (np.broadcast_to(a, grid.shape).ravel() for a in (x, y, z, coords["ct"]))
    return Result(FieldPoint.from_cartesian(x, y, z, ct))


def _evaluate_blocks(field: ScalarField, rho: np.ndarray, z: np.ndarray, ct: np.ndarray, threads: int) -> np.ndarray:
    n = rho.size
    starts = range(0, n, _BLOCK)

    def run(start: int) -> np.ndarray:
        stop = min(start + _BLOCK, n)
        with np.errstate(all="ignore"):
            return np.asarray(field(rho[start:stop], z[start:stop], ct[start:stop]), dtype=complex)

    if threads > 1 and n > _BLOCK:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(run, starts))
    else:
        blocks = [run(start) for start in starts]
    out = np.concatenate(blocks) if blocks else np.empty(0, dtype=complex)
    out[~np.isfinite(out)] = complex(np.nan, np.nan)
    return out


def evaluate_on_grid(
    pulse: Union[PulseName, ScalarField],
    params: PulseParams,
    grid: FieldGrid,
    fixed: Optional[Mapping[str, float]] = None,
    threads: int = 1,
    k: float = 1.0,
) -> Result[FieldGrid]:
    """Fills the grid with complex field values.

    Non-finite samples are stored as NaN and counted, never raised. The
    result is bit-identical for any thread count.

    Args:
        pulse: registered pulse name or a vectorized field callable.
        params: pulse parameters.
        grid: grid from make_grid.
        fixed: values of the coordinates the grid does not vary. ct is
            required; z is required unless the grid has an R axis; x and y
            default to 0.
        threads: worker threads for the fill.
        k: FWM wavenumber, used only by the "G" pulse.
    """
    fixed = dict(fixed or {})
    coords_res = _grid_coords(grid, fixed)
    if coords_res.is_err():
        return Result(error=coords_res.error)
    coords = coords_res.value

    if callable(pulse):
        field = pulse
    else:
        from splash_pulses.pulses import pulse_field

        field_res = pulse_field(pulse, params, k=k)
        if field_res.is_err():
            return Result(error=field_res.error)
        field = field_res.value

    rho, z, ct = (np.broadcast_to(a, grid.shape).ravel() for a in _cylindrical(coords))
    with LogSection(f"evaluating {grid.size} grid cells", logger_name=__name__):
        values = _evaluate_blocks(field, rho, z, ct, threads)
    filled = grid.with_values(values, fixed)
    if filled.nan_count:
        logger.debug("%d of %d grid samples are non-finite", filled.nan_count, filled.size)
    return Result(filled)


@dataclasses.dataclass(frozen=True, eq=False)
class RaySpec:
    """A path to spacetime infinity along which ct*field is probed.

    Substitutions, with s running over ct_sequence:
        forward-z:   rho = offset, z = s + delta
        backward-z:  rho = offset, z = -(s + delta)
        radial:      rho = s + delta, z = offset
        oblique:     rho = s*sin(alpha) + delta, z = s*cos(alpha) + delta
        diagonal:    rho = z = s + delta
        retro-z:     ct = -s, rho = offset, z = s + delta  (t -> -infinity)
    """

    kind: RayKind
    delta: float = 0.0
    ct_sequence: np.ndarray = dataclasses.field(
        default_factory=lambda: defaults.PROBE_CT0 * 2.0 ** np.arange(defaults.PROBE_DOUBLINGS + 1)
    )
    alpha: float = 0.0
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in RAY_KINDS:
            raise _invalid(f"unknown ray kind {self.kind!r}")
        seq = np.asarray(self.ct_sequence, dtype=float)
        object.__setattr__(self, "ct_sequence", seq)
        if seq.ndim != 1 or seq.size < 3:
            raise _invalid("ct_sequence needs at least 3 samples")
        if np.any(seq <= 0) or np.any(np.diff(seq) <= 0):
            raise _invalid("ct_sequence must be positive and strictly increasing")
        if seq[-1] / seq[0] < 100:
            raise _invalid("ct_sequence must span at least 2 decades")

    @classmethod
    def geometric(
        cls,
        kind: RayKind,
        delta: float = 0.0,
        ct0: float = defaults.PROBE_CT0,
        doublings: int = defaults.PROBE_DOUBLINGS,
        **kwargs: float,
    ) -> "RaySpec":
        return cls(kind, delta, ct0 * 2.0 ** np.arange(doublings + 1), **kwargs)

    @property
    def decades(self) -> float:
        return float(np.log10(self.ct_sequence[-1] / self.ct_sequence[0]))

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Returns (rho, z, ct) arrays for every probe time."""
        s = self.ct_sequence
        offset = np.full_like(s, self.offset)
        if self.kind == "forward-z":
            return offset, s + self.delta, s
        if self.kind == "backward-z":
            return offset, -(s + self.delta), s
        if self.kind == "radial":
            return np.abs(s + self.delta), offset, s
        if self.kind == "oblique":
            rho = s * math.sin(self.alpha) + self.delta
            return np.abs(rho), s * math.cos(self.alpha) + self.delta, s
        if self.kind == "diagonal":
            return np.abs(s + self.delta), s + self.delta, s
        return offset, s + self.delta, -s

    def weight(self) -> np.ndarray:
        """The ct factor of the probed product ct*field (negative on retro rays)."""
        return -self.ct_sequence if self.kind == "retro-z" else self.ct_sequence.copy()

    def describe(self) -> str:
        extra = f", alpha={self.alpha:g}" if self.kind == "oblique" else ""
        return f"{self.kind}(delta={self.delta:g}{extra})"
