"""Far-zone limits of ct*field along rays, decay-law fits and the divergence coefficient."""

import dataclasses
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from splash_pulses.constants import defaults
from splash_pulses.core import PulseParams, RaySpec, ScalarField
from splash_pulses.errors import SplashError
from splash_pulses.result import Result
from splash_pulses.types import Classification, Part
from splash_pulses.utils.logging import LogSection, get_logger

logger = get_logger(__name__)

FIT_QUALITY_LIMIT = 1e-3
"""largest relative rms residual accepted for the selected model"""

DECAY_QUALITY_LIMIT = 0.05
"""largest rms residual of ln|ct*field| accepted by decay_fit"""

_GROWTH_BOUNDS = (0.02, 1.0)
_DECAY_BOUNDS = (-2.0, -0.02)
_EXPONENT_GRID = 100
_WINDOW_STEP = 4
_MIN_WINDOW_SAMPLES = 8
_MIN_WINDOW_DECADES = 3.0

# only these two candidate models cannot be reduced to one another
_NON_NESTED = frozenset(("log-divergent", "power-divergent"))


@dataclasses.dataclass(frozen=True, eq=False)
class ModelFit:
    model: Classification
    columns: Tuple[str, ...]
    coefficients: np.ndarray
    rms: float
    """root-mean-square residual relative to the largest sample magnitude"""
    aic: float
    exponent: Optional[float] = None

    def coefficient(self, column: str) -> complex:
        return complex(self.coefficients[self.columns.index(column)])


@dataclasses.dataclass(frozen=True, eq=False)
class LimitResult:
    """Classification of ct*field along a ray.

    Exactly one group of attributes is meaningful per classification:
    finite/zero -> limit; log-divergent -> slope (coefficient of ln ct);
    power-divergent -> exponent and coefficient. `error` is the
    extrapolation uncertainty of that leading parameter.
    """

    ray: RaySpec
    part: Part
    ct: np.ndarray
    samples: np.ndarray
    classification: Classification
    residual: float
    error: float = 0.0
    limit: Optional[complex] = None
    slope: Optional[complex] = None
    exponent: Optional[float] = None
    coefficient: Optional[complex] = None
    fits: Dict[str, ModelFit] = dataclasses.field(default_factory=dict)
    runner_up: Optional[str] = None

    @property
    def goodness(self) -> float:
        return 1.0 - self.residual

    @property
    def divergent(self) -> bool:
        return self.classification in ("log-divergent", "power-divergent")

    def describe(self) -> str:
        if self.classification in ("finite", "zero"):
            return f"{self.classification} (L={_fmt(self.limit)} +- {self.error:.2g})"
        if self.classification == "log-divergent":
            return f"log-divergent (slope={_fmt(self.slope)})"
        if self.classification == "power-divergent":
            return f"power-divergent (exponent={self.exponent:.4f}, coefficient={_fmt(self.coefficient)})"
        return f"ambiguous ({', '.join(self.candidates())})"

    def candidates(self) -> List[str]:
        names = [name for name in (self.classification, self.runner_up) if name]
        if self.classification == "ambiguous":
            names = sorted(_NON_NESTED)
        return names

    def to_dict(self) -> dict:
        out: dict = {
            "ray": self.ray.describe(),
            "part": self.part,
            "classification": self.classification,
            "residual": self.residual,
            "error": self.error,
        }
        for key in ("limit", "slope", "coefficient"):
            value = getattr(self, key)
            if value is not None:
                out[key] = {"re": value.real, "im": value.imag}
        if self.exponent is not None:
            out["exponent"] = self.exponent
        if self.classification == "ambiguous":
            out["fits"] = {
                name: {"rms": fit.rms, "aic": fit.aic, "exponent": fit.exponent}
                for name, fit in self.fits.items()
                if name in _NON_NESTED
            }
        return out


def _fmt(value: Optional[complex]) -> str:
    if value is None:
        return "-"
    return f"{value.real:.6g}{value.imag:+.6g}i"


def _take(values: np.ndarray, part: Part) -> np.ndarray:
    if part == "re":
        return values.real.astype(complex)
    if part == "im":
        return values.imag.astype(complex)
    return values


def sample_ray(field: ScalarField, ray: RaySpec, part: Part = "complex") -> Result[Tuple[np.ndarray, np.ndarray]]:
    """Returns (s, ct*field) with s the ray parameter, |ct| = s."""
    rho, z, ct = ray.coordinates()
    with np.errstate(all="ignore"):
        values = np.asarray(field(rho, z, ct), dtype=complex) * ray.weight()
    bad = ~np.isfinite(values)
    if np.any(bad):
        where = ray.ct_sequence[np.argmax(bad)]
        return Result(error=SplashError.singular_point(f"{ray.describe()} at ct={where:g}"))
    return Result((ray.ct_sequence, _take(values, part)))


def _columns(model: str, s: np.ndarray, corrections: int, exponent: Optional[float]) -> Dict[str, np.ndarray]:
    x = s**-0.5
    cols: Dict[str, np.ndarray] = {}
    if exponent is not None:
        cols["s^p"] = s**exponent
    if model in ("finite", "log-divergent", "power-divergent"):
        cols["1"] = np.ones_like(s)
    if model == "log-divergent":
        cols["ln s"] = np.log(s)
    if model != "power-divergent":
        cols["ln s/s"] = np.log(s) / s
    for m in range(1, corrections + 1):
        cols[f"s^-{m}/2"] = x**m
    return cols


def _lstsq(cols: Dict[str, np.ndarray], y: np.ndarray) -> Tuple[np.ndarray, float]:
    a = np.column_stack(list(cols.values()))
    norms = np.max(np.abs(a), axis=0)
    norms[norms == 0] = 1.0
    coef, *_ = np.linalg.lstsq((a / norms).astype(complex), y, rcond=None)
    coef = coef / norms
    rss = float(np.sum(np.abs(a @ coef - y) ** 2))
    return coef, rss


def _fit(
    model: Classification,
    s: np.ndarray,
    y: np.ndarray,
    scale: float,
    corrections: int,
    rtol: float,
    exponent: Optional[float] = None,
) -> ModelFit:
    cols = _columns(model, s, corrections, exponent)
    coef, rss = _lstsq(cols, y)
    n = s.size
    rms = math.sqrt(rss / n) / scale
    k = len(cols) + (1 if exponent is not None else 0)
    aic = n * math.log(max(rms, rtol) ** 2) + 2 * k
    return ModelFit(model, tuple(cols), coef, rms, aic, exponent)


def _fit_exponent(
    model: Classification,
    bounds: Tuple[float, float],
    s: np.ndarray,
    y: np.ndarray,
    scale: float,
    corrections: int,
    rtol: float,
) -> ModelFit:
    """Fits b*s^p + the model's other columns, p from a grid then a bounded search.

    A single power column keeps p identifiable: any companion s^(p-m) column
    would let the search trade p for p + m.
    """

    def rss(p: float) -> float:
        return _lstsq(_columns(model, s, corrections, p), y)[1]

    grid = np.linspace(*bounds, _EXPONENT_GRID)
    values = [rss(p) for p in grid]
    i = int(np.argmin(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    best = optimize.minimize_scalar(rss, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    p = float(best.x) if best.fun <= values[i] else float(grid[i])
    return _fit(model, s, y, scale, corrections, rtol, exponent=p)


def classify_samples(
    s: np.ndarray,
    y: np.ndarray,
    rtol: float = defaults.PROBE_RTOL,
    corrections: int = 4,
    margin: float = defaults.AMBIGUITY_MARGIN,
) -> Tuple[Classification, Dict[str, ModelFit], Optional[str]]:
    """Fits the candidate models and picks one by a penalized residual.

    The score is n*ln(max(rms, rtol)^2) + 2k. A log-divergent winner and a
    power-divergent runner-up (or the reverse) closer than a likelihood
    factor `margin` make the result ambiguous.
    """
    scale = float(np.max(np.abs(y)))
    if scale == 0.0:
        return "zero", {}, None
    fits: Dict[str, ModelFit] = {
        name: _fit(name, s, y, scale, corrections, rtol)  # type: ignore
        for name in ("finite", "log-divergent")
    }
    # a vanishing tail may decay with any power, not only half-integer ones
    fits["zero"] = min(
        _fit("zero", s, y, scale, corrections, rtol),
        _fit_exponent("zero", _DECAY_BOUNDS, s, y, scale, corrections, rtol),
        key=lambda fit: fit.aic,
    )
    fits["power-divergent"] = _fit_exponent("power-divergent", _GROWTH_BOUNDS, s, y, scale, corrections, rtol)
    ranked = sorted(fits.values(), key=lambda fit: fit.aic)
    best, second = ranked[0], ranked[1]
    if {best.model, second.model} == _NON_NESTED and second.aic - best.aic < 2 * math.log(margin):
        return "ambiguous", fits, second.model
    return best.model, fits, second.model


def _leading(fit: ModelFit) -> Optional[complex]:
    column = {
        "finite": "1",
        "log-divergent": "ln s",
        "power-divergent": "s^p",
    }.get(fit.model)
    return None if column is None else fit.coefficient(column)


_Outcome = Tuple[Classification, Dict[str, ModelFit], Optional[str]]


def _tail_starts(s: np.ndarray) -> List[int]:
    """First sample of each tail window; every later window drops _WINDOW_STEP more near samples."""
    starts = [0]
    for start in range(_WINDOW_STEP, s.size, _WINDOW_STEP):
        if s.size - start < _MIN_WINDOW_SAMPLES or math.log10(s[-1] / s[start]) < _MIN_WINDOW_DECADES:
            break
        starts.append(start)
    return starts


def _decisive(outcome: _Outcome, rtol: float) -> bool:
    classification, fits, _ = outcome
    if classification == "ambiguous":
        return False
    return not fits or fits[classification].rms <= max(FIT_QUALITY_LIMIT, rtol)


def limit_probe(
    field: ScalarField,
    ray: RaySpec,
    part: Part = "complex",
    rtol: float = defaults.PROBE_RTOL,
    corrections: int = 4,
    margin: float = defaults.AMBIGUITY_MARGIN,
) -> Result[LimitResult]:
    """Evaluates ct*field along the ray and classifies its behavior as ct grows.

    Candidates, each with corrections in powers of ct^(-1/2): a vanishing
    tail, a constant L, a + b*ln(ct), and b*ct^p + a with p fitted on
    [0.02, 1]. An ambiguous log/power decision is returned as an
    "ambiguous" classification carrying both fits.

    Fields approaching their limit slowly are classified on tail windows:
    when the whole ray is ambiguous or badly fitted, the near samples are
    dropped until the fit is decisive, and a divergent verdict is replaced
    by a finite or vanishing one that the next tail window decides.

    Args:
        field: vectorized field(rho, z, ct).
        ray: the path and probe times.
        part: probe the complex value, its real part or its imaginary part.
        rtol: residual floor relative to the sample scale; set it to the
            evaluation accuracy of the field.
        corrections: number of ct^(-m/2) correction terms.
        margin: likelihood factor below which two non-nested fits tie.
    """
    sampled = sample_ray(field, ray, part)
    if sampled.is_err():
        return Result(error=sampled.error)
    s_all, y_all = sampled.value
    starts = _tail_starts(s_all)
    outcomes: Dict[int, _Outcome] = {}

    def outcome(i: int) -> _Outcome:
        if i not in outcomes:
            start = starts[i]
            outcomes[i] = classify_samples(s_all[start:], y_all[start:], rtol, corrections, margin)
        return outcomes[i]

    with LogSection(f"limit probe {ray.describe()} [{part}]", logger_name=__name__):
        window = 0
        for i in range(len(starts)):
            if not _decisive(outcome(i), rtol):
                continue
            if outcome(i)[0] in _NON_NESTED and i + 1 < len(starts):
                following = outcome(i + 1)
                if _decisive(following, rtol) and following[0] not in _NON_NESTED:
                    continue
            window = i
            break

    start = starts[window]
    s, y = s_all[start:], y_all[start:]
    classification, fits, runner_up = outcome(window)
    if start:
        logger.debug("%s [%s]: classified on the tail window ct >= %g", ray.describe(), part, s[0])

    if classification == "zero" and not fits:
        return Result(LimitResult(ray, part, s, y, "zero", 0.0, limit=0j))
    if classification == "ambiguous":
        best = min(fits.values(), key=lambda fit: fit.aic)
        logger.debug("ambiguous limit on %s: %s vs %s", ray.describe(), best.model, runner_up)
        return Result(LimitResult(ray, part, s, y, "ambiguous", best.rms, fits=fits, runner_up=runner_up))

    chosen = fits[classification]
    if chosen.rms > max(FIT_QUALITY_LIMIT, rtol):
        return Result(
            error=SplashError.fit_quality(
                f"{classification} model leaves relative residual {chosen.rms:.3g} on {ray.describe()}"
            )
        )

    # extrapolation error: change of the leading parameter when one correction is dropped
    reduced = _fit(classification, s, y, 1.0, max(corrections - 1, 0), rtol, chosen.exponent)
    leading, reduced_leading = _leading(chosen), _leading(reduced)
    scale = float(np.max(np.abs(y)))
    error = rtol * scale
    if leading is not None and reduced_leading is not None:
        error += abs(leading - reduced_leading)

    kwargs: dict = {}
    if classification == "finite":
        kwargs["limit"] = leading
    elif classification == "zero":
        kwargs["limit"] = 0j
        kwargs["exponent"] = chosen.exponent
    elif classification == "log-divergent":
        kwargs["slope"] = leading
    else:
        kwargs["exponent"] = chosen.exponent
        kwargs["coefficient"] = leading
    result = LimitResult(
        ray, part, s, y, classification, chosen.rms, error, fits=fits, runner_up=runner_up, **kwargs
    )
    logger.debug("%s [%s]: %s", ray.describe(), part, result.describe())
    return Result(result)


def coefficient_C(a1: float, delta: float, nu: float = -0.25) -> complex:
    """Coefficient of the abnormal growth ct*f ~ C * ct^(-nu) on the ray z = ct + delta."""
    if not a1 > 0:
        raise ValueError(f"a1 must be positive, got {a1}")
    return 1.0 / (complex(-2j) ** (nu + 1.0) * complex(a1, delta))


def coefficient_C_parts(a1: float, delta: float, nu: float = -0.25) -> Tuple[float, float]:
    """Re C and Im C from the expanded real formulas.

    With theta = (nu+1)*pi/2 and D = 2^(nu+1) * (a1^2 + delta^2):
    Re C = (cos(theta)*a1 + sin(theta)*delta)/D, Im C = (sin(theta)*a1 - cos(theta)*delta)/D.
    """
    theta = (nu + 1.0) * math.pi / 2.0
    denom = 2.0 ** (nu + 1.0) * (a1 * a1 + delta * delta)
    re = (math.cos(theta) * a1 + math.sin(theta) * delta) / denom
    im = (math.sin(theta) * a1 - math.cos(theta) * delta) / denom
    return re, im


@dataclasses.dataclass(frozen=True, eq=False)
class DecayFit:
    ray: RaySpec
    slope: float
    amplitude: float
    rms_log_residual: float
    ct: np.ndarray
    magnitude: np.ndarray

    def to_dict(self) -> dict:
        return {
            "ray": self.ray.describe(),
            "slope": self.slope,
            "amplitude": self.amplitude,
            "rms_log_residual": self.rms_log_residual,
        }


def decay_fit(
    field: ScalarField,
    ray: RaySpec,
    window: Optional[Tuple[float, float]] = None,
    quality: float = DECAY_QUALITY_LIMIT,
) -> Result[DecayFit]:
    """Slope of ln|ct*field| against ln ct over the window (the whole ray by default)."""
    sampled = sample_ray(field, ray)
    if sampled.is_err():
        return Result(error=sampled.error)
    s, y = sampled.value
    lo, hi = window if window is not None else (s[0], s[-1])
    keep = (s >= lo) & (s <= hi)
    if np.count_nonzero(keep) < 3 or math.log10(s[keep][-1] / s[keep][0]) < 3:
        return Result(error=SplashError.invalid_argument("the decay window must span 3 decades"))
    s, mag = s[keep], np.abs(y[keep])
    if np.any(mag == 0):
        return Result(error=SplashError.fit_quality("ct*field vanishes inside the window"))

    slope, intercept = np.polyfit(np.log(s), np.log(mag), 1)
    residual = np.log(mag) - (slope * np.log(s) + intercept)
    rms = float(np.sqrt(np.mean(residual**2)))
    if rms > quality:
        return Result(error=SplashError.fit_quality(f"log-log residual {rms:.3g} exceeds {quality:g}"))
    return Result(DecayFit(ray, float(slope), float(np.exp(intercept)), rms, s, mag))


@dataclasses.dataclass(frozen=True, eq=False)
class ProfileSeries:
    """Axial profile of ct*field around z = ct with the C*ct^(-nu) overlay."""

    ct: float
    offsets: np.ndarray
    values: np.ndarray
    asymptote: np.ndarray


def peak_profile(
    field: ScalarField,
    cts: Sequence[float],
    offsets: np.ndarray,
    params: PulseParams,
    nu: Optional[float] = None,
) -> List[ProfileSeries]:
    nu = params.nu if nu is None else nu
    offsets = np.asarray(offsets, dtype=float)
    series = []
    for ct in cts:
        values = ct * np.asarray(field(np.zeros_like(offsets), ct + offsets, np.full_like(offsets, ct)))
        asymptote = np.array([coefficient_C(params.a1, d, nu) for d in offsets]) * ct ** (-nu)
        series.append(ProfileSeries(float(ct), offsets, values, asymptote))
    return series
