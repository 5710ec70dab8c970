"""Square norms, the spectral bound and the total energy of fractional splash pulses.

All values include the azimuthal factor 2*pi: the spatial norm is
2*pi * int rho drho int dz |f|^2 and its spectral counterpart is
2*pi * pi * int e^(2 a1 k) E1(2 a1 k) |F_nu(k)|^2 dk.
"""

import dataclasses
import functools
import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import integrate, special

from splash_pulses.calculus import StencilConfig, partial
from splash_pulses.constants import defaults
from splash_pulses.core import FieldPoint, PulseParams, ScalarField
from splash_pulses.errors import SplashError, StencilError
from splash_pulses.pulses import fractional
from splash_pulses.result import Result
from splash_pulses.types import PulseName
from splash_pulses.utils.logging import LogSection, get_logger

from .special import exp_integral_E1_scaled

logger = get_logger(__name__)

_NODES = 32
_BOXES = 4
"""domain doublings after the first box"""
_DIVERGENCE_RATIO = 0.97
"""ratio of successive box increments at or above which an energy integral is declared divergent;
convergent energy tails shrink at least twofold per doubling"""
_TINY = 1e-300
_LOG_HUGE = 700.0
_TAIL_CUTOFF = math.log(1e-12)

Integrand = Callable[[np.ndarray, float], np.ndarray]


@dataclasses.dataclass(frozen=True)
class QuadratureResult:
    """Outcome of a (possibly divergent) quadrature.

    Attributes:
        value: the integral, inf when divergent.
        abs_error: estimated absolute error.
        evaluations: integrand evaluations spent.
        converged: the adaptive rules met the requested tolerance.
        divergent: the integral does not exist.
        trace: partial values of the refinement, one line each.
    """

    value: float
    abs_error: float
    evaluations: int
    converged: bool
    divergent: bool = False
    trace: List[str] = dataclasses.field(default_factory=list)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        if self.divergent:
            out["value"] = None
        return out


@dataclasses.dataclass(frozen=True)
class SpectralBound:
    b_nu: QuadratureResult
    norm_spectral: QuadratureResult
    norm_spatial: Optional[QuadratureResult] = None

    @property
    def dominates(self) -> bool:
        return self.b_nu.divergent or self.b_nu.value >= self.norm_spectral.value


def _divergent(what: str, reason: str) -> QuadratureResult:
    logger.debug("%s diverges: %s", what, reason)
    return QuadratureResult(math.inf, math.inf, 0, True, True, [reason])


class _RadialRule:
    """Fixed Gauss-Legendre panels on (0, length), doubling in width from h0,
    optionally followed by the mapped tail rho = length/u, u in (0, 1)."""

    def __init__(self, h0: float, length: float, tail: bool) -> None:
        edges = [0.0]
        width = h0
        while edges[-1] + width < length:
            edges.append(edges[-1] + width)
            width *= 2.0
        edges.append(length)
        self.rules = [self._build(np.asarray(edges), length, tail, n) for n in (_NODES, _NODES // 2)]

    @staticmethod
    def _build(edges: np.ndarray, length: float, tail: bool, n: int) -> Tuple[np.ndarray, np.ndarray]:
        x, w = np.polynomial.legendre.leggauss(n)
        lo, hi = edges[:-1, None], edges[1:, None]
        nodes = (0.5 * (hi - lo) * x + 0.5 * (hi + lo)).ravel()
        weights = (0.5 * (hi - lo) * w).ravel()
        if tail:
            u = 0.5 * (x + 1.0)
            nodes = np.concatenate([nodes, length / u])
            weights = np.concatenate([weights, 0.5 * w * length / u**2])
        return nodes, weights

    @property
    def size(self) -> int:
        return sum(nodes.size for nodes, _ in self.rules)

    def integrate(self, g: Integrand, z: float) -> Tuple[float, float]:
        (fine_x, fine_w), (coarse_x, coarse_w) = self.rules
        fine = float(np.dot(fine_w, g(fine_x, z)))
        coarse = float(np.dot(coarse_w, g(coarse_x, z)))
        return fine, abs(fine - coarse)


class _SpatialQuadrature:
    """2*pi * int_0^inf drho int dz g(rho, z) with a domain-doubling divergence test.

    Used for energies, whose densities carry derivatives and decay fast enough
    for fixed radial rules.
    """

    def __init__(self, g: Integrand, ct: float, scales: List[float], reach: float, tol: float) -> None:
        self.g = g
        self.ct = ct
        self.h0 = 0.25 * min(s for s in scales if s > 0)
        self.first_box = 4.0 * reach + 1.5 * abs(ct)
        self.tol = tol
        self.evaluations = 0
        self.inner_error = 0.0
        self.trace: List[str] = []
        self.converged = True

    def _outer(self, rule: _RadialRule, lo: float, hi: float) -> Tuple[float, float]:
        def along(z: float) -> float:
            value, err = rule.integrate(self.g, z)
            self.evaluations += rule.size
            self.inner_error = max(self.inner_error, err)
            return value

        finite = [p for p in (-abs(self.ct), 0.0, abs(self.ct)) if lo < p < hi]
        points = finite if math.isfinite(lo) and math.isfinite(hi) and finite else None
        out = integrate.quad(along, lo, hi, points=points, epsabs=0.0, epsrel=self.tol, limit=200, full_output=1)
        if len(out) > 3:
            self.converged = False
            self.trace.append(f"z in ({lo:g}, {hi:g}): {out[3].strip()}")
            logger.warning("quadrature over z in (%g, %g) did not converge", lo, hi)
        return out[0], out[1]

    def boxes(self) -> List[float]:
        sums = []
        for j in range(_BOXES + 1):
            length = self.first_box * 2**j
            rule = _RadialRule(self.h0, length, tail=False)
            value = 2.0 * math.pi * self._outer(rule, -length, length)[0]
            sums.append(value)
            self.trace.append(f"box L={length:.6g}: {value:.10g}")
            logger.trace(self.trace[-1])
        return sums

    def run(self, what: str) -> QuadratureResult:
        with LogSection(f"{what} quadrature", logger_name=__name__):
            sums = self.boxes()
            increments = np.diff(sums)
            if increments[-2] > 0 and increments[-1] >= _DIVERGENCE_RATIO * increments[-2]:
                reason = f"box increments {increments[-2]:.4g} -> {increments[-1]:.4g} do not decay"
                logger.debug("%s diverges: %s", what, reason)
                return QuadratureResult(math.inf, math.inf, self.evaluations, True, True, self.trace)

            length = self.first_box * 2**_BOXES
            rule = _RadialRule(self.h0, length, tail=True)
            value = error = 0.0
            for lo, hi in ((-math.inf, -length), (-length, length), (length, math.inf)):
                part, part_error = self._outer(rule, lo, hi)
                value += part
                error += part_error
        total = 2.0 * math.pi * value
        # the mapped tail is cross-checked against a geometric extrapolation of the boxes
        ratio = increments[-1] / increments[-2] if increments[-2] != 0 else 0.0
        extrapolated = sums[-1] + (increments[-1] * ratio / (1.0 - ratio) if 0.0 < ratio < 1.0 else 0.0)
        truncation = abs(total - extrapolated)
        abs_error = 2.0 * math.pi * (error + 2.0 * length * self.inner_error) + truncation
        self.trace.append(
            f"infinite domain: {total:.10g} (box extrapolation {extrapolated:.10g},"
            f" largest radial rule error {self.inner_error:.2g})"
        )
        logger.debug("%s = %.10g +- %.2g (%d evaluations)", what, total, abs_error, self.evaluations)
        return QuadratureResult(total, abs_error, self.evaluations, self.converged, False, self.trace)


def _nu(params: PulseParams, nu: Optional[float]) -> float:
    return params.nu if nu is None else nu


def _radial_integral(beta: np.ndarray, delta: np.ndarray, a: float) -> np.ndarray:
    """int_beta^inf (x^2 + delta^2)^-a dx for a > 1/2, elementwise.

    The hypergeometric series serves 0 <= delta < beta, the regularized
    incomplete beta function everything else.
    """
    beta, delta = np.broadcast_arrays(np.asarray(beta, dtype=float), np.asarray(delta, dtype=float))
    out = np.empty(beta.shape)
    series = (beta > 0) & (delta < beta)
    b = beta[series]
    ratio = delta[series] / b
    out[series] = b ** (1.0 - 2.0 * a) / (2.0 * a - 1.0) * special.hyp2f1(a, a - 0.5, a + 0.5, -ratio * ratio)

    b, d = beta[~series], delta[~series]
    whole = special.beta(a - 0.5, 0.5)
    # int_|y0|^inf (1 + y^2)^-a dy with y0 = beta/delta
    upper = 0.5 * whole * special.betainc(a - 0.5, 0.5, d * d / (b * b + d * d))
    out[~series] = d ** (1.0 - 2.0 * a) * np.where(b >= 0, upper, whole - upper)
    return out


def rho_integrated_density(z: np.ndarray, ct: float, params: PulseParams, nu: Optional[float] = None) -> np.ndarray:
    """int_0^inf rho |f|^2 drho along z, in closed form.

    |f|^2 = |w|^-2 |b0 + rho^2/w|^-2(nu+1) with w = a1 + i(z-ct) and
    b0 = a2 - i(z+ct). With rho^2 = u|w| the bracket becomes
    (u + beta)^2 + delta^2 where beta = Re(b0 w)/|w| and delta = |Im(b0 w)|/|w|.
    """
    a = _nu(params, nu) + 1.0
    z = np.asarray(z, dtype=float)
    w = params.a1 + 1j * (z - ct)
    b0w = (params.a2 - 1j * (z + ct)) * w
    modulus = np.abs(w)
    return _radial_integral(b0w.real / modulus, np.abs(b0w.imag) / modulus, a) / (2.0 * modulus)


def norm_spatial(
    params: PulseParams, nu: Optional[float] = None, t: float = 0.0, tol: float = defaults.TOL
) -> Result[QuadratureResult]:
    """2*pi * int rho drho int dz |f|^2 at time t; divergence is flagged, not raised.

    The rho integral is closed form and the z integrand decays like
    |z|^-(2nu+2), so the norm exists for nu > -1/2 only. Beyond |z| = Z the
    substitution |z| = Z s^(-1/(2nu+1)) maps each tail onto s in (0, 1)
    with a bounded integrand.
    """
    nu = _nu(params, nu)
    if nu <= -1:
        return Result(error=SplashError.invalid_argument(f"nu must exceed -1, got {nu}"))
    what = f"spatial norm (nu={nu:g}, t={t:g})"
    if 2.0 * nu + 1.0 <= 0:
        return Result(_divergent(what, f"the rho-integrated density decays like |z|^{-(2.0 * nu + 2.0):g}"))
    ct = params.c * t
    power = 1.0 / (2.0 * nu + 1.0)
    reach = 4.0 * (params.a1 + params.a2) + 2.0 * abs(ct)
    limit_value = 2.0 * math.pi * power * reach ** (-2.0 * nu - 1.0) / (2.0 * (2.0 * nu + 1.0))

    def inner(z: float) -> float:
        return 2.0 * math.pi * float(rho_integrated_density(np.array([z]), ct, params, nu)[0])

    def tail(s: float, sign: float) -> float:
        # below Z/|z| = 1e-12 the integrand equals its s -> 0 limit
        if s <= 0.0 or power * math.log(s) < _TAIL_CUTOFF:
            return limit_value
        return inner(sign * reach * s**-power) * power * reach * s ** (-power - 1.0)

    pieces = [
        (f"|z| < {reach:g}", inner, -reach, reach, [p for p in (-ct, 0.0, ct) if -reach < p < reach]),
        (f"z > {reach:g}", functools.partial(tail, sign=1.0), 0.0, 1.0, []),
        (f"z < {-reach:g}", functools.partial(tail, sign=-1.0), 0.0, 1.0, []),
    ]
    value = error = 0.0
    evaluations = 0
    converged = True
    trace: List[str] = []
    with LogSection(f"{what} quadrature", logger_name=__name__):
        for label, func, lo, hi, points in pieces:
            out = integrate.quad(func, lo, hi, points=points or None, epsabs=0.0, epsrel=tol, limit=200, full_output=1)
            value += out[0]
            error += out[1]
            evaluations += out[2]["neval"]
            trace.append(f"{label}: {out[0]:.12g} +- {out[1]:.2g}")
            logger.trace(trace[-1])
            if len(out) > 3:
                converged = False
                trace.append(out[3].strip())
                logger.warning("%s: quadrature over %s did not converge", what, label)
    logger.debug("%s = %.10g +- %.2g (%d evaluations)", what, value, error, evaluations)
    return Result(QuadratureResult(value, error, evaluations, converged, False, trace))


def _spectral_quad(
    integrand: Callable[[np.ndarray], np.ndarray], nu: float, params: PulseParams, tol: float, what: str
) -> QuadratureResult:
    # k = s^(1/(2nu+1)) absorbs k^(2nu): k^(2nu) dk = ds / (2nu+1)
    power = 1.0 / (2.0 * nu + 1.0)
    knee = (1.0 / params.a2) ** (2.0 * nu + 1.0)

    def in_s(s: float) -> float:
        exponent = power * math.log(s) if s > 0 else -math.inf
        if exponent > _LOG_HUGE:
            return 0.0
        k = max(math.exp(exponent), _TINY)
        return float(integrand(np.asarray(k))) * power

    value = error = 0.0
    evaluations = 0
    trace: List[str] = []
    converged = True
    for lo, hi in ((0.0, knee), (knee, math.inf)):
        out = integrate.quad(in_s, lo, hi, epsabs=0.0, epsrel=tol, limit=200, full_output=1)
        value += out[0]
        error += out[1]
        evaluations += out[2]["neval"]
        trace.append(f"s in ({lo:g}, {hi:g}): {out[0]:.12g} +- {out[1]:.2g}")
        if len(out) > 3:
            converged = False
            trace.append(out[3].strip())
            logger.warning("%s: quadrature over s in (%g, %g) did not converge", what, lo, hi)
    logger.debug("%s = %.10g +- %.2g", what, 2.0 * math.pi * value, 2.0 * math.pi * error)
    return QuadratureResult(2.0 * math.pi * value, 2.0 * math.pi * error, evaluations, converged, False, trace)


def norm_spectral(params: PulseParams, nu: Optional[float] = None, tol: float = defaults.TOL) -> Result[QuadratureResult]:
    """2*pi * pi * int e^(2 a1 k) E1(2 a1 k) |F_nu(k)|^2 dk."""
    nu = _nu(params, nu)
    if nu <= -1:
        return Result(error=SplashError.invalid_argument(f"nu must exceed -1, got {nu}"))
    if 2.0 * nu <= -1.0:
        return Result(_divergent("spectral norm", f"k^{2 * nu:g} is not integrable at k = 0"))
    norm = math.pi / special.gamma(nu + 1.0) ** 2

    def integrand(k: np.ndarray) -> np.ndarray:
        return norm * exp_integral_E1_scaled(2.0 * params.a1 * k) * np.exp(-2.0 * params.a2 * k)

    return Result(_spectral_quad(integrand, nu, params, tol, f"spectral norm (nu={nu:g})"))


def bound_B_nu(params: PulseParams, nu: Optional[float] = None, tol: float = defaults.TOL) -> Result[QuadratureResult]:
    """2*pi * int ln(1 + 1/(2 a1 k)) pi/Gamma(nu+1)^2 k^(2nu) e^(-2 a2 k) dk.

    e^x E1(x) < ln(1 + 1/x) makes this an upper bound of the spectral norm.
    """
    nu = _nu(params, nu)
    if nu <= -1:
        return Result(error=SplashError.invalid_argument(f"nu must exceed -1, got {nu}"))
    if 2.0 * nu <= -1.0:
        return Result(_divergent("bound", f"k^{2 * nu:g} is not integrable at k = 0"))
    norm = math.pi / special.gamma(nu + 1.0) ** 2

    def integrand(k: np.ndarray) -> np.ndarray:
        return norm * np.log1p(1.0 / (2.0 * params.a1 * k)) * np.exp(-2.0 * params.a2 * k)

    return Result(_spectral_quad(integrand, nu, params, tol, f"bound B (nu={nu:g})"))


def spectral_bound(params: PulseParams, nu: Optional[float] = None, tol: float = defaults.TOL) -> Result[SpectralBound]:
    return bound_B_nu(params, nu, tol).and_then(
        lambda bound: norm_spectral(params, nu, tol).map(lambda spectral: SpectralBound(bound, spectral))
    )


def total_energy_scalar(
    params: PulseParams,
    nu: Optional[float] = None,
    t: float = 0.0,
    tol: float = defaults.TOL,
    pulse: PulseName = "f",
    cfg: Optional[StencilConfig] = None,
) -> Result[QuadratureResult]:
    """2*pi * int rho drho int dz w with w = |df/dct|^2/2 + |grad f|^2/2.

    Derivatives come from the stencil engine with a step tied to the pulse
    widths, not to the coordinates, so the result does not depend on t
    through the discretization.
    """
    from splash_pulses.pulses import pulse_field

    nu = _nu(params, nu)
    if pulse == "f":
        if nu <= -1:
            return Result(error=SplashError.invalid_argument(f"nu must exceed -1, got {nu}"))
        field: ScalarField = functools.partial(fractional.f, params=params, nu=nu)
        scales = [params.a1, math.sqrt(params.a1 * params.a2)]
        reach = params.a1 + params.a2
    else:
        bound = pulse_field(pulse, params)
        if bound.is_err():
            return Result(error=bound.error)
        field = bound.value
        scales = [params.cts, params.zs]
        reach = params.cts + params.zs
    cfg = cfg or StencilConfig(scale=min(s for s in scales if s > 0))
    ct = params.c * t

    def g(rho: np.ndarray, z: float) -> np.ndarray:
        p = FieldPoint(rho, z, ct)
        ft = partial(field, p, "ct", 1, cfg)
        fr = partial(field, p, "rho", 1, cfg)
        fz = partial(field, p, "z", 1, cfg)
        return rho * 0.5 * (np.abs(ft) ** 2 + np.abs(fr) ** 2 + np.abs(fz) ** 2)

    quad = _SpatialQuadrature(g, ct, scales, reach, tol)
    try:
        return Result(quad.run(f"{pulse} energy (t={t:g})"))
    except StencilError as ex:
        return Result(error=ex.error)
