"""Fractional splash pulse, the focus wave mode and the spectral superposition linking them."""

import dataclasses
from typing import List, Optional

import numpy as np
from scipy import integrate, special

from splash_pulses.core import FieldPoint, PulseParams
from splash_pulses.errors import SplashError, SplashException
from splash_pulses.result import Result
from splash_pulses.utils.logging import LogSection, get_logger

logger = get_logger(__name__)


def _w(z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    return params.a1 + 1j * (z - ct)


def f(
    rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams, nu: Optional[float] = None
) -> np.ndarray:
    """f = w^-1 * [a2 - i(z+ct) + rho^2/w]^-(nu+1) with w = a1 + i(z-ct).

    Both w and the bracket have positive real part, so the principal power
    exp(-(nu+1) Log(.)) is continuous on the whole real domain.
    """
    nu = params.nu if nu is None else nu
    rho = np.asarray(rho, dtype=float)
    w = _w(np.asarray(z, dtype=float), np.asarray(ct, dtype=float), params)
    bracket = params.a2 - 1j * (z + ct) + rho * rho / w
    return np.exp(-(nu + 1.0) * np.log(bracket)) / w


def G(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams, k: float = 1.0) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    w = _w(np.asarray(z, dtype=float), np.asarray(ct, dtype=float), params)
    return np.exp(-k * rho * rho / w + 1j * k * (z + ct)) / w


def fractional_f(p: FieldPoint, params: PulseParams, nu: Optional[float] = None) -> np.ndarray:
    nu = params.nu if nu is None else nu
    if nu <= -1:
        raise SplashException(SplashError.invalid_argument(f"nu must exceed -1, got {nu}"))
    return f(p.rho, p.z, p.ct, params, nu)


def fwm_G(p: FieldPoint, params: PulseParams, k: float) -> np.ndarray:
    if not k > 0:
        raise SplashException(SplashError.invalid_argument(f"wavenumber must be positive, got {k}"))
    return G(p.rho, p.z, p.ct, params, k)


def spectrum_F(k: np.ndarray, params: PulseParams, nu: Optional[float] = None) -> np.ndarray:
    """F_nu(k) = k^nu exp(-a2 k) / Gamma(nu+1), k > 0."""
    nu = params.nu if nu is None else nu
    k = np.asarray(k, dtype=float)
    if np.any(k <= 0):
        raise SplashException(SplashError.invalid_argument("the spectrum is defined for k > 0 only"))
    return k**nu * np.exp(-params.a2 * k) / special.gamma(nu + 1.0)


@dataclasses.dataclass(frozen=True, eq=False)
class SynthesisResult:
    """Superposition values with per-point QUADPACK error estimates."""

    value: np.ndarray
    abs_error: np.ndarray
    evaluations: int
    converged: bool
    trace: List[str] = dataclasses.field(default_factory=list)


def _synthesize_point(
    rho: float, z: float, ct: float, params: PulseParams, nu: float, tol: float, limit: int
):
    # k = s^(1/(nu+1)) absorbs the k^nu endpoint singularity: k^nu dk = ds/(nu+1)
    power = 1.0 / (nu + 1.0)
    norm = special.gamma(nu + 2.0)

    def integrand(s: float) -> complex:
        k = s**power
        return complex(G(rho, z, ct, params, k) * np.exp(-params.a2 * k)) / norm

    parts = []
    for take in (np.real, np.imag):
        out = integrate.quad(
            lambda s, take=take: float(take(integrand(s))),
            0.0,
            np.inf,
            epsabs=0.0,
            epsrel=tol,
            limit=limit,
            full_output=1,
        )
        parts.append(out)
    return parts


def spectral_synthesize(
    p: FieldPoint,
    params: PulseParams,
    nu: Optional[float] = None,
    tol: float = 1e-10,
    limit: int = 200,
) -> Result[SynthesisResult]:
    """Integrates the focus-wave-mode superposition with spectrum F_nu over k in (0, inf).

    The result equals fractional_f with unit proportionality constant.
    """
    nu = params.nu if nu is None else nu
    if nu <= -1:
        return Result(error=SplashError.invalid_argument(f"nu must exceed -1, got {nu}"))
    if not tol > 0:
        return Result(error=SplashError.invalid_argument(f"tolerance must be positive, got {tol}"))

    rho, z, ct = np.broadcast_arrays(p.rho, p.z, p.ct)
    values = np.empty(rho.shape, dtype=complex)
    errors = np.empty(rho.shape, dtype=float)
    evaluations = 0
    trace: List[str] = []
    with LogSection(f"spectral synthesis at {rho.size} points", logger_name=__name__):
        for idx in np.ndindex(*rho.shape):
            re_out, im_out = _synthesize_point(
                float(rho[idx]), float(z[idx]), float(ct[idx]), params, nu, tol, limit
            )
            values[idx] = complex(re_out[0], im_out[0])
            errors[idx] = float(np.hypot(re_out[1], im_out[1]))
            evaluations += re_out[2]["neval"] + im_out[2]["neval"]
            trace.append(
                f"rho={rho[idx]:g} z={z[idx]:g} ct={ct[idx]:g}: "
                f"{values[idx]:.12g} +- {errors[idx]:.2g}"
            )
            logger.trace(trace[-1])
            # more than three outputs means QUADPACK attached a warning message
            for part, out in (("real", re_out), ("imaginary", im_out)):
                if len(out) > 3:
                    trace.append(f"{part} part: {out[3]}")
                    return Result(
                        error=SplashError.quadrature(
                            f"{part} part at rho={rho[idx]:g}, z={z[idx]:g}, ct={ct[idx]:g} "
                            f"after {evaluations} evaluations; trace: {' | '.join(trace)}"
                        )
                    )
    logger.debug("spectral synthesis used %d integrand evaluations", evaluations)
    return Result(SynthesisResult(values, errors, evaluations, True, trace))
