"""Spherical splash pulse psi, its primitive Psi, and their expanding/converging splits."""

from typing import Tuple

import numpy as np

from splash_pulses.core import FieldPoint, PulseParams
from splash_pulses.errors import SplashError
from splash_pulses.result import Result

_SERIES_RADIUS = 1e-4
"""below this fraction of |ct + i*c*ts| the primitive is taken from its Taylor series"""


def complex_time(ct: np.ndarray, params: PulseParams) -> np.ndarray:
    return ct + 1j * params.cts


def psi(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    a = complex_time(ct, params)
    r = np.hypot(rho, z)
    return 1.0 / ((a - r) * (a + r))


def psi_plus(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    a = complex_time(ct, params)
    r = np.hypot(rho, z)
    return 1.0 / (2.0 * r * (a - r))


def psi_minus(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    a = complex_time(ct, params)
    r = np.hypot(rho, z)
    return 1.0 / (2.0 * r * (a + r))


def primitive(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    """Psi = (1/2cR) Log[(a-R)/(a+R)] with a = ct + i*c*ts.

    The ratio always lies in the upper half plane, where the principal Log
    equals -2*artanh(R/a); the latter keeps full precision for R << |a|.
    """
    a = complex_time(np.asarray(ct, dtype=float), params)
    r = np.hypot(rho, z)
    c = params.c
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = -np.arctanh(r / a) / (c * r)
    x2 = (r / a) ** 2
    series = -(1.0 + x2 / 3.0 + x2 * x2 / 5.0) / (c * a)
    return np.where(r < _SERIES_RADIUS * np.abs(a), series, closed)


def primitive_plus(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    a = complex_time(ct, params)
    r = np.hypot(rho, z)
    return np.log(a - r) / (2.0 * params.c * r)


def primitive_minus(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    a = complex_time(ct, params)
    r = np.hypot(rho, z)
    return np.log(a + r) / (2.0 * params.c * r)


def splash_psi(p: FieldPoint, params: PulseParams) -> np.ndarray:
    return psi(p.rho, p.z, p.ct, params)


def splash_split(p: FieldPoint, params: PulseParams) -> Result[Tuple[np.ndarray, np.ndarray]]:
    """Expanding (psi+) and converging (psi-) parts with psi+ - psi- = psi."""
    if np.any(p.R == 0):
        return Result(error=SplashError.singular_point("the split is undefined at R = 0"))
    return Result((psi_plus(p.rho, p.z, p.ct, params), psi_minus(p.rho, p.z, p.ct, params)))


def splash_primitive(p: FieldPoint, params: PulseParams) -> np.ndarray:
    """Time antiderivative of psi; the removable point R = 0 gives -1/(c(ct + i*c*ts))."""
    return primitive(p.rho, p.z, p.ct, params)


def primitive_split(p: FieldPoint, params: PulseParams) -> Result[Tuple[np.ndarray, np.ndarray]]:
    """Psi+- = (1/2cR) Log(ct -+ R + i*c*ts).

    Both arguments lie in the open upper half plane, so the principal logs
    differ by less than pi and Psi+ - Psi- reproduces Psi without a 2*pi*i
    correction. Each part carries its own additive constant in time.
    """
    if np.any(p.R == 0):
        return Result(error=SplashError.singular_point("the split is undefined at R = 0"))
    return Result(
        (primitive_plus(p.rho, p.z, p.ct, params), primitive_minus(p.rho, p.z, p.ct, params))
    )
