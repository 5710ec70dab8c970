"""Unidirectional pulse u and its primitive U.

Notation: a = ct + i*c*ts, z* = z - i*zs, ct* = -i*a,
g = sqrt(rho^2 - a^2), h = sqrt(rho^2 + z*^2), all principal.
"""

import dataclasses

import numpy as np

from splash_pulses.core import FieldPoint, PulseParams
from splash_pulses.utils.logging import get_logger

from .splash import _SERIES_RADIUS, complex_time

logger = get_logger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class AuxiliaryRoots:
    g: np.ndarray
    h: np.ndarray
    ctstar: np.ndarray
    zstar: np.ndarray
    a: np.ndarray

    @property
    def g_squared(self) -> np.ndarray:
        return self.g * self.g

    @property
    def h_squared(self) -> np.ndarray:
        return self.h * self.h


def roots(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> AuxiliaryRoots:
    rho = np.asarray(rho, dtype=float)
    a = complex_time(np.asarray(ct, dtype=float), params)
    zstar = np.asarray(z, dtype=float) - 1j * params.zs
    # products of sums keep g^2 accurate near the light cone rho = |ct|
    g = np.sqrt((rho - a) * (rho + a))
    h = np.sqrt(rho * rho + zstar * zstar)
    return AuxiliaryRoots(g=g, h=h, ctstar=-1j * a, zstar=zstar, a=a)


def auxiliary_roots(p: FieldPoint, params: PulseParams) -> AuxiliaryRoots:
    return roots(p.rho, p.z, p.ct, params)


def u(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    aux = roots(rho, z, ct, params)
    g = aux.g
    return 1.0 / (g * (1j * aux.zstar + g))


def _u2_ratio(rho: np.ndarray, aux: AuxiliaryRoots) -> np.ndarray:
    """Assembles [(ct*z* + gh)(z* - h)] / [(ct*z* - gh)(z* + h)] without cancellation.

    With P+- = ct*z* +- gh and Q+- = z* +- h the products obey
    P+ P- = -rho^2 (h^2 - a^2) and Q+ Q- = -rho^2, so the smaller factor of
    each pair is rebuilt from the larger one. Factors of comparable size
    are used as computed, which keeps the ratio exactly 1 when z* = 0.
    """
    a, h, zstar = aux.a, aux.h, aux.zstar
    gh = aux.g * h
    cz = aux.ctstar * zstar
    p_plus, p_minus = cz + gh, cz - gh
    q_plus, q_minus = zstar + h, zstar - h
    rho2 = rho * rho
    d = rho2 + (zstar - a) * (zstar + a)

    abs_pp, abs_pm = np.abs(p_plus), np.abs(p_minus)
    abs_qp, abs_qm = np.abs(q_plus), np.abs(q_minus)
    p_big = abs_pp >= abs_pm
    q_big = abs_qp >= abs_qm
    balanced = (np.minimum(abs_pp, abs_pm) >= 0.5 * np.maximum(abs_pp, abs_pm)) & (
        np.minimum(abs_qp, abs_qm) >= 0.5 * np.maximum(abs_qp, abs_qm)
    )

    rho4 = rho2 * rho2
    direct = (p_plus * q_minus) / (p_minus * q_plus)
    r_pp_qp = p_plus**2 / (d * q_plus**2)
    r_pp_qm = p_plus**2 * q_minus**2 / (rho4 * d)
    r_pm_qp = rho4 * d / (p_minus**2 * q_plus**2)
    r_pm_qm = d * q_minus**2 / p_minus**2
    rebuilt = np.where(
        p_big,
        np.where(q_big, r_pp_qp, r_pp_qm),
        np.where(q_big, r_pm_qp, r_pm_qm),
    )
    return np.where(balanced, direct, rebuilt)


def primitive_U(rho: np.ndarray, z: np.ndarray, ct: np.ndarray, params: PulseParams) -> np.ndarray:
    """U = (U1 + U2) / (2ch), principal logs of assembled ratios.

    U1 = Log[(a+h)/(a-h)] is evaluated as 2*artanh(h/a); the two agree on
    the whole domain as long as zs < c*ts, because then h/a never reaches
    the real axis outside [-1, 1]. U is singular on the ring h = 0
    (rho = zs, z = 0), where non-finite values are returned.
    """
    rho = np.asarray(rho, dtype=float)
    aux = roots(rho, z, ct, params)
    a, h = aux.a, aux.h
    c = params.c
    with np.errstate(divide="ignore", invalid="ignore"):
        u1_part = np.arctanh(h / a) / (c * h)
        x2 = (h / a) ** 2
        series = (1.0 + x2 / 3.0 + x2 * x2 / 5.0) / (c * a)
        u1_part = np.where(np.abs(h) < _SERIES_RADIUS * np.abs(a), series, u1_part)
        u2 = np.log(_u2_ratio(rho, aux))
        return u1_part + u2 / (2.0 * c * h)


def unidirectional_u(p: FieldPoint, params: PulseParams) -> np.ndarray:
    return u(p.rho, p.z, p.ct, params)


def unidirectional_primitive_U(p: FieldPoint, params: PulseParams) -> np.ndarray:
    return primitive_U(p.rho, p.z, p.ct, params)
