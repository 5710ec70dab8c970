"""Electromagnetic and acoustic fields derived from a scalar pulse.

The Hertz vector is Pi = m * f for a constant complex direction m. The
Riemann-Silberstein vector

    F = curl curl Pi + i d/dct curl Pi
      = grad(div Pi) - lap Pi + i d/dct (grad f x m)

satisfies curl F = i dF/dct and div F = 0 when f solves the wave equation.
Physical fields are E = sqrt(2/eps0) Re F and B = sqrt(2/eps0) Im F / c.
Acoustic observables use the velocity potential Re f: v = -grad Re f and
p = rho0 dRe f/dt.
"""

import dataclasses
import functools
import math
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from splash_pulses.calculus import (
    DEFAULT_STENCIL,
    CartesianField,
    Mask,
    ResidualReport,
    StencilConfig,
    cartesian_field,
    cartesian_partial,
    select_regular,
)
from splash_pulses.constants import defaults
from splash_pulses.core import FieldPoint, PulseParams, RaySpec, ScalarField
from splash_pulses.diagnostics.limits import LimitResult, limit_probe
from splash_pulses.errors import SplashError, SplashException, StencilError
from splash_pulses.pulses import fractional
from splash_pulses.result import Result
from splash_pulses.types import EM_COMPONENTS, EMComponent
from splash_pulses.utils.logging import LogSection, get_logger

logger = get_logger(__name__)

_AXES = ("x", "y", "z")


@dataclasses.dataclass(frozen=True)
class HertzConfig:
    """Direction of the Hertz vector and the unit system.

    Attributes:
        m: complex 3-vector, not zero.
        epsilon0: vacuum permittivity.
        c: speed of light.
    """

    m: Tuple[complex, complex, complex] = (1.0, 1.0, 0.0)
    epsilon0: float = defaults.EPSILON0
    c: float = 1.0

    def __post_init__(self) -> None:
        m = tuple(complex(v) for v in self.m)
        if len(m) != 3:
            raise SplashException(SplashError.invalid_argument("m must have 3 components"))
        object.__setattr__(self, "m", m)
        if not any(m):
            raise SplashException(SplashError.invalid_argument("the Hertz direction m must not vanish"))
        if not self.epsilon0 > 0 or not self.c > 0:
            raise SplashException(SplashError.invalid_argument("epsilon0 and c must be positive"))
        if m[0] == 0 and m[1] == 0:
            logger.warning("a longitudinal Hertz vector m = (0, 0, m_z) yields fields without abnormal decay")

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.m, dtype=complex)


@dataclasses.dataclass(frozen=True, eq=False)
class EMSample:
    F: np.ndarray
    E: np.ndarray
    B: np.ndarray


def riemann_silberstein(
    field: ScalarField, cfg: HertzConfig, stencil: StencilConfig = DEFAULT_STENCIL
) -> CartesianField:
    """F(x, y, z, ct) of shape (3, ...) built from second partials of the scalar field."""
    scalar = cartesian_field(field)
    m = cfg.vector

    def F(x: np.ndarray, y: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        p = FieldPoint.from_cartesian(x, y, z, ct)

        def d(*axes: str) -> np.ndarray:
            return cartesian_partial(scalar, p, axes, 1, stencil)

        hessian = [[None] * 3 for _ in range(3)]
        for i, a in enumerate(_AXES):
            for j in range(i, 3):
                hessian[i][j] = hessian[j][i] = d(a, _AXES[j])
        lap = hessian[0][0] + hessian[1][1] + hessian[2][2]
        gt = [d(a, "ct") for a in _AXES]
        curl = [gt[1] * m[2] - gt[2] * m[1], gt[2] * m[0] - gt[0] * m[2], gt[0] * m[1] - gt[1] * m[0]]
        return np.stack(
            [sum(m[j] * hessian[i][j] for j in range(3)) - m[i] * lap + 1j * curl[i] for i in range(3)]
        )

    return F


def _physical(F: np.ndarray, cfg: HertzConfig) -> EMSample:
    scale = math.sqrt(2.0 / cfg.epsilon0)
    return EMSample(F, scale * F.real, scale * F.imag / cfg.c)


def hertz_to_rs(
    field: ScalarField, cfg: HertzConfig, p: FieldPoint, stencil: StencilConfig = DEFAULT_STENCIL
) -> Result[EMSample]:
    try:
        F = riemann_silberstein(field, cfg, stencil)(p.x, p.y, p.z, p.ct)
    except StencilError as ex:
        return Result(error=ex.error)
    return Result(_physical(F, cfg))


def rs_from_fields(E: np.ndarray, B: np.ndarray, epsilon0: float = defaults.EPSILON0, c: float = 1.0) -> np.ndarray:
    """Inverse of the E, B extraction: F = sqrt(eps0/2) (E + i c B)."""
    return math.sqrt(epsilon0 / 2.0) * (np.asarray(E) + 1j * c * np.asarray(B))


def rs_residual(
    F: CartesianField,
    points: FieldPoint,
    stencil: StencilConfig = DEFAULT_STENCIL,
    regular: Optional[Mask] = None,
) -> Result[ResidualReport]:
    """Relative residual of curl F = i dF/dct together with div F = 0."""
    selected = select_regular(points, regular)
    if selected.is_err():
        return Result(error=selected.error)
    accepted, rejected = selected.value

    try:
        dF = {axis: cartesian_partial(F, accepted, axis, 1, stencil) for axis in (*_AXES, "ct")}
    except StencilError as ex:
        return Result(error=ex.error)

    curl = np.stack(
        [
            dF["y"][2] - dF["z"][1],
            dF["z"][0] - dF["x"][2],
            dF["x"][1] - dF["y"][0],
        ]
    )
    div = dF["x"][0] + dF["y"][1] + dF["z"][2]
    mismatch = curl - 1j * dF["ct"]
    residual = np.sqrt(np.sum(np.abs(mismatch) ** 2, axis=0) + np.abs(div) ** 2)
    div_terms = np.abs(dF["x"][0]) + np.abs(dF["y"][1]) + np.abs(dF["z"][2])
    scale = np.maximum(np.sqrt(np.sum(np.abs(curl) ** 2, axis=0)), div_terms)
    report = ResidualReport(accepted, residual, scale, accepted.rho.size + rejected, rejected)
    logger.debug("Maxwell residual: max relative %.3g", report.max_relative)
    return Result(report)


def maxwell_residual(
    field: ScalarField,
    cfg: HertzConfig,
    points: FieldPoint,
    stencil: StencilConfig = DEFAULT_STENCIL,
    regular: Optional[Mask] = None,
) -> Result[ResidualReport]:
    with LogSection("Maxwell residual", logger_name=__name__):
        return rs_residual(riemann_silberstein(field, cfg, stencil), points, stencil, regular)


def em_component_field(
    field: ScalarField, cfg: HertzConfig, component: EMComponent, stencil: StencilConfig = DEFAULT_STENCIL
) -> ScalarField:
    """One of E_x..B_z as a field(rho, z, ct) on the half plane y = 0, x = rho."""
    if component not in EM_COMPONENTS:
        raise SplashException(SplashError.invalid_argument(f"unknown component {component!r}"))
    F = riemann_silberstein(field, cfg, stencil)
    index = _AXES.index(component[1])
    electric = component[0] == "E"

    def value(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        rho, z, ct = np.broadcast_arrays(np.asarray(rho, dtype=float), z, ct)
        sample = _physical(F(rho, np.zeros_like(rho), z, ct), cfg)
        return (sample.E if electric else sample.B)[index].astype(complex)

    return value


def derived_probe_ray(kind: str = "forward-z", delta: float = 0.0) -> RaySpec:
    return RaySpec.geometric(kind, delta, ct0=defaults.PROBE_CT0_DERIVED)  # type: ignore[arg-type]


def _derived_stencil(params: PulseParams) -> StencilConfig:
    return StencilConfig(scale=params.a1)


def em_asymptotics(
    cfg: HertzConfig,
    params: PulseParams,
    ray: Optional[RaySpec] = None,
    field: Optional[ScalarField] = None,
    components: Sequence[EMComponent] = EM_COMPONENTS,
    stencil: Optional[StencilConfig] = None,
) -> Result[Dict[str, LimitResult]]:
    """Limit probes of the EM components (the fractional pulse f by default).

    Derivatives use a fixed step tied to a1 so their accuracy does not
    degrade along the ray; the probes run with the derived-field residual floor.
    """
    field = field or functools.partial(fractional.f, params=params)
    ray = ray or derived_probe_ray()
    stencil = stencil or _derived_stencil(params)
    results: Dict[str, LimitResult] = {}
    with LogSection(f"EM asymptotics on {ray.describe()}", logger_name=__name__):
        for component in components:
            probed = limit_probe(
                em_component_field(field, cfg, component, stencil), ray, rtol=defaults.PROBE_RTOL_DERIVED
            )
            if probed.is_err():
                return Result(error=probed.error)
            results[component] = probed.value
            logger.debug("%s: %s", component, probed.value.describe())
    return Result(results)


def _term_fields(field: ScalarField, m: np.ndarray, stencil: StencilConfig) -> Dict[str, ScalarField]:
    """Terms of F_x on the half plane y = 0, with their Hertz coefficients."""
    scalar = cartesian_field(field)
    terms = {
        "m_x d2f/dx2": (m[0], ("x", "x")),
        "m_y d2f/dxdy": (m[1], ("x", "y")),
        "m_z d2f/dxdz": (m[2], ("x", "z")),
        "-m_x d2f/dx2": (-m[0], ("x", "x")),
        "-m_x d2f/dy2": (-m[0], ("y", "y")),
        "-m_x d2f/dz2": (-m[0], ("z", "z")),
        "i m_z d2f/dctdy": (1j * m[2], ("ct", "y")),
        "-i m_y d2f/dctdz": (-1j * m[1], ("ct", "z")),
    }

    def make(coefficient: complex, axes: Tuple[str, str]) -> ScalarField:
        def term(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
            rho, z, ct = np.broadcast_arrays(np.asarray(rho, dtype=float), z, ct)
            p = FieldPoint.from_cartesian(rho, np.zeros_like(rho), z, ct)
            return coefficient * cartesian_partial(scalar, p, axes, 1, stencil)

        return term

    return {name: make(coef, axes) for name, (coef, axes) in terms.items() if coef != 0}


def em_term_asymptotics(
    cfg: HertzConfig,
    params: PulseParams,
    ray: Optional[RaySpec] = None,
    stencil: Optional[StencilConfig] = None,
) -> Result[Dict[str, LimitResult]]:
    """Classifies every second-derivative term of F_x separately along the ray."""
    field = functools.partial(fractional.f, params=params)
    ray = ray or derived_probe_ray()
    stencil = stencil or _derived_stencil(params)
    results: Dict[str, LimitResult] = {}
    for name, term in _term_fields(field, cfg.vector, stencil).items():
        probed = limit_probe(term, ray, rtol=defaults.PROBE_RTOL_DERIVED)
        if probed.is_err():
            return Result(error=probed.error)
        results[name] = probed.value
    abnormal = [name for name, res in results.items() if res.divergent]
    logger.debug("abnormal terms: %s", ", ".join(abnormal) or "none")
    return Result(results)


@dataclasses.dataclass(frozen=True, eq=False)
class AcousticSample:
    v: np.ndarray
    p: np.ndarray
    rho0: float = defaults.RHO0


def _velocity(scalar: CartesianField, stencil: StencilConfig) -> CartesianField:
    def v(x: np.ndarray, y: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        point = FieldPoint.from_cartesian(x, y, z, ct)
        return -np.stack([cartesian_partial(scalar, point, a, 1, stencil).real for a in _AXES])

    return v


def _pressure(scalar: CartesianField, c: float, rho0: float, stencil: StencilConfig) -> CartesianField:
    def p(x: np.ndarray, y: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        point = FieldPoint.from_cartesian(x, y, z, ct)
        return rho0 * c * cartesian_partial(scalar, point, "ct", 1, stencil).real

    return p


def acoustic_observables(
    field: ScalarField,
    p: FieldPoint,
    params: PulseParams,
    rho0: float = defaults.RHO0,
    stencil: StencilConfig = DEFAULT_STENCIL,
) -> Result[AcousticSample]:
    """Flow velocity v = -grad Re f and excess pressure p = rho0 dRe f/dt."""
    scalar = cartesian_field(field)
    try:
        v = _velocity(scalar, stencil)(p.x, p.y, p.z, p.ct)
        pressure = _pressure(scalar, params.c, rho0, stencil)(p.x, p.y, p.z, p.ct)
    except StencilError as ex:
        return Result(error=ex.error)
    return Result(AcousticSample(v, pressure, rho0))


@dataclasses.dataclass(frozen=True, eq=False)
class FluidResidualReport:
    """Linearized continuity and Euler residuals, plus |(v.grad)v| / |dv/dt| per point."""

    continuity: ResidualReport
    euler: ResidualReport
    convective_ratio: np.ndarray

    @property
    def max_relative(self) -> float:
        return max(self.continuity.max_relative, self.euler.max_relative)

    def passed(self, threshold: float) -> bool:
        return self.max_relative < threshold

    def to_dict(self) -> dict:
        return {
            "continuity": self.continuity.to_dict(),
            "euler": self.euler.to_dict(),
            "max_convective_ratio": float(np.max(self.convective_ratio)) if self.convective_ratio.size else 0.0,
        }


def fluid_residuals(
    field: ScalarField,
    points: FieldPoint,
    params: PulseParams,
    rho0: float = defaults.RHO0,
    stencil: StencilConfig = DEFAULT_STENCIL,
    regular: Optional[Mask] = None,
) -> Result[FluidResidualReport]:
    """Residuals of d rho'/dt + rho0 div v = 0 (rho' = p/c^2) and rho0 dv/dt + grad p = 0.

    The observables are differentiated as computed, so the check covers the
    chain f -> (v, p) -> equations of motion.
    """
    selected = select_regular(points, regular)
    if selected.is_err():
        return Result(error=selected.error)
    accepted, rejected = selected.value
    requested = accepted.rho.size + rejected
    c = params.c
    scalar = cartesian_field(field)
    v = _velocity(scalar, stencil)
    p = _pressure(scalar, c, rho0, stencil)

    try:
        with LogSection("fluid residuals", logger_name=__name__):
            dv = {a: cartesian_partial(v, accepted, a, 1, stencil).real for a in (*_AXES, "ct")}
            dp = {a: cartesian_partial(p, accepted, a, 1, stencil).real for a in (*_AXES, "ct")}
            v0 = v(accepted.x, accepted.y, accepted.z, accepted.ct)
    except StencilError as ex:
        return Result(error=ex.error)

    # d/dt = c d/dct
    density_rate = dp["ct"] / c
    divergence = [rho0 * dv[a][i] for i, a in enumerate(_AXES)]
    continuity_terms = np.stack([density_rate, *divergence])
    continuity = ResidualReport(
        accepted,
        np.abs(continuity_terms.sum(axis=0)),
        np.abs(continuity_terms).max(axis=0),
        requested,
        rejected,
    )

    inertia = rho0 * c * dv["ct"]
    grad_p = np.stack([dp[a] for a in _AXES])
    euler = ResidualReport(
        accepted,
        np.sqrt(np.sum((inertia + grad_p) ** 2, axis=0)),
        np.maximum(np.sqrt(np.sum(inertia**2, axis=0)), np.sqrt(np.sum(grad_p**2, axis=0))),
        requested,
        rejected,
    )

    convective = sum(v0[j] * dv[a] for j, a in enumerate(_AXES))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.sqrt(np.sum(convective**2, axis=0)) / np.sqrt(np.sum((c * dv["ct"]) ** 2, axis=0))
    report = FluidResidualReport(continuity, euler, ratio)
    logger.debug(
        "fluid residuals: continuity %.3g, euler %.3g", continuity.max_relative, euler.max_relative
    )
    return Result(report)


def rayleigh_distance(a1: float, r_a: float, c: float = 1.0) -> float:
    """Z_R = omega_max r_a^2 / (2c) with omega_max = 4c/a1, i.e. 2 r_a^2 / a1."""
    if not a1 > 0 or not r_a > 0 or not c > 0:
        raise SplashException(SplashError.invalid_argument("a1, r_a and c must be positive"))
    omega_max = 4.0 * c / a1
    return omega_max * r_a * r_a / (2.0 * c)
