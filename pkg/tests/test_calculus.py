# ruff: noqa: F811

import numpy as np
import pytest

from splash_pulses.calculus import (
    StencilConfig,
    cartesian_partial,
    gradient,
    partial,
    partial_estimate,
    select_regular,
    wave_residual,
)
from splash_pulses.core import FieldPoint, PulseParams, random_points
from splash_pulses.errors import SplashErrorType, StencilError
from splash_pulses.expected import check
from splash_pulses.pulses import is_regular, pulse_field
from splash_pulses.types import PULSE_NAMES
from tests.fixtures import clean_splash_env, params  # noqa: F401
from tests.t_utils import point

# region fixtures


def polynomial(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
    return rho**2 * z + z**3 + ct**2 * z + 1j * ct


def gaussian(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
    return np.exp(-(rho**2 + z**2 + ct**2)).astype(complex)


@pytest.fixture
def sample_points() -> FieldPoint:
    return random_points(20, seed=3, extent=2.0, ct_range=(-2.0, 2.0))


# endregion fixtures

# region StencilConfig


@pytest.mark.parametrize(
    "kwargs",
    [
        {"order": 5},
        {"base_step": 0.0},
        {"scale": -1.0},
    ],
)
def test_stencil_config_invalid(kwargs):
    with pytest.raises(ValueError):
        StencilConfig(**kwargs)


def test_stencil_step_scales_with_coordinate():
    cfg = StencilConfig(base_step=1e-3)
    np.testing.assert_allclose(cfg.step(np.array([0.1, 1.0, 50.0])), [1e-3, 1e-3, 5e-2])
    fixed = StencilConfig(base_step=1e-3, scale=2.0)
    np.testing.assert_allclose(fixed.step(np.array([0.1, 1e6])), [2e-3, 2e-3])


# endregion StencilConfig

# region partials


@pytest.mark.parametrize("order", [4, 6])
def test_partial_of_polynomial(sample_points, order):
    cfg = StencilConfig(order=order)
    p = sample_points
    expected = p.rho**2 + 3 * p.z**2 + p.ct**2
    np.testing.assert_allclose(partial(polynomial, p, "z", 1, cfg), expected, rtol=1e-9, atol=1e-9)
    np.testing.assert_allclose(partial(polynomial, p, "z", 2, cfg), 6 * p.z, rtol=1e-7, atol=1e-7)
    np.testing.assert_allclose(partial(polynomial, p, "ct", 1, cfg), 2 * p.ct * p.z + 1j, rtol=1e-9, atol=1e-9)
    np.testing.assert_allclose(partial(polynomial, p, ("z", "ct"), 1, cfg), 2 * p.ct, rtol=1e-7, atol=1e-7)
    np.testing.assert_allclose(partial(polynomial, p, "rho", 1, cfg), 2 * p.rho * p.z, rtol=1e-9, atol=1e-9)


def test_gradient_is_cartesian(sample_points):
    grad = gradient(polynomial, sample_points)
    p = sample_points
    assert grad.shape == (3, 20)
    np.testing.assert_allclose(grad[0], 2 * p.x * p.z, atol=1e-9)
    np.testing.assert_allclose(grad[1], 2 * p.y * p.z, atol=1e-9)


def test_partial_odd_derivative_of_even_field_is_exactly_zero():
    p = point(0.0, 0.0, 0.0)
    assert partial(gaussian, p, "z", 1)[0] == 0
    assert partial(gaussian, p, "ct", 1)[0] == 0


def test_partial_richardson_estimate(sample_points):
    value, error = partial_estimate(gaussian, sample_points, "z", 2, StencilConfig(richardson=True))
    p = sample_points
    exact = (4 * p.z**2 - 2) * gaussian(p.rho, p.z, p.ct)
    assert error is not None
    np.testing.assert_allclose(value, exact, atol=1e-8)
    assert np.all(error < 1e-6)


def test_partial_third_order_not_supported(sample_points):
    with pytest.raises(StencilError):
        partial(gaussian, sample_points, "z", 3)
    with pytest.raises(StencilError):
        partial(gaussian, sample_points, "w", 1)


def test_partial_reports_non_finite_sample():
    def broken(x, y, z, ct):
        return np.where(z > 0.5, np.nan, 1.0 + 0j)

    p = FieldPoint.from_cartesian(np.array([0.0]), np.array([0.0]), np.array([0.5]), np.array([0.0]))
    with pytest.raises(StencilError) as ex:
        cartesian_partial(broken, p, "z")
    assert ex.value.error.type is SplashErrorType.STENCIL
    assert "z=" in ex.value.where

    loose = cartesian_partial(broken, p, "z", cfg=StencilConfig(strict=False))
    assert np.isnan(loose[0])


# endregion partials

# region residuals


@pytest.mark.parametrize("name", PULSE_NAMES)
def test_wave_residual_of_every_pulse(name):
    p = PulseParams(zs=0.1) if name == "U" else PulseParams()
    field = pulse_field(name, p).unwrap()
    points = random_points(200, seed=1)
    report = wave_residual(field, points, regular=is_regular(name, p, margin=0.5)).unwrap()
    assert report.requested == 200
    assert report.rejected < 20
    assert check("wave_residual", report.max_relative).passed
    assert report.passed(1e-5)


@pytest.mark.parametrize(
    ("name", "p", "k"),
    [
        ("f", PulseParams(nu=-0.4), 1.0),
        ("f", PulseParams(nu=0.0), 1.0),
        ("G", PulseParams(), 0.5),
        ("G", PulseParams(), 2.0),
    ],
)
def test_wave_residual_across_parameters(name, p, k):
    report = wave_residual(pulse_field(name, p, k=k).unwrap(), random_points(200, seed=1)).unwrap()
    assert check("wave_residual", report.max_relative).passed


def test_wave_residual_of_plane_wave():
    def plane_wave(rho, z, ct):
        _, z, ct = np.broadcast_arrays(rho, z, ct)
        return np.exp(2j * (z - ct))

    report = wave_residual(plane_wave, random_points(50, seed=5)).unwrap()
    assert report.max_relative < 1e-8


def test_wave_residual_on_axis():
    p = PulseParams()
    points = FieldPoint(np.zeros(5), np.linspace(-2.0, 2.0, 5), np.full(5, 0.5))
    report = wave_residual(pulse_field("f", p).unwrap(), points).unwrap()
    assert report.max_relative < 1e-5


def test_wave_residual_rejects_non_solution():
    report = wave_residual(gaussian, random_points(50, seed=2, extent=1.0, ct_range=(-1.0, 1.0))).unwrap()
    assert report.max_relative > 1e-2
    assert not report.passed(1e-5)


def test_wave_residual_too_many_singular_points(params):
    points = random_points(100, seed=4)
    res = wave_residual(pulse_field("psi", params).unwrap(), points, regular=lambda rho, z, ct: rho < 1.0)
    assert res.is_err()
    assert res.error.type is SplashErrorType.SAMPLING
    assert res.error.exit_code == 3


def test_select_regular_counts_rejected():
    points = FieldPoint(np.array([0.0, 1.0, 2.0, 3.0]), np.zeros(4), np.zeros(4))
    accepted, rejected = select_regular(points, None).unwrap()
    assert rejected == 0
    assert accepted.rho.size == 4
    res = select_regular(points, lambda rho, z, ct: rho > 0.5)
    assert res.is_err()


def test_residual_report_to_dict(params):
    report = wave_residual(pulse_field("psi", params).unwrap(), random_points(10, seed=9)).unwrap()
    out = report.to_dict()
    assert out["requested"] == 10
    assert out["rejected"] == 0
    assert out["max_relative"] >= out["median_relative"]


# endregion residuals
