# ruff: noqa: F811

import logging

import numpy as np
import pytest

from splash_pulses.calculus import cartesian_field
from splash_pulses.core import FieldPoint, PulseParams, random_points
from splash_pulses.em_acoustics import (
    HertzConfig,
    acoustic_observables,
    derived_probe_ray,
    em_asymptotics,
    em_component_field,
    em_term_asymptotics,
    fluid_residuals,
    hertz_to_rs,
    maxwell_residual,
    rayleigh_distance,
    riemann_silberstein,
    rs_from_fields,
    rs_residual,
)
from splash_pulses.errors import SplashErrorType, SplashException
from splash_pulses.expected import check
from splash_pulses.pulses import is_regular, pulse_field
from tests.fixtures import clean_splash_env, params  # noqa: F401

# region Hertz vector


def test_hertz_config_rejects_zero_direction():
    with pytest.raises(SplashException) as ex:
        HertzConfig(m=(0, 0, 0))
    assert ex.value.error.type is SplashErrorType.INVALID_ARGUMENT


@pytest.mark.parametrize("kwargs", [{"m": (1, 0)}, {"epsilon0": 0.0}, {"c": -1.0}])
def test_hertz_config_invalid(kwargs):
    with pytest.raises(SplashException):
        HertzConfig(**kwargs)


def test_hertz_config_longitudinal_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="splash_pulses.em_acoustics"):
        cfg = HertzConfig(m=(0, 0, 1))
    assert "longitudinal" in caplog.text
    np.testing.assert_array_equal(cfg.vector, [0, 0, 1])


def test_hertz_config_keeps_complex_direction():
    cfg = HertzConfig(m=(1, 1j, 0))
    assert cfg.m == (1 + 0j, 1j, 0j)


# endregion Hertz vector

# region Maxwell


@pytest.mark.parametrize("m", [(1, 1, 0), (1, 1j, 0.5), (0, 0, 1)])
def test_maxwell_residual(params, m):
    cfg = HertzConfig(m=m)
    points = random_points(50, seed=12)
    report = maxwell_residual(pulse_field("f", params).unwrap(), cfg, points).unwrap()
    assert report.requested == 50
    assert check("maxwell_residual", report.max_relative).passed


def test_maxwell_residual_of_primitive_pulse():
    p = PulseParams(zs=0.1)
    report = maxwell_residual(
        pulse_field("U", p).unwrap(), HertzConfig(), random_points(50, seed=19), regular=is_regular("U", p, margin=0.5)
    ).unwrap()
    assert report.requested == 50
    assert check("maxwell_residual", report.max_relative).passed


def test_maxwell_residual_detects_a_broken_field(params):
    cfg = HertzConfig()
    F = riemann_silberstein(pulse_field("f", params).unwrap(), cfg)

    def broken(x, y, z, ct):
        return F(x, y, z, ct) * (1.0 + 0.1 * x)

    report = rs_residual(broken, random_points(30, seed=13)).unwrap()
    assert report.max_relative > 1e-3


def test_rs_from_fields_inverts_extraction(params):
    cfg = HertzConfig(m=(1, 0.5j, 0), epsilon0=2.0, c=1.5)
    sample = hertz_to_rs(pulse_field("G", params).unwrap(), cfg, random_points(10, seed=14)).unwrap()
    assert sample.E.shape == (3, 10)
    np.testing.assert_allclose(rs_from_fields(sample.E, sample.B, 2.0, 1.5), sample.F, rtol=1e-12, atol=1e-15)


def test_hertz_to_rs_reports_singular_stencil(params):
    field = pulse_field("psi+", params).unwrap()
    origin = FieldPoint.from_cartesian(np.zeros(1), np.zeros(1), np.zeros(1), np.ones(1))
    res = hertz_to_rs(field, HertzConfig(), origin)
    assert res.is_err()
    assert res.error.type is SplashErrorType.STENCIL


def test_em_component_field_on_half_plane(params):
    cfg = HertzConfig()
    field = pulse_field("f", params).unwrap()
    p = random_points(5, seed=15)
    on_plane = FieldPoint.from_cartesian(p.rho, np.zeros(5), p.z, p.ct)
    sample = hertz_to_rs(field, cfg, on_plane).unwrap()
    ex = em_component_field(field, cfg, "Ex")(p.rho, p.z, p.ct)
    bz = em_component_field(field, cfg, "Bz")(p.rho, p.z, p.ct)
    np.testing.assert_allclose(ex.real, sample.E[0], rtol=1e-12)
    np.testing.assert_allclose(bz.real, sample.B[2], rtol=1e-12)
    np.testing.assert_array_equal(ex.imag, 0.0)


def test_em_component_field_unknown(params):
    with pytest.raises(SplashException):
        em_component_field(pulse_field("f", params).unwrap(), HertzConfig(), "Qx")  # type: ignore[arg-type]


def test_derived_probe_ray_starts_close():
    ray = derived_probe_ray("radial", 0.5)
    assert ray.kind == "radial"
    assert ray.delta == 0.5
    assert ray.ct_sequence[0] == 10.0


@pytest.mark.slow
def test_em_transverse_components_grow(params):
    results = em_asymptotics(HertzConfig(), params, components=("Ex", "Ez")).unwrap()
    assert results["Ex"].classification == "power-divergent"
    assert check("em_exponent", results["Ex"].exponent).passed
    assert set(results) == {"Ex", "Ez"}


@pytest.mark.slow
def test_em_terms_name_the_abnormal_ones(params):
    results = em_term_asymptotics(HertzConfig(m=(1, 0, 0)), params).unwrap()
    assert set(results) == {"m_x d2f/dx2", "-m_x d2f/dx2", "-m_x d2f/dy2", "-m_x d2f/dz2"}
    assert any(res.divergent for res in results.values())



@pytest.mark.slow
def test_em_longitudinal_hertz_vector_decays_normally(params):
    results = em_asymptotics(HertzConfig(m=(0, 0, 1)), params, components=("Ex", "Ey")).unwrap()
    assert {res.classification for res in results.values()} <= {"finite", "zero"}

# endregion Maxwell

# region acoustics


@pytest.mark.parametrize("name", ["f", "G"])
def test_fluid_residuals(params, name):
    report = fluid_residuals(pulse_field(name, params).unwrap(), random_points(40, seed=16), params).unwrap()
    assert check("fluid_residual", report.max_relative).passed
    assert report.passed(1e-4)
    assert report.convective_ratio.shape == (40,)
    assert set(report.to_dict()) == {"continuity", "euler", "max_convective_ratio"}


def test_acoustic_pressure_scales_with_density(params):
    field = pulse_field("f", params).unwrap()
    points = random_points(8, seed=17)
    unit = acoustic_observables(field, points, params).unwrap()
    dense = acoustic_observables(field, points, params, rho0=3.0).unwrap()
    np.testing.assert_allclose(dense.p, 3.0 * unit.p)
    np.testing.assert_array_equal(dense.v, unit.v)
    assert dense.rho0 == 3.0


def test_acoustic_velocity_is_minus_gradient(params):
    p = PulseParams(c=2.0, ts=0.5)
    field = pulse_field("G", p).unwrap()
    points = random_points(6, seed=18)
    sample = acoustic_observables(field, points, p).unwrap()
    scalar = cartesian_field(field)
    step = 1e-5
    above = scalar(points.x, points.y, points.z + step, points.ct)
    below = scalar(points.x, points.y, points.z - step, points.ct)
    dz = above - below
    np.testing.assert_allclose(sample.v[2], -(dz.real / (2 * step)), rtol=1e-5, atol=1e-8)


def test_acoustics_of_plane_wave():
    p = PulseParams(c=2.0)
    points = random_points(20, seed=20)

    def plane_wave(rho, z, ct):
        _, z, ct = np.broadcast_arrays(rho, z, ct)
        return np.exp(1.5j * (z - ct))

    sample = acoustic_observables(plane_wave, points, p, rho0=1.2).unwrap()
    # Re f = cos(phase): v_z = 1.5 sin(phase) and p = rho0 c v_z
    phase = 1.5 * (points.z - points.ct)
    np.testing.assert_allclose(sample.v[2], 1.5 * np.sin(phase), rtol=1e-7, atol=1e-10)
    np.testing.assert_allclose(sample.v[:2], 0.0, atol=1e-12)
    np.testing.assert_allclose(sample.p, 1.2 * p.c * sample.v[2], rtol=1e-7, atol=1e-10)


def test_rayleigh_distance():
    assert rayleigh_distance(1.0, 10.0) == pytest.approx(200.0)
    assert rayleigh_distance(2.0, 10.0, c=3.0) == pytest.approx(100.0)
    with pytest.raises(SplashException):
        rayleigh_distance(0.0, 10.0)
    with pytest.raises(SplashException):
        rayleigh_distance(1.0, -1.0)


# endregion acoustics
