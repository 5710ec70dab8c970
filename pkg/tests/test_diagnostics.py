# ruff: noqa: F811

import cmath
import math

import numpy as np
import pytest

from splash_pulses.calculus import StencilConfig
from splash_pulses.constants import defaults
from splash_pulses.core import AxisSpec, PulseParams, RaySpec, make_grid, random_points
from splash_pulses.diagnostics import (
    asymptotic_peak_shift,
    backflow_scan,
    classify_samples,
    coefficient_C,
    coefficient_C_parts,
    decay_fit,
    energetics_field,
    energy_conservation_residual,
    limit_probe,
    peak_geometry,
    peak_profile,
    peak_shift,
    sample_ray,
    scalar_energetics,
    split_peaks,
    strange_integral,
)
from splash_pulses.em_acoustics import derived_probe_ray
from splash_pulses.errors import SplashErrorType
from splash_pulses.expected import check, expected_limits
from splash_pulses.pulses import is_regular, pulse_field
from tests.fixtures import clean_splash_env, params  # noqa: F401

# region limits


@pytest.mark.parametrize(
    ("name", "kind"),
    [
        ("psi", "forward-z"),
        ("psi", "radial"),
        ("psi", "diagonal"),
        ("psi", "retro-z"),
        ("Psi", "forward-z"),
        ("f", "backward-z"),
        ("f", "radial"),
    ],
)
def test_limit_matches_closed_form(params, name, kind):
    field = pulse_field(name, params).unwrap()
    result = limit_probe(field, RaySpec.geometric(kind)).unwrap()
    want = expected_limits(name, params)[kind]
    assert result.classification == want.classification
    assert want.matches(result)


def test_psi_forward_limit_value(params):
    result = limit_probe(pulse_field("psi", params).unwrap(), RaySpec.geometric("forward-z")).unwrap()
    # 1/(2i c ts) with delta = 0
    assert result.limit == pytest.approx(-0.5j, abs=1e-6)
    assert result.goodness > 0.99


@pytest.mark.parametrize("delta", [-1.0, 0.5])
def test_psi_forward_limit_with_offset(params, delta):
    result = limit_probe(pulse_field("psi", params).unwrap(), RaySpec.geometric("forward-z", delta)).unwrap()
    assert result.limit == pytest.approx(1.0 / complex(-2.0 * delta, 2.0), abs=1e-6)


def test_primitive_log_slope(params):
    result = limit_probe(pulse_field("Psi", params).unwrap(), RaySpec.geometric("radial")).unwrap()
    assert result.classification == "log-divergent"
    assert abs(result.slope + 0.5) < 1e-3


def test_fractional_forward_growth(params):
    result = limit_probe(pulse_field("f", params).unwrap(), RaySpec.geometric("forward-z")).unwrap()
    assert result.classification == "power-divergent"
    assert result.divergent
    assert check("forward_exponent", result.exponent).passed
    assert abs(cmath.phase(result.coefficient) - 3.0 * math.pi / 8.0) < 0.05


def test_fractional_forward_limit_depends_on_nu(params):
    finite = limit_probe(pulse_field("f", params.replace(nu=0.0)).unwrap(), RaySpec.geometric("forward-z")).unwrap()
    assert finite.classification == "finite"
    assert finite.limit == pytest.approx(coefficient_C(params.a1, 0.0, 0.0), rel=1e-3)

    vanishing = limit_probe(pulse_field("f", params.replace(nu=0.5)).unwrap(), RaySpec.geometric("forward-z")).unwrap()
    assert vanishing.classification == "zero"


@pytest.mark.parametrize("alpha", [0.05, 0.1, 0.5])
def test_oblique_limit_is_finite(params, alpha):
    ray = RaySpec.geometric("oblique", alpha=alpha)
    result = limit_probe(pulse_field("f", params).unwrap(), ray).unwrap()
    assert result.classification == "finite"
    # on the ray ct*f tends to (i/beta) B^-(nu+1), B = a2 + a1 (1 + cos alpha)/beta
    beta = 1.0 - math.cos(alpha)
    b = params.a2 + params.a1 * (1.0 + math.cos(alpha)) / beta
    assert result.limit == pytest.approx(1j / beta * b ** -(params.nu + 1.0), rel=1e-3)


def test_limit_probe_reports_singular_ray():
    def singular(rho, z, ct):
        return np.where(ct > 5000.0, np.nan, 1.0 / ct)

    res = limit_probe(singular, RaySpec.geometric("radial"))
    assert res.is_err()
    assert res.error.type is SplashErrorType.SINGULAR_POINT


def test_sample_ray_takes_parts(params):
    ray = RaySpec.geometric("forward-z", ct0=1.0, doublings=8)
    field = pulse_field("psi", params).unwrap()
    s, full = sample_ray(field, ray).unwrap()
    _, re = sample_ray(field, ray, "re").unwrap()
    _, im = sample_ray(field, ray, "im").unwrap()
    np.testing.assert_array_equal(s, ray.ct_sequence)
    np.testing.assert_allclose(re.real, full.real)
    np.testing.assert_allclose(im.real, full.imag)
    np.testing.assert_array_equal(re.imag, 0.0)


def test_classify_all_zero_samples():
    s = 10.0 * 2.0 ** np.arange(12)
    classification, fits, runner_up = classify_samples(s, np.zeros(12, dtype=complex))
    assert classification == "zero"
    assert fits == {}
    assert runner_up is None


def test_classify_synthetic_models():
    s = 10.0 * 2.0 ** np.arange(20)
    assert classify_samples(s, (2.0 + 1j) + 3.0 / s)[0] == "finite"
    assert classify_samples(s, 0.5 * np.log(s) + 1.0 + 0j)[0] == "log-divergent"
    assert classify_samples(s, 0.7 * s**0.3 + 0j)[0] == "power-divergent"
    assert classify_samples(s, 1.0 / s + 0j)[0] == "zero"


def test_coefficient_C_real_formulas():
    for a1, delta, nu in ((1.0, 0.0, -0.25), (2.0, -1.5, -0.25), (0.5, 3.0, 0.3)):
        c = coefficient_C(a1, delta, nu)
        re, im = coefficient_C_parts(a1, delta, nu)
        assert c.real == pytest.approx(re, rel=1e-12, abs=1e-15)
        assert c.imag == pytest.approx(im, rel=1e-12, abs=1e-15)


def test_coefficient_C_reference():
    c = coefficient_C(1.0, 0.0)
    assert abs(c) == pytest.approx(2.0**-0.75)
    assert cmath.phase(c) == pytest.approx(3.0 * math.pi / 8.0)
    with pytest.raises(ValueError):
        coefficient_C(0.0, 0.0)


# endregion limits

# region decay


@pytest.mark.parametrize("nu", [-0.4, -0.25, -0.1, 0.0])
def test_decay_slope_is_minus_nu(params, nu):
    fit = decay_fit(pulse_field("f", params.replace(nu=nu)).unwrap(), RaySpec.geometric("forward-z")).unwrap()
    assert check("forward_slope", fit.slope, expected=-nu).passed
    assert fit.rms_log_residual < 0.05


def test_decay_window_needs_three_decades(params):
    ray = RaySpec.geometric("forward-z")
    res = decay_fit(pulse_field("f", params).unwrap(), ray, window=(1e3, 1e5))
    assert res.is_err()
    assert res.error.type is SplashErrorType.INVALID_ARGUMENT


def test_peak_profile_approaches_asymptote(params):
    offsets = np.linspace(-3.0, 3.0, 13)
    series = peak_profile(pulse_field("f", params).unwrap(), [1e3, 1e5], offsets, params)
    assert [s.ct for s in series] == [1e3, 1e5]
    errors = [np.max(np.abs(s.values / s.asymptote - 1.0)) for s in series]
    assert errors[0] < 1e-2
    assert errors[1] < errors[0]


# endregion decay

# region geometry


def test_peak_geometry_rejects_nonpositive_ct(params):
    res = peak_geometry(pulse_field("f", params).unwrap(), 0.0)
    assert res.is_err()


def test_peak_geometry_of_vanishing_field():
    res = peak_geometry(lambda rho, z, ct: np.zeros(np.shape(rho), dtype=complex), 100.0)
    assert res.is_err()
    assert res.error.type is SplashErrorType.GEOMETRY


@pytest.mark.slow
def test_solid_angle_shrinks_like_one_over_ct(params):
    field = pulse_field("f", params).unwrap()
    near = peak_geometry(field, 1e3).unwrap()
    far = peak_geometry(field, 1e4).unwrap()
    assert near.hwhm > 0 and far.hwhm > near.hwhm
    slope = math.log10(far.omega / near.omega)
    assert check("solid_angle_slope", slope).passed
    assert near.to_dict()["omega"] == near.omega


@pytest.mark.parametrize("a1", [1.0, 3.0])
def test_peak_shift_on_axis(params, a1):
    p = params.replace(a1=a1)
    re_shift, im_shift = peak_shift(pulse_field("f", p).unwrap(), 1000.0).unwrap()
    re_limit, im_limit = asymptotic_peak_shift(a1, p.nu)
    assert re_shift == pytest.approx(re_limit, rel=1e-2)
    assert im_shift == pytest.approx(im_limit, rel=1e-2)
    assert re_shift == pytest.approx(2.0 * a1 / 3.0, rel=0.2)
    assert -0.3 * a1 < im_shift < -0.15 * a1


def test_asymptotic_peak_shift():
    re_shift, im_shift = asymptotic_peak_shift(1.0, -0.25)
    assert re_shift == pytest.approx(math.tan(3.0 * math.pi / 16.0))
    assert im_shift == pytest.approx(-math.tan(math.pi / 16.0))
    assert asymptotic_peak_shift(3.0, -0.25)[0] == pytest.approx(3.0 * re_shift)
    # nu = -1/2 puts the peaks symmetrically about the pulse center
    assert sum(asymptotic_peak_shift(2.0, -0.5)) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        asymptotic_peak_shift(1.0, 0.0)
    with pytest.raises(ValueError):
        asymptotic_peak_shift(0.0, -0.25)


def test_split_peaks_expanding_part_keeps_its_height(params):
    peaks = split_peaks("psi+", params, [10.0, 100.0, 1000.0]).unwrap()
    assert [p.ct for p in peaks] == [10.0, 100.0, 1000.0]
    for peak in peaks:
        # R Im psi+ = Im 1/(2(ct - R + i c ts)) peaks at R = ct
        assert peak.R == pytest.approx(peak.ct, abs=1e-3)
        assert peak.extremum == pytest.approx(-0.5 / params.cts, rel=1e-6)


def test_split_peaks_converging_part_fades(params):
    peaks = split_peaks("psi-", params, [10.0, 100.0]).unwrap()
    assert abs(peaks[1].extremum) < abs(peaks[0].extremum)


def test_split_peaks_unknown_pulse(params):
    assert split_peaks("nope", params, [10.0]).is_err()  # type: ignore[arg-type]


# endregion geometry

# region energetics


@pytest.mark.parametrize("name", ["psi", "f", "G"])
def test_energy_velocity_never_exceeds_c(name):
    p = PulseParams(c=2.0, ts=0.5)
    points = random_points(200, seed=6)
    diag = scalar_energetics(pulse_field(name, p).unwrap(), points, p).unwrap()
    assert np.all(diag.w > 0)
    assert np.all(diag.speed <= p.c * (1.0 + 1e-12))


@pytest.mark.parametrize("name", ["psi", "f", "u"])
def test_energy_conservation(params, name):
    points = random_points(100, seed=8)
    report = energy_conservation_residual(pulse_field(name, params).unwrap(), points, params).unwrap()
    assert check("energy_conservation", report.max_relative).passed


def test_backflow_scan(params):
    grid = make_grid([AxisSpec("x", -4.0, 4.0, 21), AxisSpec("z", -4.0, 4.0, 21)]).unwrap()
    report = backflow_scan(pulse_field("f", params).unwrap(), grid, params, {"ct": 1.0}).unwrap()
    assert report.cells.shape == (21, 21)
    assert 0.0 <= report.fraction <= 1.0
    assert report.max_speed <= params.c * (1.0 + 1e-12)
    assert report.grid.values.shape == (21, 21)
    assert set(report.to_dict()) == {"count", "fraction", "min_vez", "max_speed"}


def test_backflow_scan_skips_singular_cells(params):
    grid = make_grid([AxisSpec("x", -2.0, 2.0, 5), AxisSpec("z", -2.0, 2.0, 5)]).unwrap()
    report = backflow_scan(
        pulse_field("psi+", params).unwrap(), grid, params, {"ct": 1.0}, regular=is_regular("psi+", params)
    ).unwrap()
    # the origin is a grid cell
    assert np.isnan(report.grid.values[2, 2])
    assert not report.cells[2, 2]


def plane_wave(k: float, direction: float = 1.0):
    def field(rho, z, ct):
        _, z, ct = np.broadcast_arrays(rho, z, ct)
        return np.exp(1j * k * (z - direction * ct))

    return field


def test_plane_wave_energetics():
    p = PulseParams(c=2.0)
    diag = scalar_energetics(plane_wave(1.5), random_points(30, seed=21), p).unwrap()
    np.testing.assert_allclose(diag.w, 1.5**2, rtol=1e-8)
    np.testing.assert_allclose(diag.S[:2], 0.0, atol=1e-12)
    np.testing.assert_allclose(diag.S[2], p.c * 1.5**2, rtol=1e-8)
    np.testing.assert_allclose(diag.v_E[2], p.c, rtol=1e-8)


def test_plane_wave_energetics_of_real_part():
    p = PulseParams(c=2.0)
    points = random_points(30, seed=22)
    diag = scalar_energetics(plane_wave(1.5), points, p, part="re").unwrap()
    # Re exp(i k (z - ct)) = cos(phase)
    phase = 1.5 * (points.z - points.ct)
    np.testing.assert_allclose(diag.w, 1.5**2 * np.sin(phase) ** 2, rtol=1e-7, atol=1e-10)
    np.testing.assert_allclose(diag.S[2], p.c * diag.w, rtol=1e-7, atol=1e-10)


@pytest.mark.parametrize(("direction", "backflow"), [(1.0, False), (-1.0, True)])
def test_backflow_scan_of_plane_wave(direction, backflow):
    p = PulseParams(c=2.0)
    grid = make_grid([AxisSpec("x", -4.0, 4.0, 21), AxisSpec("z", -4.0, 4.0, 21)]).unwrap()
    report = backflow_scan(plane_wave(1.5, direction), grid, p, {"ct": 1.0}).unwrap()
    assert report.count == (grid.size if backflow else 0)
    assert report.min_vez == pytest.approx(direction * p.c, rel=1e-8)


@pytest.mark.parametrize(("part", "found"), [("re", True), ("im", True), ("complex", False)])
def test_backflow_of_U(part, found):
    p = PulseParams.from_cts(0.3, zs=0.1)
    grid = make_grid([AxisSpec("x", -8.0, 8.0, 161), AxisSpec("z", -8.0, 8.0, 161)]).unwrap()
    field = pulse_field("U", p).unwrap()
    report = backflow_scan(field, grid, p, {"ct": 4.0}, regular=is_regular("U", p), part=part).unwrap()
    assert (report.count > 0) is found
    assert report.max_speed <= p.c * (1.0 + 1e-9)
    if found:
        assert -p.c * (1.0 + 1e-9) <= report.min_vez < -0.9


@pytest.mark.slow
def test_weighted_energetics_of_f_diverge(params):
    field = pulse_field("f", params).unwrap()
    stencil = StencilConfig(scale=params.a1)
    for quantity in ("w", "Sz"):
        weighted = energetics_field(field, params, quantity, stencil)
        result = limit_probe(weighted, derived_probe_ray(), rtol=defaults.PROBE_RTOL_DERIVED).unwrap()
        assert result.classification == "power-divergent"
        # twice the growth exponent of ct*f
        assert result.exponent == pytest.approx(0.5, abs=0.05)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["Psi", "U"])
def test_weighted_energy_density_decays_normally(params, name):
    weighted = energetics_field(pulse_field(name, params).unwrap(), params, "w", StencilConfig(scale=params.a1))
    result = limit_probe(weighted, derived_probe_ray(), rtol=defaults.PROBE_RTOL_DERIVED).unwrap()
    assert result.classification == "finite"
    assert abs(result.limit) > 0.0


@pytest.mark.parametrize("part", ["re", "im"])
def test_time_integral_of_psi_vanishes(params, part):
    field = pulse_field("psi", params).unwrap()
    result = strange_integral(field, 1.0, 0.5, 200.0, params, tol=1e-8, part=part).unwrap()
    assert abs(result.value) <= result.error_bound + 1e-12
    assert abs(result.value) < 1e-4


@pytest.mark.parametrize(("rho", "z"), [(1.0, 0.5), (20.0, 0.0)])
def test_time_integral_of_odd_part_is_zero(params, rho, z):
    # Im psi is odd in t
    res = strange_integral(pulse_field("psi", params).unwrap(), rho, z, 200.0, params, tol=1e-8)
    assert res.is_ok()
    assert abs(res.value.value) < 1e-6


def test_time_integral_of_primitive_U(params):
    # Im U ~ Im 1/(c a) far from the pulse, whose time integral is -pi/c^2
    result = strange_integral(pulse_field("U", params).unwrap(), 1.0, 1.0, 400.0, params, tol=1e-8).unwrap()
    assert result.value == pytest.approx(-math.pi, abs=1e-3 + result.error_bound)
    assert abs(result.value) > 10.0 * result.error_bound


def test_time_integral_with_slow_tail(params):
    # Re U decays like 1/ct
    res = strange_integral(pulse_field("U", params).unwrap(), 1.0, 1.0, 400.0, params, tol=1e-8, part="re")
    assert res.is_err()
    assert res.error.type is SplashErrorType.DIVERGENT


def test_time_integral_needs_a_window(params):
    assert strange_integral(pulse_field("psi", params).unwrap(), 1.0, 0.0, 0.0, params).is_err()


# endregion energetics
