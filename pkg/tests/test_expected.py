# ruff: noqa: F811

import math

import pytest

from splash_pulses.diagnostics import coefficient_C
from splash_pulses.expected import (
    ExpectedLimit,
    check,
    expected_limits,
    load_table,
    solid_angle_check,
    solid_angle_table,
    within,
)
from splash_pulses.types import CLASSIFICATIONS, LIMIT_RAY_KINDS, PULSE_NAMES
from tests.fixtures import clean_splash_env, params  # noqa: F401
from tests.t_utils import limit_result


# region table


def test_table_is_consistent():
    table = load_table()
    assert table["version"] == 1
    for entry in table["values"].values():
        assert entry["source"]
        assert ("rel_tol" in entry) != ("abs_tol" in entry)
    for name, kinds in table["limits"].items():
        assert name in PULSE_NAMES
        assert set(kinds) <= set(LIMIT_RAY_KINDS)
        assert set(kinds.values()) <= set(CLASSIFICATIONS)


@pytest.mark.parametrize(
    ("measured", "expected"),
    [
        (29.041, True),
        (29.09, True),
        (29.2, False),
        (float("nan"), False),
        (None, False),
    ],
)
def test_check_relative(measured, expected):
    result = check("norm_spectral", measured, error=0.01)
    assert result.passed is expected
    assert result.expected == 29.041
    assert result.to_dict() == {"value": measured, "error": 0.01, "expected": 29.041, "pass": expected}


def test_check_residual_entry():
    assert check("wave_residual", 3e-6).passed
    assert not check("wave_residual", 3e-5).passed


def test_check_parameter_dependent_entry():
    with pytest.raises(KeyError):
        check("forward_slope", 0.25)
    assert check("forward_slope", 0.26, expected=0.25).passed
    assert not check("forward_slope", 0.3, expected=0.25).passed


def test_within():
    assert within(1.05, 1.0, rel_tol=0.1)
    assert not within(1.2, 1.0, rel_tol=0.1)
    assert within(0.01, 0.0, abs_tol=0.02)
    assert not within(0.01, 0.0)
    assert not within(math.inf, 1.0, rel_tol=10.0)


def test_solid_angle_table():
    assert solid_angle_table() == {10.0: 2.0, 100.0: 0.2, 1000.0: 0.02, 10000.0: 0.002}
    assert solid_angle_check(100, 0.21).passed
    assert not solid_angle_check(100, 0.3).passed
    missing = solid_angle_check(50, 1.0)
    assert missing.expected is None
    assert not missing.passed


# endregion table

# region limits


def test_expected_limits_for_psi(params):
    expected = expected_limits("psi", params)
    assert set(expected) == set(LIMIT_RAY_KINDS)
    assert expected["forward-z"].limit == pytest.approx(-0.5j)
    assert expected["retro-z"].limit == pytest.approx(-0.5j)
    assert expected["diagonal"].classification == "zero"


def test_expected_limits_follow_nu(params):
    assert expected_limits("f", params)["forward-z"].classification == "power-divergent"
    finite = expected_limits("f", params.replace(nu=0.0))["forward-z"]
    assert finite.classification == "finite"
    assert finite.limit == pytest.approx(0.5j)
    assert expected_limits("f", params.replace(nu=0.3))["forward-z"].classification == "zero"


def test_expected_limits_unknown_pulse(params):
    assert expected_limits("G", params) == {}


def test_matches_finite_limit():
    want = ExpectedLimit("finite", limit=-0.5j)
    assert want.matches(limit_result("finite", limit=-0.5j + 1e-4))
    assert not want.matches(limit_result("finite", limit=-0.4j))
    assert want.matches(limit_result("finite", limit=-0.4j, error=0.2))
    assert not want.matches(limit_result("zero", limit=0j))


def test_matches_power_law():
    c = coefficient_C(1.0, 0.0)
    want = ExpectedLimit("power-divergent", exponent=0.25, coefficient=c)
    assert want.matches(limit_result("power-divergent", exponent=0.26, coefficient=2.0 * c))
    assert not want.matches(limit_result("power-divergent", exponent=0.3, coefficient=c))
    assert not want.matches(limit_result("power-divergent", exponent=0.25, coefficient=1j * c))


def test_expected_limit_to_dict():
    out = ExpectedLimit("log-divergent", slope=complex(-0.5)).to_dict()
    assert out == {"classification": "log-divergent", "slope": {"re": -0.5, "im": 0.0}}


# endregion limits
