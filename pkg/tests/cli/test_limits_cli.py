# ruff: noqa: F811

from unittest import mock

from splash_pulses.cli.main import main
from splash_pulses.errors import SplashError
from splash_pulses.result import Result
from tests.fixtures import clean_splash_env, output_dir  # noqa: F401
from tests.t_utils import craft_options, limit_result, read_manifest, read_report


def test_limits_psi(output_dir):
    args = ["limits", *craft_options(pulse="psi", rays=["forward-z", "radial"], output_dir=output_dir)]
    assert main(args) == 0
    report = read_report(output_dir, "limits")
    assert report["pass"]
    assert set(report["rays"]) == {"forward-z", "radial"}
    forward = report["rays"]["forward-z"]
    assert forward["classification"] == "finite"
    assert forward["expected"]["classification"] == "finite"
    assert forward["pass"]
    assert read_manifest(output_dir)["parameters"]["rays"] == ["forward-z", "radial"]


def test_limits_part_has_no_expectation(output_dir):
    args = ["limits", *craft_options(pulse="psi", rays=["forward-z"], part="im", output_dir=output_dir)]
    assert main(args) == 0
    assert read_report(output_dir, "limits")["rays"]["forward-z"]["expected"] is None


def test_limits_ambiguous(output_dir):
    with mock.patch("splash_pulses.cli.commands.limits.limit_probe") as probe:
        probe.return_value = Result(limit_result("ambiguous"))
        code = main(["limits", *craft_options(pulse="psi", rays=["forward-z"], output_dir=output_dir)])
    assert code == 4
    entry = read_report(output_dir, "limits")["rays"]["forward-z"]
    assert entry["classification"] == "ambiguous"
    assert not entry["pass"]


def test_limits_ambiguous_outranks_a_probe_error(output_dir):
    with mock.patch("splash_pulses.cli.commands.limits.limit_probe") as probe:
        probe.side_effect = [
            Result(error=SplashError.singular_point("ct=1000")),
            Result(limit_result("ambiguous")),
        ]
        code = main(["limits", *craft_options(pulse="psi", rays=["forward-z", "radial"], output_dir=output_dir)])
    assert code == 4


def test_limits_singular(output_dir):
    with mock.patch("splash_pulses.cli.commands.limits.limit_probe") as probe:
        probe.return_value = Result(error=SplashError.singular_point("ct=1000"))
        code = main(["limits", *craft_options(pulse="psi", rays=["radial"], output_dir=output_dir)])
    assert code == 3
    entry = read_report(output_dir, "limits")["rays"]["radial"]
    assert "ct=1000" in entry["error"]
    assert not entry["pass"]


def test_limits_mismatch(output_dir):
    with mock.patch("splash_pulses.cli.commands.limits.limit_probe") as probe:
        probe.return_value = Result(limit_result("zero", limit=0j))
        code = main(["limits", *craft_options(pulse="psi", rays=["forward-z"], output_dir=output_dir)])
    assert code == 1
    assert not read_report(output_dir, "limits")["pass"]


def test_limits_unknown_ray(output_dir):
    assert main(["limits", *craft_options(pulse="psi", rays=["sideways"], output_dir=output_dir)]) == 2
