# ruff: noqa: F811

import json

import numpy as np
import pytest

from splash_pulses import __version__
from splash_pulses.constants import filenames
from splash_pulses.core import AxisSpec, FieldGrid
from splash_pulses.errors import SplashErrorType
from splash_pulses.export import (
    RunManifest,
    dumps,
    sha256sum,
    write_csv,
    write_json,
    write_outputs,
    write_vtk,
)
from tests.fixtures import clean_splash_env, output_dir  # noqa: F401
from tests.t_utils import read_manifest


@pytest.fixture
def grid() -> FieldGrid:
    values = np.array([[0, 1, 2], [3, 4, 5]], dtype=complex) + 0.5j
    values[1, 2] = np.nan
    return FieldGrid((AxisSpec("x", 0.0, 1.0, 2), AxisSpec("z", 0.0, 2.0, 3)), values, (("ct", 5.0),))


# region grids


def test_write_csv(grid, tmp_path):
    path = write_csv(grid, tmp_path / "field.csv").unwrap()
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,z,ct,re,im"
    assert lines[1] == "0.0,0.0,5.0,0.0,0.5"
    assert lines[2] == "0.0,1.0,5.0,1.0,0.5"
    assert lines[4] == "1.0,0.0,5.0,3.0,0.5"
    assert lines[6] == "1.0,2.0,5.0,nan,0.0"
    assert len(lines) == 7


def test_write_vtk(grid, tmp_path):
    text = write_vtk(grid, tmp_path / "field.vtk").unwrap().read_text(encoding="utf-8")
    lines = text.splitlines()
    assert lines[0] == "# vtk DataFile Version 3.0"
    assert "DIMENSIONS 2 3 1" in lines
    assert "SPACING 1.0 1.0 1.0" in lines
    assert "POINT_DATA 6" in lines
    re_block = lines[lines.index("SCALARS re double 1") + 2 :][:6]
    # first axis fastest
    assert re_block == ["0.0", "3.0", "1.0", "4.0", "2.0", "nan"]


def test_write_grid_without_values(tmp_path):
    empty = FieldGrid((AxisSpec("x", 0.0, 1.0, 2),))
    assert write_csv(empty, tmp_path / "a.csv").is_err()
    assert write_vtk(empty, tmp_path / "a.vtk").is_err()


def test_write_vtk_rejects_four_axes(tmp_path):
    axes = tuple(AxisSpec(name, 0.0, 1.0, 2) for name in ("x", "y", "z", "ct"))
    res = write_vtk(FieldGrid(axes, np.zeros((2, 2, 2, 2), dtype=complex)), tmp_path / "a.vtk")
    assert res.is_err()
    assert res.error.type is SplashErrorType.INVALID_ARGUMENT


# endregion grids

# region json


def test_dumps_replaces_non_finite_numbers():
    text = dumps(
        {
            "b": float("nan"),
            "a": 1 + 2j,
            "c": np.float64(np.inf),
            "d": np.array([1, 2]),
            "e": np.bool_(True),
            "f": (np.int64(3), np.complex128(1j)),
        }
    )
    assert json.loads(text) == {
        "a": {"re": 1.0, "im": 2.0},
        "b": None,
        "c": None,
        "d": [1, 2],
        "e": True,
        "f": [3, {"re": 0.0, "im": 1.0}],
    }
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("}\n")


def test_write_json_is_deterministic(tmp_path):
    first = write_json({"x": 0.1, "y": [1, 2]}, tmp_path / "a.json").unwrap()
    second = write_json({"y": [1, 2], "x": 0.1}, tmp_path / "b.json").unwrap()
    assert first.read_bytes() == second.read_bytes()
    assert sha256sum(first) == sha256sum(second)


# endregion json

# region manifest


def test_write_outputs(grid, output_dir):
    written = write_outputs(output_dir, "field", {"pulse": "psi"}, {"passed": True}, grid, vtk=True).unwrap()
    names = [path.name for path in written]
    assert names == [filenames.FIELD_CSV, filenames.FIELD_VTK, "field.json", filenames.MANIFEST]

    manifest = read_manifest(output_dir)
    assert manifest["command"] == "field"
    assert manifest["parameters"] == {"pulse": "psi"}
    assert manifest["version"] == __version__
    listed = {entry["file"]: entry["sha256"] for entry in manifest["outputs"]}
    assert set(listed) == {filenames.FIELD_CSV, filenames.FIELD_VTK, "field.json"}
    for name, digest in listed.items():
        assert sha256sum(output_dir / name) == digest


def test_write_outputs_twice_gives_identical_files(grid, tmp_path):
    for name in ("a", "b"):
        write_outputs(tmp_path / name, "field", {"n": 3}, {"value": 0.25}, grid).unwrap()
    for name in (filenames.FIELD_CSV, "field.json", filenames.MANIFEST):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_write_outputs_unwritable_directory(tmp_path):
    blocker = tmp_path / "taken"
    blocker.write_text("", encoding="utf-8")
    res = write_outputs(blocker, "field", {})
    assert res.is_err()
    assert res.error.type is SplashErrorType.INVALID_ARGUMENT


def test_manifest_lists_outputs_sorted(tmp_path):
    manifest = RunManifest("energy", {})
    for name in ("b.json", "a.json"):
        path = tmp_path / name
        path.write_text("{}\n", encoding="utf-8")
        manifest.add(path)
    out = manifest.to_dict()
    assert [entry["file"] for entry in out["outputs"]] == ["a.json", "b.json"]
    assert out["outputs"][0]["sha256"] == out["outputs"][1]["sha256"]


# endregion manifest
