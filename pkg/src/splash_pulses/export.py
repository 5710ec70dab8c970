"""Deterministic output files: CSV and legacy VTK grids, JSON reports and the run manifest.

Nothing written here carries timestamps or host details, so identical inputs
give byte-identical files and manifest checksums.
"""

import csv
import dataclasses
import hashlib
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import numpy as np

from splash_pulses import __version__
from splash_pulses.constants import filenames
from splash_pulses.core import FieldGrid
from splash_pulses.errors import SplashError
from splash_pulses.result import Result
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)

_CHUNK = 1 << 16


def _number(value: float) -> str:
    # repr round-trips every double; NaN is spelled the same everywhere
    return "nan" if math.isnan(value) else repr(float(value))


def write_csv(grid: FieldGrid, path: Path) -> Result[Path]:
    """One row per grid cell: the axis coordinates, then Re and Im of the value.

    Rows follow the grid's C order; fixed coordinates are written as
    constant columns so every file is self-describing.
    """
    if grid.values is None:
        return Result(error=SplashError.invalid_argument("the grid has no values to export"))
    mesh = grid.mesh()
    fixed = dict(grid.fixed)
    header = [*grid.axis_names, *fixed, "re", "im"]
    columns = [mesh[name].ravel() for name in grid.axis_names]
    values = grid.values.ravel()
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for i in range(values.size):
            row = [_number(col[i]) for col in columns]
            row += [_number(v) for v in fixed.values()]
            row += [_number(values[i].real), _number(values[i].imag)]
            writer.writerow(row)
    logger.debug("wrote %d rows to %s", values.size, path)
    return Result(path)


def write_vtk(grid: FieldGrid, path: Path, title: str = "splash pulse field") -> Result[Path]:
    """Legacy ASCII STRUCTURED_POINTS file with Re and Im as point scalars.

    Up to three grid axes map to the VTK dimensions in order; the first
    axis varies fastest in the data block, as the format requires.
    """
    if grid.values is None:
        return Result(error=SplashError.invalid_argument("the grid has no values to export"))
    if len(grid.axes) > 3:
        return Result(error=SplashError.invalid_argument("VTK export supports at most 3 axes"))
    axes = list(grid.axes)
    dims = [axis.count for axis in axes] + [1] * (3 - len(axes))
    origin = [axis.lo for axis in axes] + [0.0] * (3 - len(axes))
    spacing = [(axis.hi - axis.lo) / (axis.count - 1) for axis in axes] + [1.0] * (3 - len(axes))
    values = grid.values.ravel(order="F")

    lines = [
        "# vtk DataFile Version 3.0",
        f"{title} ({', '.join(grid.axis_names)})",
        "ASCII",
        "DATASET STRUCTURED_POINTS",
        "DIMENSIONS {} {} {}".format(*dims),
        "ORIGIN {} {} {}".format(*(_number(v) for v in origin)),
        "SPACING {} {} {}".format(*(_number(v) for v in spacing)),
        f"POINT_DATA {values.size}",
    ]
    for name, part in (("re", values.real), ("im", values.imag)):
        lines.append(f"SCALARS {name} double 1")
        lines.append("LOOKUP_TABLE default")
        lines.extend(_number(v) for v in part)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")
    logger.debug("wrote VTK grid %s to %s", "x".join(map(str, dims)), path)
    return Result(path)


def _jsonable(obj: Any) -> Any:  # noqa: ANN401
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        # JSON has no inf/nan; null marks a missing or divergent value
        return value if math.isfinite(value) else None
    return obj


def dumps(obj: Any) -> str:  # noqa: ANN401
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_json(obj: Any, path: Path) -> Result[Path]:  # noqa: ANN401
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps(obj))
    return Result(path)


def sha256sum(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(_CHUNK), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclasses.dataclass
class RunManifest:
    """Record of one command run: its parameters and a checksum per output file."""

    command: str
    parameters: Dict[str, Any]
    version: str = __version__
    outputs: Dict[str, str] = dataclasses.field(default_factory=dict)

    def add(self, path: Path) -> None:
        self.outputs[path.name] = sha256sum(path)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "outputs": [{"file": name, "sha256": digest} for name, digest in sorted(self.outputs.items())],
        }

    def write(self, output_dir: Path) -> Result[Path]:
        path = output_dir / filenames.MANIFEST
        result = write_json(self.to_dict(), path)
        if result.is_ok():
            logger.debug("manifest lists %d outputs", len(self.outputs))
        return result


def write_outputs(
    output_dir: Path,
    command: str,
    parameters: Mapping[str, Any],
    report: Optional[Any] = None,  # noqa: ANN401
    grid: Optional[FieldGrid] = None,
    vtk: bool = False,
) -> Result[List[Path]]:
    """Writes the report (and grid files), then a manifest covering all of them."""
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        written: List[Path] = []
        if grid is not None:
            for res in (
                write_csv(grid, output_dir / filenames.FIELD_CSV),
                write_vtk(grid, output_dir / filenames.FIELD_VTK) if vtk else None,
            ):
                if res is None:
                    continue
                if res.is_err():
                    return Result(error=res.error)
                written.append(res.value)
        if report is not None:
            written.append(write_json(report, output_dir / filenames.report(command)).value)
        manifest = RunManifest(command, dict(parameters))
        for path in written:
            manifest.add(path)
        written.append(manifest.write(output_dir).value)
    except OSError as ex:
        return Result(error=SplashError.invalid_argument(f"cannot write to {output_dir}: {ex}"))
    return Result(written)
