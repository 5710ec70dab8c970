"""Bundled acceptance values and the closed-form limits they are checked against."""

import cmath
import dataclasses
import functools
import json
import math
from pathlib import Path
from typing import Dict, Optional

from splash_pulses.constants import filenames
from splash_pulses.core import PulseParams
from splash_pulses.diagnostics.limits import LimitResult, coefficient_C
from splash_pulses.types import Classification
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)

DATA_DIR = Path(__file__).parent / "data"

LIMIT_RTOL = 1e-3
"""relative tolerance of a measured finite limit against its closed form"""


@functools.lru_cache(maxsize=None)
def load_table() -> dict:
    with open(DATA_DIR / filenames.EXPECTED_VALUES, encoding="utf-8") as f:
        return json.load(f)


@dataclasses.dataclass(frozen=True)
class Check:
    """A measured value next to its expectation; the schema of every command report."""

    name: str
    value: Optional[float]
    error: float
    expected: Optional[float]
    passed: bool
    source: str = ""

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "error": self.error,
            "expected": self.expected,
            "pass": self.passed,
        }


def within(measured: float, expected: float, rel_tol: Optional[float] = None, abs_tol: Optional[float] = None) -> bool:
    if not math.isfinite(measured):
        return False
    if rel_tol is not None:
        return abs(measured - expected) <= rel_tol * abs(expected)
    return abs(measured - expected) <= (abs_tol or 0.0)


def check(key: str, measured: Optional[float], error: float = 0.0, expected: Optional[float] = None) -> Check:
    """Compares a measurement with the bundled entry `key`.

    `expected` overrides the bundled value for entries that depend on the
    parameters (their bundled value is null). Residual-type entries pass
    when the measurement is below the tolerance.
    """
    entry = load_table()["values"][key]
    target = entry["value"] if expected is None else expected
    if target is None:
        raise KeyError(f"{key} needs an explicit expected value")
    passed = measured is not None and within(measured, target, entry.get("rel_tol"), entry.get("abs_tol"))
    logger.debug("%s: measured %s, expected %s, pass=%s", key, measured, target, passed)
    return Check(key, measured, error, target, passed, entry["source"])


def solid_angle_table() -> Dict[float, float]:
    table = load_table()["solid_angles"]["table"]
    return {float(ct): value for ct, value in table.items()}


def solid_angle_check(ct: float, omega: float) -> Check:
    entry = load_table()["solid_angles"]
    expected = solid_angle_table().get(float(ct))
    passed = expected is not None and within(omega, expected, rel_tol=entry["rel_tol"])
    return Check(f"solid_angle(ct={ct:g})", omega, 0.0, expected, passed, entry["source"])


@dataclasses.dataclass(frozen=True)
class ExpectedLimit:
    classification: Classification
    limit: Optional[complex] = None
    slope: Optional[complex] = None
    exponent: Optional[float] = None
    coefficient: Optional[complex] = None

    def matches(self, result: LimitResult, rtol: float = LIMIT_RTOL) -> bool:
        """Same class, and the leading parameter within rtol (plus the result's own error bar)."""
        if result.classification != self.classification:
            return False
        values = load_table()["values"]
        for name in ("limit", "slope"):
            want: Optional[complex] = getattr(self, name)
            got: Optional[complex] = getattr(result, name)
            if want is None or got is None:
                continue
            if abs(got - want) > rtol * max(abs(want), 1.0) + result.error:
                return False
        if self.exponent is not None and result.exponent is not None:
            if abs(result.exponent - self.exponent) > values["forward_exponent"]["abs_tol"]:
                return False
        # the amplitude of a divergent term extrapolates poorly; its phase does not
        if self.coefficient is not None and result.coefficient is not None:
            phase = abs(cmath.phase(result.coefficient / self.coefficient))
            if phase > values["forward_phase"]["abs_tol"]:
                return False
        return True

    def to_dict(self) -> dict:
        out: dict = {"classification": self.classification}
        for key in ("limit", "slope", "coefficient"):
            value = getattr(self, key)
            if value is not None:
                out[key] = {"re": value.real, "im": value.imag}
        if self.exponent is not None:
            out["exponent"] = self.exponent
        return out


def _closed_form(name: str, kind: str, params: PulseParams, delta: float) -> dict:
    """Leading parameters known in closed form for (pulse, ray); empty when only the class is known."""
    cts, c, nu = params.cts, params.c, params.nu
    power = nu + 1.0
    forms: Dict[str, Dict[str, dict]] = {
        "psi": {
            "forward-z": {"limit": 1.0 / complex(-2.0 * delta, 2.0 * cts)},
            "backward-z": {"limit": 1.0 / complex(-2.0 * delta, 2.0 * cts)},
            "radial": {"limit": 1.0 / complex(-2.0 * delta, 2.0 * cts)},
            "diagonal": {"limit": 0j},
            "retro-z": {"limit": 1.0 / complex(2.0 * delta, 2.0 * cts)},
        },
        "Psi": {kind: {"slope": complex(-1.0 / (2.0 * c))}},
        "u": {
            "forward-z": {"limit": 1j / complex(cts + params.zs, delta)},
            "backward-z": {"limit": 0j},
            "radial": {"limit": 1j / complex(2.0 * cts, 2.0 * delta)},
        },
        "U": {
            "backward-z": {"limit": complex(math.log(2.0))},
            "retro-z": {"limit": complex(math.log(2.0))},
        },
        "f": {
            "forward-z": {"exponent": -nu, "coefficient": coefficient_C(params.a1, delta, nu)},
            "backward-z": {"limit": 1j / (2.0 * complex(params.a2, delta) ** power)},
            "radial": {"limit": 1j / complex(params.a1 + params.a2, 2.0 * delta) ** power},
            "diagonal": {"limit": 0j},
        },
    }
    return forms.get(name, {}).get(kind, {})


def expected_limits(name: str, params: PulseParams, delta: float = 0.0) -> Dict[str, ExpectedLimit]:
    """Expected classification per ray kind for a pulse, with closed-form values where known."""
    table = load_table()["limits"].get(name, {})
    expected = {
        kind: ExpectedLimit(classification, **_closed_form(name, kind, params, delta))  # type: ignore[arg-type]
        for kind, classification in table.items()
    }
    # growth ct^(-nu) on the forward axis only for negative nu
    if name == "f" and params.nu == 0:
        expected["forward-z"] = ExpectedLimit("finite", limit=coefficient_C(params.a1, delta, 0.0))
    elif name == "f" and params.nu > 0:
        expected["forward-z"] = ExpectedLimit("zero", limit=0j)
    return expected
