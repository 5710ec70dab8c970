import logging

import pytest

from splash_pulses.constants import keys
from splash_pulses.core import PulseParams


@pytest.fixture(autouse=True)
def clean_splash_env(monkeypatch):
    for key in (keys.ENV_OUTPUT_DIR, keys.ENV_THREADS, keys.ENV_TOL, keys.ENV_STENCIL_ORDER):
        monkeypatch.delenv(key, raising=False)
    # the cli detaches the package logger from the root; caplog needs it attached
    package_logger = logging.getLogger("splash_pulses")
    package_logger.handlers.clear()
    package_logger.setLevel(logging.NOTSET)
    package_logger.propagate = True
    yield


@pytest.fixture
def params() -> PulseParams:
    """unit speed, c*ts = 1, zs = 0, a1 = 1, a2 = 2, nu = -1/4"""
    return PulseParams()


@pytest.fixture
def output_dir(tmp_path):
    return tmp_path / "out"
