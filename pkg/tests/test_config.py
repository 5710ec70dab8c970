# ruff: noqa: F811

import logging
from pathlib import Path

import pytest

from splash_pulses.cli.arguments import CLIArgumentNamespace
from splash_pulses.config import SplashConfig
from splash_pulses.constants import defaults, keys
from tests.fixtures import clean_splash_env  # noqa: F401


def namespace(**kwargs) -> CLIArgumentNamespace:
    args = CLIArgumentNamespace()
    for name in ("output_dir", "threads", "tol", "stencil_order"):
        setattr(args, name, kwargs.get(name))
    return args


def test_defaults():
    config = SplashConfig()
    assert config.output_dir == Path(defaults.OUTPUT_DIR)
    assert config.threads == defaults.THREADS
    assert config.tol == defaults.TOL
    assert config.stencil_order == defaults.STENCIL_ORDER


def test_environment(monkeypatch):
    monkeypatch.setenv(keys.ENV_OUTPUT_DIR, "  /tmp/splash  ")
    monkeypatch.setenv(keys.ENV_THREADS, "4")
    monkeypatch.setenv(keys.ENV_TOL, "1e-6")
    monkeypatch.setenv(keys.ENV_STENCIL_ORDER, "4")
    config = SplashConfig()
    assert config.output_dir == Path("/tmp/splash")
    assert config.threads == 4
    assert config.tol == 1e-6
    assert config.stencil_order == 4


@pytest.mark.parametrize(
    ("key", "value", "attribute", "default"),
    [
        (keys.ENV_THREADS, "many", "threads", defaults.THREADS),
        (keys.ENV_THREADS, "0", "threads", defaults.THREADS),
        (keys.ENV_TOL, "tight", "tol", defaults.TOL),
        (keys.ENV_TOL, "-1e-3", "tol", defaults.TOL),
        (keys.ENV_STENCIL_ORDER, "5", "stencil_order", defaults.STENCIL_ORDER),
        (keys.ENV_STENCIL_ORDER, "six", "stencil_order", defaults.STENCIL_ORDER),
    ],
)
def test_invalid_environment_is_ignored(monkeypatch, caplog, key, value, attribute, default):
    monkeypatch.setenv(key, value)
    with caplog.at_level(logging.WARNING, logger="splash_pulses.config"):
        config = SplashConfig()
    assert getattr(config, attribute) == default
    assert f"ignoring {key}" in caplog.text


def test_blank_environment_is_unset(monkeypatch, caplog):
    monkeypatch.setenv(keys.ENV_THREADS, "   ")
    with caplog.at_level(logging.WARNING, logger="splash_pulses.config"):
        assert SplashConfig().threads == defaults.THREADS
    assert caplog.text == ""


def test_cli_beats_environment(monkeypatch):
    monkeypatch.setenv(keys.ENV_THREADS, "4")
    monkeypatch.setenv(keys.ENV_OUTPUT_DIR, "from-env")
    config = SplashConfig.from_cli_namespace(namespace(threads=2, output_dir="from-cli"))
    assert config.threads == 2
    assert config.output_dir == Path("from-cli")
    assert config.tol == defaults.TOL


@pytest.mark.parametrize("kwargs", [{"threads": 0}, {"tol": 0.0}, {"tol": -1.0}])
def test_invalid_explicit_values(kwargs):
    with pytest.raises(ValueError):
        SplashConfig(**kwargs)


def test_equality_and_repr():
    first = SplashConfig(Path("out"), 2, 1e-6, 4)
    assert first == SplashConfig(Path("out"), 2, 1e-6, 4)
    assert first != SplashConfig(Path("out"), 3, 1e-6, 4)
    assert repr(first) == "SplashConfig(output_dir=PosixPath('out'), threads=2, tol=1e-06, stencil_order=4)"
