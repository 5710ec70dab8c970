from typing import List
from unittest import mock

import pytest

from splash_pulses.cli.main import main


@pytest.mark.parametrize(
    ("sub_command", "extra"),
    [
        ("field", ["--pulse", "psi"]),
        ("limits", ["--pulse", "f"]),
        ("energy", []),
        ("decay", []),
        ("maxwell", []),
        ("acoustics", []),
        ("solidangle", ["--pulse", "f"]),
    ],
)
def test_cli_sub_command(sub_command: str, extra: List[str]):
    with mock.patch(f"splash_pulses.cli.commands.{sub_command}.main") as mock_func:
        mock_func.return_value = 0
        assert main([sub_command, *extra]) == 0
        mock_func.assert_called_once()


def test_cli_passes_exit_code_through():
    with mock.patch("splash_pulses.cli.commands.energy.main") as mock_func:
        mock_func.return_value = 5
        assert main(["energy"]) == 5


def test_cli_missing_sub_command():
    assert main([]) == 2


def test_cli_unknown_option():
    assert main(["energy", "--no-such-option"]) == 2


def test_cli_help():
    assert main(["--help"]) == 0


def test_cli_interrupted():
    with mock.patch("splash_pulses.cli.commands.decay.main") as mock_func:
        mock_func.side_effect = KeyboardInterrupt()
        assert main(["decay"]) == 130


def test_cli_uncaught_exception():
    with mock.patch("splash_pulses.cli.commands.decay.main") as mock_func:
        mock_func.side_effect = RuntimeError("boom")
        assert main(["decay"]) == 1
