import argparse as _argparse
from typing import List as _List

from .acoustics import setup as _setup_acoustics
from .decay import setup as _setup_decay
from .energy import setup as _setup_energy
from .field import setup as _setup_field
from .limits import setup as _setup_limits
from .maxwell import setup as _setup_maxwell
from .solidangle import setup as _setup_solidangle


def register_all_commands(subparsers, parents: _List[_argparse.ArgumentParser]) -> None:  # noqa: ANN001
    _setup_field(subparsers, parents)
    _setup_limits(subparsers, parents)
    _setup_energy(subparsers, parents)
    _setup_decay(subparsers, parents)
    _setup_maxwell(subparsers, parents)
    _setup_acoustics(subparsers, parents)
    _setup_solidangle(subparsers, parents)
