import os
from pathlib import Path
from typing import Any, Optional

from splash_pulses.cli.arguments import CLIArgumentNamespace
from splash_pulses.constants import defaults, keys
from splash_pulses.types import STENCIL_ORDERS, StencilOrder
from splash_pulses.utils.logging import get_logger

logger = get_logger(__name__)


class SplashConfig:
    def __init__(
        self,
        output_dir: Optional[Path] = None,
        threads: Optional[int] = None,
        tol: Optional[float] = None,
        stencil_order: Optional[StencilOrder] = None,
    ) -> None:
        self._output_dir = output_dir if output_dir is not None else Path(get_output_dir())
        self._threads = threads if threads is not None else get_threads()
        self._tol = tol if tol is not None else get_tol()
        self._stencil_order = stencil_order if stencil_order is not None else get_stencil_order()
        if self._threads < 1:
            raise ValueError(f"threads must be positive, got {self._threads}")
        if not self._tol > 0:
            raise ValueError(f"tolerance must be positive, got {self._tol}")

    @classmethod
    def from_cli_namespace(cls, args: CLIArgumentNamespace) -> "SplashConfig":
        output_dir = Path(args.output_dir) if args.output_dir is not None else None
        return cls(output_dir, args.threads, args.tol, args.stencil_order)

    @property
    def output_dir(self) -> Path:
        return self._output_dir

    @property
    def threads(self) -> int:
        return self._threads

    @property
    def tol(self) -> float:
        return self._tol

    @property
    def stencil_order(self) -> StencilOrder:
        return self._stencil_order

    def __eq__(self, value: Any) -> bool:  # noqa: ANN401
        if not isinstance(value, type(self)):
            return NotImplemented
        return vars(self) == vars(value)

    def __repr__(self) -> str:
        """same layout as argparse.Namespace"""
        type_name = type(self).__name__
        arg_strings = [
            f"{name.lstrip('_')}={value!r}" for name, value in self.__dict__.items()
        ]
        return f"{type_name}({', '.join(arg_strings)})"


def _clean_env(key: str) -> Optional[str]:
    val = os.environ.get(key)
    if not val:
        return None

    val = val.strip()
    if not val:
        return None

    return val


def get_output_dir() -> str:
    env = _clean_env(keys.ENV_OUTPUT_DIR)
    if env:
        return env

    return defaults.OUTPUT_DIR


def get_threads() -> int:
    env = _clean_env(keys.ENV_THREADS)
    if env:
        try:
            threads = int(env)
        except ValueError:
            logger.warning("ignoring %s=%r: not an integer", keys.ENV_THREADS, env)
        else:
            if threads >= 1:
                return threads
            logger.warning("ignoring %s=%r: must be at least 1", keys.ENV_THREADS, env)

    return defaults.THREADS


def get_tol() -> float:
    env = _clean_env(keys.ENV_TOL)
    if env:
        try:
            tol = float(env)
        except ValueError:
            logger.warning("ignoring %s=%r: not a number", keys.ENV_TOL, env)
        else:
            if tol > 0:
                return tol
            logger.warning("ignoring %s=%r: must be positive", keys.ENV_TOL, env)

    return defaults.TOL


def get_stencil_order() -> StencilOrder:
    env = _clean_env(keys.ENV_STENCIL_ORDER)
    if env:
        try:
            order = int(env)
        except ValueError:
            order = None
        if order in STENCIL_ORDERS:
            return order  # type: ignore
        logger.warning("ignoring %s=%r: expected one of %s", keys.ENV_STENCIL_ORDER, env, STENCIL_ORDERS)

    return defaults.STENCIL_ORDER
