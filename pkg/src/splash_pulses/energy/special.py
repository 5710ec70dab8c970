"""Exponential integral E1 on the positive axis."""

import numpy as np
from scipy import special

from splash_pulses.errors import SplashError, SplashException

_SWITCH = 50.0
"""above this argument the continued fraction replaces scipy's exp1"""

_DEPTH = 40


def _check_domain(x: np.ndarray) -> None:
    if np.any(~(x > 0)):
        raise SplashException(SplashError.invalid_argument("E1 is evaluated for x > 0 only"))


def _continued_fraction(x: np.ndarray) -> np.ndarray:
    """e^x E1(x) = 1/(x+1 - 1/(x+3 - 4/(x+5 - ...))), evaluated from the bottom."""
    tail = np.zeros_like(x)
    for n in range(_DEPTH, 0, -1):
        tail = n * n / (x + 2 * n + 1 - tail)
    return 1.0 / (x + 1.0 - tail)


def exp_integral_E1_scaled(x: np.ndarray) -> np.ndarray:
    """e^x * E1(x), finite for every x > 0."""
    x = np.asarray(x, dtype=float)
    _check_domain(x)
    large = x > _SWITCH
    small = np.where(large, 1.0, x)
    with np.errstate(over="ignore"):
        direct = np.exp(small) * special.exp1(small)
    return np.where(large, _continued_fraction(np.where(large, x, _SWITCH + 1.0)), direct)


def exp_integral_E1(x: np.ndarray) -> np.ndarray:
    """E1(x) = integral over (1, inf) of exp(-x t)/t dt.

    Raises:
        SplashException: some x is not positive.
    """
    x = np.asarray(x, dtype=float)
    _check_domain(x)
    large = x > _SWITCH
    direct = special.exp1(np.where(large, 1.0, x))
    with np.errstate(under="ignore"):
        far = _continued_fraction(np.where(large, x, _SWITCH + 1.0)) * np.exp(-np.where(large, x, 0.0))
    return np.where(large, far, direct)
