"""Closed-form pulse families and the name registry used by grids, probes and the CLI."""

import functools
from typing import Callable, Dict

import numpy as np

from splash_pulses.core import PulseParams, ScalarField
from splash_pulses.errors import SplashError
from splash_pulses.result import Result
from splash_pulses.types import PULSE_NAMES, PulseName

from .fractional import (
    G,
    SynthesisResult,
    f,
    fractional_f,
    fwm_G,
    spectral_synthesize,
    spectrum_F,
)
from .splash import (
    primitive,
    primitive_minus,
    primitive_plus,
    primitive_split,
    psi,
    psi_minus,
    psi_plus,
    splash_primitive,
    splash_psi,
    splash_split,
)
from .unidirectional import (
    AuxiliaryRoots,
    auxiliary_roots,
    primitive_U,
    u,
    unidirectional_primitive_U,
    unidirectional_u,
)

__all__ = [
    "AuxiliaryRoots",
    "SynthesisResult",
    "auxiliary_roots",
    "fractional_f",
    "fwm_G",
    "is_regular",
    "primitive_split",
    "pulse_field",
    "spectral_synthesize",
    "spectrum_F",
    "splash_primitive",
    "splash_psi",
    "splash_split",
    "unidirectional_primitive_U",
    "unidirectional_u",
]

_KERNELS: Dict[str, Callable[..., np.ndarray]] = {
    "psi": psi,
    "psi+": psi_plus,
    "psi-": psi_minus,
    "Psi": primitive,
    "Psi+": primitive_plus,
    "Psi-": primitive_minus,
    "u": u,
    "U": primitive_U,
    "f": f,
    "G": G,
}

Mask = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

REGULAR_MARGIN = 0.1
"""distance kept from singular sets when sampling regular points"""


def pulse_field(name: PulseName, params: PulseParams, k: float = 1.0) -> Result[ScalarField]:
    """Binds the parameters of a registered pulse, returning a field(rho, z, ct) callable."""
    if name not in PULSE_NAMES:
        return Result(error=SplashError.invalid_argument(f"unknown pulse {name!r}"))
    kernel = _KERNELS[name]
    if name == "G":
        if not k > 0:
            return Result(error=SplashError.invalid_argument(f"wavenumber must be positive, got {k}"))
        return Result(functools.partial(kernel, params=params, k=k))
    return Result(functools.partial(kernel, params=params))


def is_regular(name: PulseName, params: PulseParams, margin: float = REGULAR_MARGIN) -> Mask:
    """Predicate selecting points at least `margin` away from the pulse's singular set.

    The split parts are singular at the origin. U is singular on the ring
    rho = zs, z = 0 and its h-cut fills the disk rho < zs at z = 0, so a slab
    around that disk is excluded (around the origin when zs = 0).
    """

    def everywhere(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        return np.ones(np.broadcast(rho, z, ct).shape, dtype=bool)

    def off_origin(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.hypot(rho, z) > margin, np.broadcast(rho, z, ct).shape)

    def off_disk(rho: np.ndarray, z: np.ndarray, ct: np.ndarray) -> np.ndarray:
        near = (np.abs(z) < margin) & (np.abs(rho) < params.zs + margin)
        return np.broadcast_to(~near, np.broadcast(rho, z, ct).shape)

    if name in ("psi+", "psi-", "Psi+", "Psi-"):
        return off_origin
    if name == "U":
        return off_disk
    return everywhere
