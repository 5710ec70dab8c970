from .key_integral import KeyIntegralCheck, key_integral_check
from .norms import (
    QuadratureResult,
    SpectralBound,
    bound_B_nu,
    norm_spatial,
    norm_spectral,
    rho_integrated_density,
    spectral_bound,
    total_energy_scalar,
)
from .special import exp_integral_E1, exp_integral_E1_scaled

__all__ = [
    "KeyIntegralCheck",
    "QuadratureResult",
    "SpectralBound",
    "bound_B_nu",
    "exp_integral_E1",
    "exp_integral_E1_scaled",
    "key_integral_check",
    "norm_spatial",
    "norm_spectral",
    "rho_integrated_density",
    "spectral_bound",
    "total_energy_scalar",
]
