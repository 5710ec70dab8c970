from .energetics import (
    BackflowReport,
    FieldDiagnostics,
    StrangeIntegral,
    backflow_scan,
    energetics_field,
    energy_conservation_residual,
    scalar_energetics,
    strange_integral,
)
from .geometry import (
    PeakGeometry,
    PeakSearch,
    SplitPeak,
    asymptotic_peak_shift,
    peak_geometry,
    peak_shift,
    split_peaks,
)
from .limits import (
    DecayFit,
    LimitResult,
    ModelFit,
    ProfileSeries,
    classify_samples,
    coefficient_C,
    coefficient_C_parts,
    decay_fit,
    limit_probe,
    peak_profile,
    sample_ray,
)

__all__ = [
    "BackflowReport",
    "DecayFit",
    "FieldDiagnostics",
    "LimitResult",
    "ModelFit",
    "PeakGeometry",
    "PeakSearch",
    "ProfileSeries",
    "SplitPeak",
    "StrangeIntegral",
    "asymptotic_peak_shift",
    "backflow_scan",
    "energetics_field",
    "classify_samples",
    "coefficient_C",
    "coefficient_C_parts",
    "decay_fit",
    "energy_conservation_residual",
    "limit_probe",
    "peak_geometry",
    "peak_profile",
    "peak_shift",
    "sample_ray",
    "scalar_energetics",
    "split_peaks",
    "strange_integral",
]
