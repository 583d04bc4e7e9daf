"""Simulation of time correlations and HOM interference for photon pairs
whose idler is frequency-converted before detection."""

from .closed_forms import ClosedFormReport, compare_against_oracle
from .config import RunConfig, parse_config, serialize_config
from .conversion import ConversionChannel, apply_conversion, flat_channel, phase_matched_channel
from .correlation import (
    CorrelationTrace, DetectorParams, fwhm, g2_detector_averaged_numeric, g2_trace, g2_two_time_numeric,
    peak_position,
)
from .errors import (
    BiphotonError, ConfigError, NoPeakError, NumericalError, QuadratureError, ShallowDipError,
    SupportMismatchError, UnknownKeyError,
)
from .hom import HomResult, HomScan, hom_coincidence_numeric, hom_fwhm, hom_trace, visibility_sweep
from .spectral_core import (
    FrequencyGrid2D, GaussianSourceParams, Jsa, default_grid, gaussian_jsa, jsa_norm, make_frequency_grid,
)

__version__ = "0.1.0"

__all__ = [
    "BiphotonError",
    "ClosedFormReport",
    "ConfigError",
    "ConversionChannel",
    "CorrelationTrace",
    "DetectorParams",
    "FrequencyGrid2D",
    "GaussianSourceParams",
    "HomResult",
    "HomScan",
    "Jsa",
    "NoPeakError",
    "NumericalError",
    "QuadratureError",
    "RunConfig",
    "ShallowDipError",
    "SupportMismatchError",
    "UnknownKeyError",
    "apply_conversion",
    "compare_against_oracle",
    "default_grid",
    "flat_channel",
    "fwhm",
    "g2_detector_averaged_numeric",
    "g2_trace",
    "g2_two_time_numeric",
    "gaussian_jsa",
    "hom_coincidence_numeric",
    "hom_fwhm",
    "hom_trace",
    "jsa_norm",
    "make_frequency_grid",
    "parse_config",
    "peak_position",
    "phase_matched_channel",
    "serialize_config",
    "visibility_sweep",
]
