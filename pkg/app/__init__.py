# Waveguide two-photon scattering package
from .config import load_settings, validate_settings, Settings
from .core import (
    ImpurityParams,
    MomentumPair,
    ScatteringError,
    make_params,
    momentum_views,
)
