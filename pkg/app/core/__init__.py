"""
Core types shared by every scattering module.

Modules:
- params: impurity parameters (omega, gamma, coupling)
- momenta: two-photon momentum labels with (E, Delta) views
- amplitudes: two-photon and excitation amplitude containers
- errors: exception hierarchy
"""

from app.core.errors import (
    ExportError,
    InvalidParametersError,
    PrincipalValueError,
    QuadratureError,
    ScatteringError,
    UnsupportedOverlapError,
)
from app.core.params import DEFAULT_GAMMA, DEFAULT_OMEGA, ImpurityParams, make_params
from app.core.momenta import MomentumPair, momentum_views
from app.core.amplitudes import (
    ExcitationAmplitude,
    ExponentialTerm,
    TwoPhotonAmplitude,
    sgn,
    step,
    to_positions,
    to_relative,
)

__all__ = [
    "DEFAULT_GAMMA",
    "DEFAULT_OMEGA",
    "ExcitationAmplitude",
    "ExponentialTerm",
    "ExportError",
    "ImpurityParams",
    "InvalidParametersError",
    "MomentumPair",
    "PrincipalValueError",
    "QuadratureError",
    "ScatteringError",
    "TwoPhotonAmplitude",
    "UnsupportedOverlapError",
    "make_params",
    "momentum_views",
    "sgn",
    "step",
    "to_positions",
    "to_relative",
]
