from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import List

try:
    # Load .env if python-dotenv is installed; fail silently otherwise.
    from dotenv import load_dotenv

    load_dotenv()
except Exception:
    pass


SUPPORTED_FORMATS = ("csv", "json")


@dataclass
class ImpuritySettings:
    omega: float = 0.0
    gamma: float = 1.0

    @classmethod
    def from_env(cls) -> "ImpuritySettings":
        """Load impurity parameters from environment variables."""
        return cls(
            omega=float(os.getenv("WAVEGUIDE_OMEGA", "0.0")),
            gamma=float(os.getenv("WAVEGUIDE_GAMMA", "1.0")),
        )


@dataclass
class QuadratureSettings:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_depth: int = 40
    tail_cutoff: float = 1e-12

    @classmethod
    def from_env(cls) -> "QuadratureSettings":
        """Load quadrature tolerances from environment variables."""
        return cls(
            abs_tol=float(os.getenv("QUADRATURE_ABS_TOL", "1e-10")),
            rel_tol=float(os.getenv("QUADRATURE_REL_TOL", "1e-8")),
            max_depth=int(os.getenv("QUADRATURE_MAX_DEPTH", "40")),
            tail_cutoff=float(os.getenv("QUADRATURE_TAIL_CUTOFF", "1e-12")),
        )


@dataclass
class WavepacketSettings:
    sigma: float = 0.05  # momentum width, in units of gamma
    box_halfwidth: float = 40.0  # relative-coordinate box, in units of 1/gamma

    @classmethod
    def from_env(cls) -> "WavepacketSettings":
        """Load wavepacket smearing defaults from environment variables."""
        return cls(
            sigma=float(os.getenv("WAVEPACKET_SIGMA", "0.05")),
            box_halfwidth=float(os.getenv("WAVEPACKET_BOX_HALFWIDTH", "40.0")),
        )


@dataclass
class OutputSettings:
    output_dir: str = "output"
    default_format: str = "csv"
    max_workers: int = 4

    @classmethod
    def from_env(cls) -> "OutputSettings":
        """Load export settings from environment variables."""
        return cls(
            output_dir=os.getenv("WAVEGUIDE_OUTPUT_DIR", "output"),
            default_format=os.getenv("WAVEGUIDE_OUTPUT_FORMAT", "csv").lower(),
            max_workers=int(os.getenv("WAVEGUIDE_MAX_WORKERS", "4")),
        )


@dataclass
class Settings:
    impurity: ImpuritySettings
    quadrature: QuadratureSettings
    wavepacket: WavepacketSettings
    output: OutputSettings


def load_settings() -> Settings:
    """Load configuration from environment variables."""
    return Settings(
        impurity=ImpuritySettings.from_env(),
        quadrature=QuadratureSettings.from_env(),
        wavepacket=WavepacketSettings.from_env(),
        output=OutputSettings.from_env(),
    )


def validate_settings(settings: Settings) -> List[str]:
    """Return a list of human-readable configuration problems (empty if valid)."""
    errors: List[str] = []

    if not math.isfinite(settings.impurity.omega):
        errors.append("WAVEGUIDE_OMEGA must be a finite number.")
    if not math.isfinite(settings.impurity.gamma) or settings.impurity.gamma <= 0:
        errors.append("WAVEGUIDE_GAMMA must be a positive number.")

    quad = settings.quadrature
    if quad.abs_tol <= 0 or quad.rel_tol <= 0:
        errors.append("QUADRATURE_ABS_TOL and QUADRATURE_REL_TOL must be positive.")
    if quad.max_depth < 1:
        errors.append("QUADRATURE_MAX_DEPTH must be at least 1.")
    if not 0 < quad.tail_cutoff < 1:
        errors.append("QUADRATURE_TAIL_CUTOFF must lie in (0, 1).")

    if settings.wavepacket.sigma <= 0:
        errors.append("WAVEPACKET_SIGMA must be positive.")
    if settings.wavepacket.box_halfwidth <= 0:
        errors.append("WAVEPACKET_BOX_HALFWIDTH must be positive.")

    if settings.output.default_format not in SUPPORTED_FORMATS:
        errors.append(
            f"WAVEGUIDE_OUTPUT_FORMAT must be one of {', '.join(SUPPORTED_FORMATS)}."
        )
    if settings.output.max_workers < 1:
        errors.append("WAVEGUIDE_MAX_WORKERS must be at least 1.")

    return errors
