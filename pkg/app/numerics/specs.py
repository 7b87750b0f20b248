"""Tolerance and wavepacket specifications for the quadrature layer."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

from app.config import QuadratureSettings, WavepacketSettings
from app.core import ImpurityParams, InvalidParametersError, MomentumPair

logger = logging.getLogger(__name__)

# Edge weight |packet(L)|**2 / |packet(0)|**2 above which the box is reported as too small.
BOX_EDGE_WEIGHT_LIMIT = 1e-3


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for adaptive integration.

    ``max_depth`` bounds the bisection depth; QUADPACK counts subintervals
    instead, see ``subinterval_limit``.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_depth: int = 40
    tail_cutoff: float = 1e-12

    def __post_init__(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise InvalidParametersError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise InvalidParametersError("max_depth must be at least 1")
        if not 0 < self.tail_cutoff < 1:
            raise InvalidParametersError("tail_cutoff must lie in (0, 1)")

    @property
    def subinterval_limit(self) -> int:
        return 25 * self.max_depth

    def tolerance_for(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    @classmethod
    def from_settings(cls, settings: QuadratureSettings) -> "QuadratureSpec":
        return cls(
            abs_tol=settings.abs_tol,
            rel_tol=settings.rel_tol,
            max_depth=settings.max_depth,
            tail_cutoff=settings.tail_cutoff,
        )


@dataclass(frozen=True)
class WavepacketSpec:
    """Gaussian momentum-space smearing used to regularize delta-normalized states.

    The profile is (2*pi*sigma**2)**(-1/4) * exp(-(q - q0)**2 / (4*sigma**2)) in
    both E and Delta, so its squared modulus integrates to one. ``center`` of
    None means "centered on the state's own label".
    """

    sigma: float = 0.05
    box_halfwidth: float = 40.0
    center: Optional[MomentumPair] = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.sigma) or self.sigma <= 0:
            raise InvalidParametersError("wavepacket sigma must be positive")
        if not math.isfinite(self.box_halfwidth) or self.box_halfwidth <= 0:
            raise InvalidParametersError("box_halfwidth must be positive")

    @property
    def edge_weight(self) -> float:
        """Relative weight of the smeared relative-coordinate packet at the box edge."""
        return math.exp(-2.0 * (self.sigma * self.box_halfwidth) ** 2)

    def check_box(self) -> bool:
        if self.edge_weight > BOX_EDGE_WEIGHT_LIMIT:
            logger.warning(
                "Wavepacket box half-width %.3g is small for sigma %.3g (edge weight %.2e)",
                self.box_halfwidth,
                self.sigma,
                self.edge_weight,
            )
            return False
        return True

    @classmethod
    def from_settings(
        cls,
        settings: WavepacketSettings,
        params: ImpurityParams,
        center: Optional[MomentumPair] = None,
    ) -> "WavepacketSpec":
        """Scale the settings (given in units of gamma) to absolute values."""
        return cls(
            sigma=settings.sigma * params.gamma,
            box_halfwidth=settings.box_halfwidth / params.gamma,
            center=center,
        )
