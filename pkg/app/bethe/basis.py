"""
Two-photon basis wavefunctions of the interacting (even) channel.

All states factor as exp(i E x_c) times a relative-coordinate envelope:

    S: (sqrt2 / 2pi) cos(Delta x)
    A: (sqrt2 i / 2pi) sgn(x) sin(Delta x)
    W: (sqrt2 / 2pi) [2 Delta cos(Delta x) - Gamma sgn(x) sin(Delta x)] / sqrt(4 Delta^2 + Gamma^2)
    B: sqrt(Gamma / 4pi) exp(-Gamma |x| / 2)        (labelled by E only)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from app.core import (
    ImpurityParams,
    InvalidParametersError,
    MomentumPair,
    TwoPhotonAmplitude,
    sgn,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

PLANE_WAVE_NORM = math.sqrt(2.0) / (2.0 * math.pi)


class BasisKind(str, Enum):
    """Kinds of two-photon basis states."""

    S = "S"
    A = "A"
    W = "W"
    BOUND = "B"

    @property
    def is_extended(self) -> bool:
        return self is not BasisKind.BOUND


def relative_envelope(
    kind: BasisKind, delta: ArrayLike, x: ArrayLike, params: ImpurityParams
) -> np.ndarray:
    """Relative-coordinate factor of a basis state (the exp(i E x_c) factor removed).

    Broadcasts over ``delta`` and ``x``; ``delta`` is ignored for bound states.
    """
    delta = np.asarray(delta, dtype=float)
    x = np.asarray(x, dtype=float)
    if kind is BasisKind.S:
        return PLANE_WAVE_NORM * np.cos(delta * x) + 0j
    if kind is BasisKind.A:
        return 1j * PLANE_WAVE_NORM * sgn(x) * np.sin(delta * x)
    if kind is BasisKind.W:
        gamma = params.gamma
        norm = np.sqrt(4.0 * delta**2 + gamma**2)
        numerator = 2.0 * delta * np.cos(delta * x) - gamma * sgn(x) * np.sin(delta * x)
        return PLANE_WAVE_NORM * numerator / norm + 0j
    if kind is BasisKind.BOUND:
        envelope = math.sqrt(params.gamma / (4.0 * math.pi)) * np.exp(-0.5 * params.gamma * np.abs(x))
        return np.broadcast_to(envelope, np.broadcast(delta, x).shape) + 0j
    raise InvalidParametersError(f"unknown basis kind: {kind!r}")


def _center_of_mass(energy: float, x_c: ArrayLike) -> np.ndarray:
    return np.exp(1j * energy * np.asarray(x_c, dtype=float))


def s_basis(pair: MomentumPair, x_c: ArrayLike, x: ArrayLike) -> np.ndarray:
    """Symmetric plane-wave state S_{k,p}."""
    return _center_of_mass(pair.energy, x_c) * PLANE_WAVE_NORM * np.cos(pair.delta * np.asarray(x))


def a_basis(pair: MomentumPair, x_c: ArrayLike, x: ArrayLike) -> np.ndarray:
    """Sign-weighted antisymmetric state A_{k,p}; zero at x = 0."""
    x = np.asarray(x, dtype=float)
    return _center_of_mass(pair.energy, x_c) * 1j * PLANE_WAVE_NORM * sgn(x) * np.sin(pair.delta * x)


def w_basis(pair: MomentumPair, x_c: ArrayLike, x: ArrayLike, params: ImpurityParams) -> np.ndarray:
    """Normalized extended eigenchannel (2 Delta S + i Gamma A) / sqrt(4 Delta^2 + Gamma^2).

    Vanishes identically when k == p and flips sign under k <-> p.
    """
    return _center_of_mass(pair.energy, x_c) * relative_envelope(BasisKind.W, pair.delta, x, params)


def bound_basis(energy: float, x_c: ArrayLike, x: ArrayLike, params: ImpurityParams) -> np.ndarray:
    """Two-photon bound state B_E."""
    return _center_of_mass(energy, x_c) * relative_envelope(BasisKind.BOUND, 0.0, x, params)


@dataclass(frozen=True)
class BasisState:
    """A labelled basis state: (kind, label) plus its evaluator.

    Extended kinds carry a ``pair``; the bound kind carries ``energy``.
    A W state with k == p is kept as an explicit zero state (``is_zero``).
    """

    kind: BasisKind
    params: ImpurityParams
    pair: Optional[MomentumPair] = None
    bound_energy: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind.is_extended and self.pair is None:
            raise InvalidParametersError(f"{self.kind.value} state needs a momentum pair")
        if self.kind is BasisKind.BOUND and self.bound_energy is None:
            raise InvalidParametersError("bound state needs an energy label")
        if self.is_zero:
            logger.warning("W state with k == p = %s is identically zero", self.pair.k)

    @property
    def energy(self) -> float:
        return self.pair.energy if self.pair is not None else float(self.bound_energy)

    @property
    def delta(self) -> float:
        """Relative label; 0.0 for the bound state, which has none."""
        return self.pair.delta if self.pair is not None else 0.0

    @property
    def is_zero(self) -> bool:
        return self.kind is BasisKind.W and self.pair is not None and self.pair.is_degenerate

    def __call__(self, x_c: ArrayLike, x: ArrayLike) -> np.ndarray:
        return _center_of_mass(self.energy, x_c) * relative_envelope(
            self.kind, self.delta, x, self.params
        )

    @property
    def amplitude(self) -> TwoPhotonAmplitude:
        return TwoPhotonAmplitude(evaluator=self.__call__, tag=self.kind.value, symmetric=True)

    @classmethod
    def extended(cls, kind: BasisKind, pair: MomentumPair, params: ImpurityParams) -> "BasisState":
        return cls(kind=kind, params=params, pair=pair)

    @classmethod
    def bound(cls, energy: float, params: ImpurityParams) -> "BasisState":
        return cls(kind=BasisKind.BOUND, params=params, bound_energy=float(energy))
