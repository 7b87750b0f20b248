"""
Interacting two-photon eigenstates of the even channel.

Both families are written region by region in the ordered positions
a = min(x1, x2), b = max(x1, x2). A photon on the far side of the impurity
(position > 0) has picked up that side's transmission factor. On the
boundaries x1 = 0 or x2 = 0 the wavefunction is the average of the adjacent
regions.

Usage:
    from app.bethe.states import build_bethe_state, boundary_residuals

    state = build_bethe_state(momentum_views(0.3, -0.2), params)
    residuals = boundary_residuals(state, np.linspace(-5, 5, 41))
    assert residuals.max_abs < 1e-10
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol, Union, runtime_checkable

import numpy as np

from app.core import (
    ExcitationAmplitude,
    ExponentialTerm,
    ImpurityParams,
    InvalidParametersError,
    MomentumPair,
    TwoPhotonAmplitude,
    step,
    to_positions,
)
from app.single_photon import one_mode_t
from app.utils import setup_logging

logger = setup_logging()

ArrayLike = Union[float, np.ndarray]

# Plane-wave prefactor of the Bethe wavefunction, fixed so that the in-state is
# the normalized W basis state.
BETHE_PREFACTOR = 1.0 / (2.0 * math.pi * math.sqrt(2.0))

RegionValue = Callable[[np.ndarray, np.ndarray, int, int], np.ndarray]


@runtime_checkable
class InteractingState(Protocol):
    """Common surface of Bethe and bound eigenstates."""

    params: ImpurityParams

    @property
    def energy(self) -> float: ...

    @property
    def eigenvalue(self) -> complex: ...

    @property
    def excitation(self) -> ExcitationAmplitude: ...

    def region_value(self, a: np.ndarray, b: np.ndarray, side_a: int, side_b: int) -> np.ndarray:
        """Wavefunction for a <= b evaluated with explicit region signs (+1 or -1)."""
        ...

    def wavefunction(self, x1: ArrayLike, x2: ArrayLike) -> ArrayLike: ...


def region_average(region_value: RegionValue, x1: ArrayLike, x2: ArrayLike) -> ArrayLike:
    """Evaluate a region-wise wavefunction, averaging adjacent regions on x1 = 0 or x2 = 0."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    a = np.minimum(x1, x2)
    b = np.maximum(x1, x2)
    total = np.zeros(np.broadcast(a, b).shape, dtype=complex)
    for side_a in (-1, 1):
        weight_a = step(side_a * a)
        for side_b in (-1, 1):
            weight = weight_a * step(side_b * b)
            if not np.any(weight):
                continue
            total = total + weight * region_value(a, b, side_a, side_b)
    return total[()] if total.ndim == 0 else total


@dataclass(frozen=True)
class BetheCoefficients:
    """Plane-wave coefficients per region.

    ``b*`` multiplies exp(i(k a + p b)) and ``a*`` multiplies exp(i(p a + k b)).
    Region 3 is a < b < 0, region 2 is a < 0 < b, region 1 is 0 < a < b.
    """

    prefactor: float
    a3: complex
    b3: complex
    a2: complex
    b2: complex
    a1: complex
    b1: complex

    @property
    def ratio(self) -> complex:
        """B3 / A3 = (k - p - i Gamma) / (k - p + i Gamma)."""
        return self.b3 / self.a3


def bethe_coefficients(pair: MomentumPair, params: ImpurityParams) -> BetheCoefficients:
    norm = math.sqrt(4.0 * pair.delta**2 + params.gamma**2)
    a3 = complex(2.0 * pair.delta, params.gamma) / norm
    b3 = complex(2.0 * pair.delta, -params.gamma) / norm
    t_k = complex(one_mode_t(pair.k, params))
    t_p = complex(one_mode_t(pair.p, params))
    return BetheCoefficients(
        prefactor=BETHE_PREFACTOR,
        a3=a3,
        b3=b3,
        a2=t_k * a3,
        b2=t_p * b3,
        a1=t_k * t_p * a3,
        b1=t_k * t_p * b3,
    )


@dataclass(frozen=True)
class BetheState:
    """Extended eigenstate labelled by (k, p), eigenvalue t_k * t_p."""

    pair: MomentumPair
    params: ImpurityParams
    coefficients: BetheCoefficients

    @property
    def energy(self) -> float:
        return self.pair.energy

    @property
    def t_k(self) -> complex:
        return complex(one_mode_t(self.pair.k, self.params))

    @property
    def t_p(self) -> complex:
        return complex(one_mode_t(self.pair.p, self.params))

    @property
    def eigenvalue(self) -> complex:
        return self.t_k * self.t_p

    def region_value(self, a: np.ndarray, b: np.ndarray, side_a: int, side_b: int) -> np.ndarray:
        k, p = self.pair.k, self.pair.p
        c = self.coefficients
        if side_a < 0 and side_b < 0:
            b_coeff, a_coeff = c.b3, c.a3
        elif side_a < 0 < side_b:
            b_coeff, a_coeff = c.b2, c.a2
        elif side_a > 0 and side_b > 0:
            b_coeff, a_coeff = c.b1, c.a1
        else:
            # a > 0 > b only enters the average at the origin
            b_coeff, a_coeff = self.t_k * c.b3, self.t_p * c.a3
        first = b_coeff * np.exp(1j * (k * a + p * b))
        second = a_coeff * np.exp(1j * (p * a + k * b))
        return c.prefactor * (first + second)

    def wavefunction(self, x1: ArrayLike, x2: ArrayLike) -> ArrayLike:
        return region_average(self.region_value, x1, x2)

    @property
    def excitation(self) -> ExcitationAmplitude:
        k, p = self.pair.k, self.pair.p
        omega, half_width = self.params.omega, 0.5j * self.params.gamma
        c = self.coefficients
        scale = math.sqrt(2.0) * self.params.coupling * c.prefactor
        left = (
            ExponentialTerm(scale * c.b3 / (p - omega + half_width), k),
            ExponentialTerm(scale * c.a3 / (k - omega + half_width), p),
        )
        right = (
            ExponentialTerm(scale * c.b2 / (k - omega + half_width), p),
            ExponentialTerm(scale * c.a2 / (p - omega + half_width), k),
        )
        return ExcitationAmplitude(left=left, right=right, tag="bethe")

    @property
    def amplitude(self) -> TwoPhotonAmplitude:
        return TwoPhotonAmplitude(
            evaluator=lambda x_c, x: self.wavefunction(*to_positions(x_c, x)), tag="bethe"
        )


def build_bethe_state(pair: MomentumPair, params: ImpurityParams) -> BetheState:
    """Construct the extended eigenstate for incoming momenta (k, p).

    Args:
        pair: Incoming momenta; any real values.
        params: Impurity parameters.

    Returns:
        BetheState. For k == p the wavefunction vanishes identically (a warning
        is logged); the object is still returned.
    """
    if pair.is_degenerate:
        logger.warning("Bethe state at k == p = %s vanishes identically", pair.k)
    return BetheState(pair=pair, params=params, coefficients=bethe_coefficients(pair, params))


@dataclass(frozen=True)
class BoundInteractingState:
    """Two-photon bound state at total energy E, eigenvalue t_E.

    Left unnormalized: the region a < b < 0 carries unit amplitude. Multiply
    by ``normalization`` to match the bound basis state.
    """

    total_energy: float
    params: ImpurityParams

    @property
    def energy(self) -> float:
        return self.total_energy

    @property
    def _denominator(self) -> complex:
        return complex(self.params.detuning(self.total_energy), 2.0 * self.params.gamma)

    @property
    def eigenvalue(self) -> complex:
        numerator = complex(self.params.detuning(self.total_energy), -2.0 * self.params.gamma)
        return numerator / self._denominator

    @property
    def mixed_region_factor(self) -> complex:
        """Amplitude of the region with one photon on each side."""
        return self.params.detuning(self.total_energy) / self._denominator

    @property
    def normalization(self) -> float:
        return math.sqrt(self.params.gamma / (4.0 * math.pi))

    def region_value(self, a: np.ndarray, b: np.ndarray, side_a: int, side_b: int) -> np.ndarray:
        if side_a < 0 and side_b < 0:
            factor = 1.0
        elif side_a > 0 and side_b > 0:
            factor = self.eigenvalue
        else:
            factor = self.mixed_region_factor
        return factor * np.exp(
            0.5j * self.total_energy * (a + b) - 0.5 * self.params.gamma * (b - a)
        )

    def wavefunction(self, x1: ArrayLike, x2: ArrayLike) -> ArrayLike:
        return region_average(self.region_value, x1, x2)

    @property
    def excitation(self) -> ExcitationAmplitude:
        coefficient = 2.0 * math.sqrt(2.0) * self.params.coupling / self._denominator
        half_energy, half_width = 0.5 * self.total_energy, 0.5 * self.params.gamma
        return ExcitationAmplitude(
            left=(ExponentialTerm(coefficient, complex(half_energy, -half_width)),),
            right=(ExponentialTerm(coefficient, complex(half_energy, half_width)),),
            tag="bound",
        )

    @property
    def amplitude(self) -> TwoPhotonAmplitude:
        return TwoPhotonAmplitude(
            evaluator=lambda x_c, x: self.wavefunction(*to_positions(x_c, x)), tag="bound"
        )


def build_bound_state(energy: float, params: ImpurityParams) -> BoundInteractingState:
    if not math.isfinite(energy):
        raise InvalidParametersError(f"bound-state energy must be finite, got {energy!r}")
    return BoundInteractingState(total_energy=float(energy), params=params)


def g_limit(state: InteractingState, x: ArrayLike, side: int) -> np.ndarray:
    """g(x, 0+) for side=+1 or g(x, 0-) for side=-1, at x != 0."""
    x = np.asarray(x, dtype=float)
    zero = np.zeros_like(x)
    on_left = state.region_value(x, zero, -1, side)
    on_right = state.region_value(zero, x, side, 1)
    return np.where(x < 0, on_left, on_right)


@dataclass(frozen=True)
class BoundaryResiduals:
    """Residuals of the two impurity boundary conditions sampled at x != 0."""

    x: np.ndarray
    jump: np.ndarray
    motion: np.ndarray

    @property
    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.jump)), np.max(np.abs(self.motion))))


def boundary_residuals(state: InteractingState, x: ArrayLike) -> BoundaryResiduals:
    """Check the jump condition and the atom equation of motion.

    jump:   -i [g(x, 0+) - g(x, 0-)] + (V / sqrt2) e(x) = 0
    motion: -i e'(x) - (E - omega) e(x) + (V / sqrt2) [g(x, 0+) + g(x, 0-)] = 0

    Points at x = 0 are dropped.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    x = x[x != 0.0]
    params = state.params
    coupling = params.coupling / math.sqrt(2.0)
    upper = g_limit(state, x, 1)
    lower = g_limit(state, x, -1)
    excitation = state.excitation
    e_values = excitation(x)
    jump = -1j * (upper - lower) + coupling * e_values
    motion = (
        -1j * excitation.derivative(x)
        - (state.energy - params.omega) * e_values
        + coupling * (upper + lower)
    )
    return BoundaryResiduals(x=x, jump=np.asarray(jump), motion=np.asarray(motion))


def _readoff_terms(state: InteractingState, x1: np.ndarray, x2: np.ndarray) -> tuple:
    excitation = state.excitation
    energy = state.energy
    first = np.exp(1j * energy * x1) * excitation(x2 - x1)
    second = np.exp(1j * energy * x2) * excitation(x1 - x2)
    return first, second


def in_state(state: InteractingState, x1: ArrayLike, x2: ArrayLike) -> ArrayLike:
    """Retarded read-off.

    g + (i V / sqrt2) [theta(x1) e^{iEx1} e(x2-x1) + theta(x2) e^{iEx2} e(x1-x2)]
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    first, second = _readoff_terms(state, x1, x2)
    scale = 1j * state.params.coupling / math.sqrt(2.0)
    correction = scale * (step(x1) * first + step(x2) * second)
    return state.wavefunction(x1, x2) + correction


def out_state(state: InteractingState, x1: ArrayLike, x2: ArrayLike) -> ArrayLike:
    """Advanced read-off; equals eigenvalue * in_state.

    g - (i V / sqrt2) [theta(-x1) e^{iEx1} e(x2-x1) + theta(-x2) e^{iEx2} e(x1-x2)]
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    first, second = _readoff_terms(state, x1, x2)
    scale = 1j * state.params.coupling / math.sqrt(2.0)
    correction = scale * (step(-x1) * first + step(-x2) * second)
    return state.wavefunction(x1, x2) - correction
