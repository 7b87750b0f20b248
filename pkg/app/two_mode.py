"""
Two-mode (right/left moving) two-photon out-states and momentum distributions.

Both photons come in from the left with energies k, p; E = k + p,
D = (k - p) / 2, z = E - 2 omega + i Gamma. The outgoing wavefunction splits
into both transmitted (t2), both reflected (r2) and one of each (rt):

    t2 = e^{i E x_c} (sqrt2/2pi) [tb_k tb_p cos(D x) - Gamma^2/(4D^2 - z^2) e^{i(E-2w)|x|/2 - Gamma|x|/2}]
    r2 = e^{-i E x_c} (sqrt2/2pi) [rb_k rb_p cos(D x) - Gamma^2/(4D^2 - z^2) e^{...}]
    rt = (1/2pi) e^{i E x/2} [tb_k rb_p e^{2iD x_c} + rb_k tb_p e^{-2iD x_c}
                              - 2 Gamma^2/(4D^2 - z^2) e^{i(E-2w)|x_c| - Gamma|x_c|}]

In rt the transmitted photon sits at x1 and the reflected one at x2, so the
plane-wave phase lives in x and the correlated envelope in x_c.

Usage:
    from app.two_mode import build_out_state

    state = build_out_state(energy=0.0, delta=0.0, params=params)
    print(abs(state.r2(0.0, 0.0)))
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from app.bethe.basis import PLANE_WAVE_NORM, s_basis
from app.bethe.smatrix import SMatrixElement, background_B, out_state_relative
from app.core import (
    ImpurityParams,
    InvalidParametersError,
    MomentumPair,
    TwoPhotonAmplitude,
)
from app.single_photon import one_mode_t, two_mode_coeffs

ArrayLike = Union[float, np.ndarray]


class OutKind(str, Enum):
    T2 = "t2"
    R2 = "r2"
    RT = "rt"


class Sector(str, Enum):
    """Momentum-space sectors of the outgoing pair."""

    RR = "RR"
    LL = "LL"
    RL = "RL"


def _coefficients(
    energy: float, delta: float, params: ImpurityParams
) -> Tuple[complex, complex, complex, complex]:
    pair = MomentumPair.from_energy(energy, delta)
    t_bar_k, r_bar_k = two_mode_coeffs(pair.k, params)
    t_bar_p, r_bar_p = two_mode_coeffs(pair.p, params)
    return complex(t_bar_k), complex(r_bar_k), complex(t_bar_p), complex(r_bar_p)


def _bound_weight(energy: float, delta: float, params: ImpurityParams) -> complex:
    """Gamma^2 / (4 D^2 - z^2)."""
    z = complex(params.detuning(energy), params.gamma)
    return params.gamma**2 / (4.0 * delta**2 - z**2)


def _bound_decay(energy: float, distance: ArrayLike, params: ImpurityParams) -> np.ndarray:
    distance = np.abs(np.asarray(distance, dtype=float))
    return np.exp(1j * params.detuning(energy) * distance - params.gamma * distance)


def t2(
    energy: float, delta: float, x_c: ArrayLike, x: ArrayLike, params: ImpurityParams
) -> ArrayLike:
    """Both photons transmitted."""
    t_bar_k, _, t_bar_p, _ = _coefficients(energy, delta, params)
    x = np.asarray(x, dtype=float)
    correlated = _bound_weight(energy, delta, params) * _bound_decay(energy, 0.5 * x, params)
    envelope = t_bar_k * t_bar_p * np.cos(delta * x) - correlated
    return np.exp(1j * energy * np.asarray(x_c, dtype=float)) * PLANE_WAVE_NORM * envelope


def r2(
    energy: float, delta: float, x_c: ArrayLike, x: ArrayLike, params: ImpurityParams
) -> ArrayLike:
    """Both photons reflected; vanishes at x = 0 for every (E, D)."""
    _, r_bar_k, _, r_bar_p = _coefficients(energy, delta, params)
    x = np.asarray(x, dtype=float)
    correlated = _bound_weight(energy, delta, params) * _bound_decay(energy, 0.5 * x, params)
    envelope = r_bar_k * r_bar_p * np.cos(delta * x) - correlated
    return np.exp(-1j * energy * np.asarray(x_c, dtype=float)) * PLANE_WAVE_NORM * envelope


def rt(
    energy: float, delta: float, x_c: ArrayLike, x: ArrayLike, params: ImpurityParams
) -> ArrayLike:
    """One photon transmitted (at x1), one reflected (at x2)."""
    t_bar_k, r_bar_k, t_bar_p, r_bar_p = _coefficients(energy, delta, params)
    x_c = np.asarray(x_c, dtype=float)
    x = np.asarray(x, dtype=float)
    envelope = (
        t_bar_k * r_bar_p * np.exp(2j * delta * x_c)
        + r_bar_k * t_bar_p * np.exp(-2j * delta * x_c)
        - 2.0 * _bound_weight(energy, delta, params) * _bound_decay(energy, x_c, params)
    )
    return np.exp(0.5j * energy * x) / (2.0 * math.pi) * envelope


@dataclass(frozen=True)
class TwoModeOutState:
    """The three outgoing amplitudes for incoming labels (E, D)."""

    energy: float
    delta: float
    params: ImpurityParams

    @property
    def t2(self) -> TwoPhotonAmplitude:
        return TwoPhotonAmplitude(
            evaluator=lambda x_c, x: t2(self.energy, self.delta, x_c, x, self.params), tag="t2"
        )

    @property
    def r2(self) -> TwoPhotonAmplitude:
        return TwoPhotonAmplitude(
            evaluator=lambda x_c, x: r2(self.energy, self.delta, x_c, x, self.params), tag="r2"
        )

    @property
    def rt(self) -> TwoPhotonAmplitude:
        return TwoPhotonAmplitude(
            evaluator=lambda x_c, x: rt(self.energy, self.delta, x_c, x, self.params),
            tag="rt",
            symmetric=False,
        )

    @property
    def labels(self) -> Tuple[float, float]:
        return self.energy, self.delta


def build_out_state(energy: float, delta: float, params: ImpurityParams) -> TwoModeOutState:
    if not (math.isfinite(energy) and math.isfinite(delta)):
        raise InvalidParametersError("two-mode labels must be finite")
    return TwoModeOutState(energy=float(energy), delta=float(delta), params=params)


# ==============================================================================
# Assembly from even/odd pieces
# ==============================================================================


def _ee_piece(
    pair: MomentumPair, x_c: ArrayLike, x: ArrayLike, params: ImpurityParams
) -> np.ndarray:
    """Interacting even-even out-state exp(i E x_c) times its relative envelope."""
    return np.exp(1j * pair.energy * np.asarray(x_c, dtype=float)) * out_state_relative(
        pair.energy, pair.delta, x, params
    )


def _odd_sine(pair: MomentumPair, x_c: ArrayLike, x: ArrayLike) -> np.ndarray:
    """i (sqrt2/2pi) exp(i E x_c) sin(D x): the antisymmetrized even-odd plane wave."""
    return (
        1j
        * PLANE_WAVE_NORM
        * np.exp(1j * pair.energy * np.asarray(x_c, dtype=float))
        * np.sin(pair.delta * np.asarray(x, dtype=float))
    )


def assemble_out_state(
    kind: Union[OutKind, str],
    energy: float,
    delta: float,
    x_c: ArrayLike,
    x: ArrayLike,
    params: ImpurityParams,
) -> ArrayLike:
    """Rebuild t2, r2 or rt from the even-even, odd-odd and even-odd out-states.

    The odd-odd piece is free (S-matrix 1) and each even-odd piece carries a
    single one-photon phase t. With (x_c', x') the coordinates the piece is
    evaluated at:

        t2 = [ee + (1 + t_k + t_p) S] / 4                    at (x_c, x)
        r2 = [ee + (1 - t_k - t_p) S] / 4                    at (-x_c, -x)
        rt = [ee - S + (t_p - t_k) sin-wave] / (2 sqrt2)     at (x/2, 2 x_c)
    """
    kind = OutKind(kind)
    pair = MomentumPair.from_energy(energy, delta)
    t_k = complex(one_mode_t(pair.k, params))
    t_p = complex(one_mode_t(pair.p, params))
    x_c = np.asarray(x_c, dtype=float)
    x = np.asarray(x, dtype=float)

    if kind is OutKind.T2:
        return 0.25 * (_ee_piece(pair, x_c, x, params) + (1.0 + t_k + t_p) * s_basis(pair, x_c, x))
    if kind is OutKind.R2:
        return 0.25 * (
            _ee_piece(pair, -x_c, -x, params) + (1.0 - t_k - t_p) * s_basis(pair, -x_c, -x)
        )
    center, relative = 0.5 * x, 2.0 * x_c
    return (
        _ee_piece(pair, center, relative, params)
        - s_basis(pair, center, relative)
        + (t_p - t_k) * _odd_sine(pair, center, relative)
    ) / (2.0 * math.sqrt(2.0))


def on_resonance_t2(x_c: ArrayLike, x: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """t2 at E = 2 omega, D = 0: -(sqrt2/2pi) e^{2i omega x_c} e^{-Gamma|x|/2}."""
    x = np.asarray(x, dtype=float)
    phase = np.exp(2j * params.omega * np.asarray(x_c, dtype=float))
    return -PLANE_WAVE_NORM * phase * np.exp(-0.5 * params.gamma * np.abs(x))


def on_resonance_r2(x_c: ArrayLike, x: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """r2 at E = 2 omega, D = 0: (sqrt2/2pi) e^{-2i omega x_c} (1 - e^{-Gamma|x|/2})."""
    x = np.asarray(x, dtype=float)
    phase = np.exp(-2j * params.omega * np.asarray(x_c, dtype=float))
    return PLANE_WAVE_NORM * phase * (1.0 - np.exp(-0.5 * params.gamma * np.abs(x)))


def on_resonance_rt(x_c: ArrayLike, x: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """rt at E = 2 omega, D = 0: -(1/pi) e^{i omega x} e^{-Gamma|x_c|}."""
    x_c = np.asarray(x_c, dtype=float)
    phase = np.exp(1j * params.omega * np.asarray(x, dtype=float))
    return -phase * np.exp(-params.gamma * np.abs(x_c)) / math.pi


# ==============================================================================
# Momentum distributions
# ==============================================================================


def momentum_distribution(
    sector: Union[Sector, str],
    in_pair: MomentumPair,
    out_pair: MomentumPair,
    params: ImpurityParams,
) -> SMatrixElement:
    """S-matrix coefficients of the outgoing pair in one right/left sector.

    Left movers are labelled by negative momenta; the correlated part is
    evaluated at the physical magnitudes (|k2|, |p2|) and is B/4 in every
    sector.

    Raises:
        InvalidParametersError: For an unknown sector name.
    """
    try:
        sector = Sector(sector)
    except ValueError as exc:
        raise InvalidParametersError(f"unknown momentum sector: {sector!r}") from exc

    t_bar_k, r_bar_k = (complex(value) for value in two_mode_coeffs(in_pair.k, params))
    t_bar_p, r_bar_p = (complex(value) for value in two_mode_coeffs(in_pair.p, params))
    if sector is Sector.RR:
        direct = exchange = t_bar_k * t_bar_p
    elif sector is Sector.LL:
        direct = exchange = r_bar_k * r_bar_p
    else:
        direct, exchange = t_bar_k * r_bar_p, r_bar_k * t_bar_p

    physical = MomentumPair(abs(out_pair.k), abs(out_pair.p))
    correlated = 0.25 * complex(background_B(in_pair.energy, in_pair.delta, physical.delta, params))
    return SMatrixElement(
        direct=direct,
        exchange=exchange,
        correlated=correlated,
        in_pair=in_pair,
        out_pair=out_pair,
        sector=sector.value,
    )
