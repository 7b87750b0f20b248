"""
Two-photon S-matrix of the even channel.

The element between free states S_{k1,p1} (in) and S_{k2,p2} (out) is

    t_k1 t_p1 [delta(k1-k2) delta(p1-p2) + delta(k1-p2) delta(p1-k2)] + B delta(E1-E2)

where B is the background fluorescence. Nothing here evaluates a delta
function; elements come back as coefficient triples.

Usage:
    from app.bethe.smatrix import background_B, s_ee_element

    element = s_ee_element(momentum_views(0.2, 0.1), momentum_views(0.3, 0.0), params)
    print(element.direct, element.correlated)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from app.bethe.basis import PLANE_WAVE_NORM
from app.core import ImpurityParams, InvalidParametersError, MomentumPair
from app.numerics import QuadratureSpec, integrate_fourier
from app.single_photon import one_mode_t

ArrayLike = Union[float, np.ndarray]


class ChannelKind(str, Enum):
    EXTENDED = "extended"
    BOUND = "bound"


@dataclass(frozen=True)
class ScatteringChannel:
    """An S-matrix eigenchannel: W_{k,p} (extended) or B_E (bound)."""

    kind: ChannelKind
    pair: Optional[MomentumPair] = None
    energy: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind is ChannelKind.EXTENDED and self.pair is None:
            raise InvalidParametersError("extended channel needs a momentum pair")
        if self.kind is ChannelKind.BOUND and self.energy is None:
            raise InvalidParametersError("bound channel needs an energy")

    @classmethod
    def extended(cls, pair: MomentumPair) -> "ScatteringChannel":
        return cls(kind=ChannelKind.EXTENDED, pair=pair)

    @classmethod
    def bound(cls, energy: float) -> "ScatteringChannel":
        return cls(kind=ChannelKind.BOUND, energy=float(energy))


def bound_eigenvalue(energy: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """t_E = (E - 2 omega - 2i Gamma) / (E - 2 omega + 2i Gamma)."""
    detuning = np.asarray(energy, dtype=float) - 2.0 * params.omega
    return (detuning - 2j * params.gamma) / (detuning + 2j * params.gamma)


def channel_eigenvalue(channel: ScatteringChannel, params: ImpurityParams) -> complex:
    """Unit-modulus S-matrix eigenvalue: t_k t_p for W, t_E for the bound state."""
    if channel.kind is ChannelKind.BOUND:
        return complex(bound_eigenvalue(channel.energy, params))
    pair = channel.pair
    return complex(one_mode_t(pair.k, params) * one_mode_t(pair.p, params))


def _complex_detuning(energy: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """z = E - 2 omega + i Gamma."""
    return np.asarray(energy, dtype=float) - 2.0 * params.omega + 1j * params.gamma


def background_B(
    energy: ArrayLike, delta1: ArrayLike, delta2: ArrayLike, params: ImpurityParams
) -> ArrayLike:
    """Background fluorescence B(E, delta1, delta2); broadcasts over its inputs.

    B = (16 i Gamma^2 / pi) z / ([4 delta1^2 - z^2][4 delta2^2 - z^2]),
    z = E - 2 omega + i Gamma. Symmetric in the deltas and even in each.
    """
    z = _complex_detuning(energy, params)
    d1 = np.asarray(delta1, dtype=float)
    d2 = np.asarray(delta2, dtype=float)
    value = (16j * params.gamma**2 / math.pi) * z / ((4.0 * d1**2 - z**2) * (4.0 * d2**2 - z**2))
    return value[()] if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class SMatrixElement:
    """Coefficient triple of an S-matrix element.

    Attributes:
        direct: Coefficient of delta(k1 - k2) delta(p1 - p2).
        exchange: Coefficient of delta(k1 - p2) delta(k2 - p1).
        correlated: Coefficient of delta(E1 - E2).
        in_pair: Incoming label.
        out_pair: Outgoing label.
        sector: "ee" for the even channel, or the two-mode sector name.
    """

    direct: complex
    exchange: complex
    correlated: complex
    in_pair: MomentumPair
    out_pair: MomentumPair
    sector: str = "ee"

    @property
    def energy_mismatch(self) -> float:
        """E2 - E1; the correlated term only contributes on the shell where this is 0."""
        return self.out_pair.energy - self.in_pair.energy


def s_ee_element(
    in_pair: MomentumPair, out_pair: MomentumPair, params: ImpurityParams
) -> SMatrixElement:
    """Even-channel element <S_out| S |S_in>.

    The correlated coefficient is evaluated at the incoming energy; energy
    conservation is carried as metadata (``energy_mismatch``), not enforced.
    """
    product = complex(one_mode_t(in_pair.k, params) * one_mode_t(in_pair.p, params))
    correlated = complex(background_B(in_pair.energy, in_pair.delta, out_pair.delta, params))
    return SMatrixElement(
        direct=product,
        exchange=product,
        correlated=correlated,
        in_pair=in_pair,
        out_pair=out_pair,
    )


def correlated_envelope(
    energy: float, delta1: float, x: ArrayLike, params: ImpurityParams
) -> ArrayLike:
    """-4 Gamma^2 / (4 delta1^2 - z^2) * exp(i (E - 2 omega)|x|/2 - Gamma |x|/2).

    The closed-form sum of the background fluorescence over delta2 <= 0.
    """
    z = _complex_detuning(energy, params)
    distance = np.abs(np.asarray(x, dtype=float))
    decay = np.exp(0.5j * params.detuning(energy) * distance - 0.5 * params.gamma * distance)
    return -4.0 * params.gamma**2 / (4.0 * delta1**2 - z**2) * decay


def out_state_relative(
    energy: float, delta1: float, x: ArrayLike, params: ImpurityParams
) -> ArrayLike:
    """Relative-coordinate envelope of the even-channel out-state of S_{k1,p1}.

    t_k1 t_p1 (sqrt2/2pi) cos(delta1 x) plus the bound-like correlated term;
    the exp(i E x_c) factor is left out. Even in x.
    """
    pair = MomentumPair.from_energy(energy, delta1)
    product = one_mode_t(pair.k, params) * one_mode_t(pair.p, params)
    x = np.asarray(x, dtype=float)
    return PLANE_WAVE_NORM * (
        product * np.cos(delta1 * x) + correlated_envelope(energy, delta1, x, params)
    )


def resum_background(
    energy: float,
    delta1: float,
    x: float,
    params: ImpurityParams,
    spec: Optional[QuadratureSpec] = None,
) -> complex:
    """Quadrature of the integral of B(E, delta1, delta2) cos(delta2 x) over delta2 <= 0.

    B is even in delta2, so the half line is folded onto [0, inf) and handed to
    the Fourier-weighted routine. Compare with ``correlated_envelope``.
    """
    return integrate_fourier(
        lambda u: complex(background_B(energy, delta1, u, params)), 0.0, float(x), spec
    )


@dataclass(frozen=True)
class BackgroundSplit:
    """B split into what the extended W channels and the bound channel contribute."""

    extended: complex
    bound: complex

    @property
    def total(self) -> complex:
        return self.extended + self.bound


def background_split(
    energy: float, delta1: float, delta2: float, params: ImpurityParams
) -> BackgroundSplit:
    """Decompose B(E, delta1, delta2) by channel.

    The bound channel gives (8 Gamma^3 / pi) t_E / ((4 delta1^2 + Gamma^2)(4 delta2^2 + Gamma^2)).
    The extended part is the principal-value sum over W channels, written
    in closed form; it is singular on |delta1| == |delta2|.

    Raises:
        InvalidParametersError: If |delta1| == |delta2|.
    """
    if delta1**2 == delta2**2:
        raise InvalidParametersError("background split is undefined on |delta1| == |delta2|")
    gamma = params.gamma
    t_energy = complex(bound_eigenvalue(energy, params))
    z = complex(_complex_detuning(energy, params))
    lorentz1 = 4.0 * delta1**2 + gamma**2
    lorentz2 = 4.0 * delta2**2 + gamma**2

    def channel_product(delta: float) -> complex:
        pair = MomentumPair.from_energy(energy, delta)
        return complex(one_mode_t(pair.k, params) * one_mode_t(pair.p, params))

    on_shell = (gamma / math.pi) * (
        channel_product(delta2) * 4.0 * delta2**2 / lorentz2 / (delta1**2 - delta2**2)
        + channel_product(delta1) * 4.0 * delta1**2 / lorentz1 / (delta2**2 - delta1**2)
    )
    pole_terms = -(4.0 * gamma**3 / math.pi) * t_energy / (lorentz1 * lorentz2) - (
        16.0 * gamma**3 / math.pi
    ) * (z / (params.detuning(energy) + 2j * gamma)) / (
        (4.0 * delta1**2 - z**2) * (4.0 * delta2**2 - z**2)
    )
    bound = (8.0 * gamma**3 / math.pi) * t_energy / (lorentz1 * lorentz2)
    return BackgroundSplit(extended=on_shell + pole_terms, bound=bound)
