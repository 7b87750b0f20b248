"""
One-photon scattering amplitudes.

Covers the one-mode transmission t_k, the atomic excitation amplitude e_k, the
two-mode (right/left) coefficients t_bar/r_bar, the interacting eigenstate and
its in/out read-off, and the delta-barrier reference case.

Usage:
    from app.core import make_params
    from app.single_photon import scatter

    params = make_params(omega=0.0, gamma=1.0)
    result = scatter(0.5, params)
    print(abs(result.r_bar) ** 2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from app.core import ImpurityParams, InvalidParametersError, step

ArrayLike = Union[float, np.ndarray]

SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class OnePhotonScatter:
    """All single-photon coefficients at one momentum."""

    k: float
    t: complex
    t_bar: complex
    r_bar: complex
    e_k: complex

    @property
    def reflectance(self) -> float:
        return abs(self.r_bar) ** 2

    @property
    def transmittance(self) -> float:
        return abs(self.t_bar) ** 2


def _resonance_denominator(k: ArrayLike, params: ImpurityParams) -> ArrayLike:
    return k - params.omega + 0.5j * params.gamma


def one_mode_t(k: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """t_k = (k - omega - i*gamma/2) / (k - omega + i*gamma/2); a pure phase."""
    return (k - params.omega - 0.5j * params.gamma) / _resonance_denominator(k, params)


def excitation_amplitude(k: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """e_k = V / (sqrt(2*pi) * (k - omega + i*gamma/2))."""
    return params.coupling / (SQRT_2PI * _resonance_denominator(k, params))


def two_mode_coeffs(k: ArrayLike, params: ImpurityParams) -> Tuple[ArrayLike, ArrayLike]:
    """Right/left-mode coefficients (t_bar, r_bar) = ((t + 1) / 2, (t - 1) / 2).

    Written out directly rather than through t so that t_bar is exactly 0 on
    resonance.
    """
    denominator = _resonance_denominator(k, params)
    t_bar = (k - params.omega) / denominator
    r_bar = (-0.5j * params.gamma) / denominator
    return t_bar, r_bar


def scatter(k: float, params: ImpurityParams) -> OnePhotonScatter:
    t_bar, r_bar = two_mode_coeffs(k, params)
    return OnePhotonScatter(
        k=float(k),
        t=complex(one_mode_t(k, params)),
        t_bar=complex(t_bar),
        r_bar=complex(r_bar),
        e_k=complex(excitation_amplitude(k, params)),
    )


def eigenstate_wavefunction(k: float, x: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """Interacting one-photon eigenstate e^{ikx}/sqrt(2pi) * (theta(-x) + t_k theta(x)).

    At x = 0 the two-sided average is returned, which equals t_bar_k/sqrt(2pi).
    """
    t = one_mode_t(k, params)
    x_arr = np.asarray(x, dtype=float)
    envelope = step(-x_arr) + t * step(x_arr)
    return np.exp(1j * k * x_arr) / SQRT_2PI * envelope


def in_state_readoff(k: float, x: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """Retarded read-off: phi(x) + theta(x) * i * V * e_k * e^{ikx}.

    Removes the scattered wave on the outgoing side; equals the free incoming
    wave e^{ikx}/sqrt(2pi) away from x = 0.
    """
    x_arr = np.asarray(x, dtype=float)
    correction = 1j * params.coupling * excitation_amplitude(k, params) * np.exp(1j * k * x_arr)
    return eigenstate_wavefunction(k, x_arr, params) + step(x_arr) * correction


def out_state_readoff(k: float, x: ArrayLike, params: ImpurityParams) -> ArrayLike:
    """Advanced read-off: phi(x) - theta(-x) * i * V * e_k * e^{ikx}; equals t_k e^{ikx}/sqrt(2pi)."""
    x_arr = np.asarray(x, dtype=float)
    correction = 1j * params.coupling * excitation_amplitude(k, params) * np.exp(1j * k * x_arr)
    return eigenstate_wavefunction(k, x_arr, params) - step(-x_arr) * correction


def reflection_fwhm(
    params: ImpurityParams, tolerance: float = 1e-12, max_iterations: int = 200
) -> float:
    """Full width at half maximum of |r_bar(k)|**2, located by bisection on each side."""

    def excess(k: float) -> float:
        _, r_bar = two_mode_coeffs(k, params)
        return abs(r_bar) ** 2 - 0.5

    def bisect(inside: float, outside: float) -> float:
        for _ in range(max_iterations):
            middle = 0.5 * (inside + outside)
            if excess(middle) > 0:
                inside = middle
            else:
                outside = middle
            if abs(outside - inside) <= tolerance * max(1.0, params.gamma):
                break
        return 0.5 * (inside + outside)

    reach = 10.0 * params.gamma
    upper = bisect(params.omega, params.omega + reach)
    lower = bisect(params.omega, params.omega - reach)
    return upper - lower


def delta_barrier(k: float, v0: float) -> Tuple[complex, complex]:
    """Reflection and transmission off a delta barrier v0 * delta(x).

    r = -i v0 / (2k + i v0), t = 2k / (2k + i v0), so 1 + r == t.

    Raises:
        InvalidParametersError: If k = 0 and v0 = 0 (the amplitudes are 0/0).
    """
    denominator = complex(2.0 * k, v0)
    if denominator == 0:
        raise InvalidParametersError("delta barrier is degenerate at k = 0 with v0 = 0")
    r = -1j * v0 / denominator
    return r, 1.0 + r
