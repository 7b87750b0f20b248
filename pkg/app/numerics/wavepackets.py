"""
Gaussian wavepacket smearing of delta-normalized two-photon states.

A basis state labelled by (E, D) is smeared with the profile
phi(q) = (2 pi sigma^2)^(-1/4) exp(-(q - q0)^2 / (4 sigma^2)) in both E and D
(the bound state is smeared in E only). Two routes give the same number:

- ``smeared_overlap`` works in real space: the center-of-mass integral is
  Gaussian and done in closed form, the relative packet is built by
  Gauss-Hermite quadrature and integrated over the box [-L, L].
- ``smear_distribution`` works in label space: it integrates the symbolic
  overlap coefficients against the same profiles.

Usage:
    from app.numerics.wavepackets import smeared_overlap

    wp = WavepacketSpec(sigma=0.05, box_halfwidth=40.0)
    value = smeared_overlap(state_a, state_b, wp, wp)
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Optional, Tuple, Union

import numpy as np
from numpy.polynomial.hermite import hermgauss

from app.bethe.basis import BasisKind, BasisState, relative_envelope
from app.bethe.overlaps import OverlapKernel, overlap_kernel
from app.core import UnsupportedOverlapError
from app.numerics.quadrature import integrate, pv_integrate
from app.numerics.specs import QuadratureSpec, WavepacketSpec
from app.utils import setup_logging

logger = setup_logging()

HERMITE_NODES = 64

ArrayLike = Union[float, np.ndarray]


def gaussian_profile(q: ArrayLike, center: float, sigma: float) -> ArrayLike:
    """Amplitude profile whose square integrates to one."""
    q = np.asarray(q, dtype=float)
    return (2.0 * math.pi * sigma**2) ** -0.25 * np.exp(-((q - center) ** 2) / (4.0 * sigma**2))


def gaussian_overlap(center_a: float, sigma_a: float, center_b: float, sigma_b: float) -> float:
    """Integral of the product of two profiles over the whole line."""
    spread = sigma_a**2 + sigma_b**2
    return math.sqrt(2.0 * sigma_a * sigma_b / spread) * math.exp(
        -((center_a - center_b) ** 2) / (4.0 * spread)
    )


def packet_center(state: BasisState, wavepacket: WavepacketSpec) -> Tuple[float, float]:
    """(E, D) the packet is centered on; D is 0.0 for the bound state."""
    if wavepacket.center is None:
        return state.energy, state.delta
    center = wavepacket.center
    if state.kind is BasisKind.BOUND:
        return center.energy, 0.0
    return center.energy, center.delta


@lru_cache(maxsize=8)
def _hermite_rule(points: int) -> Tuple[np.ndarray, np.ndarray]:
    return hermgauss(points)


def relative_packet(
    state: BasisState, wavepacket: WavepacketSpec, x: ArrayLike, points: int = HERMITE_NODES
) -> np.ndarray:
    """Relative-coordinate packet: the D-smeared envelope of ``state`` at x."""
    x = np.asarray(x, dtype=float)
    if state.kind is BasisKind.BOUND:
        return relative_envelope(state.kind, 0.0, x, state.params)

    _, center = packet_center(state, wavepacket)
    sigma = wavepacket.sigma
    nodes, weights = _hermite_rule(points)
    deltas = center + 2.0 * sigma * nodes
    grid = relative_envelope(state.kind, deltas.reshape((-1,) + (1,) * x.ndim), x, state.params)
    scale = (2.0 * math.pi * sigma**2) ** -0.25 * 2.0 * sigma
    return scale * np.tensordot(weights, grid, axes=(0, 0))


def smeared_overlap(
    a: BasisState,
    b: BasisState,
    wp_a: WavepacketSpec,
    wp_b: WavepacketSpec,
    spec: Optional[QuadratureSpec] = None,
) -> complex:
    """Box-truncated inner product of two smeared states, computed in real space.

    Energy profiles that overlap less than ``spec.tail_cutoff`` give 0.

    Raises:
        UnsupportedOverlapError: If the states use different impurity parameters.
    """
    spec = spec or QuadratureSpec()
    if a.params != b.params:
        raise UnsupportedOverlapError("smeared overlaps need states with the same impurity parameters")
    wp_a.check_box()
    wp_b.check_box()

    energy_a, _ = packet_center(a, wp_a)
    energy_b, _ = packet_center(b, wp_b)
    center_of_mass = 2.0 * math.pi * gaussian_overlap(energy_a, wp_a.sigma, energy_b, wp_b.sigma)
    if center_of_mass < spec.tail_cutoff:
        return 0j

    half_width = min(wp_a.box_halfwidth, wp_b.box_halfwidth)

    def integrand(x: float) -> complex:
        left = relative_packet(a, wp_a, x)
        right = relative_packet(b, wp_b, x)
        return complex(np.conj(left) * right)

    relative = integrate(integrand, -half_width, half_width, spec, breakpoints=[0.0])
    return center_of_mass * relative


# ==============================================================================
# Label-space reference
# ==============================================================================


def _window(center: float, sigma: float, spec: QuadratureSpec) -> Tuple[float, float]:
    reach = 2.0 * sigma * math.sqrt(math.log(1.0 / spec.tail_cutoff))
    return center - reach, center + reach


def _maybe_pv(
    f: Callable[[float], complex], pole: float, lower: float, upper: float, spec: QuadratureSpec
) -> complex:
    if lower < pole < upper:
        return pv_integrate(f, pole, lower, upper, spec)
    return integrate(f, lower, upper, spec)


def _principal_inner(
    kernel: OverlapKernel,
    profile_b: Callable[[float], float],
    window_b: Tuple[float, float],
    spec: QuadratureSpec,
) -> Callable[[float], complex]:
    """D_a -> P integral over D_b of profile_b(D_b) N(D_a, D_b) / (D_b^2 - D_a^2)."""
    lower, upper = window_b
    numerator = kernel.principal
    cache: dict = {}

    def inner(da: float) -> complex:
        if da in cache:
            return cache[da]
        if da == 0.0:

            def at_origin(db: float) -> complex:
                return profile_b(db) * numerator(0.0, db) / db**2

            value = _maybe_pv(at_origin, 0.0, lower, upper, spec)
        else:
            # 1/(Db^2 - Da^2) = [1/(Db - Da) - 1/(Db + Da)] / (2 Da)
            def near(db: float) -> complex:
                return profile_b(db) * numerator(da, db) / (2.0 * da) / (db - da)

            def far(db: float) -> complex:
                return -profile_b(db) * numerator(da, db) / (2.0 * da) / (db + da)

            value = _maybe_pv(near, da, lower, upper, spec) + _maybe_pv(far, -da, lower, upper, spec)
        cache[da] = value
        return value

    return inner


def smear_distribution(
    a: BasisState,
    b: BasisState,
    wp_a: WavepacketSpec,
    wp_b: WavepacketSpec,
    spec: Optional[QuadratureSpec] = None,
) -> complex:
    """Symbolic overlap <a|b> integrated against the Gaussian profiles."""
    spec = spec or QuadratureSpec()
    if a.params != b.params:
        raise UnsupportedOverlapError("smeared overlaps need states with the same impurity parameters")
    kernel = overlap_kernel(a.kind, b.kind, a.params)

    energy_a, delta_a = packet_center(a, wp_a)
    energy_b, delta_b = packet_center(b, wp_b)
    energy_factor = gaussian_overlap(energy_a, wp_a.sigma, energy_b, wp_b.sigma)

    def profile_a(d: float) -> float:
        return float(gaussian_profile(d, delta_a, wp_a.sigma))

    def profile_b(d: float) -> float:
        return float(gaussian_profile(d, delta_b, wp_b.sigma))

    window_a = _window(delta_a, wp_a.sigma, spec)
    window_b = _window(delta_b, wp_b.sigma, spec)
    a_bound = a.kind is BasisKind.BOUND
    b_bound = b.kind is BasisKind.BOUND

    if a_bound and b_bound:
        return energy_factor * complex(kernel.shell(0.0, 0.0))
    if a_bound:
        label_part = integrate(lambda d: profile_b(d) * kernel.shell(0.0, d), *window_b, spec)
        return energy_factor * label_part
    if b_bound:
        label_part = integrate(lambda d: profile_a(d) * kernel.shell(d, 0.0), *window_a, spec)
        return energy_factor * label_part

    total = 0j
    lower, upper = max(window_a[0], window_b[0]), min(window_a[1], window_b[1])
    if kernel.direct is not None and lower < upper:
        total += integrate(lambda d: profile_a(d) * profile_b(d) * kernel.direct(d), lower, upper, spec)
    lower, upper = max(window_a[0], -window_b[1]), min(window_a[1], -window_b[0])
    if kernel.exchange is not None and lower < upper:
        total += integrate(
            lambda d: profile_a(d) * profile_b(-d) * kernel.exchange(d), lower, upper, spec
        )
    if kernel.principal is not None:
        inner = _principal_inner(kernel, profile_b, window_b, spec)
        total += integrate(lambda d: profile_a(d) * inner(d), *window_a, spec)
    logger.debug("smeared %s-%s overlap in label space: %s", a.kind.value, b.kind.value, total)
    return energy_factor * total
