"""
Adaptive quadrature for complex-valued integrands.

Usage:
    from app.numerics import QuadratureSpec, integrate, pv_integrate

    spec = QuadratureSpec()
    value = integrate(lambda x: np.exp(1j * x), 0.0, 2 * np.pi, spec)
    pv = pv_integrate(lambda x: 1.0 / x, 0.0, -1.0, 1.0, spec)

Real and imaginary parts go through ``scipy.integrate.quad`` separately
(QUADPACK: adaptive Gauss-Kronrod bisection with an embedded error estimate;
infinite ranges are mapped onto a finite interval by QUADPACK itself).
"""

from __future__ import annotations

import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from app.core import InvalidParametersError, PrincipalValueError, QuadratureError
from app.numerics.specs import QuadratureSpec
from app.utils import setup_logging

logger = setup_logging()

ComplexIntegrand = Callable[[float], complex]

# QUADPACK may flag roundoff while still meeting the requested accuracy;
# only estimates this far above tolerance are treated as failures.
ERROR_SLACK = 1e3

# Richardson refinement of the excision width stops after this many halvings.
PV_MAX_LEVELS = 12
PV_INITIAL_FRACTION = 0.25

# eps * |f(endpoint + eps)| is sampled at these fractions of the interval and must shrink with eps.
ENDPOINT_OFFSETS = (1e-4, 1e-8, 1e-12)
ENDPOINT_GROWTH_RATIO = 0.5


def _quad_real(
    func: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec,
    **kwargs,
) -> Tuple[float, float]:
    result = quad(
        func,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.subinterval_limit,
        full_output=1,
        **kwargs,
    )
    value, error = float(result[0]), float(result[1])
    if len(result) > 3:
        message = result[3]
        if not math.isfinite(value) or error > ERROR_SLACK * spec.tolerance_for(value):
            raise QuadratureError(
                f"integration over [{a}, {b}] did not converge "
                f"(estimate {value:.6g}, error {error:.2e}): {message}"
            )
        logger.debug("QUADPACK note on [%s, %s]: %s", a, b, message)
    return value, error


def _check_endpoints(f: ComplexIntegrand, a: float, b: float, spec: QuadratureSpec) -> None:
    """Raise if f blows up non-integrably at a finite endpoint.

    QUADPACK's epsilon extrapolation can map a divergent sequence of bisection
    estimates onto a finite value with a small error estimate.
    """
    width = b - a
    for endpoint, direction in ((a, 1.0), (b, -1.0)):
        if not math.isfinite(endpoint):
            continue
        weights = []
        for fraction in ENDPOINT_OFFSETS:
            offset = fraction * width
            value = complex(f(endpoint + direction * offset))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise QuadratureError(f"integrand is not finite near the endpoint {endpoint}")
            weights.append(offset * abs(value))
        growing = all(
            later >= ENDPOINT_GROWTH_RATIO * earlier for earlier, later in zip(weights, weights[1:])
        )
        if growing and weights[-1] > spec.abs_tol:
            raise QuadratureError(
                f"integrand is not integrable at the endpoint {endpoint} "
                f"(eps * |f| = {weights[-1]:.3g} at eps = {ENDPOINT_OFFSETS[-1] * width:.1e})"
            )


def _split(a: float, b: float, breakpoints: Optional[Sequence[float]]) -> List[Tuple[float, float]]:
    cuts = sorted(point for point in (breakpoints or ()) if a < point < b)
    edges = [a, *cuts, b]
    return list(zip(edges[:-1], edges[1:]))


def integrate(
    f: ComplexIntegrand,
    a: float,
    b: float,
    spec: Optional[QuadratureSpec] = None,
    breakpoints: Optional[Sequence[float]] = None,
) -> complex:
    """Integrate a complex-valued function over [a, b].

    Args:
        f: Integrand, total on [a, b]; endpoints may be infinite.
        a: Lower limit.
        b: Upper limit.
        spec: Tolerances (defaults to ``QuadratureSpec()``).
        breakpoints: Interior points where f has kinks or jumps.

    Returns:
        Estimate with error below max(abs_tol, rel_tol * |result|) per part.

    Raises:
        QuadratureError: If QUADPACK cannot reach the requested accuracy,
            or f is not integrable at a finite endpoint.
    """
    spec = spec or QuadratureSpec()
    if a == b:
        return 0j
    if a > b:
        return -integrate(f, b, a, spec, breakpoints)

    total = 0j
    for lower, upper in _split(a, b, breakpoints):
        if math.isfinite(upper - lower):
            _check_endpoints(f, lower, upper, spec)
        real, _ = _quad_real(lambda t: float(np.real(f(t))), lower, upper, spec)
        imag, _ = _quad_real(lambda t: float(np.imag(f(t))), lower, upper, spec)
        total += complex(real, imag)
    return total


def integrate_fourier(
    f: ComplexIntegrand,
    a: float,
    omega: float,
    spec: Optional[QuadratureSpec] = None,
) -> complex:
    """Integrate f(u) * cos(omega * u) over [a, inf).

    Uses QUADPACK's Fourier weight, which sums the integral cycle by cycle
    and extrapolates the tail, so slowly decaying oscillatory integrands do
    not stall the adaptive bisection.
    """
    spec = spec or QuadratureSpec()
    if omega == 0.0:
        return integrate(f, a, math.inf, spec)

    frequency = abs(omega)
    real, _ = _quad_real(
        lambda t: float(np.real(f(t))), a, math.inf, spec, weight="cos", wvar=frequency
    )
    imag, _ = _quad_real(
        lambda t: float(np.imag(f(t))), a, math.inf, spec, weight="cos", wvar=frequency
    )
    return complex(real, imag)


def pv_integrate(
    f: ComplexIntegrand,
    pole: float,
    a: float,
    b: float,
    spec: Optional[QuadratureSpec] = None,
) -> complex:
    """Cauchy principal value of the integral of f over [a, b].

    f may have a single simple pole at ``pole``. A symmetric window
    [pole - h, pole + h] is folded onto [0, h] as f(pole + t) + f(pole - t), the
    excision [0, eps) is removed for eps, eps/2, eps/4, ... and the results are
    Richardson-extrapolated (the excised piece is odd in eps).

    Raises:
        InvalidParametersError: If the pole is not strictly inside (a, b).
        PrincipalValueError: If the refinement does not settle, which is what a
            higher-order pole produces.
    """
    spec = spec or QuadratureSpec()
    if not a < pole < b:
        raise InvalidParametersError(f"pole {pole} must lie strictly inside ({a}, {b})")

    reach = min(pole - a, b - pole)
    if not math.isfinite(reach):
        reach = max(1.0, abs(pole))

    outer = 0j
    if pole - reach > a:
        outer += integrate(f, a, pole - reach, spec)
    if pole + reach < b:
        outer += integrate(f, pole + reach, b, spec)

    def folded(t: float) -> complex:
        return f(pole + t) + f(pole - t)

    width = PV_INITIAL_FRACTION * reach
    estimate = integrate(folded, width, reach, spec)
    table: List[List[complex]] = [[estimate]]

    for level in range(1, PV_MAX_LEVELS + 1):
        narrower = 0.5 * width
        estimate = estimate + integrate(folded, narrower, width, spec)
        width = narrower

        row = [estimate]
        for order in range(1, level + 1):
            factor = 2.0 ** (2 * order - 1)
            row.append(row[order - 1] + (row[order - 1] - table[-1][order - 1]) / (factor - 1.0))
        table.append(row)

        best, previous = row[-1], table[-2][-1]
        logger.debug("PV level %d: eps=%.3e estimate=%s", level, width, best)
        if abs(best - previous) <= spec.tolerance_for(best):
            return outer + best

    raise PrincipalValueError(
        f"principal value at {pole} did not converge after {PV_MAX_LEVELS} refinements; "
        "the singularity may not be a simple pole"
    )
