"""
Distributional overlaps between two-photon basis states.

Every overlap carries an overall delta(E_a - E_b) and decomposes into

    direct * delta(Da - Db) + exchange * delta(Da + Db)
        + P[ N(Da, Db) / (Db^2 - Da^2) ] + shell

with Da, Db the bra/ket relative labels. The table is built from the
primitive kinds S, A and the bound state B; W rows are the combination
(2 D S + i Gamma A) / sqrt(4 D^2 + Gamma^2).

Usage:
    from app.bethe.overlaps import overlap

    result = overlap(BasisState.bound(0.0, params), BasisState.extended(BasisKind.S, pair, params))
    print(result.deltaE_coeff)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from app.bethe.basis import BasisKind, BasisState
from app.core import ImpurityParams, InvalidParametersError, MomentumPair, UnsupportedOverlapError
from app.numerics import QuadratureSpec, integrate, pv_integrate

logger = logging.getLogger(__name__)

LabelFunction = Callable[[float], complex]
PairFunction = Callable[[float, float], complex]


@dataclass(frozen=True)
class OverlapKernel:
    """Label-dependent coefficients of one overlap; None marks an absent term.

    ``direct`` and ``exchange`` take the bra label. ``principal`` is the
    numerator N(Da, Db) of the principal-value part and ``shell`` the smooth
    coefficient of the bare delta(E_a - E_b); both take (Da, Db).
    """

    bra: BasisKind
    ket: BasisKind
    direct: Optional[LabelFunction] = None
    exchange: Optional[LabelFunction] = None
    principal: Optional[PairFunction] = None
    shell: Optional[PairFunction] = None


@dataclass(frozen=True)
class Overlap:
    """Overlap coefficients evaluated at the two states' labels.

    ``pv_part`` is N / (Db^2 - Da^2) and is reported as 0.0 on the singular
    set |Da| == |Db|, which the principal value excludes.
    """

    deltaE_coeff: complex
    direct: complex
    exchange: complex
    pv_part: complex
    kernel: OverlapKernel
    energy_mismatch: float = 0.0


# ==============================================================================
# Primitive table
# ==============================================================================


def _bound_weight(params: ImpurityParams) -> float:
    return math.sqrt(params.gamma / (2.0 * math.pi))


def _lorentzian(delta: float, params: ImpurityParams) -> float:
    return 4.0 * delta**2 + params.gamma**2


def bound_s_coefficient(delta: float, params: ImpurityParams) -> complex:
    """Energy-shell coefficient of <B_E|S_{k,p}>: sqrt(Gamma/2pi) 4 Gamma / (4 D^2 + Gamma^2)."""
    return _bound_weight(params) * 4.0 * params.gamma / _lorentzian(delta, params)


def bound_a_coefficient(delta: float, params: ImpurityParams) -> complex:
    """Energy-shell coefficient of <B_E|A_{k,p}>: sqrt(Gamma/2pi) 8 i D / (4 D^2 + Gamma^2)."""
    return _bound_weight(params) * 8j * delta / _lorentzian(delta, params)


def _one(_: float) -> complex:
    return 1.0


def _minus_one(_: float) -> complex:
    return -1.0


def _primitive(bra: BasisKind, ket: BasisKind, params: ImpurityParams) -> OverlapKernel:
    S, A, B = BasisKind.S, BasisKind.A, BasisKind.BOUND
    if (bra, ket) == (S, S):
        return OverlapKernel(bra, ket, direct=_one, exchange=_one)
    if (bra, ket) == (A, A):
        return OverlapKernel(bra, ket, direct=_one, exchange=_minus_one)
    if (bra, ket) == (S, A):
        return OverlapKernel(bra, ket, principal=lambda da, db: (1j / math.pi) * 2.0 * db)
    if (bra, ket) == (A, S):
        return OverlapKernel(bra, ket, principal=lambda da, db: (1j / math.pi) * 2.0 * da)
    if (bra, ket) == (B, B):
        return OverlapKernel(bra, ket, shell=lambda da, db: 1.0)
    if (bra, ket) == (B, S):
        return OverlapKernel(bra, ket, shell=lambda da, db: bound_s_coefficient(db, params))
    if (bra, ket) == (S, B):
        return OverlapKernel(
            bra, ket, shell=lambda da, db: bound_s_coefficient(da, params).conjugate()
        )
    if (bra, ket) == (B, A):
        return OverlapKernel(bra, ket, shell=lambda da, db: bound_a_coefficient(db, params))
    if (bra, ket) == (A, B):
        return OverlapKernel(
            bra, ket, shell=lambda da, db: bound_a_coefficient(da, params).conjugate()
        )
    raise UnsupportedOverlapError(f"no closed-form overlap for <{bra}|{ket}>")


def _components(kind: BasisKind, params: ImpurityParams) -> List[Tuple[BasisKind, LabelFunction]]:
    """Expansion of a kind over the primitives S, A, B."""
    if kind is BasisKind.W:

        def s_part(delta: float) -> complex:
            return 2.0 * delta / math.sqrt(_lorentzian(delta, params))

        def a_part(delta: float) -> complex:
            return 1j * params.gamma / math.sqrt(_lorentzian(delta, params))

        return [(BasisKind.S, s_part), (BasisKind.A, a_part)]
    if kind in (BasisKind.S, BasisKind.A, BasisKind.BOUND):
        return [(kind, _one)]
    raise UnsupportedOverlapError(f"unknown basis kind {kind!r}")


def overlap_kernel(bra: BasisKind, ket: BasisKind, params: ImpurityParams) -> OverlapKernel:
    """Compose the kernel of <bra|ket> from the primitive table."""
    terms = [
        (bra_coeff, ket_coeff, _primitive(bra_kind, ket_kind, params))
        for bra_kind, bra_coeff in _components(bra, params)
        for ket_kind, ket_coeff in _components(ket, params)
    ]

    direct_terms = [term for term in terms if term[2].direct is not None]
    exchange_terms = [term for term in terms if term[2].exchange is not None]
    principal_terms = [term for term in terms if term[2].principal is not None]
    shell_terms = [term for term in terms if term[2].shell is not None]

    def direct(delta: float) -> complex:
        return sum(
            complex(cb(delta)).conjugate() * ck(delta) * prim.direct(delta)
            for cb, ck, prim in direct_terms
        )

    def exchange(delta: float) -> complex:
        return sum(
            complex(cb(delta)).conjugate() * ck(-delta) * prim.exchange(delta)
            for cb, ck, prim in exchange_terms
        )

    def principal(da: float, db: float) -> complex:
        return sum(
            complex(cb(da)).conjugate() * ck(db) * prim.principal(da, db)
            for cb, ck, prim in principal_terms
        )

    def shell(da: float, db: float) -> complex:
        return sum(
            complex(cb(da)).conjugate() * ck(db) * prim.shell(da, db)
            for cb, ck, prim in shell_terms
        )

    return OverlapKernel(
        bra=bra,
        ket=ket,
        direct=direct if direct_terms else None,
        exchange=exchange if exchange_terms else None,
        principal=principal if principal_terms else None,
        shell=shell if shell_terms else None,
    )


def overlap(a: BasisState, b: BasisState) -> Overlap:
    """Structured overlap <a|b>.

    Args:
        a: Bra state.
        b: Ket state.

    Returns:
        Overlap with the coefficients evaluated at the labels. A degenerate W
        state gives all-zero coefficients.

    Raises:
        UnsupportedOverlapError: For states built with different impurity
            parameters or an unknown kind.
    """
    if a.params != b.params:
        raise UnsupportedOverlapError("overlaps need states built with the same impurity parameters")
    kernel = overlap_kernel(a.kind, b.kind, a.params)
    mismatch = b.energy - a.energy
    if a.is_zero or b.is_zero:
        logger.debug("overlap with a degenerate W state is zero")
        return Overlap(0j, 0j, 0j, 0j, kernel, mismatch)

    da, db = a.delta, b.delta
    direct = complex(kernel.direct(da)) if kernel.direct else 0j
    exchange = complex(kernel.exchange(da)) if kernel.exchange else 0j
    shell = complex(kernel.shell(da, db)) if kernel.shell else 0j
    pv_part = 0j
    if kernel.principal is not None and da**2 != db**2:
        pv_part = complex(kernel.principal(da, db)) / (db**2 - da**2)
    return Overlap(
        deltaE_coeff=shell,
        direct=direct,
        exchange=exchange,
        pv_part=pv_part,
        kernel=kernel,
        energy_mismatch=mismatch,
    )


# ==============================================================================
# Completeness
# ==============================================================================


def completeness_residual(
    in_pair: MomentumPair, out_pair: MomentumPair, params: ImpurityParams
) -> complex:
    """delta(E1 - E2) coefficient of <S2|S1> minus the W-channel projections.

    (8 Gamma^3 / pi) / ((4 D1^2 + Gamma^2)(4 D2^2 + Gamma^2)); strictly positive.
    """
    gamma = params.gamma
    value = (8.0 * gamma**3 / math.pi) / (
        _lorentzian(in_pair.delta, params) * _lorentzian(out_pair.delta, params)
    )
    return complex(value)


def bound_projection(
    in_pair: MomentumPair, out_pair: MomentumPair, params: ImpurityParams
) -> float:
    """<S2|B><B|S1> on the energy shell; equals ``completeness_residual``."""
    return float(
        (
            bound_s_coefficient(out_pair.delta, params).conjugate()
            * bound_s_coefficient(in_pair.delta, params)
        ).real
    )


def _weighted_pole_integral(pole: float, params: ImpurityParams, spec: QuadratureSpec) -> complex:
    """P of the integral of 4D^2/(4D^2 + Gamma^2) / (D^2 - pole^2) over the whole line."""
    gamma = params.gamma
    if pole == 0.0:
        return 2.0 * integrate(lambda d: 4.0 / (4.0 * d**2 + gamma**2), 0.0, math.inf, spec)

    def integrand(d: float) -> complex:
        return 4.0 * d**2 / (4.0 * d**2 + gamma**2) / (d**2 - pole**2)

    # even integrand, so fold onto the half line where only +|pole| sits
    return 2.0 * pv_integrate(integrand, abs(pole), 0.0, math.inf, spec)


def projection_integral(
    in_pair: MomentumPair,
    out_pair: MomentumPair,
    params: ImpurityParams,
    spec: Optional[QuadratureSpec] = None,
) -> complex:
    """Correlated delta(E1 - E2) coefficient of the sum over W channels of <S2|W><W|S1>.

    The channel sum runs over unordered pairs, so the integral over the full
    relative-label line carries a factor 1/2. The two delta-supported terms
    close algebraically; the remaining double-pole term goes through
    ``pv_integrate``. Equals minus ``completeness_residual``.

    Raises:
        InvalidParametersError: If |D1| == |D2|, where the term is a limit.
    """
    spec = spec or QuadratureSpec()
    d1, d2 = in_pair.delta, out_pair.delta
    if d1**2 == d2**2:
        raise InvalidParametersError("projection integral is evaluated only for |D1| != |D2|")
    gamma = params.gamma
    spread = d1**2 - d2**2

    on_shell = -(gamma / math.pi) / spread * (
        4.0 * d1**2 / _lorentzian(d1, params) - 4.0 * d2**2 / _lorentzian(d2, params)
    )
    first = _weighted_pole_integral(d1, params, spec)
    second = _weighted_pole_integral(d2, params, spec)
    double_pole = 0.5 * (gamma / math.pi) ** 2 / spread * (first - second)
    logger.debug("projection terms: on-shell=%s double-pole=%s", on_shell, double_pole)
    return complex(on_shell + double_pole)
