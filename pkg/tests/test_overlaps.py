"""
Tests for the distributional overlap table and the completeness residual.
"""
import math

import pytest

from app.bethe import (
    BasisKind,
    BasisState,
    bound_projection,
    completeness_residual,
    overlap,
    overlap_kernel,
    projection_integral,
)
from app.core import InvalidParametersError, MomentumPair, UnsupportedOverlapError, make_params


def _state(kind, energy, delta, params):
    if kind is BasisKind.BOUND:
        return BasisState.bound(energy, params)
    return BasisState.extended(kind, MomentumPair.from_energy(energy, delta), params)


# ============================================================================
# Overlap table
# ============================================================================

class TestOverlapTable:
    def test_s_s(self, params):
        result = overlap(_state(BasisKind.S, 0.3, 0.4, params), _state(BasisKind.S, 0.3, 0.9, params))
        assert (result.direct, result.exchange) == (1.0, 1.0)
        assert result.pv_part == 0
        assert result.deltaE_coeff == 0

    def test_a_a(self, params):
        result = overlap(_state(BasisKind.A, 0.3, 0.4, params), _state(BasisKind.A, 0.3, 0.9, params))
        assert (result.direct, result.exchange) == (1.0, -1.0)

    def test_s_a_principal_part(self, params):
        da, db = 0.4, 0.9
        result = overlap(_state(BasisKind.S, 0.0, da, params), _state(BasisKind.A, 0.0, db, params))
        expected = (1j / math.pi) * 2.0 * db / (db**2 - da**2)
        assert result.pv_part == pytest.approx(expected)
        assert result.direct == 0 and result.exchange == 0

    def test_a_s_principal_part(self, params):
        da, db = 0.4, -0.9
        result = overlap(_state(BasisKind.A, 0.0, da, params), _state(BasisKind.S, 0.0, db, params))
        assert result.pv_part == pytest.approx((1j / math.pi) * 2.0 * da / (db**2 - da**2))

    def test_principal_part_zero_on_singular_set(self, params):
        result = overlap(_state(BasisKind.S, 0.0, 0.4, params), _state(BasisKind.A, 0.0, -0.4, params))
        assert result.pv_part == 0

    def test_bound_s_and_bound_a(self, shifted_params):
        gamma, delta = shifted_params.gamma, 0.6
        lorentz = 4.0 * delta**2 + gamma**2
        weight = math.sqrt(gamma / (2.0 * math.pi))
        bound = _state(BasisKind.BOUND, 1.0, 0.0, shifted_params)
        with_s = overlap(bound, _state(BasisKind.S, 1.0, delta, shifted_params))
        with_a = overlap(bound, _state(BasisKind.A, 1.0, delta, shifted_params))
        assert with_s.deltaE_coeff == pytest.approx(weight * 4.0 * gamma / lorentz)
        assert with_a.deltaE_coeff == pytest.approx(weight * 8j * delta / lorentz)

    def test_conjugate_symmetry(self, shifted_params):
        bound = _state(BasisKind.BOUND, 1.0, 0.0, shifted_params)
        for kind in (BasisKind.S, BasisKind.A, BasisKind.W):
            extended = _state(kind, 1.0, 0.6, shifted_params)
            forward = overlap(bound, extended).deltaE_coeff
            backward = overlap(extended, bound).deltaE_coeff
            assert backward == pytest.approx(forward.conjugate(), abs=1e-14)

    def test_bound_bound(self, params):
        result = overlap(_state(BasisKind.BOUND, 0.5, 0.0, params), _state(BasisKind.BOUND, 0.5, 0.0, params))
        assert result.deltaE_coeff == 1.0


# ============================================================================
# W channels
# ============================================================================

class TestWChannels:
    @pytest.mark.parametrize("da, db", [(0.3, 0.3), (0.3, 1.7), (-1.2, 0.4)])
    def test_w_w_is_orthonormal(self, shifted_params, da, db):
        result = overlap(
            _state(BasisKind.W, 1.0, da, shifted_params), _state(BasisKind.W, 1.0, db, shifted_params)
        )
        assert result.direct == pytest.approx(1.0)
        assert result.exchange == pytest.approx(-1.0)
        assert abs(result.pv_part) < 1e-15

    def test_principal_numerator_vanishes_identically(self, params):
        kernel = overlap_kernel(BasisKind.W, BasisKind.W, params)
        for da, db in [(0.1, 0.2), (-3.0, 0.7), (2.0, -2.5)]:
            assert abs(kernel.principal(da, db)) < 1e-14

    def test_bound_state_orthogonal_to_w(self, shifted_params):
        bound = _state(BasisKind.BOUND, 1.0, 0.0, shifted_params)
        for delta in (-2.0, 0.1, 0.8):
            result = overlap(bound, _state(BasisKind.W, 1.0, delta, shifted_params))
            assert abs(result.deltaE_coeff) < 1e-14

    def test_degenerate_w_gives_zero(self, params):
        zero = BasisState.extended(BasisKind.W, MomentumPair(0.2, 0.2), params)
        result = overlap(zero, _state(BasisKind.S, 0.4, 0.3, params))
        assert (result.direct, result.exchange, result.pv_part, result.deltaE_coeff) == (0, 0, 0, 0)

    def test_energy_mismatch_is_metadata(self, params):
        result = overlap(_state(BasisKind.S, 0.0, 0.4, params), _state(BasisKind.S, 1.5, 0.4, params))
        assert result.energy_mismatch == pytest.approx(1.5)
        assert result.direct == 1.0

    def test_different_params_rejected(self, params, shifted_params):
        with pytest.raises(UnsupportedOverlapError):
            overlap(_state(BasisKind.S, 0.0, 0.4, params), _state(BasisKind.S, 0.0, 0.4, shifted_params))


# ============================================================================
# Completeness
# ============================================================================

class TestCompleteness:
    def test_residual_value(self, params):
        in_pair = MomentumPair.from_energy(0.0, 0.5)
        out_pair = MomentumPair.from_energy(0.0, 1.5)
        expected = (8.0 / math.pi) / ((1.0 + 1.0) * (9.0 + 1.0))
        assert completeness_residual(in_pair, out_pair, params) == pytest.approx(expected)

    def test_residual_is_bound_state_projection(self, shifted_params, rng):
        for d1, d2 in rng.uniform(-3.0, 3.0, size=(10, 2)):
            in_pair = MomentumPair.from_energy(1.4, d1)
            out_pair = MomentumPair.from_energy(1.4, d2)
            residual = completeness_residual(in_pair, out_pair, shifted_params)
            assert residual.real > 0
            assert bound_projection(in_pair, out_pair, shifted_params) == pytest.approx(residual.real, rel=1e-12)

    @pytest.mark.parametrize("gamma, d1, d2", [(1.0, 0.2, 1.1), (0.5, -0.9, 0.1), (2.0, 2.5, -0.4)])
    def test_projection_integral_cancels_residual(self, quad_spec, gamma, d1, d2):
        params = make_params(0.0, gamma)
        in_pair = MomentumPair.from_energy(0.0, d1)
        out_pair = MomentumPair.from_energy(0.0, d2)
        residual = completeness_residual(in_pair, out_pair, params)
        projected = projection_integral(in_pair, out_pair, params, quad_spec)
        assert abs(projected + residual) <= 1e-5 * abs(residual)

    def test_projection_integral_singular_set(self, params):
        with pytest.raises(InvalidParametersError):
            projection_integral(MomentumPair.from_energy(0.0, 0.5), MomentumPair.from_energy(0.0, -0.5), params)
