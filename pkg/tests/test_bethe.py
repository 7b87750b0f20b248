"""
Tests for the even-channel basis states and interacting eigenstates:
Bethe coefficients, boundary conditions, bound state and in/out read-off.
"""
import math

import numpy as np
import pytest

from app.bethe import (
    BasisKind,
    BasisState,
    InteractingState,
    a_basis,
    bound_basis,
    boundary_residuals,
    build_bethe_state,
    build_bound_state,
    in_state,
    out_state,
    relative_envelope,
    s_basis,
    w_basis,
)
from app.bethe.basis import PLANE_WAVE_NORM
from app.core import InvalidParametersError, MomentumPair, make_params, momentum_views, to_relative


def _positions(rng, count=40, reach=6.0):
    x1 = rng.uniform(-reach, reach, size=count)
    x2 = rng.uniform(-reach, reach, size=count)
    return x1, x2


# ============================================================================
# Basis wavefunctions
# ============================================================================

class TestBasis:
    def test_s_basis_closed_form(self):
        pair = momentum_views(0.8, -0.2)
        x_c, x = 0.4, 1.3
        expected = np.exp(1j * pair.energy * x_c) * PLANE_WAVE_NORM * np.cos(pair.delta * x)
        assert s_basis(pair, x_c, x) == pytest.approx(expected)

    def test_a_basis_vanishes_at_coincidence(self):
        pair = momentum_views(0.8, -0.2)
        assert a_basis(pair, 1.0, 0.0) == 0

    def test_a_basis_is_even_in_x(self):
        pair = momentum_views(0.8, -0.2)
        x = np.linspace(-4.0, 4.0, 17)
        np.testing.assert_allclose(a_basis(pair, 0.3, x), a_basis(pair, 0.3, -x))

    def test_w_basis_combines_s_and_a(self, params):
        pair = momentum_views(1.1, 0.3)
        x = np.linspace(-5.0, 5.0, 21)
        norm = math.sqrt(4.0 * pair.delta**2 + params.gamma**2)
        expected = (2.0 * pair.delta * s_basis(pair, 0.2, x) + 1j * params.gamma * a_basis(pair, 0.2, x)) / norm
        np.testing.assert_allclose(w_basis(pair, 0.2, x, params), expected, atol=1e-15)

    def test_w_basis_flips_sign_under_swap(self, params):
        pair = momentum_views(1.1, 0.3)
        x = np.linspace(-5.0, 5.0, 21)
        np.testing.assert_allclose(
            w_basis(pair.swapped(), 0.2, x, params), -w_basis(pair, 0.2, x, params), atol=1e-15
        )

    def test_degenerate_w_state_is_zero(self, params):
        state = BasisState.extended(BasisKind.W, momentum_views(0.5, 0.5), params)
        assert state.is_zero
        np.testing.assert_allclose(state(0.0, np.linspace(-3.0, 3.0, 7)), 0.0)

    def test_bound_basis_profile(self, params):
        x = np.array([-2.0, 0.0, 3.0])
        expected = math.sqrt(params.gamma / (4.0 * math.pi)) * np.exp(-0.5 * params.gamma * np.abs(x))
        np.testing.assert_allclose(bound_basis(0.0, 0.0, x, params), expected)

    def test_relative_envelope_broadcasts(self, params):
        deltas = np.linspace(-1.0, 1.0, 5).reshape(-1, 1)
        x = np.linspace(-2.0, 2.0, 9)
        for kind in BasisKind:
            assert relative_envelope(kind, deltas, x, params).shape == (5, 9)

    def test_basis_state_label_validation(self, params):
        with pytest.raises(InvalidParametersError):
            BasisState(kind=BasisKind.S, params=params)
        with pytest.raises(InvalidParametersError):
            BasisState(kind=BasisKind.BOUND, params=params)

    def test_bound_state_has_no_relative_label(self, params):
        state = BasisState.bound(1.5, params)
        assert state.energy == 1.5
        assert state.delta == 0.0
        assert not state.kind.is_extended


# ============================================================================
# Bethe states
# ============================================================================

class TestBetheState:
    def test_coefficient_ratio(self, params):
        pair = momentum_views(0.9, -0.4)
        state = build_bethe_state(pair, params)
        k, p, gamma = pair.k, pair.p, params.gamma
        expected = (k - p - 1j * gamma) / (k - p + 1j * gamma)
        assert state.coefficients.ratio == pytest.approx(expected)

    def test_excitation_is_continuous(self, rng):
        for _ in range(100):
            omega = rng.uniform(-2.0, 2.0)
            gamma = rng.uniform(0.2, 3.0)
            params = make_params(omega, gamma)
            k, p = omega + rng.uniform(-5.0, 5.0, size=2) * gamma
            state = build_bethe_state(MomentumPair(k, p), params)
            assert abs(state.excitation.jump()) < 1e-12

    def test_boundary_residuals_vanish(self, shifted_params, rng):
        x = rng.uniform(-8.0, 8.0, size=50)
        for k, p in [(0.3, -0.2), (1.7, 0.1), (-2.0, 2.5)]:
            state = build_bethe_state(momentum_views(k, p), shifted_params)
            assert boundary_residuals(state, x).max_abs < 1e-10

    def test_boundary_residuals_vanish_for_random_parameters(self, rng):
        for _ in range(100):
            omega = rng.uniform(-2.0, 2.0)
            gamma = rng.uniform(0.2, 3.0)
            params = make_params(omega, gamma)
            k, p = omega + rng.uniform(-5.0, 5.0, size=2) * gamma
            state = build_bethe_state(MomentumPair(k, p), params)
            x = rng.uniform(-8.0, 8.0, size=50) / gamma
            assert boundary_residuals(state, x).max_abs < 1e-10

    def test_residuals_drop_origin(self, params):
        state = build_bethe_state(momentum_views(0.3, -0.2), params)
        residuals = boundary_residuals(state, np.array([-1.0, 0.0, 1.0]))
        assert residuals.x.tolist() == [-1.0, 1.0]

    def test_region_three_is_w_state(self, params, rng):
        pair = momentum_views(0.6, -1.1)
        state = build_bethe_state(pair, params)
        x1 = -rng.uniform(0.1, 6.0, size=30)
        x2 = -rng.uniform(0.1, 6.0, size=30)
        x_c, x = to_relative(x1, x2)
        np.testing.assert_allclose(state.wavefunction(x1, x2), w_basis(pair, x_c, x, params), atol=1e-14)

    def test_wavefunction_is_symmetric(self, params, rng):
        state = build_bethe_state(momentum_views(0.6, -1.1), params)
        x1, x2 = _positions(rng)
        np.testing.assert_allclose(state.wavefunction(x1, x2), state.wavefunction(x2, x1))

    def test_degenerate_state_vanishes(self, params, rng):
        state = build_bethe_state(momentum_views(0.4, 0.4), params)
        x1, x2 = _positions(rng)
        np.testing.assert_allclose(state.wavefunction(x1, x2), 0.0, atol=1e-15)

    def test_eigenvalue_is_product_of_phases(self, params):
        state = build_bethe_state(momentum_views(0.6, -1.1), params)
        assert state.eigenvalue == pytest.approx(state.t_k * state.t_p)
        assert abs(state.eigenvalue) == pytest.approx(1.0)

    def test_satisfies_protocol(self, params):
        assert isinstance(build_bethe_state(momentum_views(0.1, 0.2), params), InteractingState)
        assert isinstance(build_bound_state(0.0, params), InteractingState)


# ============================================================================
# Bound state
# ============================================================================

class TestBoundState:
    def test_eigenvalue_is_a_phase(self, shifted_params):
        for energy in np.linspace(-5.0, 5.0, 11):
            assert abs(abs(build_bound_state(energy, shifted_params).eigenvalue) - 1.0) < 1e-12

    def test_eigenvalue_on_resonance(self, params):
        assert build_bound_state(2.0 * params.omega, params).eigenvalue == pytest.approx(-1.0)

    def test_boundary_residuals_vanish(self, shifted_params, rng):
        x = rng.uniform(-8.0, 8.0, size=50)
        for energy in (-1.0, 1.4, 3.0):
            state = build_bound_state(energy, shifted_params)
            assert boundary_residuals(state, x).max_abs < 1e-10
            assert state.excitation.is_continuous()

    def test_decays_in_relative_coordinate(self, params):
        state = build_bound_state(0.3, params)
        near = abs(state.wavefunction(-1.0, -1.5))
        far = abs(state.wavefunction(-1.0, -11.0))
        assert far < near * math.exp(-4.0)

    def test_rejects_non_finite_energy(self, params):
        with pytest.raises(InvalidParametersError):
            build_bound_state(math.inf, params)


# ============================================================================
# In/out read-off
# ============================================================================

class TestReadoff:
    def test_bethe_in_state_is_w_state(self, shifted_params, rng):
        x1, x2 = _positions(rng)
        x_c, x = to_relative(x1, x2)
        for k, p in [(0.3, -0.2), (1.7, 0.1), (-2.0, 2.5)]:
            pair = momentum_views(k, p)
            state = build_bethe_state(pair, shifted_params)
            np.testing.assert_allclose(
                in_state(state, x1, x2), w_basis(pair, x_c, x, shifted_params), atol=1e-12
            )

    def test_bethe_out_state_is_eigenvalue_times_in_state(self, shifted_params, rng):
        x1, x2 = _positions(rng)
        state = build_bethe_state(momentum_views(1.2, -0.7), shifted_params)
        np.testing.assert_allclose(
            out_state(state, x1, x2), state.eigenvalue * in_state(state, x1, x2), atol=1e-12
        )

    def test_bound_in_state_is_bound_basis(self, shifted_params, rng):
        x1, x2 = _positions(rng)
        x_c, x = to_relative(x1, x2)
        state = build_bound_state(1.1, shifted_params)
        np.testing.assert_allclose(
            state.normalization * in_state(state, x1, x2),
            bound_basis(1.1, x_c, x, shifted_params),
            atol=1e-12,
        )

    def test_bound_out_state_is_eigenvalue_times_in_state(self, shifted_params, rng):
        x1, x2 = _positions(rng)
        state = build_bound_state(-0.6, shifted_params)
        np.testing.assert_allclose(
            out_state(state, x1, x2), state.eigenvalue * in_state(state, x1, x2), atol=1e-12
        )
