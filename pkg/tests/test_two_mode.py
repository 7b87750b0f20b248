"""
Tests for the two-mode out-states (t2, r2, rt) and the momentum-space
sector coefficients.
"""
import math

import numpy as np
import pytest

from app.bethe import background_B
from app.bethe.basis import PLANE_WAVE_NORM
from app.core import InvalidParametersError, MomentumPair
from app.single_photon import two_mode_coeffs
from app.two_mode import (
    OutKind,
    Sector,
    assemble_out_state,
    build_out_state,
    momentum_distribution,
    on_resonance_r2,
    on_resonance_rt,
    on_resonance_t2,
    r2,
    rt,
    t2,
)


@pytest.fixture
def grid(params):
    return np.linspace(-3.0, 3.0, 21) * params.gamma


@pytest.fixture
def coordinates(rng):
    return rng.uniform(-6.0, 6.0, size=25), rng.uniform(-6.0, 6.0, size=25)


# ============================================================================
# Closed forms
# ============================================================================

class TestOutState:
    def test_no_double_reflection_at_coincidence(self, params, grid):
        for detuning in grid:
            for delta in grid:
                assert abs(r2(2.0 * params.omega + detuning, delta, 0.0, 0.0, params)) < 1e-12

    def test_on_resonance_closed_forms(self, shifted_params):
        samples = np.linspace(-10.0, 10.0, 101)
        energy = 2.0 * shifted_params.omega
        np.testing.assert_allclose(
            t2(energy, 0.0, samples, samples, shifted_params),
            on_resonance_t2(samples, samples, shifted_params),
            atol=1e-12,
        )
        np.testing.assert_allclose(
            r2(energy, 0.0, samples, samples, shifted_params),
            on_resonance_r2(samples, samples, shifted_params),
            atol=1e-12,
        )
        np.testing.assert_allclose(
            rt(energy, 0.0, samples, samples, shifted_params),
            on_resonance_rt(samples, samples, shifted_params),
            atol=1e-12,
        )

    def test_resonant_pair_is_fully_reflected_far_apart(self, params):
        far = 60.0 / params.gamma
        assert abs(t2(0.0, 0.0, 0.0, far, params)) < 1e-12
        assert abs(r2(0.0, 0.0, 0.0, far, params)) == pytest.approx(PLANE_WAVE_NORM)

    def test_antibunching_at_half_width(self, params):
        x = np.linspace(-10.0, 10.0, 201)
        values = np.abs(t2(0.0, -0.5 * params.gamma, 0.0, x, params)) ** 2
        assert values[100] < 1e-12 * values.max()

    def test_coincidence_decreases_towards_half_width(self, params):
        deltas = np.linspace(0.0, 0.5, 26) * params.gamma
        coincidence = np.array([abs(t2(0.0, d, 0.0, 0.0, params)) ** 2 for d in deltas])
        assert np.all(np.diff(coincidence) <= 1e-15)

    def test_parity_in_detuning_and_delta(self, shifted_params, coordinates):
        x_c, x = coordinates
        omega = shifted_params.omega
        for amplitude in (t2, r2, rt):
            for detuning, delta in [(0.4, 0.9), (-1.5, 0.2), (2.0, -1.1)]:
                reference = np.abs(amplitude(2 * omega + detuning, delta, x_c, x, shifted_params)) ** 2
                mirrored = np.abs(amplitude(2 * omega - detuning, delta, x_c, x, shifted_params)) ** 2
                flipped = np.abs(amplitude(2 * omega + detuning, -delta, x_c, x, shifted_params)) ** 2
                np.testing.assert_allclose(mirrored, reference, atol=1e-12)
                np.testing.assert_allclose(flipped, reference, atol=1e-12)

    def test_oscillations_die_out_when_detuned(self, params):
        # far from the impurity the pair looks like two independent photons
        x = np.linspace(40.0, 60.0, 41) / params.gamma
        energy = 2.0 * params.omega - 1.5 * params.gamma
        values = np.abs(t2(energy, 0.0, 0.0, x, params)) ** 2
        t_bar, _ = two_mode_coeffs(0.5 * energy, params)
        asymptote = PLANE_WAVE_NORM**2 * abs(t_bar) ** 4
        np.testing.assert_allclose(values, asymptote, rtol=1e-6)

    def test_rt_is_not_symmetric(self, params):
        state = build_out_state(0.3, 0.8, params)
        x_c = np.linspace(-2.0, 2.0, 9)
        assert not state.rt.symmetric
        assert state.rt.symmetry_defect(x_c, np.full_like(x_c, 0.7)) > 1e-6
        assert state.t2.symmetry_defect(x_c, np.full_like(x_c, 0.7)) < 1e-15
        assert state.labels == (0.3, 0.8)


# ============================================================================
# Assembly from even/odd pieces
# ============================================================================

class TestAssembly:
    @pytest.mark.parametrize("kind, closed_form", [(OutKind.T2, t2), (OutKind.R2, r2), (OutKind.RT, rt)])
    def test_assembly_matches_closed_forms(self, shifted_params, coordinates, kind, closed_form):
        x_c, x = coordinates
        for energy, delta in [(0.2, 0.4), (1.9, -1.3), (-2.5, 0.0)]:
            np.testing.assert_allclose(
                assemble_out_state(kind, energy, delta, x_c, x, shifted_params),
                closed_form(energy, delta, x_c, x, shifted_params),
                atol=1e-12,
            )

    def test_kind_accepts_strings(self, params):
        assert assemble_out_state("t2", 0.0, 0.0, 0.0, 1.0, params) == pytest.approx(
            complex(t2(0.0, 0.0, 0.0, 1.0, params))
        )


# ============================================================================
# Momentum sectors
# ============================================================================

class TestMomentumDistribution:
    def test_sector_coefficients(self, params):
        in_pair = MomentumPair(0.3, -0.4)
        out_pair = MomentumPair(0.1, -0.2)
        t_k, r_k = two_mode_coeffs(0.3, params)
        t_p, r_p = two_mode_coeffs(-0.4, params)

        rr = momentum_distribution(Sector.RR, in_pair, out_pair, params)
        ll = momentum_distribution("LL", in_pair, out_pair, params)
        rl = momentum_distribution(Sector.RL, in_pair, out_pair, params)

        assert rr.direct == pytest.approx(t_k * t_p) and rr.exchange == pytest.approx(t_k * t_p)
        assert ll.direct == pytest.approx(r_k * r_p) and ll.exchange == pytest.approx(r_k * r_p)
        assert rl.direct == pytest.approx(t_k * r_p) and rl.exchange == pytest.approx(r_k * t_p)
        assert rl.sector == "RL"

    def test_correlated_part_is_quarter_background(self, params):
        in_pair = MomentumPair.from_energy(0.5, 0.2)
        out_pair = MomentumPair(1.0, 0.25)
        expected = 0.25 * background_B(0.5, 0.2, out_pair.delta, params)
        for sector in Sector:
            element = momentum_distribution(sector, in_pair, out_pair, params)
            assert element.correlated == pytest.approx(expected)

    def test_left_movers_use_physical_momenta(self, params):
        in_pair = MomentumPair.from_energy(0.5, 0.2)
        right = momentum_distribution(Sector.RR, in_pair, MomentumPair(1.0, 0.25), params)
        left = momentum_distribution(Sector.LL, in_pair, MomentumPair(-1.0, -0.25), params)
        assert left.correlated == pytest.approx(right.correlated)

    def test_unknown_sector(self, params):
        pair = MomentumPair(0.1, 0.2)
        with pytest.raises(InvalidParametersError):
            momentum_distribution("RX", pair, pair, params)


def test_pair_bound_weight_matches_fluorescence_peak(params):
    # |Gamma/2 * B| at the origin of the fluorescence map on resonance is 8/pi
    value = abs(0.5 * params.gamma * background_B(2.0 * params.omega, 0.0, 0.0, params))
    assert value == pytest.approx(8.0 / math.pi)
