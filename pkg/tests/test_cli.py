"""
Tests for the command-line front end, run in-process through main(argv).
"""
import json
import math

import numpy as np
import pytest

import scatter_cli
from app import verification
from app.bethe.basis import PLANE_WAVE_NORM


def _load_csv(path):
    header = path.read_text(encoding="utf-8").splitlines()[0].split(",")
    return header, np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


@pytest.fixture
def quick_checks(monkeypatch):
    monkeypatch.setattr(
        verification, "CHECKS", [verification.check_single_photon, verification.check_two_mode]
    )


# ============================================================================
# spectrum
# ============================================================================

class TestSpectrumCommand:
    def test_full_reflection_and_flux(self, tmp_path):
        out = tmp_path / "spectrum.csv"
        assert scatter_cli.main(["spectrum", "--grid", "-5:5:201", "--out", str(out)]) == 0

        header, data = _load_csv(out)
        assert header == ["k", "t_bar_abs2", "r_bar_abs2"]
        assert data.shape == (201, 3)
        assert abs(data[:, 2].max() - 1.0) < 1e-12
        np.testing.assert_allclose(data[:, 1] + data[:, 2], 1.0, atol=1e-12)

    def test_width_from_exported_data(self, tmp_path):
        out = tmp_path / "fine.csv"
        assert scatter_cli.main(["spectrum", "--grid", "-1:1:2001", "--out", str(out)]) == 0

        _, data = _load_csv(out)
        inside = data[data[:, 2] >= 0.5, 0]
        assert abs((inside.max() - inside.min()) - 1.0) <= 2e-3

    def test_two_point_grid(self, tmp_path):
        out = tmp_path / "two.csv"
        assert scatter_cli.main(["spectrum", "--grid", "-1:1:2", "--out", str(out)]) == 0

        _, data = _load_csv(out)
        assert data.shape == (2, 3)
        assert data[0, 0] < data[1, 0]

    def test_shifted_resonance(self, tmp_path):
        out = tmp_path / "shifted.csv"
        argv = ["spectrum", "--omega", "2", "--gamma", "0.5", "--grid", "-4:4:81", "--out", str(out)]
        assert scatter_cli.main(argv) == 0

        _, data = _load_csv(out)
        peak = data[np.argmax(data[:, 2])]
        assert peak[0] == pytest.approx(2.0)

    def test_json_output(self, tmp_path):
        out = tmp_path / "spectrum.json"
        assert scatter_cli.main(["spectrum", "--grid", "-1:1:5", "--format", "json", "--out", str(out)]) == 0

        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["columns"] == ["k", "t_bar_abs2", "r_bar_abs2"]
        assert len(payload["rows"]) == 5

    def test_repeated_runs_are_identical(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        scatter_cli.main(["spectrum", "--grid", "-3:3:61", "--out", str(first)])
        scatter_cli.main(["spectrum", "--grid", "-3:3:61", "--out", str(second)])
        assert first.read_bytes() == second.read_bytes()

    def test_default_output_location(self, tmp_path, monkeypatch):
        monkeypatch.setenv("WAVEGUIDE_OUTPUT_DIR", str(tmp_path / "runs"))
        monkeypatch.setenv("WAVEGUIDE_OUTPUT_FORMAT", "csv")
        assert scatter_cli.main(["spectrum", "--grid", "-1:1:3"]) == 0
        assert (tmp_path / "runs" / "spectrum.csv").exists()


# ============================================================================
# wavefunctions
# ============================================================================

class TestWavefunctionsCommand:
    def test_on_resonance_series(self, tmp_path):
        out = tmp_path / "wave.csv"
        assert scatter_cli.main(["wavefunctions", "--grid", "-10:10:401", "--out", str(out)]) == 0

        header, data = _load_csv(out)
        assert header == ["xbar", "t2_abs2", "r2_abs2", "rt_abs2"]
        xbar = data[:, 0]
        distance = np.abs(2.0 * xbar)
        np.testing.assert_allclose(data[:, 1], PLANE_WAVE_NORM**2 * np.exp(-distance), atol=1e-12)
        np.testing.assert_allclose(
            data[:, 2], PLANE_WAVE_NORM**2 * (1.0 - np.exp(-0.5 * distance)) ** 2, atol=1e-12
        )
        np.testing.assert_allclose(data[:, 3], np.exp(-2.0 * distance) / math.pi**2, atol=1e-12)
        assert data[np.argmin(np.abs(xbar)), 2] < 1e-12

    def test_antibunching_at_half_width(self, tmp_path):
        out = tmp_path / "anti.csv"
        argv = ["wavefunctions", "--dE", "0", "--delta", "-0.5", "--grid", "-10:10:401", "--out", str(out)]
        assert scatter_cli.main(argv) == 0

        _, data = _load_csv(out)
        coincidence = data[np.argmin(np.abs(data[:, 0])), 1]
        assert coincidence < 1e-12 * data[:, 1].max()


# ============================================================================
# fluorescence
# ============================================================================

class TestFluorescenceCommand:
    def test_resonant_peak_and_symmetry(self, tmp_path):
        out = tmp_path / "fluo.csv"
        assert scatter_cli.main(["fluorescence", "--dE", "0", "--grid", "-4:4:81", "--out", str(out)]) == 0

        header, data = _load_csv(out)
        assert header == ["delta1_bar", "delta2_bar", "b_bar_abs2"]
        surface = data[:, 2].reshape(81, 81)
        peak = np.unravel_index(np.argmax(surface), surface.shape)
        assert peak == (40, 40)
        assert abs(surface[peak] - (8.0 / math.pi) ** 2) < 1e-10
        np.testing.assert_allclose(surface, surface.T, rtol=1e-12)

    def test_detuned_lobes(self, tmp_path):
        out = tmp_path / "lobes.csv"
        # Ebar = (E - 2 omega) / (gamma / 2) = 4
        assert scatter_cli.main(["fluorescence", "--dE", "2", "--grid", "-4:4:81", "--out", str(out)]) == 0

        _, data = _load_csv(out)
        best = data[np.argmax(data[:, 2])]
        assert abs(abs(best[0]) - math.sqrt(3.0)) <= 0.1
        assert abs(abs(best[1]) - math.sqrt(3.0)) <= 0.1


# ============================================================================
# momentum
# ============================================================================

class TestMomentumCommand:
    def test_sector_columns(self, tmp_path):
        out = tmp_path / "momentum.csv"
        argv = ["momentum", "--dE", "0.5", "--delta", "0.2", "--grid", "-2:2:21", "--out", str(out)]
        assert scatter_cli.main(argv) == 0

        header, data = _load_csv(out)
        assert header[0] == "delta2"
        assert "RR_direct_re" in header and "RL_correlated_im" in header
        assert data.shape == (21, 19)


# ============================================================================
# verify
# ============================================================================

class TestVerifyCommand:
    def test_passing_run(self, tmp_path, quick_checks):
        out = tmp_path / "verify.json"
        assert scatter_cli.main(["verify", "--seed", "3", "--out", str(out)]) == 0

        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["passed"] is True
        assert report["seed"] == 3
        assert {"name", "measured", "tolerance", "passed"} <= set(report["checks"][0])

    def test_forced_failure(self, tmp_path, quick_checks):
        out = tmp_path / "verify.json"
        assert scatter_cli.main(["verify", "--tolerance", "1e-30", "--out", str(out)]) == 1

        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["failed"] > 0
        assert report["passed"] is False


# ============================================================================
# Errors and exit codes
# ============================================================================

class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["spectrum", "--grid", "5:1:10"],
            ["spectrum", "--grid", "0:1:1"],
            ["spectrum", "--grid", "nonsense"],
            ["spectrum", "--gamma", "-1"],
            ["teleport"],
        ],
    )
    def test_usage_errors(self, tmp_path, argv):
        assert scatter_cli.main(argv + ["--out", str(tmp_path / "x.csv")]) == 2

    def test_io_error(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("file", encoding="utf-8")
        assert scatter_cli.main(["spectrum", "--grid", "-1:1:3", "--out", str(blocker / "t.csv")]) == 3

    def test_bad_settings(self, tmp_path, monkeypatch):
        monkeypatch.setenv("WAVEGUIDE_MAX_WORKERS", "0")
        assert scatter_cli.main(["spectrum", "--out", str(tmp_path / "x.csv")]) == 2

    def test_help_exits_cleanly(self, capsys):
        assert scatter_cli.main(["--help"]) == 0
        assert "waveguide-scatter" in capsys.readouterr().out


# ============================================================================
# Grid argument
# ============================================================================

class TestGridArgument:
    def test_negative_minimum_is_joined(self):
        argv = ["spectrum", "--grid", "-5:5:201", "--out", "x.csv"]
        assert scatter_cli.attach_grid_values(argv) == ["spectrum", "--grid=-5:5:201", "--out", "x.csv"]

    def test_other_arguments_untouched(self):
        argv = ["wavefunctions", "--dE", "-1.5", "--grid=-2:2:5"]
        assert scatter_cli.attach_grid_values(argv) == argv

    @pytest.mark.parametrize("grid_args", [["--grid", "-5:5:11"], ["--grid=-5:5:11"]])
    def test_both_spellings_export_same_grid(self, tmp_path, grid_args):
        out = tmp_path / "spectrum.csv"
        assert scatter_cli.main(["spectrum", *grid_args, "--out", str(out)]) == 0
        _, data = _load_csv(out)
        assert data[0, 0] == -5.0
        assert data[-1, 0] == 5.0
        assert data.shape[0] == 11
