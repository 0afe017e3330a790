import dataclasses
import os
import numpy as np
import pytest

from spsfom import markovian, psb
from spsfom.spsfom import main
import spsfom.defaults as defaults

from conftest import TESTS_DIR, ROOT_DIR, read_csv


PRESET = os.path.join(ROOT_DIR, "configs", "siv_hybrid.cfg")


def _test_config(name):
    return os.path.join(TESTS_DIR, name)


def _single_row(path):
    _, columns = read_csv(path)
    return {key: float(values[0]) for key, values in columns.items()}


@pytest.fixture(autouse=True)
def _no_thread_env(monkeypatch):
    monkeypatch.delenv(defaults.threads_env, raising=False)


def test_no_mode_prints_help(capsys):
    assert main([]) == 0
    assert "modes:" in capsys.readouterr().out


class TestFom:

    def test_preset(self, tmp_path, capsys):
        out = str(tmp_path / "fom.csv")
        assert main(["fom", "--config", PRESET, "--out", out]) == 0
        assert "I beta etaR" in capsys.readouterr().out
        row = _single_row(out)
        assert row["etaR"] == pytest.approx(0.97224, abs=1e-4)
        assert row["I0beta0etaR"] == pytest.approx(0.86, abs=0.01)
        assert row["I"] == pytest.approx(0.87, abs=0.01)
        assert row["beta"] == pytest.approx(0.97, abs=0.01)
        assert row["IbetaEtaR"] == pytest.approx(0.83, abs=0.01)
        assert row["filtered_efficiency_bound"] == pytest.approx(0.81 * row["IbetaEtaR"])
        assert row["psb_weak_coupling_ok"] == 1.0
        assert row["psb_input_ok"] == 1.0

    def test_out_of_range_input_is_flagged(self, tmp_path, monkeypatch):
        real = markovian.evaluate_fom

        def overshooting(*args, **kwargs):
            return dataclasses.replace(real(*args, **kwargs), indist=1.02)

        monkeypatch.setattr(markovian, "evaluate_fom", overshooting)
        out = str(tmp_path / "fom.csv")
        assert main(["fom", "-c", PRESET, "-o", out]) == 0
        row = _single_row(out)
        assert row["psb_input_ok"] == 0.0
        assert row["I0"] == pytest.approx(1.02)
        assert row["I"] < row["I0"]

    def test_preset_without_sideband(self, tmp_path):
        text = open(PRESET).read().replace("psb.sample = sample5", "psb.sample = none")
        cfg = tmp_path / "markovian.cfg"
        cfg.write_text(text)
        out = str(tmp_path / "fom.csv")
        assert main(["fom", "-c", str(cfg), "-o", out]) == 0
        row = _single_row(out)
        assert row["I0beta0etaR"] == pytest.approx(0.86, abs=0.01)
        assert row["I"] == row["I0"]
        assert "DW" not in row

    def test_sample3(self, tmp_path):
        out = str(tmp_path / "fom.csv")
        assert main(["fom", "-c", _test_config("sample3.cfg"), "-o", out]) == 0
        row = _single_row(out)
        assert row["I"] == pytest.approx(0.85, abs=0.01)
        assert row["beta"] == pytest.approx(0.99, abs=0.01)
        assert row["Ibeta"] == pytest.approx(0.84, abs=0.01)

    def test_no_dephasing_oracle(self, tmp_path):
        rows = {}
        for method in ("full", "oracle"):
            out = str(tmp_path / "{}.csv".format(method))
            assert main(["fom", "-c", _test_config("no_dephasing.cfg"), "-m", method, "-o", out]) == 0
            rows[method] = _single_row(out)
        assert rows["full"]["I"] == pytest.approx(1.0, abs=1e-12)
        assert rows["oracle"]["I"] == pytest.approx(1.0, abs=1e-6)
        assert rows["full"]["beta"] == pytest.approx(1.0, abs=1e-5)
        assert rows["oracle"]["beta"] == pytest.approx(rows["full"]["beta"], abs=1e-5)

    def test_invalid_config(self, capsys):
        assert main(["fom", "-c", _test_config("invalid.cfg")]) == 2
        assert "spsfom error:" in capsys.readouterr().err

    def test_missing_cavity(self, tmp_path):
        cfg = tmp_path / "bare.cfg"
        cfg.write_text("emitter.gammaStar_GHz = 500\n")
        assert main(["fom", "-c", str(cfg)]) == 2

    def test_bad_output_directory(self, tmp_path):
        out = str(tmp_path / "missing" / "fom.csv")
        assert main(["fom", "-c", PRESET, "-o", out]) == 3
        assert not os.path.exists(out)


class TestSweep:

    def test_two_by_two(self, tmp_path, capsys):
        paths = [str(tmp_path / "a.csv"), str(tmp_path / "b.csv")]
        for path in paths:
            assert main(["sweep", "-c", _test_config("sweep_2x2.cfg"), "-o", path]) == 0
        assert "Evaluated 4 grid point(s)" in capsys.readouterr().out
        with open(paths[0], "rb") as a, open(paths[1], "rb") as b:
            assert a.read() == b.read()
        provenance, columns = read_csv(paths[0])
        assert len(columns["product"]) == 4
        assert provenance["config"] == _test_config("sweep_2x2.cfg")
        assert len(provenance["config hash"]) == 16

    def test_needs_output(self):
        assert main(["sweep", "-c", _test_config("sweep_2x2.cfg")]) == 2

    def test_bad_thread_count(self, monkeypatch, tmp_path):
        monkeypatch.setenv(defaults.threads_env, "many")
        assert main(["sweep", "-c", _test_config("sweep_2x2.cfg"), "-o", str(tmp_path / "a.csv")]) == 2
        assert main(["sweep", "-c", _test_config("sweep_2x2.cfg"), "-o", str(tmp_path / "a.csv"),
                     "-t", "0"]) == 2


class TestOptimize:

    def test_single_lossy_mode(self, tmp_path, capsys):
        out = str(tmp_path / "opt.csv")
        assert main(["optimize", "-c", _test_config("single_mode_quench.cfg"), "-o", out]) == 0
        assert "Closed-form optimum" in capsys.readouterr().out
        row = _single_row(out)
        assert row["product"] == pytest.approx(0.92, abs=0.01)
        assert row["converged"] == 1.0
        assert row["closed_form_kappa"] / row["closed_form_g"] == pytest.approx(2.0)

    def test_unknown_scan_kind(self, tmp_path):
        cfg = tmp_path / "scan.cfg"
        cfg.write_text("emitter.gammaStar_GHz = 1000\nscan.kind = sideways\n")
        assert main(["optimize", "-c", str(cfg)]) == 2


class TestPsb:

    def test_report_and_exports(self, tmp_path, capsys):
        profile = str(tmp_path / "profile.csv")
        coeffs = str(tmp_path / "coeffs.csv")
        assert main(["psb", "-c", PRESET, "-o", profile, "-ec", coeffs]) == 0
        text = capsys.readouterr().out
        assert "Debye-Waller factor" in text
        assert "sideband outside the window" in text
        assert psb.read_spectrum_csv(coeffs) == psb.builtin_spectrum("sample5")
        _, columns = read_csv(profile)
        assert len(columns["wavelength_nm"]) == defaults.psb_plot_points
        lo, hi = defaults.psb_window
        lambda0 = psb.builtin_spectrum("sample5").lambda0
        assert columns["wavelength_nm"][0] == pytest.approx(lambda0 + lo)
        assert columns["wavelength_nm"][-1] == pytest.approx(lambda0 + hi)

    def test_needs_a_spectrum(self, tmp_path):
        cfg = tmp_path / "nopsb.cfg"
        cfg.write_text("cavity.Q = 60\n")
        assert main(["psb", "-c", str(cfg)]) == 2


class TestValidate:

    def test_zero_samples(self, capsys):
        assert main(["validate", "-n", "0"]) == 0
        assert "nothing to validate" in capsys.readouterr().out

    def test_small_run(self, tmp_path):
        paths = [str(tmp_path / "a.csv"), str(tmp_path / "b.csv")]
        for path in paths:
            assert main(["validate", "-c", _test_config("validate_small.cfg"), "-s", "7", "-o", path]) == 0
        with open(paths[0], "rb") as a, open(paths[1], "rb") as b:
            assert a.read() == b.read()
        provenance, columns = read_csv(paths[0])
        assert provenance["seed"] == "7"
        assert len(columns["I_oracle"]) == 10

    def test_every_sample_is_cross_checked_by_default(self, tmp_path):
        cfg = tmp_path / "all.cfg"
        cfg.write_text("validate.samples = 4\nvalidate.ratioMin = 0.01\nvalidate.ratioMax = 0.05\n")
        out = str(tmp_path / "all.csv")
        assert main(["validate", "-c", str(cfg), "-o", out]) == 0
        _, columns = read_csv(out)
        assert np.all(np.isfinite(columns["I_quadrature"]))
        assert np.all(columns["oracle_deviation"] < defaults.validate_oracle_tol)

    def test_violation_exits_with_one(self, monkeypatch, capsys):
        monkeypatch.setattr(defaults, "validate_quadratic_constant", 0.0)
        assert main(["validate", "-c", _test_config("validate_small.cfg")]) == 1
        assert "worst sample" in capsys.readouterr().err
