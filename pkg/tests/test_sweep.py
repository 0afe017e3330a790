import numpy as np
import pytest

import os

from spsfom import config, markovian, psb, sweep, units
from spsfom.params import EmitterParams, QuenchModel
from spsfom.utils import ParameterDomainError

from conftest import TESTS_DIR, read_csv


@pytest.fixture
def unit_context():
    """gamma* = 1, bare decay 1e-4 gamma*, no quenching."""
    emitter = EmitterParams(gamma_r=1e-4, gamma_star=1.0)
    return sweep.SweepContext(emitter=emitter, bare_decay_ratio=1e-4)


@pytest.fixture
def single_mode_context():
    """One lossy mode with k = 1/2 at 30 gamma*, etaR = 0.5."""
    emitter = EmitterParams(gamma_r=1e-4, gamma_star=1.0)
    return sweep.SweepContext(emitter=emitter, quench=QuenchModel(modes=((0.5, 30.0),)),
                              eta_r=0.5, bare_decay_ratio=1e-4)


class TestAxis:

    def test_log_values(self):
        assert np.allclose(sweep.Axis("Q", "log", 1.0, 100.0, 3).values(), [1.0, 10.0, 100.0])

    def test_linear_values(self):
        assert np.allclose(sweep.Axis("Q", "linear", 1.0, 3.0, 3).values(), [1.0, 2.0, 3.0])

    @pytest.mark.parametrize("kwargs", [
        dict(quantity="gamma"),
        dict(quantity="Q", scale="cubic"),
        dict(quantity="Q", points=0),
        dict(quantity="Q", points=1),
        dict(quantity="Q", min=5.0, max=5.0),
        dict(quantity="Q", min=10.0, max=1.0),
        dict(quantity="Q", min=0.0),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ParameterDomainError):
            sweep.Axis(**kwargs)


class TestRunSweep:

    def _spec(self, context, **kwargs):
        x = sweep.Axis("R/gammaStar", "log", 1.0, 100.0, 2)
        y = sweep.Axis("kappa/gammaStar", "log", 1.0, 100.0, 2)
        return sweep.SweepSpec(x_axis=x, y_axis=y, context=context, **kwargs)

    def test_grid_order(self, unit_context):
        result = sweep.run_sweep(self._spec(unit_context))
        assert len(result) == 4
        assert np.allclose(result["R/gammaStar"], [1.0, 1.0, 100.0, 100.0])
        assert np.allclose(result["kappa/gammaStar"], [1.0, 100.0, 1.0, 100.0])
        assert np.allclose(result["R"], result["R/gammaStar"])

    def test_matches_pointwise_evaluation(self, unit_context):
        result = sweep.run_sweep(self._spec(unit_context))
        for i in range(len(result)):
            r, kappa = result["R"][i], result["kappa"][i]
            gamma = 1e-4
            assert result["beta"][i] == pytest.approx(float(markovian.efficiency(r, kappa, gamma, 1.0)))
            assert result["indist"][i] == pytest.approx(
                float(markovian.indist_first_order_from_rates(r, kappa, gamma, 1.0)))
        assert not np.any(result["failed"])

    def test_output_groups(self, unit_context):
        result = sweep.run_sweep(self._spec(unit_context, outputs=("beta",)))
        assert "beta" in result.columns
        assert "indist" not in result.columns
        assert "critical" not in result.columns

    def test_deterministic_file(self, unit_context, tmp_path):
        paths = [str(tmp_path / "a.csv"), str(tmp_path / "b.csv")]
        for path in paths:
            sweep.run_sweep(self._spec(unit_context), {"config hash": "abc"}).write(path)
        with open(paths[0], "rb") as a, open(paths[1], "rb") as b:
            assert a.read() == b.read()
        provenance, columns = read_csv(paths[0])
        assert provenance["config hash"] == "abc"
        assert provenance["method"] == "full"
        assert len(columns["beta"]) == 4

    def test_r_equals_kappa(self, unit_context):
        x = sweep.Axis("kappa/gammaStar", "log", 1.0, 100.0, 3)
        result = sweep.run_sweep(sweep.SweepSpec(x_axis=x, context=unit_context, constraint="R=kappa"))
        assert np.allclose(result["R"], result["kappa"])

    def test_r_equals_kappa_with_both_swept(self, unit_context):
        with pytest.raises(ParameterDomainError):
            sweep.run_sweep(self._spec(unit_context, constraint="R=kappa"))

    def test_undetermined_kappa(self, unit_context):
        x = sweep.Axis("R/gammaStar", "log", 1.0, 100.0, 2)
        with pytest.raises(ParameterDomainError):
            sweep.run_sweep(sweep.SweepSpec(x_axis=x, context=unit_context))

    def test_same_axis_twice(self, unit_context):
        x = sweep.Axis("Q", "log", 1.0, 100.0, 2)
        with pytest.raises(ParameterDomainError):
            sweep.SweepSpec(x_axis=x, y_axis=x, context=unit_context)

    def test_oracle_threads_agree(self, unit_context):
        ctx1 = sweep.SweepContext(emitter=unit_context.emitter, bare_decay_ratio=1e-4, method="oracle")
        ctx2 = sweep.SweepContext(emitter=unit_context.emitter, bare_decay_ratio=1e-4, method="oracle",
                                  threads=2)
        r1 = sweep.run_sweep(self._spec(ctx1))
        r2 = sweep.run_sweep(self._spec(ctx2))
        np.testing.assert_array_equal(r1["beta"], r2["beta"])
        np.testing.assert_array_equal(r1["indist"], r2["indist"])


class TestEvaluatePoints:

    def test_both_detuning_forms(self, unit_context):
        with pytest.raises(ParameterDomainError):
            sweep.evaluate_points(unit_context, 10.0, 10.0, delta_q=5.0, scaled_delta_q=5.0)

    def test_nonpositive_kappa(self, unit_context):
        with pytest.raises(ParameterDomainError):
            sweep.evaluate_points(unit_context, 10.0, 0.0)

    def test_quench_lowers_the_product(self, unit_context):
        free = sweep.evaluate_points(unit_context, 10.0, 10.0)
        quenched = sweep.evaluate_points(sweep.SweepContext(
            emitter=unit_context.emitter, bare_decay_ratio=1e-4, eta_r=0.5), 10.0, 10.0, delta_q=20.0)
        assert quenched["gamma_q"][0] > 0
        assert quenched["product"][0] < free["product"][0]


class TestMaximize:

    def test_single_lossy_mode_optimum(self, single_mode_context):
        res = sweep.maximize_ibeta(single_mode_context)
        assert res.converged
        assert not res.on_boundary
        assert res.value == pytest.approx(0.92, abs=0.01)
        oc = markovian.optimal_cavity(1.0, 60.0, 0.5)
        assert res.kappa == pytest.approx(oc.kappa_max, rel=0.15)
        assert res.g == pytest.approx(oc.g_max, rel=0.15)
        assert 0.15 <= res.point["gamma_q"] <= 0.5
        assert all(b >= a for a, b in zip(res.stages, res.stages[1:]))

    def test_r_kappa_space_agrees(self, single_mode_context):
        a = sweep.maximize_ibeta(single_mode_context, space="g-kappa")
        b = sweep.maximize_ibeta(single_mode_context, space="R-kappa")
        assert b.value == pytest.approx(a.value, abs=1e-4)

    def test_invalid_box(self, single_mode_context):
        with pytest.raises(ParameterDomainError):
            sweep.maximize_ibeta(single_mode_context, box=((1.0, 1.0), (1.0, 10.0)))
        with pytest.raises(ParameterDomainError):
            sweep.maximize_ibeta(single_mode_context, space="g-R")


class TestScans:

    def test_q_max_scan_is_monotone(self):
        ctx = sweep.SweepContext(emitter=EmitterParams.siv(), eta_r=0.5)
        detunings = 2 * np.pi * np.array([3.0, 10.0, 30.0, 100.0])
        result = sweep.q_max_scan(ctx, 2.7e5, detunings)
        assert len(result) == 4
        assert np.all(np.diff(result["product_at_Q_max"]) >= -1e-6)
        assert not np.any(result["on_boundary"])

    def test_detuning_scan_is_monotone(self, single_mode_context):
        result = sweep.max_product_vs_detuning(single_mode_context, [10.0, 30.0, 100.0])
        assert np.all(np.diff(result["max_product"]) >= -1e-6)
        assert np.allclose(result["closed_form_kappa"],
                           [(d**2 / 0.5)**(1.0 / 3.0) for d in (10.0, 30.0, 100.0)])

    def test_scan_needs_positive_detunings(self):
        ctx = sweep.SweepContext(emitter=EmitterParams.siv(), eta_r=0.5)
        with pytest.raises(ParameterDomainError):
            sweep.q_max_scan(ctx, 2.7e5, [0.0])


class TestRegimeBoundaries:

    def test_points_on_the_critical_lines(self):
        gamma_star = units.rate_from_frequency_ghz(500.0)
        ctx = sweep.SweepContext(emitter=EmitterParams(gamma_r=1e-3, gamma_star=gamma_star))
        x = sweep.Axis("R/gammaStar", "linear", 0.5, 1.5, 3)
        y = sweep.Axis("kappa/gammaStar", "linear", 0.5, 1.5, 3)
        result = sweep.run_sweep(sweep.SweepSpec(x_axis=x, y_axis=y, context=ctx))
        expected = (result["R"] > gamma_star) & (result["kappa"] > gamma_star)
        np.testing.assert_array_equal(result["critical"], expected)
        assert np.sum(result["critical"]) == 1

    def test_single_mode_grid(self):
        cfg = config.read_config(os.path.join(TESTS_DIR, "single_mode_quench.cfg"))
        ctx = config.build_context(cfg)
        result = sweep.run_sweep(config.build_sweep_spec(cfg, ctx))
        gamma_star = ctx.emitter.gamma_star
        on_line = result["R"] == gamma_star
        assert np.any(on_line)
        assert not np.any(result["critical"][on_line])
        np.testing.assert_array_equal(result["critical"],
                                      (result["R"] > gamma_star) & (result["kappa"] > gamma_star))


class TestSidebandLimits:

    def _q_sweep(self, gamma_star_ghz):
        emitter = EmitterParams.siv(gamma_star_ghz=gamma_star_ghz)
        ctx = sweep.SweepContext(emitter=emitter, spectrum=psb.builtin_spectrum("sample5"),
                                 base_r=2.7e5 * emitter.gamma_r)
        return sweep.run_sweep(sweep.SweepSpec(x_axis=sweep.Axis("Q", "log", 1e-3, 60.0, 25), context=ctx))

    def test_vanishing_q_leaves_the_debye_waller_limit(self):
        result = self._q_sweep(500.0)
        f = result["filter_fraction"]
        assert np.all((f >= 0.0) & (f <= 1.0))
        assert np.all(np.diff(f) <= 1e-8)
        assert f[0] == pytest.approx(1.0, abs=1e-6)
        ratio = result["indist_psb"] / result["indist"]
        assert ratio[0] == pytest.approx(0.884**2, rel=1e-5)
        assert np.all(ratio >= 0.884**2 - 1e-12)

    def test_vanishing_q_without_dephasing(self):
        result = self._q_sweep(0.0)
        assert result["indist_psb"][0] == pytest.approx(0.77, abs=0.015)


class TestQMaxCrossSection:

    def test_scan_matches_a_dense_q_line(self):
        ctx = sweep.SweepContext(emitter=EmitterParams.siv(gamma_star_ghz=380.0), eta_r=0.9,
                                 spectrum=psb.builtin_spectrum("sample3"))
        scaled = units.rate_from_frequency_thz(30.0)
        purcell = 2.7e5
        scan = sweep.q_max_scan(ctx, purcell, [scaled])
        value = scan["product_psb_at_Q_max"][0]

        r = purcell * ctx.emitter.gamma_r
        q = np.geomspace(1.0, 1e4, 401)
        dense = sweep.evaluate_points(ctx, r, ctx.emitter.omega0 / q, scaled_delta_q=scaled)["product_psb"]
        at_100 = sweep.evaluate_points(ctx, r, ctx.emitter.omega0 / 100.0, scaled_delta_q=scaled)["product_psb"][0]

        assert not scan["on_boundary"][0]
        assert value >= np.nanmax(dense) - 1e-7
        assert value == pytest.approx(np.nanmax(dense), abs=0.02)
        assert value >= at_100
