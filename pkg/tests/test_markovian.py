import numpy as np
import pytest
from hypothesis import given, settings, assume, strategies as st

from spsfom import markovian
from spsfom.params import EmitterParams, CavityParams, QuenchModel
from spsfom.utils import ParameterDomainError, SpsfomError


log_rate = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False).map(lambda x: 10.0**x)


class TestDeskCase:
    """gamma = 0, gamma* = 1, R = kappa = 10."""

    args = (10.0, 10.0, 0.0, 1.0)

    def test_beta_is_one_without_emitter_decay(self):
        assert markovian.efficiency(*self.args) == pytest.approx(1.0, abs=1e-15)

    def test_zeroth_order(self):
        assert markovian.indist_zeroth_from_rates(*self.args) == pytest.approx(
            (100.0 / 121.0) * (793.0 / 700.0), rel=1e-12)
        assert markovian.indist_zeroth_from_rates(*self.args) == pytest.approx(0.9362, abs=1e-4)

    def test_first_order(self):
        assert markovian.indist_first_order_from_rates(*self.args) == pytest.approx(0.8833, abs=1e-3)

    def test_simplified(self):
        assert markovian.indist_simplified_from_rates(*self.args) == pytest.approx(0.8854, abs=1e-4)

    def test_full_and_simplified_agree_to_second_order(self):
        full = markovian.indist_first_order_from_rates(*self.args)
        simplified = markovian.indist_simplified_from_rates(*self.args)
        assert abs(full - simplified) < 2 * (1.0 / 10.0)**2


@given(r=log_rate, kappa=log_rate, gamma=log_rate, gamma_star=log_rate)
@settings(max_examples=200, deadline=None)
def test_beta_lies_in_unit_interval(r, kappa, gamma, gamma_star):
    beta = markovian.efficiency(r, kappa, gamma, gamma_star)
    assert 0.0 <= beta <= 1.0


@given(r=log_rate, kappa=log_rate, gamma=log_rate)
@settings(max_examples=100, deadline=None)
def test_indistinguishability_is_one_without_dephasing(r, kappa, gamma):
    assert markovian.indist_zeroth_from_rates(r, kappa, gamma, 0.0) == pytest.approx(1.0, rel=1e-9)
    assert markovian.indist_first_order_from_rates(r, kappa, gamma, 0.0) == pytest.approx(1.0, rel=1e-9)


@pytest.mark.parametrize("r_over_kappa", [0.1, 1.0, 5.0])
def test_simplified_decreases_with_dephasing(r_over_kappa):
    kappa = 10.0
    gamma_star = np.linspace(0.01, 0.99, 50) * kappa
    values = markovian.indist_simplified_from_rates(r_over_kappa * kappa, kappa, 0.0, gamma_star)
    assert np.all(np.diff(values) < 0)


def test_vectorized_evaluation_matches_scalar():
    r = np.array([1.0, 10.0, 100.0])
    vector = markovian.indist_first_order_from_rates(r, 10.0, 0.1, 1.0)
    scalar = [markovian.indist_first_order_from_rates(x, 10.0, 0.1, 1.0) for x in r]
    assert np.allclose(vector, scalar, rtol=1e-12)


def test_first_order_is_regular_across_the_apparent_pole():
    # Gamma_2^2 = 3 gamma* (gamma - gamma*) + 4 gamma (gamma + R) = 0 at gamma0.
    r, kappa, gamma_star = 5.0, 10.0, 1.0
    b = 3 * gamma_star + 4 * r
    gamma0 = (-b + np.sqrt(b**2 + 48 * gamma_star**2)) / 8
    at_pole = markovian.first_order_bracket(r, kappa, gamma0, gamma_star)
    assert np.isfinite(at_pole)
    for shift in (-1e-3, 1e-3):
        assert markovian.first_order_bracket(r, kappa, gamma0 + shift, gamma_star) == pytest.approx(
            at_pole, rel=1e-2)


def test_zero_kappa_is_a_domain_error():
    with pytest.raises(ParameterDomainError):
        markovian.efficiency(1.0, 0.0, 1.0, 1.0)
    with pytest.raises(ParameterDomainError):
        markovian.beta_markovian(EmitterParams.siv(), CavityParams(g=1.0, kappa=0.0))


class TestQuench:

    @given(g1=log_rate, g2=log_rate, kappa_nr=log_rate)
    @settings(max_examples=100, deadline=None)
    def test_increases_with_coupling(self, g1, g2, kappa_nr):
        assume(g1 < g2)
        model = QuenchModel(modes=((0.5, 30.0), (1.0, 80.0)))
        assert markovian.gamma_q(model, g1, kappa_nr) <= markovian.gamma_q(model, g2, kappa_nr)

    @given(d1=log_rate, d2=log_rate)
    @settings(max_examples=100, deadline=None)
    def test_decreases_with_detuning(self, d1, d2):
        assume(d1 < d2)
        near = markovian.gamma_q(QuenchModel(effective_detuning=d1), 1.0, 0.5)
        far = markovian.gamma_q(QuenchModel(effective_detuning=d2), 1.0, 0.5)
        assert far <= near

    def test_quench_free_model_gives_zero(self):
        assert markovian.gamma_q(QuenchModel.none(), 3.0, 2.0) == 0.0
        assert markovian.gamma_q(None, 3.0, 2.0) == 0.0

    @pytest.mark.parametrize("kappa_nr", [0.1, 1.0, 5.0])
    def test_per_mode_and_detuned_forms_agree_far_from_resonance(self, kappa_nr):
        delta = 10.0 * kappa_nr
        per_mode = markovian.quench_rate_modes(((1.0, delta),), 2.0, kappa_nr)
        effective = markovian.quench_rate_effective(2.0, kappa_nr, delta)
        assert per_mode == pytest.approx(effective, rel=0.01)

    def test_near_resonant_rate(self):
        model = QuenchModel(modes=((0.5, 30.0), (1.0, 40.0)))
        assert markovian.near_resonant_quench_rate(model, 2.0, 4.0) == pytest.approx(4.0 * 1.25)


class TestOptimalCavity:

    def test_closed_form_relations(self):
        oc = markovian.optimal_cavity(1.0, 60.0, 0.5)
        assert oc.kappa_max == pytest.approx((3600.0 / 0.5)**(1.0 / 3.0))
        assert oc.kappa_max == pytest.approx(2 * oc.g_max)
        assert oc.gamma_q == pytest.approx(0.25)
        assert oc.r_max == pytest.approx(oc.kappa_max)
        assert oc.small_ratio_ok
        assert oc.main_condition_ok

    def test_lossless_cavity_has_no_closed_form(self):
        with pytest.raises(ParameterDomainError):
            markovian.optimal_cavity(1.0, 60.0, 1.0)

    def test_large_ratio_is_flagged(self):
        assert not markovian.optimal_cavity(1.0, 2.0, 0.5).small_ratio_ok


class TestRegimes:

    def test_strong_coupling(self):
        e = EmitterParams(gamma_r=1e-4, gamma_star=1.0)
        label = markovian.classify_regime(e, CavityParams(g=100.0, kappa=10.0))
        assert label.strong_coupling
        assert not label.bad_cavity
        assert "strong_coupling" in label.names()

    def test_bad_cavity(self):
        e = EmitterParams(gamma_r=1e-4, gamma_star=1.0)
        label = markovian.classify_regime(e, CavityParams(g=1.0, kappa=100.0))
        assert label.bad_cavity
        assert not label.strong_coupling
        assert not label.critical

    def test_quench_dominated(self):
        e = EmitterParams(gamma_r=1e-4, gamma_star=1.0)
        assert markovian.classify_regime(e, CavityParams(g=1.0, kappa=10.0), 20.0).quench_dominated


class TestEvaluateFom:

    def test_methods_agree_at_small_dephasing(self):
        e = EmitterParams(gamma_r=0.01, gamma_star=0.1)
        c = CavityParams(g=5.0, kappa=10.0, eta_r=0.8)
        q = QuenchModel(effective_detuning=200.0)
        full = markovian.evaluate_fom(e, c, q, "full")
        oracle = markovian.evaluate_fom(e, c, q, "oracle")
        assert oracle.beta == pytest.approx(full.beta, rel=1e-9)
        assert oracle.indist == pytest.approx(full.indist, abs=5 * (0.1 / 10.0)**2)
        assert full.product == pytest.approx(full.beta * full.indist)
        assert full.flags["perturbative_ok"]
        assert full.flags["markov_quench_ok"]
        assert full.quench_rate == pytest.approx(25.0 * 2.0 / 200.0**2)

    def test_unknown_method(self):
        e = EmitterParams(gamma_r=0.01, gamma_star=0.1)
        with pytest.raises(SpsfomError):
            markovian.evaluate_fom(e, CavityParams(g=5.0, kappa=10.0), None, "exact")

    def test_parameter_objects_match_rates(self):
        e = EmitterParams.siv()
        c = CavityParams.from_purcell(2.7e5, 60.0, e)
        args = (c.r, c.kappa, e.total_decay(0.1), e.gamma_star)
        assert markovian.beta_markovian(e, c, 0.1) == markovian.efficiency(*args)
        assert markovian.indist_zeroth(e, c, 0.1) == markovian.indist_zeroth_from_rates(*args)
        assert markovian.indist_first_order(e, c, 0.1) == markovian.indist_first_order_from_rates(*args)
        assert markovian.indist_simplified(e, c, 0.1) == markovian.indist_simplified_from_rates(*args)
