# -*- coding: utf-8 -*-

"""spsfom.markovian

Closed-form Markovian figures of merit of an emitter coupled to a lossy
cavity: the efficiency beta, the indistinguishability I (zeroth order,
first order in the pure dephasing, and the simplified form), the quench
rate through lossy modes, regime labels and the closed-form cavity that
maximizes I * beta.

The *_from_rates functions take the rates R, kappa, gamma, gamma* directly
and broadcast over numpy arrays; the remaining functions take parameter
containers.

"""

import logging
import numpy as np
from dataclasses import dataclass, field
from spsfom.utils import ParameterDomainError, SpsfomError
import spsfom.defaults as defaults


logger = logging.getLogger(__name__)

METHODS = ("full", "simplified", "oracle")


@dataclass(frozen=True)
class RegimeLabel:
    """Regime labels of a single parameter point."""
    critical: bool
    strong_coupling: bool
    bad_cavity: bool
    quench_dominated: bool

    def names(self):
        return [name for name in ("critical", "strong_coupling", "bad_cavity", "quench_dominated")
                if getattr(self, name)]


@dataclass(frozen=True)
class FomResult:
    """Figures of merit of a single parameter point.

    Attributes:
        beta (float): Efficiency.
        indist (float): Indistinguishability.
        product (float): beta * indist.
        regime (RegimeLabel): Regime labels.
        quench_rate (float): gamma_q in ps^-1.
        method (str): "full", "simplified" or "oracle".
        flags (dict): Validity flags, name -> bool.

    """
    beta: float
    indist: float
    product: float
    regime: RegimeLabel
    quench_rate: float
    method: str
    flags: dict = field(default_factory=dict)


def _check_kappa(kappa):
    if np.any(np.asarray(kappa) <= 0):
        raise ParameterDomainError("kappa must be positive, got {}".format(kappa))


def quench_rate_modes(modes, g, kappa_nr):
    """gamma_q = sum_l (k_l g)^2 kappa_nr / (Delta_l^2 + (kappa_nr/2)^2)."""
    total = np.zeros(np.broadcast(np.asarray(g), np.asarray(kappa_nr)).shape)
    for k, delta in modes:
        total = total + (k * g)**2 * kappa_nr / (delta**2 + (0.5 * kappa_nr)**2)
    return total if total.ndim else float(total)


def quench_rate_effective(g, kappa_nr, delta_q):
    """gamma_q = g^2 kappa_nr / Delta_q^2, the far-detuned effective form."""
    return g**2 * kappa_nr / delta_q**2


def gamma_q(model, g, kappa_nr):
    """Quench rate of a QuenchModel for coupling g and lossy cavity rate kappa_nr.

    Args:
        model (QuenchModel): The quench model.
        g (float or array): Coupling rate.
        kappa_nr (float or array): Nonradiative cavity loss rate (1 - eta_r) kappa.

    Returns:
        float or array: gamma_q >= 0, in ps^-1.

    """
    if model is None or model.is_empty:
        return 0.0 * np.asarray(g, dtype=float) + 0.0 * np.asarray(kappa_nr, dtype=float)
    if model.effective_detuning is not None:
        return quench_rate_effective(g, kappa_nr, model.effective_detuning)
    return quench_rate_modes(model.modes, g, kappa_nr)


def near_resonant_quench_rate(model, g, kappa_nr):
    """Diagnostic rate (4 g^2 / kappa_nr) sum_l k_l^2 of resonant lossy modes."""
    weight = sum(k**2 for k, _ in model.modes) if model.modes else 1.0
    with np.errstate(divide="ignore"):
        return 4.0 * g**2 / kappa_nr * weight


def efficiency(r, kappa, gamma, gamma_star):
    """beta = R kappa / [R (gamma + kappa) + gamma (gamma + gamma* + kappa)]."""
    _check_kappa(kappa)
    with np.errstate(divide="ignore", invalid="ignore"):
        return r * kappa / (r * (gamma + kappa) + gamma * (gamma + gamma_star + kappa))


def _lorentz_factor(r, kappa, gamma, gamma_star):
    return (r * kappa)**2 / ((r + gamma) * (kappa + gamma)
                             * (r + gamma + gamma_star) * (kappa + gamma + gamma_star))


def indist_zeroth_from_rates(r, kappa, gamma, gamma_star):
    """Zeroth-order indistinguishability I^(0)."""
    _check_kappa(kappa)
    gamma1_sq = (3 * gamma + kappa) * (gamma + 3 * kappa) + 4 * kappa * r
    dephasing = 3 * gamma_star * (2 * gamma + 3 * kappa + gamma_star)
    beta = efficiency(r, kappa, gamma, gamma_star)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (_lorentz_factor(r, kappa, gamma, gamma_star)
                * (dephasing + gamma1_sq) / (gamma1_sq * beta**2))


def _first_order_terms(r, kappa, gamma, gamma_star):
    """The bracket I^(1) / (gamma* I^(0)) with its first two terms on one denominator.

    Written this way the apparent pole at Gamma_2^2 = 0 only remains as a
    0/0 form exactly on that surface.
    """
    gamma1_sq = (3 * gamma + kappa) * (gamma + 3 * kappa) + 4 * kappa * r
    gamma2_sq = 3 * gamma_star * (gamma - gamma_star) + 4 * gamma * (gamma + r)
    num1 = (r - 2 * gamma) * ((gamma + gamma_star)**2 + gamma * kappa)
    den1 = 3 * gamma_star * (2 * gamma + 3 * kappa + gamma_star) + gamma1_sq
    num2 = (gamma_star * (gamma - gamma_star) * (4 * gamma + r)
            + 2 * gamma * (gamma + r) * (2 * gamma + r))
    den2 = 2 * (gamma + kappa) * (gamma + r)
    t12 = (num1 * den2 - num2 * den1) / (den1 * den2 * gamma2_sq)
    t3 = (gamma + kappa) * (8 * gamma + 5 * r) / (2 * (gamma + r) * gamma1_sq)
    return t12 - t3, gamma2_sq


def first_order_bracket(r, kappa, gamma, gamma_star):
    """I^(1) / (gamma* I^(0)), regular across Gamma_2^2 = 0.

    Where |Gamma_2^2| is below singular_gamma2_tol * (gamma + gamma* + R)^2,
    the bracket is replaced by fourth-order symmetric interpolation in gamma.
    """
    r, kappa, gamma, gamma_star = np.broadcast_arrays(*[np.asarray(v, dtype=float)
                                                        for v in (r, kappa, gamma, gamma_star)])
    with np.errstate(divide="ignore", invalid="ignore"):
        bracket, gamma2_sq = _first_order_terms(r, kappa, gamma, gamma_star)
        scale = gamma + gamma_star + r
        near = np.abs(gamma2_sq) < defaults.singular_gamma2_tol * scale**2
        if np.any(near):
            h = defaults.singular_gamma2_step * scale
            f = lambda shift: _first_order_terms(r, kappa, gamma + shift, gamma_star)[0]
            interpolated = (4 * (f(h) + f(-h)) - (f(2 * h) + f(-2 * h))) / 6
            bracket = np.where(near, interpolated, bracket)
            logger.debug("Interpolated the first-order bracket at %d point(s)", int(np.sum(near)))
    return bracket if bracket.ndim else float(bracket)


def indist_first_order_from_rates(r, kappa, gamma, gamma_star):
    """I^(0) + I^(1), the full first-order result in gamma*."""
    i0 = indist_zeroth_from_rates(r, kappa, gamma, gamma_star)
    bracket = first_order_bracket(r, kappa, gamma, gamma_star)
    with np.errstate(invalid="ignore"):
        correction = np.where(np.asarray(gamma_star) == 0, 0.0, gamma_star * bracket)
        result = i0 * (1.0 + correction)
    return result if np.ndim(result) else float(result)


def simplified_dephasing_term(r, kappa, gamma_star):
    """I_1 = (gamma*/kappa)(6 kappa - R)/(3 kappa + 4 R)."""
    return gamma_star / kappa * (6 * kappa - r) / (3 * kappa + 4 * r)


def indist_simplified_from_rates(r, kappa, gamma, gamma_star):
    """Simplified indistinguishability, valid for gamma < gamma* < kappa."""
    _check_kappa(kappa)
    beta = efficiency(r, kappa, gamma, gamma_star)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (_lorentz_factor(r, kappa, gamma, gamma_star)
                * (1.0 + simplified_dephasing_term(r, kappa, gamma_star)) / beta**2)


def _rates(emitter, cavity, gamma_q_value):
    return (cavity.r, cavity.kappa, emitter.total_decay(gamma_q_value), emitter.gamma_star)


def beta_markovian(emitter, cavity, gamma_q_value=0.0):
    """Efficiency beta of an emitter-cavity pair with quench rate gamma_q_value."""
    _check_kappa(cavity.kappa)
    return efficiency(*_rates(emitter, cavity, gamma_q_value))


def indist_zeroth(emitter, cavity, gamma_q_value=0.0):
    _check_kappa(cavity.kappa)
    return indist_zeroth_from_rates(*_rates(emitter, cavity, gamma_q_value))


def indist_first_order(emitter, cavity, gamma_q_value=0.0):
    _check_kappa(cavity.kappa)
    return indist_first_order_from_rates(*_rates(emitter, cavity, gamma_q_value))


def indist_simplified(emitter, cavity, gamma_q_value=0.0):
    _check_kappa(cavity.kappa)
    return indist_simplified_from_rates(*_rates(emitter, cavity, gamma_q_value))


def regime_flags(r, g, kappa, gamma, gamma_star, gamma_q_value):
    """Vectorized regime labels.

    R is taken as given, not rebuilt from g, so points on R = gamma* stay
    non-critical. Returns a dict of boolean arrays with keys critical,
    strong_coupling, bad_cavity and quench_dominated. Ties go to the
    non-critical and non-strong side.
    """
    damping = gamma + kappa + gamma_star
    return {
        "critical": (r > gamma_star) & (kappa > gamma_star),
        "strong_coupling": 2 * g > damping,
        "bad_cavity": (2 * g <= damping) & (kappa > gamma_star),
        "quench_dominated": (gamma_q_value > kappa) | (gamma_q_value > r),
    }


def classify_regime(emitter, cavity, gamma_q_value=0.0):
    """Regime labels of a single parameter point."""
    _check_kappa(cavity.kappa)
    flags = regime_flags(cavity.r, cavity.g, cavity.kappa, emitter.total_decay(gamma_q_value),
                         emitter.gamma_star, gamma_q_value)
    return RegimeLabel(**{name: bool(value) for name, value in flags.items()})


def validity_flags(r, kappa, gamma, gamma_star):
    """Validity of the first-order and simplified expressions.

    perturbative_ok: gamma* < kappa + gamma
    simplified_ok:   gamma < gamma* < kappa
    """
    return {
        "perturbative_ok": gamma_star < kappa + gamma,
        "simplified_ok": (gamma < gamma_star) & (gamma_star < kappa),
    }


@dataclass(frozen=True)
class OptimalCavity:
    """The closed-form cavity maximizing I * beta under detuned quenching.

    Attributes:
        g_max (float): Coupling rate at the maximum.
        kappa_max (float): Cavity loss rate at the maximum (= 2 g_max).
        gamma_q (float): Quench rate there (= gamma* / 4).
        small_ratio_ok (bool): gamma* / Delta_q below small_ratio_limit.
        main_condition_ok (bool): gamma* (1 - eta_r)^(1/2) < 2 Delta_q.

    """
    g_max: float
    kappa_max: float
    gamma_q: float
    small_ratio_ok: bool
    main_condition_ok: bool

    @property
    def r_max(self):
        return 4 * self.g_max**2 / self.kappa_max


def optimal_cavity(gamma_star, delta_q, eta_r):
    """kappa_max = 2 g_max = [Delta_q^2 gamma* / (1 - eta_r)]^(1/3).

    Raises:
        ParameterDomainError: For eta_r >= 1 (no lossy channel) or
            nonpositive gamma* or Delta_q.

    """
    if eta_r >= 1.0:
        raise ParameterDomainError("optimal_cavity needs etaR < 1, got {}".format(eta_r))
    if gamma_star <= 0 or delta_q <= 0:
        raise ParameterDomainError("optimal_cavity needs positive gammaStar and DeltaQ")
    kappa_max = (delta_q**2 * gamma_star / (1.0 - eta_r))**(1.0 / 3.0)
    g_max = 0.5 * kappa_max
    gamma_q_max = g_max**2 * kappa_max * (1.0 - eta_r) / delta_q**2
    small_ratio_ok = gamma_star / delta_q <= defaults.small_ratio_limit
    if not small_ratio_ok:
        logger.warning("gammaStar/DeltaQ = %.3g: the closed-form optimum is unreliable",
                       gamma_star / delta_q)
    return OptimalCavity(g_max=g_max, kappa_max=kappa_max, gamma_q=gamma_q_max,
                         small_ratio_ok=small_ratio_ok,
                         main_condition_ok=gamma_star * np.sqrt(1.0 - eta_r) < 2 * delta_q)


def evaluate_fom(emitter, cavity, quench=None, method=defaults.method,
                 oracle_method=defaults.oracle_method):
    """Figures of merit of one emitter-cavity-quench configuration.

    Args:
        emitter (EmitterParams): The emitter.
        cavity (CavityParams): The cavity.
        quench (QuenchModel, optional): The quench model. None means no quenching.
        method (str): "full" (first order in gamma*), "simplified" or
            "oracle" (numerical solution of the Bloch equations).
        oracle_method (str): "eigensum" or "quadrature", for method "oracle".

    Returns:
        FomResult

    """
    if method not in METHODS:
        raise SpsfomError("Unknown method '{}', expected one of {}".format(method, ", ".join(METHODS)))
    _check_kappa(cavity.kappa)

    gq = float(gamma_q(quench, cavity.g, cavity.kappa_nr))
    r, kappa, gamma, gamma_star = _rates(emitter, cavity, gq)

    if method == "oracle":
        from spsfom import bloch
        m = bloch.build_matrices(emitter, cavity, gq)
        beta = bloch.beta_numeric(m, kappa)
        indist = bloch.indist_numeric(m, kappa, oracle_method)
    else:
        beta = float(efficiency(r, kappa, gamma, gamma_star))
        if method == "full":
            indist = float(indist_first_order_from_rates(r, kappa, gamma, gamma_star))
        else:
            indist = float(indist_simplified_from_rates(r, kappa, gamma, gamma_star))

    flags = {name: bool(v) for name, v in validity_flags(r, kappa, gamma, gamma_star).items()}
    if quench is not None:
        flags["markov_quench_ok"] = bool(all(quench.markov_valid(cavity.g, cavity.kappa_nr)))
    else:
        flags["markov_quench_ok"] = True
    for name, ok in flags.items():
        if not ok:
            logger.warning("Validity flag %s is false for this parameter point", name)

    return FomResult(beta=beta, indist=indist, product=beta * indist,
                     regime=classify_regime(emitter, cavity, gq), quench_rate=gq,
                     method=method, flags=flags)
