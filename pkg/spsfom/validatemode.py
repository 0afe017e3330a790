# -*- coding: utf-8 -*-
import logging
import numpy as np
from collections import OrderedDict
from spsfom import bloch, config, markovian
from spsfom.params import CavityParams, EmitterParams
from spsfom.utils import (
    ConfigError, OracleError, ValidationFailure, generate_report, write_csv
    )
import spsfom.defaults as defaults


logger = logging.getLogger(__name__)


def draw_samples(rng, n, ratio_range):
    """Random (R, kappa, gamma, gamma*) sets with gamma* = 1.

    gamma*/(kappa+gamma) is log-uniform in ratio_range, gamma is a uniform
    fraction (up to one half) of kappa + gamma and R/kappa is log-uniform
    in [0.1, 10].

    Returns:
        OrderedDict of arrays: R, kappa, gamma, gammaStar, ratio.

    """
    lo, hi = np.log(ratio_range[0]), np.log(ratio_range[1])
    ratio = np.exp(rng.uniform(lo, hi, n))
    total = 1.0 / ratio
    gamma = total * rng.uniform(0.0, 0.5, n)
    kappa = total - gamma
    r = kappa * 10**rng.uniform(-1.0, 1.0, n)
    return OrderedDict([("R", r), ("kappa", kappa), ("gamma", gamma),
                        ("gammaStar", np.ones(n)), ("ratio", ratio)])


def compare(samples, n_quadrature):
    """Closed-form versus numerical figures of merit at every sample.

    Returns:
        OrderedDict of arrays, one row per sample.

    """
    r, kappa, gamma, gamma_star = (samples[k] for k in ("R", "kappa", "gamma", "gammaStar"))
    n = len(r)
    cols = OrderedDict(samples)
    cols["beta_analytic"] = np.asarray(markovian.efficiency(r, kappa, gamma, gamma_star), dtype=float)
    cols["I_analytic"] = np.asarray(markovian.indist_first_order_from_rates(r, kappa, gamma, gamma_star),
                                    dtype=float)
    for name in ("beta_oracle", "I_oracle", "I_quadrature"):
        cols[name] = np.full(n, np.nan)
    cols["oracle_failed"] = np.zeros(n, dtype=bool)

    for i in range(n):
        g = 0.5 * np.sqrt(r[i] * kappa[i])
        m = bloch.matrices_from_rates(g, kappa[i], gamma[i], gamma_star[i])
        try:
            cols["beta_oracle"][i] = bloch.beta_numeric(m, kappa[i])
            cols["I_oracle"][i] = bloch.indist_numeric(m, kappa[i], "eigensum")
            if i < n_quadrature:
                cols["I_quadrature"][i] = bloch.indist_numeric(m, kappa[i], "quadrature")
        except OracleError as e:
            logger.warning("Oracle failed at sample %d: %s", i, e)
            cols["oracle_failed"][i] = True

    cols["beta_deviation"] = np.abs(cols["beta_analytic"] - cols["beta_oracle"]) / cols["beta_oracle"]
    cols["I_deviation"] = np.abs(cols["I_analytic"] - cols["I_oracle"])
    cols["quadratic_constant"] = cols["I_deviation"] / cols["ratio"]**2
    cols["oracle_deviation"] = np.abs(cols["I_quadrature"] - cols["I_oracle"]) / cols["I_oracle"]
    return cols


def _nanmax(values):
    values = np.asarray(values, dtype=float)
    values = values[np.isfinite(values)]
    return float(values.max()) if values.size else 0.0


def normalization_check(cfg):
    """Wavepacket normalization integral on the configured (or SiV-) cavity.

    Returns:
        tuple: (numeric value, expected value, relative deviation).

    """
    emitter, cavity, quench, _, _ = config.build_setup(cfg, require_cavity=False)
    if cavity is None:
        emitter = EmitterParams.siv()
        cavity = CavityParams.from_purcell(defaults.validate_purcell, defaults.validate_q, emitter)
        quench = None
    gq = float(markovian.gamma_q(quench, cavity.g, cavity.kappa_nr))
    m = bloch.build_matrices(emitter, cavity, gq)
    value, expected = bloch.literal_normalization(m, cavity.kappa)
    return value, expected, abs(value - expected) / expected


def run(args):
    """The main function for the 'validate' run mode.

    Compares the closed-form efficiency and first-order
    indistinguishability with the numerical solution of the Bloch
    equations at random parameter sets, cross-checks the two oracle
    paths and the wavepacket normalization, and fails on any violated
    bound.

    Args:
        args (argparse.Namespace): The parsed command-line arguments.

    """
    cfg = config.read_config(args.config)
    n = args.samples if args.samples is not None else cfg.get_int("validate.samples",
                                                                  defaults.validate_samples)
    if n < 0:
        raise ConfigError("The number of samples must be nonnegative")
    lo, hi = defaults.validate_ratio_range
    ratio_range = (cfg.get_float("validate.ratioMin", lo, positive=True),
                   cfg.get_float("validate.ratioMax", hi, positive=True))
    if ratio_range[0] > ratio_range[1]:
        raise ConfigError("validate.ratioMin must not exceed validate.ratioMax")
    n_quadrature = cfg.get_int("validate.quadratureSamples", defaults.validate_quadrature_samples)
    if n_quadrature is None:
        n_quadrature = n
    seed = args.seed if args.seed is not None else defaults.seed

    if n == 0:
        print("No samples requested; nothing to validate.")
        return

    rng = np.random.default_rng(seed)
    cols = compare(draw_samples(rng, n, ratio_range), n_quadrature)
    value, expected, norm_dev = normalization_check(cfg)

    max_beta = _nanmax(cols["beta_deviation"])
    max_i = _nanmax(cols["I_deviation"])
    c_fit = _nanmax(cols["quadratic_constant"])
    max_oracle = _nanmax(cols["oracle_deviation"])
    n_failed = int(np.sum(cols["oracle_failed"]))

    entries = [("Samples", None),
               ("count", n), ("seed", seed),
               ("gamma*/(kappa+gamma) range", "[{:g}, {:g}]".format(*ratio_range)),
               ("quadrature cross-checks", min(n, n_quadrature)),
               ("oracle failures", n_failed),
               ("Deviations", None),
               ("max relative beta deviation", max_beta),
               ("max I deviation", max_i),
               ("fitted C in C (gamma*/(kappa+gamma))^2", c_fit),
               ("max eigensum/quadrature deviation", max_oracle),
               ("Wavepacket normalization", None),
               ("integral", value), ("beta^2/(2 kappa^2)", expected),
               ("relative deviation", norm_dev)]
    for line in generate_report(entries):
        print(line)
    print()

    if args.out is not None:
        info = config.provenance(cfg, seed)
        write_csv(args.out, cols, info)
        print("Wrote {}".format(args.out))

    violations = []
    if n_failed:
        violations.append(("the oracle failed", np.argmax(cols["oracle_failed"])))
    if max_beta >= defaults.validate_beta_tol:
        violations.append(("beta deviation {:.3g} >= {:g}".format(max_beta, defaults.validate_beta_tol),
                           np.nanargmax(cols["beta_deviation"])))
    if c_fit >= defaults.validate_quadratic_constant:
        violations.append(("quadratic constant {:.3g} >= {:g}".format(
            c_fit, defaults.validate_quadratic_constant), np.nanargmax(cols["quadratic_constant"])))
    if max_oracle >= defaults.validate_oracle_tol:
        violations.append(("oracle paths differ by {:.3g} >= {:g}".format(
            max_oracle, defaults.validate_oracle_tol), np.nanargmax(cols["oracle_deviation"])))
    if norm_dev >= defaults.validate_normalization_tol:
        violations.append(("wavepacket normalization off by {:.3g}".format(norm_dev), None))

    if violations:
        lines = []
        for message, i in violations:
            lines.append(message)
            if i is not None:
                lines.append("  worst sample {}: ".format(int(i)) + ", ".join(
                    "{} = {!r}".format(name, float(cols[name][i])) for name in cols))
        raise ValidationFailure("Validation failed:\n" + "\n".join(lines))
    print("All checks passed.")
