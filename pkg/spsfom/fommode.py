# -*- coding: utf-8 -*-
import logging
from collections import OrderedDict
from spsfom import config, markovian, psb, units
from spsfom.params import validate_params
from spsfom.utils import ConfigError, check_output_path, generate_report, write_csv


logger = logging.getLogger(__name__)


def evaluate(cfg, method_override=None):
    """Evaluate the figures of merit of the configured emitter and cavity.

    Returns:
        OrderedDict: Named values, in report order.

    """
    emitter, cavity, quench, spectrum, eta_r = config.build_setup(cfg)
    method = config.build_method(cfg, method_override)

    problems = validate_params(emitter, cavity, quench)
    if problems:
        raise ConfigError("Invalid parameters:\n  " + "\n  ".join(problems))

    res = markovian.evaluate_fom(emitter, cavity, quench, method)
    q = cavity.quality_factor(emitter.omega0)

    out = OrderedDict()
    out["gammaStar_GHz"] = units.rate_to_frequency_ghz(emitter.gamma_star)
    out["R_GHz"] = units.rate_to_frequency_ghz(cavity.r)
    out["kappa_GHz"] = units.rate_to_frequency_ghz(cavity.kappa)
    out["g_GHz"] = units.rate_to_frequency_ghz(cavity.g)
    out["Q"] = q
    out["etaR"] = eta_r
    out["gamma_q_GHz"] = units.rate_to_frequency_ghz(res.quench_rate)
    out["beta0"] = res.beta
    out["I0"] = res.indist
    out["I0beta0"] = res.product
    out["I0beta0etaR"] = res.product * eta_r

    beta, indist = res.beta, res.indist
    if spectrum is not None:
        q_filter = cfg.get_float("psb.Q", q, nonnegative=True)
        b2 = psb.dw_factor(spectrum)
        f = psb.cached_filter_fraction(spectrum, q_filter)
        input_ok = bool(0.0 <= res.indist <= 1.0 and 0.0 <= res.beta <= 1.0)
        if input_ok:
            indist, beta = psb.apply_psb_correction(psb.PsbCorrectionInput(res.indist, res.beta, b2, f))
        else:
            logger.warning("I0 = %.6g or beta0 = %.6g lies outside [0,1]; the sideband "
                           "correction is applied without the range check", res.indist, res.beta)
            indist, beta = (float(v) for v in psb.psb_corrected(res.indist, res.beta, b2, f))
        flags = psb.validity_check(emitter, cavity, spectrum, res.quench_rate)
        out["DW"] = b2
        out["F"] = f
        out["psb_input_ok"] = input_ok
        out["psb_coupling_ratio"] = flags.coupling_ratio
        out["psb_dephasing_ratio"] = flags.dephasing_ratio
        out["psb_weak_coupling_ok"] = flags.weak_coupling_ok
        out["psb_dephasing_ok"] = flags.dephasing_model_ok
        for name, ok in (("weak coupling", flags.weak_coupling_ok),
                         ("dephasing model", flags.dephasing_model_ok)):
            if not ok:
                logger.warning("The %s condition of the sideband correction is violated", name)
    out["beta"] = beta
    out["I"] = indist
    out["Ibeta"] = indist * beta
    out["IbetaEtaR"] = indist * beta * eta_r

    outcoupling = cfg.get_float("source.outcoupling", None, nonnegative=True)
    if outcoupling is not None:
        if outcoupling > 1:
            raise ConfigError("source.outcoupling must lie in [0,1], got {}".format(outcoupling))
        out["filtered_efficiency_bound"] = outcoupling * out["IbetaEtaR"]

    for name in ("critical", "strong_coupling", "bad_cavity", "quench_dominated"):
        out["regime_" + name] = getattr(res.regime, name)
    for name, ok in res.flags.items():
        out[name] = ok
    return out, res


def run(args):
    """The main function for the 'fom' run mode.

    Evaluates one emitter-cavity configuration and prints the Markovian
    and (with a sideband spectrum) corrected figures of merit.

    Args:
        args (argparse.Namespace): The parsed command-line arguments.

    """
    if args.out is not None:
        check_output_path(args.out)
    cfg = config.read_config(args.config)
    out, res = evaluate(cfg, args.method)

    entries = [("Parameters", None)]
    entries += [(label, out[key]) for label, key in (
        ("gamma* / 2pi [GHz]", "gammaStar_GHz"), ("R / 2pi [GHz]", "R_GHz"),
        ("kappa / 2pi [GHz]", "kappa_GHz"), ("g / 2pi [GHz]", "g_GHz"), ("Q", "Q"),
        ("etaR", "etaR"), ("gamma_q / 2pi [GHz]", "gamma_q_GHz"))]
    entries += [("Markovian figures of merit ({})".format(res.method), None),
                ("beta0", out["beta0"]), ("I0", out["I0"]), ("I0 beta0", out["I0beta0"]),
                ("I0 beta0 etaR", out["I0beta0etaR"])]
    if "DW" in out:
        entries += [("Phonon sideband correction", None),
                    ("Debye-Waller factor", out["DW"]), ("filter fraction F", out["F"]),
                    ("2g/(gamma+kappa+gamma*)", out["psb_coupling_ratio"]),
                    ("R S0/gamma*", out["psb_dephasing_ratio"])]
    entries += [("Figures of merit", None), ("beta", out["beta"]), ("I", out["I"]),
                ("I beta", out["Ibeta"]), ("I beta etaR", out["IbetaEtaR"])]
    if "filtered_efficiency_bound" in out:
        entries.append(("outcoupling * I beta etaR", out["filtered_efficiency_bound"]))
    entries += [("Regime", None), ("labels", ", ".join(res.regime.names()) or "none")]
    entries += [("Validity", None)] + [(name, ok) for name, ok in res.flags.items()]
    if "DW" in out:
        entries += [("psb_input_ok", out["psb_input_ok"]),
                    ("psb_weak_coupling_ok", out["psb_weak_coupling_ok"]),
                    ("psb_dephasing_ok", out["psb_dephasing_ok"])]

    for line in generate_report(entries):
        print(line)
    print()

    if args.out is not None:
        write_csv(args.out, OrderedDict((key, [value]) for key, value in out.items()),
                  config.provenance(cfg))
        print("Wrote {}".format(args.out))
