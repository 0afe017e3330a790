# -*- coding: utf-8 -*-
import numpy as np
from collections import OrderedDict
from dataclasses import replace
from spsfom import config, markovian, sweep, units
from spsfom.utils import (
    ConfigError, ParameterDomainError, check_output_path, generate_report, generate_table,
    write_table
    )
import spsfom.defaults as defaults


SCAN_KINDS = ("none", "qmax", "detuning")


def _closed_form(context):
    """optimal_cavity for the configured quench, or None where it does not apply."""
    if context.quench is None or context.eta_r >= 1.0:
        return None
    delta_q = context.quench.equivalent_detuning()
    if delta_q is None:
        return None
    return markovian.optimal_cavity(context.emitter.gamma_star, delta_q, context.eta_r)


def maximize(cfg, context):
    """Run the (g, kappa) maximizer and compare with the closed-form optimum.

    Returns:
        tuple: (MaximizeResult, OptimalCavity or None, report entries)

    """
    gamma_star = context.emitter.gamma_star
    space, box, points = config.build_optimize_box(cfg, gamma_star)
    res = sweep.maximize_ibeta(context, box, space, points)
    closed = _closed_form(context)

    name = sweep.objective_name(context)
    entries = [("Maximum of {}".format(name), None),
               ("I beta", res.value),
               ("g / gamma*", res.g / gamma_star),
               ("kappa / gamma*", res.kappa / gamma_star),
               ("R / gamma*", res.r / gamma_star),
               ("gamma_q / gamma*", float(res.point["gamma_q"]) / gamma_star),
               ("kappa / 2pi [GHz]", units.rate_to_frequency_ghz(res.kappa)),
               ("Q", float(res.point["Q"])),
               ("stages", len(res.stages)),
               ("converged", res.converged),
               ("on search-box boundary", res.on_boundary)]
    if closed is not None:
        entries += [("Closed-form optimum", None),
                    ("g_max / gamma*", closed.g_max / gamma_star),
                    ("kappa_max / gamma*", closed.kappa_max / gamma_star),
                    ("R_max / gamma*", closed.r_max / gamma_star),
                    ("gamma_q / gamma*", closed.gamma_q / gamma_star),
                    ("relative deviation in kappa", abs(res.kappa - closed.kappa_max) / closed.kappa_max),
                    ("relative deviation in g", abs(res.g - closed.g_max) / closed.g_max),
                    ("gamma*/DeltaQ small", closed.small_ratio_ok),
                    ("main condition", closed.main_condition_ok)]
    return res, closed, entries


def _scan_values(cfg):
    lo = cfg.get_float("scan.min", required=True, positive=True)
    hi = cfg.get_float("scan.max", required=True, positive=True)
    if lo > hi:
        raise ConfigError("scan.min must not exceed scan.max")
    n = cfg.get_int("scan.points", defaults.scan_points, minimum=1)
    return np.geomspace(lo, hi, n) if n > 1 else np.array([lo])


def scan(cfg, context, kind):
    """Run the Q_max scan or the detuning scan; returns a SweepResult."""
    info = config.provenance(cfg)
    values = _scan_values(cfg)
    if kind == "qmax":
        purcell = cfg.get_float("scan.purcell", required=True, positive=True)
        if "scan.etaR" in cfg:
            eta_r = cfg.get_float("scan.etaR")
            if not 0.0 <= eta_r < 1.0:
                raise ConfigError("scan.etaR must lie in [0,1), got {}".format(eta_r))
            context = replace(context, eta_r=eta_r)
        q_lo, q_hi = defaults.scan_q_range
        q_range = (cfg.get_float("scan.Qmin", q_lo, positive=True),
                   cfg.get_float("scan.Qmax", q_hi, positive=True))
        if q_range[0] >= q_range[1]:
            raise ConfigError("scan.Qmin must lie below scan.Qmax")
        # scan.min/max are Delta_q (1 - eta_r)^(-1/2) in THz
        return sweep.q_max_scan(context, purcell, units.rate_from_frequency_thz(values),
                                q_range, provenance=info)
    # scan.min/max are Delta_q / gamma*
    return sweep.max_product_vs_detuning(context, values, provenance=info)


def run(args):
    """The main function for the 'optimize' run mode.

    Maximizes I * beta over the cavity parameters, or with scan.kind set
    runs the Q_max scan ('qmax') or the best I * beta versus quench
    detuning ('detuning').

    Args:
        args (argparse.Namespace): The parsed command-line arguments.

    """
    if args.out is not None:
        check_output_path(args.out)
    cfg = config.read_config(args.config)
    context = config.build_context(cfg, args.method, args.threads)
    kind = cfg.get_str("scan.kind", "none", choices=SCAN_KINDS)

    try:
        if kind == "none":
            res, closed, entries = maximize(cfg, context)
            for line in generate_report(entries):
                print(line)
            print()
            if args.out is not None:
                columns = OrderedDict((key, [value]) for key, value in res.point.items())
                columns["converged"] = [res.converged]
                columns["on_boundary"] = [res.on_boundary]
                if closed is not None:
                    columns["closed_form_g"] = [closed.g_max]
                    columns["closed_form_kappa"] = [closed.kappa_max]
                write_table(args.out, columns, config.provenance(cfg))
                print("Wrote {}".format(args.out))
            return

        result = scan(cfg, context, kind)
    except ParameterDomainError as e:
        raise ConfigError(str(e))

    print("Scan: {}".format(kind))
    print()
    for line in generate_table(result.columns):
        print("  " + line)
    print()
    if args.out is not None:
        result.write(args.out)
        print("Wrote {}".format(args.out))
