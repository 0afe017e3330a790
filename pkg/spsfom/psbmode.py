# -*- coding: utf-8 -*-
from collections import OrderedDict
from spsfom import config, markovian, psb, units
from spsfom.utils import ConfigError, check_output_path, generate_report, write_csv


def analyse(cfg):
    """Sideband quantities of the configured spectrum.

    Returns:
        OrderedDict: Named values, in report order.

    """
    spectrum = config.build_spectrum(cfg)
    if spectrum is None:
        raise ConfigError("The psb mode needs psb.sample (sample3, sample5 or file:<path>)")

    emitter, cavity, quench, _, _ = config.build_setup(cfg, require_cavity=False)
    q = cfg.get_float("psb.Q", cfg.get_float("cavity.Q", None, positive=True), nonnegative=True)
    if q is None:
        raise ConfigError("The psb mode needs psb.Q or cavity.Q")

    out = OrderedDict()
    out["lambda0_nm"] = spectrum.lambda0
    out["delta_nm"] = spectrum.delta
    out["Q"] = q
    out["DW"] = psb.dw_factor(spectrum)
    out["DW_numeric"] = psb.dw_factor(spectrum, numeric=True)
    out["F"] = psb.filter_fraction(spectrum, q)
    out["F_closed_form"] = psb.filter_fraction_closed_form(spectrum, q)
    out["window_tail"] = psb.window_tail_fraction(spectrum)
    out["S0"] = psb.s0_diagnostic(spectrum)
    out["zpl_gammaStar_GHz"] = units.rate_to_frequency_ghz(psb.zpl_dephasing_rate(spectrum))
    if cavity is not None:
        gq = float(markovian.gamma_q(quench, cavity.g, cavity.kappa_nr))
        flags = psb.validity_check(emitter, cavity, spectrum, gq)
        out["coupling_ratio"] = flags.coupling_ratio
        out["dephasing_ratio"] = flags.dephasing_ratio
        out["weak_coupling_ok"] = flags.weak_coupling_ok
        out["dephasing_model_ok"] = flags.dephasing_model_ok
    return spectrum, out


def run(args):
    """The main function for the 'psb' run mode.

    Prints the Debye-Waller factor, the filter fraction F(Q), S0 and, with
    a cavity configured, the validity ratios of the sideband correction.
    Optionally writes the spectral profile (--out) and the spectrum
    coefficients (--export-coefficients).

    Args:
        args (argparse.Namespace): The parsed command-line arguments.

    """
    for path in (args.out, args.export_coefficients):
        if path is not None:
            check_output_path(path)
    cfg = config.read_config(args.config)
    spectrum, out = analyse(cfg)

    entries = [("Spectrum", None),
               ("lambda0 [nm]", out["lambda0_nm"]),
               ("ZPL half-width delta [nm]", out["delta_nm"]),
               ("ZPL-width gamma* / 2pi [GHz]", out["zpl_gammaStar_GHz"]),
               ("Debye-Waller factor", out["DW"]),
               ("Debye-Waller factor (quadrature)", out["DW_numeric"]),
               ("S0", out["S0"]),
               ("Cavity filtering at Q = {:g}".format(out["Q"]), None),
               ("F (quadrature over the window)", out["F"]),
               ("F (closed form, full line)", out["F_closed_form"]),
               ("sideband outside the window", out["window_tail"])]
    if "coupling_ratio" in out:
        entries += [("Validity", None),
                    ("2g/(gamma+kappa+gamma*)", out["coupling_ratio"]),
                    ("R S0/gamma*", out["dephasing_ratio"]),
                    ("weak coupling", out["weak_coupling_ok"]),
                    ("dephasing model", out["dephasing_model_ok"])]
    for line in generate_report(entries):
        print(line)
    print()

    if args.out is not None:
        write_csv(args.out, psb.spectrum_profile(spectrum, out["Q"]), config.provenance(cfg))
        print("Wrote {}".format(args.out))
    if args.export_coefficients is not None:
        psb.write_spectrum_csv(spectrum, args.export_coefficients)
        print("Wrote {}".format(args.export_coefficients))
