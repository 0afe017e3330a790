# -*- coding: utf-8 -*-

"""spsfom.config

Reading of flat 'key = value' configuration files and construction of the
parameter objects the run modes work with.

Unknown, duplicate and malformed keys are errors; every problem found in
a file is reported at once.

"""

import logging
import numpy as np
from collections import OrderedDict
from dataclasses import replace
from scipy.optimize import brentq
from spsfom import units, markovian, psb, sweep
from spsfom.params import EmitterParams, CavityParams, QuenchModel
from spsfom.utils import ConfigError, ParameterDomainError, content_hash
import spsfom.defaults as defaults


logger = logging.getLogger(__name__)

_AXIS_FIELDS = ("quantity", "scale", "min", "max", "points")

KNOWN_KEYS = (
    "emitter.gammaR_ns", "emitter.gammaNR_GHz", "emitter.gammaStar_GHz", "emitter.omega_THz",
    "cavity.Q", "cavity.purcell", "cavity.g_GHz", "cavity.kappa_GHz", "cavity.etaR",
    "cavity.targetBetaEtaR",
    "quench.DeltaQ_THz", "quench.modes", "quench.scaledDeltaQ_THz",
    "psb.sample", "psb.Q",
    "source.outcoupling",
    "sweep.outputs", "sweep.bareDecayRatio", "sweep.constraint",
    "optimize.space", "optimize.xMin", "optimize.xMax", "optimize.yMin", "optimize.yMax",
    "optimize.points",
    "scan.kind", "scan.min", "scan.max", "scan.points", "scan.Qmin", "scan.Qmax",
    "scan.purcell", "scan.etaR",
    "validate.samples", "validate.ratioMin", "validate.ratioMax", "validate.quadratureSamples",
    "method",
) + tuple("sweep.{}.{}".format(axis, name) for axis in ("x", "y") for name in _AXIS_FIELDS)


def parse_config_text(text, source="<config>"):
    """Parse 'key = value' lines.

    '#' starts a comment; blank lines are ignored.

    Returns:
        OrderedDict: key -> value string, in file order.

    Raises:
        ConfigError: Listing every malformed line, unknown key and duplicate key.

    """
    values = OrderedDict()
    problems = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            problems.append("{}:{}: expected 'key = value', got '{}'".format(source, number, raw.strip()))
        elif key not in KNOWN_KEYS:
            problems.append("{}:{}: unknown key '{}'".format(source, number, key))
        elif key in values:
            problems.append("{}:{}: duplicate key '{}'".format(source, number, key))
        else:
            values[key] = value
    if problems:
        raise ConfigError("Invalid config:\n  " + "\n  ".join(problems))
    return values


class Config:
    """Typed access to parsed configuration values."""

    def __init__(self, values=None, source="<config>"):
        self.values = OrderedDict(values or {})
        self.source = source

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, "r") as f:
                text = f.read()
        except OSError as e:
            raise ConfigError("Could not read config file {}: {}".format(path, e))
        return cls(parse_config_text(text, path), path)

    def __contains__(self, key):
        return key in self.values

    def has_any(self, prefix):
        return any(key.startswith(prefix) for key in self.values)

    def hash(self):
        """Digest of the sorted key = value pairs; stable under reordering and comments."""
        return content_hash("{}={}".format(k, v) for k, v in sorted(self.values.items()))

    def get_str(self, key, default=None, choices=None):
        value = self.values.get(key, default)
        if value is not None and choices is not None and value not in choices:
            raise ConfigError("{}: '{}' must be one of {}".format(key, value, ", ".join(choices)))
        return value

    def get_float(self, key, default=None, required=False, positive=False, nonnegative=False):
        if key not in self.values:
            if required:
                raise ConfigError("Missing required key '{}'".format(key))
            return default
        try:
            value = float(self.values[key])
        except ValueError:
            raise ConfigError("{}: '{}' is not a number".format(key, self.values[key]))
        if not np.isfinite(value):
            raise ConfigError("{}: value must be finite".format(key))
        if positive and value <= 0:
            raise ConfigError("{}: value must be positive, got {}".format(key, value))
        if nonnegative and value < 0:
            raise ConfigError("{}: value must be nonnegative, got {}".format(key, value))
        return value

    def get_int(self, key, default=None, minimum=0):
        if key not in self.values:
            return default
        try:
            value = int(self.values[key])
        except ValueError:
            raise ConfigError("{}: '{}' is not an integer".format(key, self.values[key]))
        if value < minimum:
            raise ConfigError("{}: value must be at least {}".format(key, minimum))
        return value


def read_config(path):
    """Read a config file, or return an empty Config for path None."""
    if path is None:
        return Config()
    return Config.from_file(path)


def build_spectrum(cfg):
    """The sideband spectrum named by psb.sample, or None."""
    sample = cfg.get_str("psb.sample", "none")
    if sample == "none":
        return None
    if sample.startswith("file:"):
        return psb.read_spectrum_csv(sample[len("file:"):])
    if sample not in psb.BUILTIN_SAMPLES:
        raise ConfigError("psb.sample: '{}' must be none, {} or file:<path>".format(
            sample, ", ".join(psb.BUILTIN_SAMPLES)))
    return psb.builtin_spectrum(sample)


def build_emitter(cfg, spectrum=None):
    """EmitterParams from the emitter.* keys.

    Without emitter.gammaStar_GHz the dephasing follows from the ZPL width
    of the spectrum, if one is attached, and is zero otherwise.
    """
    lifetime = cfg.get_float("emitter.gammaR_ns", defaults.siv_lifetime_ns, positive=True)
    gamma_nr_ghz = cfg.get_float("emitter.gammaNR_GHz", 0.0, nonnegative=True)
    omega_thz = cfg.get_float("emitter.omega_THz", defaults.siv_omega_thz, positive=True)
    emitter = EmitterParams.from_lab_units(
        lifetime, gamma_nr_ghz, cfg.get_float("emitter.gammaStar_GHz", 0.0, nonnegative=True),
        omega_thz)
    if "emitter.gammaStar_GHz" not in cfg and spectrum is not None:
        emitter = replace(emitter, gamma_star=psb.zpl_dephasing_rate(spectrum))
        logger.info("gammaStar taken from the ZPL width: 2pi x %.1f GHz",
                    units.rate_to_frequency_ghz(emitter.gamma_star))
    return emitter


def _parse_modes(text):
    modes = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        k, sep, delta = item.partition(":")
        try:
            modes.append((float(k), units.rate_from_frequency_ghz(float(delta))))
        except ValueError:
            raise ConfigError("quench.modes: '{}' is not a k:DeltaGHz pair".format(item))
        if not sep:
            raise ConfigError("quench.modes: '{}' is not a k:DeltaGHz pair".format(item))
    if not modes:
        raise ConfigError("quench.modes is empty")
    return tuple(modes)


def quench_factory(cfg):
    """A function eta_r -> QuenchModel from the quench.* keys."""
    forms = [key for key in ("quench.DeltaQ_THz", "quench.modes", "quench.scaledDeltaQ_THz") if key in cfg]
    if len(forms) > 1:
        raise ConfigError("Give at most one of {}".format(", ".join(forms)))
    try:
        if "quench.DeltaQ_THz" in cfg:
            model = QuenchModel(effective_detuning=units.rate_from_frequency_thz(
                cfg.get_float("quench.DeltaQ_THz", positive=True)))
            return lambda eta_r: model
        if "quench.modes" in cfg:
            model = QuenchModel(modes=_parse_modes(cfg.get_str("quench.modes")))
            return lambda eta_r: model
    except ParameterDomainError as e:
        raise ConfigError(str(e))
    if "quench.scaledDeltaQ_THz" in cfg:
        scaled = units.rate_from_frequency_thz(cfg.get_float("quench.scaledDeltaQ_THz", positive=True))
        def scaled_model(eta_r):
            try:
                return QuenchModel.from_scaled_detuning(scaled, eta_r)
            except ParameterDomainError as e:
                raise ConfigError("quench.scaledDeltaQ_THz: {}".format(e))
        return scaled_model
    return lambda eta_r: QuenchModel.none()


def _cavity_at(cfg, emitter, eta_r):
    has_purcell = "cavity.purcell" in cfg
    has_rates = "cavity.g_GHz" in cfg or "cavity.kappa_GHz" in cfg
    if has_purcell and has_rates:
        raise ConfigError("Give either cavity.purcell (with cavity.Q) or cavity.g_GHz + "
                          "cavity.kappa_GHz, not both")
    if has_purcell:
        if "cavity.Q" not in cfg:
            raise ConfigError("cavity.purcell needs cavity.Q")
        return CavityParams.from_purcell(cfg.get_float("cavity.purcell", nonnegative=True),
                                         cfg.get_float("cavity.Q", positive=True), emitter, eta_r)
    if has_rates:
        missing = [k for k in ("cavity.g_GHz", "cavity.kappa_GHz") if k not in cfg]
        if missing:
            raise ConfigError("Missing required key '{}'".format(missing[0]))
        return CavityParams.from_lab_units(cfg.get_float("cavity.g_GHz", nonnegative=True),
                                           cfg.get_float("cavity.kappa_GHz", positive=True), eta_r)
    return None


def solve_eta_r(emitter, cavity, make_quench, target):
    """The eta_r at which beta0 * eta_r equals target.

    beta0 depends on eta_r through the quench rate, so the condition is
    solved as a scalar root in eta_r.
    """
    def mismatch(eta_r):
        cav = replace(cavity, eta_r=eta_r)
        gq = markovian.gamma_q(make_quench(eta_r), cav.g, cav.kappa_nr)
        return float(markovian.beta_markovian(emitter, cav, float(gq))) * eta_r - target

    hi = 1.0 - 1e-12
    if not 0.0 < target < 1.0 or mismatch(hi) <= 0:
        raise ConfigError("cavity.targetBetaEtaR = {} cannot be reached with this cavity".format(target))
    eta_r = brentq(mismatch, 0.0, hi, xtol=1e-14)
    logger.info("Solved etaR = %.6f for beta0 * etaR = %g", eta_r, target)
    return eta_r


def build_setup(cfg, require_cavity=True):
    """Emitter, cavity, quench model, spectrum and eta_r from a config.

    Returns:
        tuple: (emitter, cavity or None, quench, spectrum or None, eta_r)

    Raises:
        ConfigError: For missing or inconsistent keys.

    """
    spectrum = build_spectrum(cfg)
    emitter = build_emitter(cfg, spectrum)
    make_quench = quench_factory(cfg)

    if "cavity.etaR" in cfg and "cavity.targetBetaEtaR" in cfg:
        raise ConfigError("Give either cavity.etaR or cavity.targetBetaEtaR, not both")
    eta_r = cfg.get_float("cavity.etaR", 1.0, nonnegative=True)
    if eta_r > 1.0:
        raise ConfigError("cavity.etaR must lie in [0,1], got {}".format(eta_r))

    try:
        cavity = _cavity_at(cfg, emitter, eta_r)
        if cavity is None and require_cavity:
            raise ConfigError("Give exactly one of cavity.purcell (with cavity.Q) or "
                              "cavity.g_GHz + cavity.kappa_GHz")
        if "cavity.targetBetaEtaR" in cfg:
            if cavity is None:
                raise ConfigError("cavity.targetBetaEtaR needs a cavity")
            eta_r = solve_eta_r(emitter, cavity, make_quench,
                                cfg.get_float("cavity.targetBetaEtaR", positive=True))
            cavity = replace(cavity, eta_r=eta_r)
    except ParameterDomainError as e:
        raise ConfigError(str(e))

    return emitter, cavity, make_quench(eta_r), spectrum, eta_r


def build_method(cfg, override=None):
    method = override or cfg.get_str("method", defaults.method)
    if method not in markovian.METHODS:
        raise ConfigError("method: '{}' must be one of {}".format(method, ", ".join(markovian.METHODS)))
    return method


def build_context(cfg, method=None, threads=defaults.threads):
    """SweepContext from a config; a configured cavity supplies base R and kappa."""
    emitter, cavity, quench, spectrum, eta_r = build_setup(cfg, require_cavity=False)
    ratio = cfg.get_float("sweep.bareDecayRatio", None, positive=True)
    return sweep.SweepContext(emitter=emitter, quench=quench, eta_r=eta_r,
                              bare_decay_ratio=ratio, spectrum=spectrum,
                              method=build_method(cfg, method),
                              base_r=cavity.r if cavity is not None else None,
                              base_kappa=cavity.kappa if cavity is not None else None,
                              threads=threads)


def build_axis(cfg, name):
    prefix = "sweep.{}.".format(name)
    if not cfg.has_any(prefix):
        return None
    if prefix + "quantity" not in cfg:
        raise ConfigError("Missing required key '{}quantity'".format(prefix))
    try:
        return sweep.Axis(quantity=cfg.get_str(prefix + "quantity"),
                          scale=cfg.get_str(prefix + "scale", "log"),
                          min=cfg.get_float(prefix + "min", 1.0, positive=True),
                          max=cfg.get_float(prefix + "max", 1e3, positive=True),
                          points=cfg.get_int(prefix + "points", defaults.sweep_points, minimum=2))
    except ParameterDomainError as e:
        raise ConfigError("{}*: {}".format(prefix, e))


def build_sweep_spec(cfg, context):
    x_axis = build_axis(cfg, "x")
    if x_axis is None:
        raise ConfigError("A sweep needs at least the sweep.x.* keys")
    outputs = cfg.get_str("sweep.outputs")
    outputs = tuple(o.strip() for o in outputs.split(",") if o.strip()) if outputs else sweep.OUTPUT_GROUPS
    try:
        return sweep.SweepSpec(x_axis=x_axis, context=context, y_axis=build_axis(cfg, "y"),
                               outputs=outputs, constraint=cfg.get_str("sweep.constraint"))
    except ParameterDomainError as e:
        raise ConfigError(str(e))


def build_optimize_box(cfg, gamma_star):
    """Search space and box (ps^-1) from optimize.*, in units of gamma*."""
    space = cfg.get_str("optimize.space", "g-kappa", choices=("g-kappa", "R-kappa"))
    lo, hi = defaults.optimize_box
    bounds = [cfg.get_float("optimize." + key, default, positive=True)
              for key, default in (("xMin", lo), ("xMax", hi), ("yMin", lo), ("yMax", hi))]
    if bounds[0] >= bounds[1] or bounds[2] >= bounds[3]:
        raise ConfigError("optimize box minima must lie below the maxima")
    if gamma_star <= 0:
        raise ConfigError("optimize needs a positive emitter.gammaStar_GHz")
    box = ((bounds[0] * gamma_star, bounds[1] * gamma_star),
           (bounds[2] * gamma_star, bounds[3] * gamma_star))
    return space, box, cfg.get_int("optimize.points", defaults.optimize_points, minimum=3)


def provenance(cfg, seed=None):
    info = OrderedDict()
    info["config"] = cfg.source
    info["config hash"] = cfg.hash()
    if seed is not None:
        info["seed"] = seed
    return info
