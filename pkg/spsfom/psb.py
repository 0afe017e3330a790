# -*- coding: utf-8 -*-

"""spsfom.psb

Phonon-sideband (PSB) model of a solid-state emitter's spectrum.

The spectrum is a zero-phonon line (ZPL), a Lorentzian of half-width delta
at lambda0 and unit peak height, plus a sideband built from Lorentzians
a_i / (1 + (x - c_i)^2 / b_i^2) in the offset x = lambda - lambda0 (nm).
From it follow the Debye-Waller factor DW, the fraction F(Q) of the
sideband that passes a cavity of quality factor Q, and the non-Markovian
corrections of the indistinguishability and the efficiency.

The Debye-Waller integrals run over the full real line in the offset
variable. F(Q) is integrated over the fixed window [lambda0 - 30 nm,
lambda0 + 150 nm]; its full-line closed form and the share of the sideband
outside the window are kept as diagnostics.

"""

import logging
import functools
import numpy as np
from dataclasses import dataclass
from scipy.integrate import quad
from spsfom import units
from spsfom.utils import ParameterDomainError, ConfigError, OutputError
import spsfom.defaults as defaults


logger = logging.getLogger(__name__)


# (a_i, b_i [nm], c_i [nm]) per sample, and the Debye-Waller factor each
# sample's ZPL width is reconstructed from.
_BUILTIN_COEFFS = {
    "sample3": (
        (1.4e-3, 1.3, 4.0),
        (6.7e-3, 6.5, 10.5),
        (2.0e-3, 6.0, 20.5),
        (2.2e-3, 6.0, 32.0),
        (2.4e-3, 0.9, 39.0),
        (1.0e-3, 20.0, 47.0),
    ),
    "sample5": (
        (1.4e-3, 1.7, 7.5),
        (1.8e-3, 8.0, 11.0),
        (2.6e-3, 2.9, 17.5),
        (2.0e-3, 3.3, 22.5),
        (0.9e-3, 2.5, 27.0),
        (1.2e-3, 5.0, 33.0),
        (1.0e-3, 8.0, 39.0),
        (0.3e-3, 1.1, 41.5),
        (0.7e-3, 18.0, 49.0),
    ),
}

_BUILTIN_DW = {"sample3": 0.791, "sample5": 0.884}

BUILTIN_SAMPLES = tuple(sorted(_BUILTIN_COEFFS))


@dataclass(frozen=True)
class PsbSpectrum:
    """ZPL position and width plus the sideband Lorentzians.

    Attributes:
        lambda0 (float): ZPL centre wavelength (nm).
        delta (float): ZPL half-width (nm).
        coeffs (tuple): (a_i, b_i, c_i) with a_i, b_i, c_i > 0, sorted by c_i.

    """
    lambda0: float
    delta: float
    coeffs: tuple = ()

    def __post_init__(self):
        if self.lambda0 <= 0 or self.delta <= 0:
            raise ParameterDomainError("A spectrum needs positive lambda0 and delta")
        coeffs = tuple(tuple(float(v) for v in row) for row in self.coeffs)
        for a, b, c in coeffs:
            if a <= 0 or b <= 0 or c <= 0:
                raise ParameterDomainError(
                    "Sideband Lorentzian (a={}, b={}, c={}) needs positive entries".format(a, b, c))
        if any(c1[2] > c2[2] for c1, c2 in zip(coeffs, coeffs[1:])):
            raise ParameterDomainError("Sideband Lorentzians must be sorted by centre offset c")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def weight(self):
        """sum_i a_i b_i; the sideband integral is pi times this."""
        return sum(a * b for a, b, c in self.coeffs)


def builtin_spectrum(sample):
    """One of the built-in sideband fits, 'sample3' or 'sample5'.

    lambda0 is the wavelength of a 2pi x 405 THz transition and delta is
    chosen so that the analytic Debye-Waller factor equals the sample's
    reported value.
    """
    key = sample.lower()
    if key not in _BUILTIN_COEFFS:
        raise ParameterDomainError("Unknown spectrum '{}', expected one of {}".format(
            sample, ", ".join(BUILTIN_SAMPLES)))
    coeffs = _BUILTIN_COEFFS[key]
    dw = _BUILTIN_DW[key]
    weight = sum(a * b for a, b, c in coeffs)
    lambda0 = units.wavelength_nm_from_rate(units.rate_from_frequency_thz(defaults.siv_omega_thz))
    return PsbSpectrum(lambda0=lambda0, delta=dw * weight / (1.0 - dw), coeffs=coeffs)


def zpl_intensity(s, wavelength):
    """ZPL line shape 1 / (1 + (lambda - lambda0)^2 / delta^2)."""
    x = np.asarray(wavelength, dtype=float) - s.lambda0
    return 1.0 / (1.0 + (x / s.delta)**2)


def psb_intensity(s, wavelength):
    """Sideband line shape sum_i a_i / (1 + (lambda - lambda0 - c_i)^2 / b_i^2)."""
    x = np.asarray(wavelength, dtype=float) - s.lambda0
    total = np.zeros_like(x)
    for a, b, c in s.coeffs:
        total = total + a / (1.0 + ((x - c) / b)**2)
    return total if total.ndim else float(total)


def cavity_transmission(wavelength, lambda0, q):
    """Cavity filter 1 / (1 + 4 Q^2 (lambda - lambda0)^2 / lambda0^2)."""
    x = np.asarray(wavelength, dtype=float) - lambda0
    return 1.0 / (1.0 + 4.0 * q**2 * (x / lambda0)**2)


def _line_integral(func, centres, widths):
    """Integral of func(x) over the real line, split at the Lorentzian centres."""
    reach = defaults.psb_core_halfwidths * max(widths)
    lo, hi = min(centres) - reach, max(centres) + reach
    opts = dict(epsabs=defaults.psb_epsabs, epsrel=defaults.psb_epsrel, limit=500)
    core, _ = quad(func, lo, hi, points=sorted(set(centres)), **opts)
    left, _ = quad(func, -np.inf, lo, **opts)
    right, _ = quad(func, hi, np.inf, **opts)
    return left + core + right


def dw_factor(s, numeric=False):
    """Debye-Waller factor: ZPL integral over the total spectral integral.

    Analytic: delta / (delta + sum a_i b_i). With numeric=True both line
    integrals are evaluated by adaptive quadrature instead.
    """
    if not s.coeffs:
        return 1.0
    if not numeric:
        return s.delta / (s.delta + s.weight)

    centres = [0.0] + [c for a, b, c in s.coeffs]
    widths = [s.delta] + [b for a, b, c in s.coeffs]
    zpl = _line_integral(lambda x: 1.0 / (1.0 + (x / s.delta)**2), [0.0], [s.delta])
    sideband = _line_integral(lambda x: psb_intensity(s, s.lambda0 + x), centres, widths)
    return zpl / (zpl + sideband)


def _check_window(window):
    lo, hi = window
    if not lo < 0.0 < hi:
        raise ParameterDomainError("The integration window must contain the ZPL, got {}".format(window))
    return float(lo), float(hi)


def _window_integral(func, s, window):
    """Integral of func(x) over the window, split at the peaks inside it."""
    lo, hi = window
    peaks = sorted(set(x for x in [0.0] + [c for a, b, c in s.coeffs] if lo < x < hi))
    value, _ = quad(func, lo, hi, points=peaks, epsabs=defaults.psb_epsabs,
                    epsrel=defaults.psb_epsrel, limit=500)
    return value


def filter_fraction(s, q, window=defaults.psb_window):
    """Fraction F(Q) of the sideband transmitted by a cavity of quality factor Q.

    F = int S_cav S_PSB / int S_PSB over the wavelength window (offsets from
    lambda0 in nm), by adaptive quadrature. Q = 0 means no filtering
    (F = 1); a spectrum without sideband gives F = 0.
    """
    if q < 0:
        raise ParameterDomainError("Q must be nonnegative, got {}".format(q))
    window = _check_window(window)
    if q == 0:
        return 1.0
    if not s.coeffs:
        return 0.0
    sideband = lambda x: psb_intensity(s, s.lambda0 + x)
    filtered = lambda x: sideband(x) / (1.0 + 4.0 * q**2 * (x / s.lambda0)**2)
    f = _window_integral(filtered, s, window) / _window_integral(sideband, s, window)
    # S_cav <= 1 pointwise; only rounding can push the ratio above 1.
    return min(f, 1.0)


def window_tail_fraction(s, window=defaults.psb_window):
    """Share of the full-line sideband integral outside the window.

    sum_i a_i b_i [pi - atan((hi - c_i)/b_i) + atan((lo - c_i)/b_i)] / (pi sum_i a_i b_i)
    """
    lo, hi = _check_window(window)
    if not s.coeffs:
        return 0.0
    inside = sum(a * b * (np.arctan((hi - c) / b) - np.arctan((lo - c) / b)) for a, b, c in s.coeffs)
    return float(1.0 - inside / (np.pi * s.weight))


@functools.lru_cache(maxsize=4096)
def cached_filter_fraction(s, q):
    """filter_fraction memoized on (spectrum, Q); F does not depend on g."""
    return filter_fraction(s, q)


def filter_fraction_closed_form(s, q):
    """Full-line closed form of F(Q) from the overlap of two Lorentzians.

    sum_i a_i b_i w (w + b_i) / (c_i^2 + (w + b_i)^2) / sum_i a_i b_i,
    with w = lambda0 / (2Q) the cavity half-width in nm.
    """
    if q < 0:
        raise ParameterDomainError("Q must be nonnegative, got {}".format(q))
    if q == 0:
        return 1.0
    if not s.coeffs:
        return 0.0
    w = s.lambda0 / (2.0 * q)
    total = sum(a * b * w * (w + b) / (c**2 + (w + b)**2) for a, b, c in s.coeffs)
    return total / s.weight


def s0_diagnostic(s):
    """Sideband intensity at the ZPL, sum_i a_i / (1 + (c_i / b_i)^2)."""
    return sum(a / (1.0 + (c / b)**2) for a, b, c in s.coeffs)


def zpl_dephasing_rate(s):
    """Pure dephasing rate (ps^-1) implied by the ZPL width.

    The ZPL full width 2 delta (nm) is converted to an angular frequency
    width 2pi c (2 delta) / lambda0^2.
    """
    return units.TWO_PI * units.SPEED_OF_LIGHT * 2.0 * s.delta / s.lambda0**2


@dataclass(frozen=True)
class PsbCorrectionInput:
    """Inputs of the sideband correction.

    Attributes:
        i0 (float): Markovian indistinguishability, in [0, 1].
        beta0 (float): Markovian efficiency, in [0, 1].
        b2 (float): Debye-Waller factor B^2, in (0, 1].
        f (float): Filter fraction F, in [0, 1].

    """
    i0: float
    beta0: float
    b2: float
    f: float

    def __post_init__(self):
        if not (0.0 <= self.i0 <= 1.0 and 0.0 <= self.beta0 <= 1.0):
            raise ParameterDomainError("I0 and beta0 must lie in [0,1]")
        if not 0.0 < self.b2 <= 1.0:
            raise ParameterDomainError("B^2 must lie in (0,1], got {}".format(self.b2))
        if not 0.0 <= self.f <= 1.0:
            raise ParameterDomainError("F must lie in [0,1], got {}".format(self.f))


def psb_corrected(i0, beta0, b2, f):
    """Array form of the sideband correction; returns (I, beta)."""
    transmitted = b2 + f * (1.0 - b2)
    indist = i0 * (b2 / transmitted)**2
    beta = beta0 * transmitted / (1.0 - beta0 * (1.0 - f) * (1.0 - b2))
    return indist, beta


def apply_psb_correction(inp):
    """Corrected (I, beta) for a PsbCorrectionInput.

    I = I0 [B^2 / (B^2 + F (1 - B^2))]^2
    beta = beta0 (B^2 + F (1 - B^2)) / (1 - beta0 (1 - F)(1 - B^2))
    """
    indist, beta = psb_corrected(inp.i0, inp.beta0, inp.b2, inp.f)
    return float(indist), float(beta)


@dataclass(frozen=True)
class ValidityFlags:
    """Applicability of the sideband model at one parameter point.

    Attributes:
        weak_coupling_ok (bool): 2g < gamma + kappa + gamma*.
        dephasing_model_ok (bool): R < gamma* / S0.
        coupling_ratio (float): 2g / (gamma + kappa + gamma*).
        dephasing_ratio (float): R S0 / gamma*.

    """
    weak_coupling_ok: bool
    dephasing_model_ok: bool
    coupling_ratio: float
    dephasing_ratio: float


def validity_check(emitter, cavity, s, gamma_q=0.0):
    """Check the weak-coupling and dephasing-model conditions of the sideband model."""
    gamma = emitter.total_decay(gamma_q)
    coupling_ratio = 2.0 * cavity.g / (gamma + cavity.kappa + emitter.gamma_star)
    r_s0 = cavity.r * s0_diagnostic(s)
    if emitter.gamma_star > 0:
        dephasing_ratio = r_s0 / emitter.gamma_star
    else:
        dephasing_ratio = np.inf if r_s0 > 0 else 0.0
    return ValidityFlags(weak_coupling_ok=bool(coupling_ratio < 1.0),
                         dephasing_model_ok=bool(dephasing_ratio < 1.0),
                         coupling_ratio=float(coupling_ratio),
                         dephasing_ratio=float(dephasing_ratio))


def spectrum_profile(s, q, wavelengths=None):
    """Line shapes on a wavelength grid, for plotting the sideband filtering.

    Returns:
        dict: wavelength_nm, s_zpl, s_psb, s_total, s_cavity, s_psb_filtered.

    """
    if wavelengths is None:
        lo, hi = defaults.psb_window
        wavelengths = np.linspace(s.lambda0 + lo, s.lambda0 + hi, defaults.psb_plot_points)
    wavelengths = np.asarray(wavelengths, dtype=float)
    zpl = zpl_intensity(s, wavelengths)
    sideband = psb_intensity(s, wavelengths)
    cavity = cavity_transmission(wavelengths, s.lambda0, q)
    return {
        "wavelength_nm": wavelengths,
        "s_zpl": zpl,
        "s_psb": sideband,
        "s_total": zpl + sideband,
        "s_cavity": cavity,
        "s_psb_filtered": cavity * sideband,
    }


def write_spectrum_csv(s, path):
    """Write a spectrum as CSV: metadata lines, then a,b_nm,c_nm rows."""
    lines = ["# spsfom PSB spectrum",
             "lambda0_nm={!r}".format(s.lambda0),
             "delta_nm={!r}".format(s.delta),
             "a,b_nm,c_nm"]
    lines += ["{!r},{!r},{!r}".format(a, b, c) for a, b, c in s.coeffs]
    try:
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")
    except OSError as e:
        raise OutputError("Could not write {}: {}".format(path, e))


def read_spectrum_csv(path):
    """Read a spectrum written by write_spectrum_csv.

    Raises:
        ConfigError: If the file is missing, lacks lambda0_nm/delta_nm or
            has malformed rows.

    """
    try:
        with open(path, "r") as f:
            lines = [line.strip() for line in f]
    except OSError as e:
        raise ConfigError("Could not read spectrum file {}: {}".format(path, e))

    meta = {}
    coeffs = []
    header_seen = False
    for number, line in enumerate(lines, start=1):
        if not line or line.startswith("#"):
            continue
        if "=" in line and not header_seen:
            key, _, value = line.partition("=")
            meta[key.strip()] = value.strip()
            continue
        if line.replace(" ", "") == "a,b_nm,c_nm":
            header_seen = True
            continue
        try:
            a, b, c = (float(v) for v in line.split(","))
        except ValueError:
            raise ConfigError("{}:{}: expected 'a,b_nm,c_nm', got '{}'".format(path, number, line))
        coeffs.append((a, b, c))

    missing = [key for key in ("lambda0_nm", "delta_nm") if key not in meta]
    if missing or not header_seen:
        raise ConfigError("Spectrum file {} lacks {}".format(
            path, ", ".join(missing + ([] if header_seen else ["the a,b_nm,c_nm header"]))))
    try:
        s = PsbSpectrum(lambda0=float(meta["lambda0_nm"]), delta=float(meta["delta_nm"]),
                        coeffs=tuple(coeffs))
    except (ValueError, ParameterDomainError) as e:
        raise ConfigError("Spectrum file {}: {}".format(path, e))
    logger.debug("Read %d sideband Lorentzians from %s", len(s.coeffs), path)
    return s
