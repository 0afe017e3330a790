# -*- coding: utf-8 -*-

"""spsfom.units

Unit conversions to and from the canonical rate unit.

Every rate in spsfom is an angular rate in ps^-1 held in a plain float or
numpy array. Lab quantities are quoted as ordinary frequencies (x 2pi GHz,
x 2pi THz), as lifetimes (ns) or as wavelengths (nm); the functions below
are the only place where those units appear.

"""

import numpy as np
from spsfom.utils import check_positive, ParameterDomainError


# Speed of light in nm/ps
SPEED_OF_LIGHT = 299792.458

TWO_PI = 2.0 * np.pi


def rate_from_frequency_ghz(f_ghz):
    """Angular rate (ps^-1) of a frequency quoted as 2pi x f_ghz GHz."""
    return TWO_PI * f_ghz * 1e-3


def rate_to_frequency_ghz(rate):
    """Inverse of rate_from_frequency_ghz."""
    return rate / (TWO_PI * 1e-3)


def rate_from_frequency_thz(f_thz):
    """Angular rate (ps^-1) of a frequency quoted as 2pi x f_thz THz."""
    return TWO_PI * f_thz


def rate_to_frequency_thz(rate):
    """Inverse of rate_from_frequency_thz."""
    return rate / TWO_PI


def rate_from_lifetime_ns(lifetime_ns):
    """Decay rate (ps^-1) of a lifetime given in ns."""
    check_positive("lifetime", lifetime_ns)
    return 1.0 / (1e3 * lifetime_ns)


def lifetime_ns_from_rate(rate):
    """Lifetime in ns of a decay rate in ps^-1."""
    check_positive("rate", rate)
    return 1.0 / (1e3 * rate)


def wavelength_nm_from_rate(omega):
    """Vacuum wavelength (nm) of an angular optical frequency (ps^-1)."""
    check_positive("omega", omega)
    return TWO_PI * SPEED_OF_LIGHT / omega


def rate_from_wavelength_nm(wavelength):
    """Angular optical frequency (ps^-1) of a vacuum wavelength (nm)."""
    check_positive("wavelength", wavelength)
    return TWO_PI * SPEED_OF_LIGHT / wavelength


def purcell_factor(wavelength, n, q, volume):
    """The Purcell factor P = (3 / 4pi^2) (lambda/n)^3 Q / V.

    Args:
        wavelength (float): Vacuum wavelength (any length unit).
        n (float): Refractive index.
        q (float): Quality factor.
        volume (float): Mode volume, in the cube of the wavelength unit.

    Raises:
        ParameterDomainError: If any input is nonpositive.

    """
    for name, value in (("wavelength", wavelength), ("n", n), ("Q", q), ("V", volume)):
        check_positive(name, value)
    return 3.0 / (4.0 * np.pi**2) * (wavelength / n)**3 * q / volume


def purcell_to_r(purcell, gamma_r):
    """Cavity-enhanced emission rate R = P * gamma_r.

    A zero Purcell factor is allowed and gives R = 0.
    """
    check_positive("Purcell factor", purcell, allow_zero=True)
    check_positive("gammaR", gamma_r)
    return purcell * gamma_r


def r_from_mode(wavelength, n, q, volume, gamma_r):
    """R from the cavity mode description: purcell_factor(...) * gamma_r."""
    return purcell_to_r(purcell_factor(wavelength, n, q, volume), gamma_r)


def coupling_from_rates(r, kappa):
    """Coupling rate g from R = 4 g^2 / kappa."""
    check_positive("kappa", kappa)
    check_positive("R", r, allow_zero=True)
    return 0.5 * np.sqrt(r * kappa)


def cavity_enhanced_rate(g, kappa):
    """R = 4 g^2 / kappa."""
    if np.any(np.asarray(kappa) <= 0):
        raise ParameterDomainError("kappa must be positive, got {}".format(kappa))
    return 4.0 * g**2 / kappa
