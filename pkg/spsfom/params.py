# -*- coding: utf-8 -*-

"""spsfom.params

Parameter containers for the emitter, the cavity and the quench model,
and the invariant checks that validate a parameter set.

"""

import logging
import numpy as np
from dataclasses import dataclass
from spsfom import units
from spsfom.utils import ParameterDomainError
import spsfom.defaults as defaults


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmitterParams:
    """Emitter rates, all angular rates in ps^-1.

    Attributes:
        gamma_r (float): Radiative decay rate.
        gamma_nr (float): Intrinsic nonradiative decay rate.
        gamma_star (float): Pure dephasing rate.
        omega0 (float): Optical transition frequency.

    """
    gamma_r: float
    gamma_nr: float = 0.0
    gamma_star: float = 0.0
    omega0: float = units.rate_from_frequency_thz(defaults.siv_omega_thz)

    @classmethod
    def from_lab_units(cls, lifetime_ns, gamma_nr_ghz=0.0, gamma_star_ghz=0.0,
                       omega_thz=defaults.siv_omega_thz):
        """Build from a radiative lifetime (ns) and 2pi-frequencies (GHz, THz)."""
        return cls(gamma_r=units.rate_from_lifetime_ns(lifetime_ns),
                   gamma_nr=units.rate_from_frequency_ghz(gamma_nr_ghz),
                   gamma_star=units.rate_from_frequency_ghz(gamma_star_ghz),
                   omega0=units.rate_from_frequency_thz(omega_thz))

    @classmethod
    def siv(cls, gamma_star_ghz=defaults.siv_gamma_star_ghz):
        """The SiV- reference emitter, with gamma_nr = 0."""
        return cls.from_lab_units(defaults.siv_lifetime_ns, 0.0, gamma_star_ghz,
                                  defaults.siv_omega_thz)

    @property
    def bare_decay(self):
        return self.gamma_r + self.gamma_nr

    @property
    def wavelength(self):
        """Vacuum wavelength (nm) of the transition."""
        return units.wavelength_nm_from_rate(self.omega0)

    def total_decay(self, gamma_q=0.0):
        """gamma = gamma_r + gamma_nr + gamma_q."""
        return self.gamma_r + self.gamma_nr + gamma_q


@dataclass(frozen=True)
class CavityParams:
    """Cavity coupling and loss rates (ps^-1) and the radiative efficiency.

    Attributes:
        g (float): Emitter-cavity coupling rate.
        kappa (float): Total cavity loss rate.
        eta_r (float): Fraction of kappa that is radiative (useful) loss.

    """
    g: float
    kappa: float
    eta_r: float = 1.0

    @classmethod
    def from_purcell(cls, purcell, q, emitter, eta_r=1.0):
        """Build from a Purcell factor P = R / gamma_r and a quality factor.

        kappa = omega0 / Q and g follows from R = 4 g^2 / kappa.
        """
        if q <= 0:
            raise ParameterDomainError("Q must be positive, got {}".format(q))
        kappa = emitter.omega0 / q
        r = units.purcell_to_r(purcell, emitter.gamma_r)
        return cls(g=units.coupling_from_rates(r, kappa), kappa=kappa, eta_r=eta_r)

    @classmethod
    def from_lab_units(cls, g_ghz, kappa_ghz, eta_r=1.0):
        """Build from g and kappa quoted as 2pi-frequencies in GHz."""
        return cls(g=units.rate_from_frequency_ghz(g_ghz),
                   kappa=units.rate_from_frequency_ghz(kappa_ghz), eta_r=eta_r)

    @property
    def r(self):
        """Cavity-enhanced emission rate R = 4 g^2 / kappa."""
        return units.cavity_enhanced_rate(self.g, self.kappa)

    @property
    def kappa_r(self):
        return self.eta_r * self.kappa

    @property
    def kappa_nr(self):
        return (1.0 - self.eta_r) * self.kappa

    def quality_factor(self, omega0):
        """Q = omega0 / kappa."""
        return omega0 / self.kappa


@dataclass(frozen=True)
class QuenchModel:
    """Emitter quenching through detuned lossy (dark) cavity modes.

    Exactly one form is used: either a tuple of (k, detuning) pairs, one
    per lossy mode with coupling k g, or a single effective detuning
    Delta_q. An empty mode tuple with no effective detuning is the
    quench-free model.

    Attributes:
        modes (tuple of (float, float)): (k_l, Delta_l) per lossy mode,
            Delta_l in ps^-1.
        effective_detuning (float or None): Delta_q in ps^-1.

    """
    modes: tuple = ()
    effective_detuning: float = None

    def __post_init__(self):
        if self.modes and self.effective_detuning is not None:
            raise ParameterDomainError(
                "A quench model takes either per-mode detunings or an effective "
                "detuning, not both.")
        for k, delta in self.modes:
            if k <= 0 or delta == 0:
                raise ParameterDomainError(
                    "Quench mode (k={}, Delta={}) needs k > 0 and Delta != 0.".format(k, delta))
        if self.effective_detuning is not None and self.effective_detuning <= 0:
            raise ParameterDomainError(
                "Effective quench detuning must be positive, got {}".format(self.effective_detuning))

    @classmethod
    def none(cls):
        return cls()

    @classmethod
    def from_scaled_detuning(cls, scaled, eta_r):
        """Effective model from the combination Delta_q (1 - eta_r)^(-1/2)."""
        if not 0.0 <= eta_r < 1.0:
            raise ParameterDomainError(
                "A scaled quench detuning needs 0 <= etaR < 1, got {}".format(eta_r))
        return cls(effective_detuning=scaled * np.sqrt(1.0 - eta_r))

    @property
    def is_empty(self):
        return not self.modes and self.effective_detuning is None

    def equivalent_detuning(self):
        """Delta_q of the effective form; (sum k_l^2 / Delta_l^2)^(-1/2) for modes.

        Returns None for the quench-free model.
        """
        if self.effective_detuning is not None:
            return self.effective_detuning
        if not self.modes:
            return None
        return sum(k**2 / delta**2 for k, delta in self.modes)**-0.5

    def markov_valid(self, g, kappa_nr):
        """Per-mode flags g_l^2 / (Delta_l^2 + (kappa_nr/2)^2) < 1.

        The effective form is checked as a single mode with k = 1.
        Returns a list of bools (or boolean arrays).
        """
        modes = self.modes
        if self.effective_detuning is not None:
            modes = ((1.0, self.effective_detuning),)
        return [(k * g)**2 / (delta**2 + (0.5 * kappa_nr)**2) < 1.0 for k, delta in modes]


def validate_params(emitter, cavity=None, quench=None):
    """Check a parameter set against the physical invariants.

    Nothing is raised; every violated invariant is reported.

    Args:
        emitter (EmitterParams): The emitter.
        cavity (CavityParams, optional): The cavity.
        quench (QuenchModel, optional): The quench model.

    Returns:
        list of str: One message per violated invariant, empty if valid.

    """
    violations = []
    if not emitter.gamma_r > 0:
        violations.append("gammaR must be positive (got {})".format(emitter.gamma_r))
    if not emitter.gamma_nr >= 0:
        violations.append("gammaNR must be nonnegative (got {})".format(emitter.gamma_nr))
    if not emitter.gamma_star >= 0:
        violations.append("gammaStar must be nonnegative (got {})".format(emitter.gamma_star))
    if not emitter.omega0 > 0:
        violations.append("omega0 must be positive (got {})".format(emitter.omega0))

    if cavity is not None:
        if not cavity.g >= 0:
            violations.append("g must be nonnegative (got {})".format(cavity.g))
        if not cavity.kappa > 0:
            violations.append("kappa must be positive (got {})".format(cavity.kappa))
        if not 0.0 <= cavity.eta_r <= 1.0:
            violations.append("etaR must lie in [0,1] (got {})".format(cavity.eta_r))

    if quench is not None and cavity is not None and cavity.kappa > 0:
        for (k, delta), ok in zip(quench.modes or ((1.0, quench.effective_detuning),),
                                  quench.markov_valid(cavity.g, cavity.kappa_nr)):
            if delta is not None and not ok:
                violations.append(
                    "quench mode with k={} Delta={} violates the Markov condition "
                    "g_l^2 < Delta_l^2 + (kappa_nr/2)^2".format(k, delta))

    for v in violations:
        logger.debug("Invalid parameter: %s", v)
    return violations
