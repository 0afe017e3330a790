# -*- coding: utf-8 -*-

"""spsfom.bloch

Numerical solution of the optical Bloch equations of a two-level emitter
coupled to a single lossy cavity mode, restricted to the single-excitation
manifold. Gives the efficiency and the indistinguishability without any
perturbative expansion in the pure dephasing rate, and serves as the oracle
for the closed-form expressions in spsfom.markovian.

Conventions:
    The 2x2 generator A1 propagates (<a^dag>, <sigma^dag>); the 4x4 generator
    A2 propagates (<a^dag a>, <a^dag sigma>, <sigma^dag a>, <sigma^dag sigma>).
    U(tau) = exp(A1 tau), W(t) = exp(A2 t). The emitter starts excited, so
    the state at time t is the last column of W(t). Indices are zero-based.

"""

import cmath
import logging
import warnings
import numpy as np
from dataclasses import dataclass
from scipy import linalg
from scipy.integrate import quad, IntegrationWarning
from spsfom.utils import OracleError, ParameterDomainError
import spsfom.defaults as defaults


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BlochMatrices:
    """Generators of the first- and second-order moments.

    Attributes:
        a1 (ndarray): 2x2 complex generator of the coherences.
        a2 (ndarray): 4x4 complex generator of the populations and
            emitter-cavity coherences.

    """
    a1: np.ndarray
    a2: np.ndarray


@dataclass(frozen=True, eq=False)
class CorrelationGrid:
    """Samples of <a^dag(t + tau) a(t)> on a (t, tau) grid.

    Attributes:
        t (ndarray): Time points, shape (n_t,).
        tau (ndarray): Delay points, shape (n_tau,).
        values (ndarray): Complex samples, shape (n_t, n_tau).

    """
    t: np.ndarray
    tau: np.ndarray
    values: np.ndarray


def matrices_from_rates(g, kappa, gamma, gamma_star):
    """Build the Bloch generators from g, kappa, gamma and gamma*."""
    ig = 1j * g
    coherence = kappa + gamma_star + gamma
    a1 = -0.5 * np.array([[kappa, -2 * ig],
                          [-2 * ig, gamma_star + gamma]], dtype=complex)
    a2 = -0.5 * np.array([[2 * kappa, 2 * ig, -2 * ig, 0],
                          [2 * ig, coherence, 0, -2 * ig],
                          [-2 * ig, 0, coherence, 2 * ig],
                          [0, -2 * ig, 2 * ig, 2 * gamma]], dtype=complex)
    return BlochMatrices(a1=a1, a2=a2)


def build_matrices(emitter, cavity, gamma_q=0.0):
    """Bloch generators of an emitter-cavity pair, gamma = gamma_r + gamma_nr + gamma_q."""
    return matrices_from_rates(cavity.g, cavity.kappa, emitter.total_decay(gamma_q),
                               emitter.gamma_star)


def is_dissipative(m, tol=1e-12):
    """True if no eigenvalue of A1 or A2 has a positive real part (beyond tol)."""
    scale = max(np.max(np.abs(m.a1)), np.max(np.abs(m.a2)), 1.0)
    return all(np.max(np.linalg.eigvals(a).real) <= tol * scale for a in (m.a1, m.a2))


class Propagator:
    """The matrix exponential exp(A t) of a fixed generator A.

    Uses the eigendecomposition A = V diag(lambda) V^-1 while the condition
    number of V stays below the limit, and scipy.linalg.expm otherwise
    (near exceptional points, where eigenvectors coalesce).
    """

    def __init__(self, generator, condition_limit=defaults.eigen_condition_limit):
        self.generator = np.asarray(generator, dtype=complex)
        self.rates = None
        self._vectors = None
        self._inverse = None

        rates, vectors = np.linalg.eig(self.generator)
        condition = np.linalg.cond(vectors)
        self.uses_eigenbasis = bool(np.isfinite(condition) and condition <= condition_limit)
        if self.uses_eigenbasis:
            self.rates = rates
            self._vectors = vectors
            self._inverse = np.linalg.inv(vectors)
        else:
            logger.debug("Eigenvector condition number %.3g, using expm", condition)

    def __call__(self, t):
        if self.uses_eigenbasis:
            return (self._vectors * np.exp(self.rates * t)) @ self._inverse
        return linalg.expm(self.generator * t)

    def series(self, i, j):
        """Coefficients c_k with exp(A t)[i, j] = sum_k c_k exp(rates_k t)."""
        if not self.uses_eigenbasis:
            raise OracleError("No exponential series: generator is not diagonalizable "
                              "to the required accuracy")
        return self._vectors[i, :] * self._inverse[:, j]

    def element(self, i, j, t):
        """exp(A t)[i, j] for a scalar or an array of times."""
        t = np.asarray(t, dtype=float)
        if self.uses_eigenbasis:
            return np.exp(np.multiply.outer(t, self.rates)) @ self.series(i, j)
        if t.ndim == 0:
            return self(float(t))[i, j]
        return np.array([self(float(s))[i, j] for s in t.ravel()]).reshape(t.shape)

    def element_function(self, i, j):
        """A fast scalar function t -> exp(A t)[i, j]."""
        if self.uses_eigenbasis:
            pairs = list(zip(self.series(i, j).tolist(), self.rates.tolist()))
            return lambda t: sum(c * cmath.exp(rate * t) for c, rate in pairs)
        return lambda t: complex(self(t)[i, j])


def beta_numeric(m, kappa):
    """beta = kappa * integral of W(t)[0, 3] = -kappa (A2^-1)[0, 3].

    Raises:
        OracleError: If A2 is singular.

    """
    rhs = np.zeros(4, dtype=complex)
    rhs[3] = 1.0
    try:
        column = np.linalg.solve(m.a2, rhs)
    except np.linalg.LinAlgError:
        raise OracleError("A2 is singular (kappa = {}, A2 diagonal = {})".format(
            kappa, np.diag(m.a2)))
    if not np.all(np.isfinite(column)):
        raise OracleError("A2 is numerically singular (kappa = {})".format(kappa))
    return float(-kappa * column[0].real)


def cavity_population(m, t):
    """<a^dag a>(t) after the emitter starts excited."""
    return np.real(Propagator(m.a2).element(0, 3, t))


def g1_correlation(m, t, tau):
    """<a^dag(t + tau) a(t)> = U(tau)[0,0] W(t)[0,3] + U(tau)[0,1] W(t)[2,3]."""
    if t < 0 or tau < 0:
        raise ParameterDomainError("t and tau must be nonnegative")
    u = Propagator(m.a1)(tau)
    w = Propagator(m.a2)(t)
    return complex(u[0, 0] * w[0, 3] + u[0, 1] * w[2, 3])


def correlation_grid(m, t_grid, tau_grid):
    """Sample <a^dag(t + tau) a(t)> on the outer product of two grids."""
    t_grid = np.asarray(t_grid, dtype=float)
    tau_grid = np.asarray(tau_grid, dtype=float)
    u_prop = Propagator(m.a1)
    w_prop = Propagator(m.a2)
    values = (np.multiply.outer(w_prop.element(0, 3, t_grid), u_prop.element(0, 0, tau_grid))
              + np.multiply.outer(w_prop.element(2, 3, t_grid), u_prop.element(0, 1, tau_grid)))
    return CorrelationGrid(t=t_grid, tau=tau_grid, values=values)


def _slowest_rate(m):
    rates = np.concatenate([np.linalg.eigvals(m.a1), np.linalg.eigvals(m.a2)])
    if np.max(rates.real) >= 0:
        raise OracleError("Bloch matrices are not strictly dissipative "
                          "(max Re eig = {:.3g})".format(np.max(rates.real)))
    return float(np.min(np.abs(rates.real)))


def _overlap(a, lam, b, mu):
    """Integral over [0, inf) of conj(sum_i a_i e^(lam_i s)) * sum_j b_j e^(mu_j s)."""
    denominator = -(np.conj(lam)[:, None] + mu[None, :])
    return complex(np.sum(np.conj(a)[:, None] * b[None, :] / denominator))


def _moment_integrals_eigen(u_prop, w_prop):
    lam, mu = u_prop.rates, w_prop.rates
    u00, u01 = u_prop.series(0, 0), u_prop.series(0, 1)
    w03, w23 = w_prop.series(0, 3), w_prop.series(2, 3)
    c1 = _overlap(u00, lam, u00, lam) * _overlap(w03, mu, w03, mu)
    c2 = _overlap(u00, lam, u01, lam) * _overlap(w03, mu, w23, mu)
    c3 = _overlap(u01, lam, u01, lam) * _overlap(w23, mu, w23, mu)
    return c1, c2, c3


def _moment_integrals_gramian(m):
    # y(s) = exp(A1^T s) e0 has entries U(s)[0, j]; z(s) = exp(A2 s) e3 has
    # entries W(s)[k, 3]. Their Gramians integrate y y^H and z z^H.
    e0 = np.zeros((2, 2), dtype=complex)
    e0[0, 0] = 1.0
    e3 = np.zeros((4, 4), dtype=complex)
    e3[3, 3] = 1.0
    xu = linalg.solve_continuous_lyapunov(m.a1.T, -e0)
    xw = linalg.solve_continuous_lyapunov(m.a2, -e3)
    c1 = xu[0, 0] * xw[0, 0]
    c2 = xu[1, 0] * xw[2, 0]
    c3 = xu[1, 1] * xw[2, 2]
    return c1, c2, c3


def _double_integral(integrand, scale, truncation_factor, what):
    """Integrate integrand(t, tau) over [0, T*]^2 with nested adaptive quadrature.

    Both variables are mapped by s = scale * u / (1 - u) onto [0, 1), and
    the domain ends at u* = T* / (scale + T*) with T* = truncation_factor * scale.
    Tolerances are absolute, so the integral should be O(1); in the
    dimensionless variables every inner value is then O(1) as well.
    """
    u_max = truncation_factor / (1.0 + truncation_factor)
    inner_errors = []

    def inner(v):
        t = scale * v / (1.0 - v)
        def f(u):
            tau = scale * u / (1.0 - u)
            return integrand(t, tau) * scale**2 / (1.0 - u)**2
        value, error = quad(f, 0.0, u_max, epsabs=defaults.quad_inner_tol, epsrel=1e-9,
                            limit=defaults.quad_limit)
        inner_errors.append(error / max(abs(value), 1.0))
        return value / (1.0 - v)**2

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, error = quad(inner, 0.0, u_max, epsabs=defaults.quad_outer_tol, epsrel=1e-9,
                            limit=defaults.quad_limit)

    worst_inner = max(inner_errors) if inner_errors else 0.0
    for w in caught:
        logger.debug("Quadrature for %s: %s", what, w.message)
    if error > 1e2 * defaults.quad_outer_tol * max(abs(value), 1.0) or worst_inner > 1e-6:
        raise OracleError(
            "Quadrature for {} did not converge: value {:.10g}, outer error {:.3g}, "
            "worst inner error {:.3g}, time scale {:.3g} ps, {}".format(
                what, value, error, worst_inner, scale,
                "; ".join(str(w.message) for w in caught) or "no warnings"))
    return value


def indist_numeric(m, kappa, method=defaults.oracle_method,
                   truncation_factor=defaults.truncation_factor):
    """Indistinguishability I = (2 kappa^2 / beta^2) int int |<a^dag(t+tau) a(t)>|^2.

    Args:
        m (BlochMatrices): The Bloch generators.
        kappa (float): Cavity loss rate.
        method (str): "eigensum" evaluates the double integral as closed sums
            over eigenvalue pairs (exact Gramians when the eigenbasis is
            ill-conditioned); "quadrature" integrates numerically.
        truncation_factor (float): Quadrature domain in units of the slowest
            decay time.

    Raises:
        OracleError: For non-dissipative matrices or failed quadrature.

    """
    beta = beta_numeric(m, kappa)
    scale = 1.0 / _slowest_rate(m)

    if method == "eigensum":
        u_prop = Propagator(m.a1)
        w_prop = Propagator(m.a2)
        if u_prop.uses_eigenbasis and w_prop.uses_eigenbasis:
            c1, c2, c3 = _moment_integrals_eigen(u_prop, w_prop)
        else:
            logger.debug("Ill-conditioned eigenbasis, using Lyapunov Gramians")
            c1, c2, c3 = _moment_integrals_gramian(m)
        i_beta_sq = 2 * kappa**2 * (c1.real + 2 * c2.real + c3.real)
        return float(i_beta_sq / beta**2)

    if method == "quadrature":
        u_prop = Propagator(m.a1)
        w_prop = Propagator(m.a2)
        u00, u01 = u_prop.element_function(0, 0), u_prop.element_function(0, 1)
        w03, w23 = w_prop.element_function(0, 3), w_prop.element_function(2, 3)
        norm = 2 * kappa**2 / beta**2

        # W(t) does not depend on tau; cache it across the inner integral.
        cache = {}
        def integrand(t, tau):
            if t not in cache:
                cache.clear()
                cache[t] = (w03(t), w23(t))
            b, d = cache[t]
            return norm * abs(u00(tau) * b + u01(tau) * d)**2

        return float(_double_integral(integrand, scale, truncation_factor, "I"))

    raise OracleError("Unknown oracle method '{}'".format(method))


def literal_normalization(m, kappa, truncation_factor=defaults.truncation_factor):
    """The double integral of <a^dag a>(t + tau) <a^dag a>(t) and its expected value.

    The integral equals beta^2 / (2 kappa^2) when the emitted wavepacket
    carries beta photons; both numbers are returned for comparison.

    Returns:
        tuple: (numeric value, beta^2 / (2 kappa^2)).

    """
    beta = beta_numeric(m, kappa)
    scale = 1.0 / _slowest_rate(m)
    n = Propagator(m.a2).element_function(0, 3)
    expected = beta**2 / (2 * kappa**2)
    value = _double_integral(lambda t, tau: (n(t + tau) * n(t)).real / expected, scale,
                             truncation_factor, "the wavepacket normalization")
    return value * expected, expected
