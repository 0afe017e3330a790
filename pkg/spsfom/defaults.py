# -*- coding: utf-8 -*-

"""Default settings.

A spsfom module for collecting default settings that are used by several
library modules and run modes. All rates are angular rates in ps^-1.

Attributes:
    code_version (string): Version string written into output provenance.

    ff (format string): The default format string for floating-point numbers
        in printed reports, with a reserved space for the sign.

    ff_csv (format string): The format string for floating-point numbers in
        CSV output (17 significant digits, lossless round trip).

    method (string): The default figure-of-merit method, one of
        "full", "simplified" or "oracle".

    oracle_method (string): The default oracle path, "eigensum" or
        "quadrature".

    eigen_condition_limit (float): Eigenvector condition number above which
        the eigendecomposition is abandoned in favour of the expm / Gramian
        fallback.

    quad_inner_tol (float): Absolute tolerance of the inner (tau) integral of
        the quadrature oracle, on the dimensionless integrand.

    quad_outer_tol (float): Absolute tolerance of the outer (t) integral.

    quad_limit (int): Subinterval limit passed to scipy.integrate.quad.

    truncation_factor (float): The quadrature domain ends at
        truncation_factor / |min Re eig| in each time variable.

    singular_gamma2_tol (float): Relative size of the Gamma_2^2 factor below
        which the first-order correction is evaluated by symmetric
        interpolation in gamma.

    singular_gamma2_step (float): Relative interpolation step used there.

    small_ratio_limit (float): optimal_cavity flags gamma*/Delta_q above
        this value.

    psb_epsrel (float): Relative tolerance of the spectral quadratures.

    psb_epsabs (float): Absolute tolerance of the spectral quadratures.

    psb_core_halfwidths (float): Number of the widest Lorentzian half-widths
        beyond the outermost peak where the finite core of the full-line
        Debye-Waller integrals ends and the infinite tails begin.

    psb_window (pair of floats): Offsets from lambda0 (nm) of the wavelength
        window the filter fraction is integrated over, also the default
        range of an exported spectrum profile.

    psb_plot_points (int): Number of points in an exported spectrum profile.

    sweep_points (int): Default number of points per sweep axis.

    optimize_points (int): Grid points per axis in each maximizer stage.

    optimize_box (pair of floats): Default search box, in units of gamma*,
        for both optimizer axes.

    optimize_rel_size (float): The maximizer stops when the box width
        relative to its centre drops below this value.

    optimize_shrink (float): Box shrink factor per refinement stage.

    scan_q_range (pair of floats): Default Q range of the Q_max scan.

    scan_points (int): Default number of points in a scan.

    seed (int): Default seed for the validate run mode.

    validate_samples (int): Default number of validate samples.

    validate_ratio_range (pair of floats): Range of gamma*/(kappa+gamma)
        drawn by the validate run mode.

    validate_quadrature_samples (int or None): Number of validate samples that
        are additionally cross-checked with the quadrature oracle; None
        cross-checks every sample.

    validate_quadratic_constant (float): Largest accepted constant C in
        |I_pert - I_oracle| < C (gamma*/(kappa+gamma))^2.

    validate_beta_tol (float): Largest accepted relative beta deviation.

    validate_oracle_tol (float): Largest accepted relative deviation between
        the two oracle paths.

    validate_normalization_tol (float): Largest accepted relative deviation of
        the wavepacket normalization integral from beta^2/(2 kappa^2).

    validate_purcell (float): R/gammaR of the reference cavity used by
        the normalization check when no cavity is configured.

    validate_q (float): Quality factor of that reference cavity.

    threads (int): Default number of worker threads.

    threads_env (string): Environment variable consulted when --threads is
        not given.

    siv_lifetime_ns (float): Radiative lifetime of the SiV- reference emitter.

    siv_gamma_star_ghz (float): Pure dephasing of the SiV- reference emitter,
        as gamma* / 2pi in GHz.

    siv_omega_thz (float): Optical frequency of the SiV- reference emitter,
        as omega / 2pi in THz.

"""

code_version = "spsfom 0.1.0"

ff = "{: .6g}"
ff_csv = "{:.17g}"

method = "full"
oracle_method = "eigensum"

eigen_condition_limit = 1e8
quad_inner_tol = 1e-10
quad_outer_tol = 1e-9
quad_limit = 200
truncation_factor = 40.0

singular_gamma2_tol = 1e-6
singular_gamma2_step = 1e-2

small_ratio_limit = 0.1

psb_epsrel = 1e-10
psb_epsabs = 1e-14
psb_core_halfwidths = 50.0
psb_window = (-30.0, 150.0)
psb_plot_points = 1801

sweep_points = 200

optimize_points = 41
optimize_box = (1e-1, 1e3)
optimize_rel_size = 1e-3
optimize_shrink = 4.0

scan_q_range = (1.0, 1e4)
scan_points = 25

seed = 1234
validate_samples = 100
validate_ratio_range = (0.01, 0.3)
validate_quadrature_samples = None
validate_quadratic_constant = 5.0
validate_beta_tol = 1e-9
validate_oracle_tol = 1e-6
validate_normalization_tol = 1e-4
validate_purcell = 2.7e5
validate_q = 60.0

threads = 1
threads_env = "SPSFOM_THREADS"

siv_lifetime_ns = 8.3
siv_gamma_star_ghz = 500.0
siv_omega_thz = 405.0
