# -*- coding: utf-8 -*-

"""spsfom.sweep

Evaluation of the figures of merit on parameter grids, numerical
maximization of I * beta over the cavity parameters, and the scans built
on it: the quality factor Q_max that maximizes the sideband-corrected
I * beta at fixed Purcell enhancement, and the largest achievable I * beta
versus the quench detuning.

Grid points are independent; results are always assembled in grid-index
order (x index outer, y index inner) whatever the number of threads.

"""

import logging
import numpy as np
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from scipy.optimize import minimize_scalar
from spsfom import markovian, bloch, psb
from spsfom.params import QuenchModel
from spsfom.utils import SpsfomError, ParameterDomainError, write_table
import spsfom.defaults as defaults


logger = logging.getLogger(__name__)

QUANTITIES = ("R/gammaStar", "kappa/gammaStar", "Q", "DeltaQ/gammaStar", "R/gammaR")
SCALES = ("log", "linear")
OUTPUT_GROUPS = ("beta", "I", "IbetaProduct", "regimeFlags", "validityFlags", "errEstimate")
CONSTRAINTS = ("R=kappa",)


@dataclass(frozen=True)
class Axis:
    """One sweep axis.

    Attributes:
        quantity (str): One of QUANTITIES.
        scale (str): "log" or "linear".
        min (float): First value, below max.
        max (float): Last value.
        points (int): Number of values, at least 2.

    """
    quantity: str
    scale: str = "log"
    min: float = 1.0
    max: float = 1e3
    points: int = defaults.sweep_points

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ParameterDomainError("Unknown axis quantity '{}', expected one of {}".format(
                self.quantity, ", ".join(QUANTITIES)))
        if self.scale not in SCALES:
            raise ParameterDomainError("Axis scale must be 'log' or 'linear', got '{}'".format(self.scale))
        if self.points < 2:
            raise ParameterDomainError("An axis needs at least two points, got {}".format(self.points))
        if self.min >= self.max:
            raise ParameterDomainError("Axis min {} exceeds max {}".format(self.min, self.max))
        if self.min <= 0:
            raise ParameterDomainError("Axis values must be positive, got min {}".format(self.min))

    def values(self):
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.points)
        return np.linspace(self.min, self.max, self.points)


@dataclass(frozen=True)
class SweepContext:
    """Everything a grid point needs besides the swept quantities.

    Attributes:
        emitter (EmitterParams): The emitter.
        quench (QuenchModel or None): The quench model.
        eta_r (float): Radiative fraction of the cavity loss.
        bare_decay_ratio (float or None): If set, gamma_r + gamma_nr is
            replaced by bare_decay_ratio * gamma*.
        spectrum (PsbSpectrum or None): Sideband spectrum for the
            non-Markovian correction.
        method (str): "full", "simplified" or "oracle".
        base_r (float or None): R used when no axis sets it.
        base_kappa (float or None): kappa used when no axis sets it.
        threads (int): Worker threads for per-point (oracle) evaluation.

    """
    emitter: object
    quench: object = None
    eta_r: float = 1.0
    bare_decay_ratio: float = None
    spectrum: object = None
    method: str = defaults.method
    base_r: float = None
    base_kappa: float = None
    threads: int = defaults.threads

    def bare_decay(self):
        if self.bare_decay_ratio is not None:
            return self.bare_decay_ratio * self.emitter.gamma_star
        return self.emitter.bare_decay


@dataclass(frozen=True)
class SweepSpec:
    """A one- or two-dimensional sweep.

    Attributes:
        x_axis (Axis): First axis.
        context (SweepContext): Fixed parameters.
        y_axis (Axis or None): Second axis; None for a line sweep.
        outputs (tuple of str): Output groups, from OUTPUT_GROUPS.
        constraint (str or None): "R=kappa" ties R to kappa.

    """
    x_axis: Axis
    context: SweepContext
    y_axis: Axis = None
    outputs: tuple = OUTPUT_GROUPS
    constraint: str = None

    def __post_init__(self):
        unknown = [o for o in self.outputs if o not in OUTPUT_GROUPS]
        if unknown:
            raise ParameterDomainError("Unknown output group(s) {}, expected from {}".format(
                ", ".join(unknown), ", ".join(OUTPUT_GROUPS)))
        if self.constraint is not None and self.constraint not in CONSTRAINTS:
            raise ParameterDomainError("Unknown constraint '{}'".format(self.constraint))
        if self.y_axis is not None and self.y_axis.quantity == self.x_axis.quantity:
            raise ParameterDomainError("Both axes sweep {}".format(self.x_axis.quantity))


class SweepResult:
    """Named result columns plus provenance, in grid-index order."""

    def __init__(self, columns, provenance=None):
        self.columns = columns
        self.provenance = provenance if provenance is not None else OrderedDict()

    def __len__(self):
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def __getitem__(self, name):
        return self.columns[name]

    def argmax(self, name, mask=None):
        """Row index of the largest finite value of a column (optionally masked)."""
        values = np.where(np.isfinite(self.columns[name]), self.columns[name], -np.inf)
        if mask is not None:
            values = np.where(mask, values, -np.inf)
        if not np.any(np.isfinite(values)):
            raise SpsfomError("No finite values in column '{}'".format(name))
        return int(np.argmax(values))

    def write(self, path):
        write_table(path, self.columns, self.provenance)


def _oracle_point(args):
    g, kappa, gamma, gamma_star = args
    try:
        m = bloch.matrices_from_rates(g, kappa, gamma, gamma_star)
        return bloch.beta_numeric(m, kappa), bloch.indist_numeric(m, kappa)
    except (SpsfomError, np.linalg.LinAlgError, ValueError) as e:
        logger.debug("Oracle failed at g=%g kappa=%g gamma=%g: %s", g, kappa, gamma, e)
        return np.nan, np.nan


def _oracle_grid(g, kappa, gamma, gamma_star, threads):
    items = [(float(a), float(b), float(c), float(gamma_star)) for a, b, c in zip(g, kappa, gamma)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(_oracle_point, items))
    else:
        results = [_oracle_point(item) for item in items]
    beta = np.array([res[0] for res in results], dtype=float)
    indist = np.array([res[1] for res in results], dtype=float)
    return beta, indist


def evaluate_points(context, r, kappa, delta_q=None, scaled_delta_q=None):
    """Figures of merit at a set of (R, kappa) points.

    Args:
        context (SweepContext): Fixed parameters.
        r (array_like): Cavity-enhanced rates R.
        kappa (array_like): Cavity loss rates.
        delta_q (array_like, optional): Per-point effective quench detuning,
            overriding context.quench.
        scaled_delta_q (array_like, optional): Per-point Delta_q (1 - eta_r)^(-1/2);
            then gamma_q = g^2 kappa / scaled_delta_q^2.

    Returns:
        OrderedDict: Flat arrays keyed by column name.

    """
    if delta_q is not None and scaled_delta_q is not None:
        raise ParameterDomainError("Give either delta_q or scaled_delta_q, not both")
    emitter = context.emitter
    arrays = [np.asarray(v, dtype=float) for v in (r, kappa)]
    for extra in (delta_q, scaled_delta_q):
        if extra is not None:
            arrays.append(np.asarray(extra, dtype=float))
    arrays = [np.ravel(a).copy() for a in np.broadcast_arrays(*arrays)]
    r, kappa = arrays[0], arrays[1]
    if np.any(kappa <= 0) or np.any(r < 0):
        raise ParameterDomainError("Sweep points need kappa > 0 and R >= 0")

    g = 0.5 * np.sqrt(r * kappa)
    kappa_nr = (1.0 - context.eta_r) * kappa
    gamma_star = emitter.gamma_star
    if scaled_delta_q is not None:
        detuning = arrays[-1]
        gq = markovian.quench_rate_effective(g, kappa, detuning)
        markov_ok = g**2 < detuning**2 * (1.0 - context.eta_r) + (0.5 * kappa_nr)**2
    elif delta_q is not None:
        detuning = arrays[2]
        gq = markovian.quench_rate_effective(g, kappa_nr, detuning)
        markov_ok = g**2 < detuning**2 + (0.5 * kappa_nr)**2
    else:
        gq = np.broadcast_to(markovian.gamma_q(context.quench, g, kappa_nr), g.shape).astype(float)
        if context.quench is None or context.quench.is_empty:
            markov_ok = np.ones(g.shape, dtype=bool)
        else:
            markov_ok = np.logical_and.reduce(
                [np.broadcast_to(v, g.shape) for v in context.quench.markov_valid(g, kappa_nr)])
    gamma = context.bare_decay() + gq

    with np.errstate(divide="ignore", invalid="ignore"):
        if context.method == "oracle":
            beta, indist = _oracle_grid(g, kappa, gamma, gamma_star, context.threads)
        elif context.method in ("full", "simplified"):
            beta = np.asarray(markovian.efficiency(r, kappa, gamma, gamma_star), dtype=float)
            if context.method == "full":
                indist = markovian.indist_first_order_from_rates(r, kappa, gamma, gamma_star)
            else:
                indist = markovian.indist_simplified_from_rates(r, kappa, gamma, gamma_star)
            indist = np.broadcast_to(np.asarray(indist, dtype=float), g.shape)
        else:
            raise SpsfomError("Unknown method '{}'".format(context.method))

    failed = ~(np.isfinite(beta) & np.isfinite(indist))
    if np.any(failed):
        logger.warning("%d of %d point(s) failed to evaluate", int(np.sum(failed)), failed.size)
    beta = np.where(failed, np.nan, beta)
    indist = np.where(failed, np.nan, indist)

    cols = OrderedDict()
    cols["R"] = r
    cols["kappa"] = kappa
    cols["g"] = g
    cols["Q"] = emitter.omega0 / kappa
    cols["gamma_q"] = gq
    cols["beta"] = beta
    cols["indist"] = indist
    cols["product"] = beta * indist
    for name, value in markovian.regime_flags(r, g, kappa, gamma, gamma_star, gq).items():
        cols[name] = np.broadcast_to(value, g.shape)
    for name, value in markovian.validity_flags(r, kappa, gamma, gamma_star).items():
        cols[name] = np.broadcast_to(value, g.shape)
    cols["markov_quench_ok"] = markov_ok
    with np.errstate(divide="ignore", invalid="ignore"):
        cols["perturbative_error_scale"] = (gamma_star / (kappa + gamma))**2

    s = context.spectrum
    if s is not None:
        b2 = psb.dw_factor(s)
        f = np.array([psb.cached_filter_fraction(s, float(q)) for q in cols["Q"]])
        indist_psb, beta_psb = psb.psb_corrected(indist, beta, b2, f)
        cols["filter_fraction"] = f
        cols["beta_psb"] = beta_psb
        cols["indist_psb"] = indist_psb
        cols["product_psb"] = beta_psb * indist_psb
        cols["psb_weak_coupling_ok"] = 2 * g < gamma + kappa + gamma_star
        cols["psb_dephasing_ok"] = r * psb.s0_diagnostic(s) < gamma_star
        with np.errstate(divide="ignore", invalid="ignore"):
            diff = cols["product"] - cols["product_psb"]
            cols["psb_relative_error"] = 2 * diff / (cols["product"] + cols["product_psb"])
            cols["psb_absolute_error"] = diff
    cols["failed"] = failed
    return cols


def objective_name(context):
    """The I * beta column the maximizers use."""
    return "product_psb" if context.spectrum is not None else "product"


_GROUP_COLUMNS = {
    "beta": ("beta", "beta_psb"),
    "I": ("indist", "indist_psb"),
    "IbetaProduct": ("product", "product_psb", "filter_fraction"),
    "regimeFlags": ("critical", "strong_coupling", "bad_cavity", "quench_dominated"),
    "validityFlags": ("perturbative_ok", "simplified_ok", "markov_quench_ok",
                      "psb_weak_coupling_ok", "psb_dephasing_ok"),
    "errEstimate": ("perturbative_error_scale", "psb_relative_error", "psb_absolute_error"),
}

_ALWAYS = ("R", "kappa", "g", "Q", "gamma_q")


def _resolve_axes(spec, x_values, y_values):
    ctx = spec.context
    emitter = ctx.emitter
    r, kappa, delta_q = ctx.base_r, ctx.base_kappa, None
    for axis, values in ((spec.x_axis, x_values), (spec.y_axis, y_values)):
        if axis is None:
            continue
        if axis.quantity.endswith("/gammaStar") and emitter.gamma_star <= 0:
            raise ParameterDomainError("Axis {} needs a positive gammaStar".format(axis.quantity))
        if axis.quantity == "R/gammaStar":
            r = values * emitter.gamma_star
        elif axis.quantity == "R/gammaR":
            r = values * emitter.gamma_r
        elif axis.quantity == "kappa/gammaStar":
            kappa = values * emitter.gamma_star
        elif axis.quantity == "Q":
            kappa = emitter.omega0 / values
        else:
            delta_q = values * emitter.gamma_star

    if spec.constraint == "R=kappa":
        swept = set(a.quantity for a in (spec.x_axis, spec.y_axis) if a is not None)
        sets_r = bool(swept & {"R/gammaStar", "R/gammaR"})
        sets_kappa = bool(swept & {"kappa/gammaStar", "Q"})
        if sets_r and sets_kappa:
            raise ParameterDomainError("The R=kappa constraint needs R or kappa left unswept")
        if sets_kappa or (kappa is not None and not sets_r):
            r = kappa
        else:
            kappa = r
    if r is None or kappa is None:
        raise ParameterDomainError(
            "The sweep leaves {} undetermined; sweep it or give a cavity".format(
                "R" if r is None else "kappa"))
    return r, kappa, delta_q


def run_sweep(spec, provenance=None):
    """Evaluate a SweepSpec on its grid.

    Per-point failures are recorded as NaN with the 'failed' flag set;
    they never abort the sweep.

    Args:
        spec (SweepSpec): The sweep.
        provenance (OrderedDict, optional): Extra provenance entries
            (config hash, seed) to carry into the result.

    Returns:
        SweepResult

    """
    x_values = spec.x_axis.values()
    if spec.y_axis is not None:
        x_grid, y_grid = np.meshgrid(x_values, spec.y_axis.values(), indexing="ij")
        x_flat, y_flat = x_grid.ravel(), y_grid.ravel()
    else:
        x_flat, y_flat = x_values, None

    r, kappa, delta_q = _resolve_axes(spec, x_flat, y_flat)
    n = len(x_flat)
    r = np.broadcast_to(np.asarray(r, dtype=float), (n,))
    kappa = np.broadcast_to(np.asarray(kappa, dtype=float), (n,))
    logger.info("Sweeping %d point(s) with method %s", n, spec.context.method)
    evaluated = evaluate_points(spec.context, r, kappa, delta_q=delta_q)

    columns = OrderedDict()
    columns[spec.x_axis.quantity] = x_flat
    if spec.y_axis is not None:
        columns[spec.y_axis.quantity] = y_flat
    wanted = list(_ALWAYS)
    for group in spec.outputs:
        wanted += _GROUP_COLUMNS[group]
    for name in wanted + ["failed"]:
        if name in evaluated and name not in columns:
            columns[name] = evaluated[name]

    info = OrderedDict()
    info["code"] = defaults.code_version
    info["method"] = spec.context.method
    for label, axis in (("x", spec.x_axis), ("y", spec.y_axis)):
        if axis is not None:
            info["axis " + label] = "{} {} {!r} {!r} {}".format(
                axis.quantity, axis.scale, axis.min, axis.max, axis.points)
    if spec.constraint:
        info["constraint"] = spec.constraint
    info.update(provenance or {})
    return SweepResult(columns, info)


@dataclass(frozen=True)
class MaximizeResult:
    """Outcome of maximize_ibeta.

    Attributes:
        g (float): Coupling rate at the maximum.
        kappa (float): Cavity loss rate at the maximum.
        value (float): The maximized I * beta.
        point (dict): All evaluated columns at the maximum.
        converged (bool): The box shrank below the requested relative size.
        on_boundary (bool): The maximum sits on the search-box boundary.
        stages (tuple): Incumbent value after each stage.

    """
    g: float
    kappa: float
    value: float
    point: dict
    converged: bool
    on_boundary: bool
    stages: tuple

    @property
    def r(self):
        return 4 * self.g**2 / self.kappa


def _to_r_kappa(space, x, kappa):
    if space == "g-kappa":
        return 4 * x**2 / kappa, kappa
    return x, kappa


def maximize_ibeta(context, box=None, space="g-kappa", points=defaults.optimize_points,
                   rel_size=defaults.optimize_rel_size, shrink=defaults.optimize_shrink,
                   max_stages=60):
    """Maximize I * beta over (g, kappa) or (R, kappa).

    A coarse log grid over the box is followed by grids shrunk by `shrink`
    around the incumbent until the box is smaller than `rel_size` relative
    to its centre. The incumbent is re-evaluated in every stage, so stage
    values never decrease. Uses the sideband-corrected product when the
    context carries a spectrum.

    Args:
        context (SweepContext): Fixed parameters.
        box (tuple, optional): ((x_min, x_max), (kappa_min, kappa_max)) in
            ps^-1, x being g or R. Defaults to optimize_box * gamma*.
        space (str): "g-kappa" or "R-kappa".
        points (int): Grid points per axis and stage.

    Returns:
        MaximizeResult

    """
    if space not in ("g-kappa", "R-kappa"):
        raise ParameterDomainError("Search space must be 'g-kappa' or 'R-kappa'")
    if box is None:
        lo, hi = defaults.optimize_box
        scale = context.emitter.gamma_star
        if scale <= 0:
            raise ParameterDomainError("A default search box needs a positive gammaStar")
        box = ((lo * scale, hi * scale), (lo * scale, hi * scale))
    (x_lo, x_hi), (k_lo, k_hi) = box
    if not (0 < x_lo < x_hi and 0 < k_lo < k_hi):
        raise ParameterDomainError("Search box must be positive and nondegenerate: {}".format(box))

    limits = np.log([[x_lo, x_hi], [k_lo, k_hi]])
    centre = limits.mean(axis=1)
    half = 0.5 * (limits[:, 1] - limits[:, 0])
    name = objective_name(context)
    best = None
    stages = []
    converged = False

    for stage in range(max_stages):
        lo = np.maximum(centre - half, limits[:, 0])
        hi = np.minimum(centre + half, limits[:, 1])
        lx, lk = np.meshgrid(np.linspace(lo[0], hi[0], points), np.linspace(lo[1], hi[1], points),
                             indexing="ij")
        lx, lk = lx.ravel(), lk.ravel()
        if best is not None:
            lx = np.append(lx, best[0])
            lk = np.append(lk, best[1])
        r, kappa = _to_r_kappa(space, np.exp(lx), np.exp(lk))
        cols = evaluate_points(context, r, kappa)
        values = np.where(np.isfinite(cols[name]), cols[name], -np.inf)
        i = int(np.argmax(values))
        if not np.isfinite(values[i]):
            raise SpsfomError("I*beta could not be evaluated anywhere in the search box")
        best = (lx[i], lk[i], values[i], {key: v[i] for key, v in cols.items()})
        stages.append(float(values[i]))
        centre = np.array(best[:2])
        half = half / shrink
        if np.all(np.expm1(2 * half) < rel_size):
            converged = True
            break

    edge_tol = 2 * half + 1e-12
    on_boundary = bool(np.any(np.abs(centre - limits[:, 0]) <= edge_tol)
                       or np.any(np.abs(limits[:, 1] - centre) <= edge_tol))
    if on_boundary:
        logger.warning("The I*beta maximum lies on the search-box boundary; the result is suspect")
    if not converged:
        logger.warning("Maximizer stopped after %d stages without converging", max_stages)

    point = best[3]
    return MaximizeResult(g=float(point["g"]), kappa=float(point["kappa"]), value=float(best[2]),
                          point=point, converged=converged, on_boundary=on_boundary,
                          stages=tuple(stages))


def _maximize_over_q(context, r, q_values, scaled_delta_q):
    def evaluate(q):
        cols = evaluate_points(context, r, context.emitter.omega0 / np.asarray(q, dtype=float),
                               scaled_delta_q=scaled_delta_q)
        return cols

    name = objective_name(context)
    coarse = evaluate(q_values)
    values = np.where(np.isfinite(coarse[name]), coarse[name], -np.inf)
    i = int(np.argmax(values))
    on_boundary = i in (0, len(q_values) - 1)
    best_q, best_value = q_values[i], values[i]
    if len(q_values) > 2 and not on_boundary:
        lo, hi = np.log(q_values[i - 1]), np.log(q_values[i + 1])
        def negative(lq):
            value = evaluate(np.exp(lq))[name][0]
            return -value if np.isfinite(value) else np.inf
        res = minimize_scalar(negative,
                              bounds=(lo, hi), method="bounded", options={"xatol": 1e-8})
        if np.isfinite(res.fun) and -res.fun >= best_value:
            best_q, best_value = float(np.exp(res.x)), float(-res.fun)
    point = evaluate(best_q)
    return best_q, {key: v[0] for key, v in point.items()}, on_boundary


def q_max_scan(context, purcell, scaled_detunings, q_range=defaults.scan_q_range,
               q_points=61, provenance=None):
    """Q_max and the maximum I * beta versus the scaled quench detuning.

    For each Delta_q (1 - eta_r)^(-1/2), I * beta (sideband corrected when
    the context has a spectrum) is maximized over Q at fixed R = purcell * gamma_r.

    Args:
        context (SweepContext): Fixed parameters.
        purcell (float): R / gamma_r.
        scaled_detunings (array_like): Delta_q (1 - eta_r)^(-1/2) values in ps^-1.
        q_range (pair of float): Q search range.
        q_points (int): Coarse Q grid size.

    Returns:
        SweepResult with one row per detuning.

    """
    detunings = np.atleast_1d(np.asarray(scaled_detunings, dtype=float))
    if np.any(detunings <= 0):
        raise ParameterDomainError("Scan detunings must be positive")
    q_values = np.geomspace(q_range[0], q_range[1], q_points)
    r = purcell * context.emitter.gamma_r
    name = objective_name(context)

    rows = []
    for detuning in detunings:
        q_max, point, on_boundary = _maximize_over_q(context, r, q_values, detuning)
        rows.append((detuning, q_max, point, on_boundary))

    order = np.argsort(detunings, kind="stable")
    monotone = np.ones(len(rows), dtype=bool)
    for prev, cur in zip(order, order[1:]):
        if rows[cur][2][name] < rows[prev][2][name] - 1e-9:
            monotone[cur] = False
            logger.warning("I*beta at Q_max decreases with the quench detuning at %g", rows[cur][0])

    columns = OrderedDict()
    gamma_star = context.emitter.gamma_star
    columns["DeltaQ_scaled"] = detunings
    columns["DeltaQ_scaled/gammaStar"] = detunings / gamma_star if gamma_star > 0 else np.full(len(rows), np.nan)
    columns["Q_max"] = np.array([row[1] for row in rows])
    for key in ("product", "indist", "beta", "product_psb", "indist_psb", "beta_psb", "gamma_q"):
        if key in rows[0][2]:
            columns[key + "_at_Q_max"] = np.array([row[2][key] for row in rows])
    columns["on_boundary"] = np.array([row[3] for row in rows])
    columns["monotone_ok"] = monotone

    info = OrderedDict([("code", defaults.code_version), ("scan", "qmax"),
                        ("method", context.method), ("purcell", repr(float(purcell)))])
    info.update(provenance or {})
    return SweepResult(columns, info)


def max_product_vs_detuning(context, detunings_over_gamma_star, box=None, provenance=None):
    """The largest I * beta as a function of Delta_q / gamma* (effective quench form).

    Each point runs maximize_ibeta; with eta_r < 1 the default box spans
    a factor 30 around the closed-form optimum in both g and kappa.

    Returns:
        SweepResult with one row per detuning.

    """
    gamma_star = context.emitter.gamma_star
    if gamma_star <= 0:
        raise ParameterDomainError("A detuning scan needs a positive gammaStar")
    rows = []
    for ratio in np.atleast_1d(np.asarray(detunings_over_gamma_star, dtype=float)):
        delta_q = ratio * gamma_star
        ctx = replace(context, quench=QuenchModel(effective_detuning=delta_q))
        closed = None
        point_box = box
        if context.eta_r < 1.0:
            closed = markovian.optimal_cavity(gamma_star, delta_q, context.eta_r)
            if point_box is None:
                point_box = ((closed.g_max / 30, closed.g_max * 30),
                             (closed.kappa_max / 30, closed.kappa_max * 30))
        res = maximize_ibeta(ctx, point_box)
        rows.append((ratio, res, closed))

    columns = OrderedDict()
    columns["DeltaQ/gammaStar"] = np.array([row[0] for row in rows])
    columns["max_product"] = np.array([row[1].value for row in rows])
    columns["g_max"] = np.array([row[1].g for row in rows])
    columns["kappa_max"] = np.array([row[1].kappa for row in rows])
    columns["gamma_q_at_max"] = np.array([row[1].point["gamma_q"] for row in rows])
    columns["closed_form_g"] = np.array([row[2].g_max if row[2] else np.nan for row in rows])
    columns["closed_form_kappa"] = np.array([row[2].kappa_max if row[2] else np.nan for row in rows])
    columns["on_boundary"] = np.array([row[1].on_boundary for row in rows])

    info = OrderedDict([("code", defaults.code_version), ("scan", "detuning"),
                        ("method", context.method)])
    info.update(provenance or {})
    return SweepResult(columns, info)
