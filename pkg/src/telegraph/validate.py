"""Numerical verification of the closed-form law and the estimator.

Checks are independent of the code paths they test where possible: the
density is integrated in ``x`` (the CDF integrates it in an angle variable),
the telegraph equation is checked by finite differences, and Monte Carlo
paths come from the event sampler rather than from the law.

``run_experiment`` is deterministic in its config: every random quantity is
drawn from a stream keyed by ``(seed, purpose, index)``, so splitting the
estimator experiments across worker processes does not change the report.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from . import law
from .errors import DiagnosticError
from .estimate import asymptotic_variance, estimate_replicated, poisson_score
from .intensity import ModelParams, big_lambda_at, lambda_at, make_rng, sample_event_times_batch
from .process import simulate_batch
from .specfun import bessel_i0, bessel_i1_over_z
from .tables import csv_text, json_text

__all__ = [
    "Tolerances",
    "GridSpec",
    "ExperimentConfig",
    "ConfigError",
    "Criterion",
    "ExperimentReport",
    "check_normalization",
    "check_bessel_identities",
    "pde_residual",
    "PdeResidual",
    "ks_distance",
    "run_experiment",
]

# stream purposes under the master seed
_MC_STREAM = 0
_ESTIMATOR_STREAM = 1

# parameter point where the candidate prefactors theta/c and c/theta differ
DISCRIMINATING_POINT = (2.0, 1.0, 1.0)  # theta, c, t


@dataclass(frozen=True)
class Tolerances:
    mc_se_multiplier: float = 3.0
    dispersion: float = 0.02
    ks: float = 0.01
    ks_negative_min: float = 0.02
    normalization: float = 1e-8
    bessel_identity: float = 1e-8
    pde_relative: float = 1e-4
    richardson_low: float = 2.5
    richardson_high: float = 6.0
    theta_bias: float = 0.01
    variance_rel: float = 0.05
    quantile_abs: float = 0.15
    coverage_halfwidth: float = 0.015


@dataclass(frozen=True)
class GridSpec:
    t_min: float = 0.5
    t_max: float = 2.0
    t_points: int = 16
    x_fraction_max: float = 0.9
    x_points: int = 41
    fd_steps: tuple[float, ...] = (8e-3, 4e-3, 2e-3, 1e-3)
    ks_points: int = 2001


@dataclass(frozen=True)
class ExperimentConfig:
    theta: float = 1.0
    c: float = 1.0
    T: float = 1.0
    n: int = 1000
    experiments: int = 1000
    coverage_experiments: int = 2000
    mc_samples: int = 200_000
    level: float = 0.95
    seed: int = 42
    grid: GridSpec = field(default_factory=GridSpec)
    tolerances: Tolerances = field(default_factory=Tolerances)

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.theta, self.c)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["grid"]["fd_steps"] = list(self.grid.fd_steps)
        return d

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentConfig":
        """Build a config from JSON data, reporting every schema violation at once."""
        problems: list[str] = []
        if not isinstance(payload, dict):
            raise ConfigError(["config must be a JSON object"])

        def take(section_cls, data, where):
            known = {f.name: f for f in fields(section_cls)}
            out = {}
            for key, value in data.items():
                if key not in known:
                    problems.append(f"{where}{key}: unknown field")
                    continue
                default = getattr(section_cls(), key) if key not in ("grid", "tolerances") else None
                if key in ("grid", "tolerances"):
                    sub_cls = GridSpec if key == "grid" else Tolerances
                    if not isinstance(value, dict):
                        problems.append(f"{where}{key}: must be an object")
                    else:
                        out[key] = sub_cls(**take(sub_cls, value, f"{key}."))
                    continue
                if isinstance(default, tuple):
                    if not (isinstance(value, list) and value and all(_is_number(v) for v in value)):
                        problems.append(f"{where}{key}: must be a nonempty list of numbers")
                        continue
                    out[key] = tuple(float(v) for v in value)
                elif isinstance(default, int) and not isinstance(default, bool):
                    if not (isinstance(value, int) and not isinstance(value, bool)):
                        problems.append(f"{where}{key}: must be an integer")
                        continue
                    out[key] = value
                else:
                    if not _is_number(value):
                        problems.append(f"{where}{key}: must be a number")
                        continue
                    out[key] = float(value)
            return out

        values = take(cls, payload, "")
        if problems:
            raise ConfigError(problems)
        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        problems = []
        if not (math.isfinite(self.theta) and self.theta != 0):
            problems.append("theta: must be finite and nonzero")
        if not (math.isfinite(self.c) and self.c > 0):
            problems.append("c: must be positive")
        if not (math.isfinite(self.T) and self.T > 0):
            problems.append("T: must be positive")
        for name in ("n", "experiments", "coverage_experiments", "mc_samples"):
            if getattr(self, name) < 1:
                problems.append(f"{name}: must be >= 1")
        if not 0 < self.level < 1:
            problems.append("level: must lie in (0, 1)")
        if self.seed < 0:
            problems.append("seed: must be >= 0")
        g = self.grid
        if not 0 < g.t_min <= g.t_max:
            problems.append("grid.t_min/t_max: need 0 < t_min <= t_max")
        if not 0 < g.x_fraction_max <= 0.9:
            problems.append("grid.x_fraction_max: must lie in (0, 0.9]")
        if g.t_points < 1 or g.x_points < 1:
            problems.append("grid.t_points/x_points: must be >= 1")
        if g.ks_points < 2:
            problems.append("grid.ks_points: must be >= 2")
        if len(g.fd_steps) < 2 or any(not h > 0 for h in g.fd_steps) or list(g.fd_steps) != sorted(g.fd_steps, reverse=True):
            problems.append("grid.fd_steps: need >= 2 positive steps in decreasing order")
        for f in fields(Tolerances):
            if not getattr(self.tolerances, f.name) >= 0:
                problems.append(f"tolerances.{f.name}: must be >= 0")
        if problems:
            raise ConfigError(problems)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


class ConfigError(ValueError):
    """Config JSON violates the schema; ``problems`` lists every violation."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass
class Criterion:
    """One named pass/fail line; ``tolerance`` names the ``Tolerances`` field(s) it uses."""

    name: str
    value: Optional[float]
    target: Optional[float]
    tolerance: Optional[str]
    bound: Optional[float]
    passed: Optional[bool]
    detail: str = ""


@dataclass
class ExperimentReport:
    config: dict
    summary: dict
    criteria: list[Criterion]
    rows: list[dict] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.criteria)

    def criterion(self, name: str) -> Criterion:
        for c in self.criteria:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "summary": self.summary,
            "criteria": [asdict(c) for c in self.criteria],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json_text(self.to_dict())

    ROW_COLUMNS = ("experiment", "pi_hat", "theta_hat", "std_error", "ci_low", "ci_high", "covered")

    def rows_csv(self) -> str:
        return csv_text(self.rows, self.ROW_COLUMNS)


def check_normalization(params: ModelParams, t: float, tol: float) -> Criterion:
    """Continuous mass on ``(-ct, ct)`` against ``1 - 1/cosh(theta t)``."""
    ct = params.c * t
    val, err = integrate.quad(
        lambda x: law.density(params, t, x), -ct, ct, epsabs=1e-13, epsrel=1e-13, limit=200
    )
    if not err < 1e-10:
        raise DiagnosticError(f"normalization quadrature did not converge at {params}, t={t}: error {err:.3g}")
    target = 1.0 - 2.0 * law.atom_mass(params, t)
    gap = abs(val - target)
    return Criterion(
        f"normalization(theta={params.theta:g},c={params.c:g},t={t:g})",
        val, target, "normalization", tol, bool(gap <= tol), f"|error|={gap:.3e}",
    )


def _sinh_over(y: float) -> float:
    return 1.0 if y == 0 else math.sinh(y) / y


def check_bessel_identities(params: ModelParams, t: float, tol: float) -> dict:
    """Quadrature of the two integrals of ``I0`` over the light cone.

    The first integral is compared with both ``(theta/c)(e^{theta t} - e^{-theta t})``
    and ``(c/theta)(e^{theta t} - e^{-theta t})``; the result records which of
    them the quadrature supports. The second is compared with
    ``c (e^{theta t} + e^{-theta t}) - 2c``. Matches are relative, with an
    absolute floor of ``tol`` for targets below 1.
    """
    theta, c = params.theta, params.c
    ct = c * t
    y = theta * t

    def i0_integrand(x):
        s2 = max((ct - abs(x)) * (ct + abs(x)), 0.0)
        return bessel_i0(theta / c * math.sqrt(s2))

    def dt_integrand(x):
        # d/dt I0(z) with z = (theta/c) sqrt(c^2 t^2 - x^2) is theta^2 t I1(z)/z
        s2 = max((ct - abs(x)) * (ct + abs(x)), 0.0)
        return theta * theta * t * bessel_i1_over_z(theta / c * math.sqrt(s2))

    first, err1 = integrate.quad(i0_integrand, -ct, ct, epsabs=1e-13, epsrel=1e-14, limit=200)
    second, err2 = integrate.quad(dt_integrand, -ct, ct, epsabs=1e-13, epsrel=1e-14, limit=200)
    if not (err1 <= 1e-9 * max(1.0, abs(first)) and err2 <= 1e-9 * max(1.0, abs(second))):
        raise DiagnosticError(f"Bessel identity quadrature did not converge at {params}, t={t}")

    def matches(value, target):
        return abs(value - target) <= tol * max(abs(target), 1.0)

    candidates = {
        "theta_over_c": (theta / c) * 2.0 * math.sinh(y),
        "c_over_theta": 2.0 * c * t * _sinh_over(y),  # (c/theta) * 2 sinh(theta t), continuous at theta = 0
    }
    matched = [k for k, v in candidates.items() if matches(first, v)]
    second_target = 2.0 * c * (math.cosh(y) - 1.0)
    return {
        "theta": theta, "c": c, "t": t,
        "first_integral": first,
        "candidates": candidates,
        "matched": matched,
        "second_integral": second,
        "second_target": second_target,
        "second_matches": matches(second, second_target),
    }


@dataclass(frozen=True)
class PdeResidual:
    steps: tuple[float, ...]
    max_relative: tuple[float, ...]
    max_raw: tuple[float, ...]
    halving_ratios: tuple[float, ...]

    @property
    def finest_relative(self) -> float:
        return self.max_relative[-1]


def _residual_at_step(u, lam, ts, x_fraction_max, x_points, c, h, floor):
    rel = raw = 0.0
    for t in ts:
        lim = x_fraction_max * c * t
        x = np.linspace(-lim, lim, x_points)
        u0 = u(t, x)
        up, um = u(t + h, x), u(t - h, x)
        u_tt = (up - 2.0 * u0 + um) / (h * h)
        u_t = (up - um) / (2.0 * h)
        u_xx = (u(t, x + h) - 2.0 * u0 + u(t, x - h)) / (h * h)
        damp = 2.0 * lam(t) * u_t
        wave = c * c * u_xx
        r = np.abs(u_tt + damp - wave)
        scale = np.maximum(np.maximum(np.abs(u_tt), np.abs(damp)), np.maximum(np.abs(wave), floor))
        rel = max(rel, float(np.max(r / scale)))
        raw = max(raw, float(np.max(r)))
    return rel, raw


def pde_residual(
    params: ModelParams,
    t_range: tuple[float, float] = (0.5, 2.0),
    x_fraction_max: float = 0.9,
    steps: Sequence[float] = GridSpec.fd_steps,
    t_points: int = 16,
    x_points: int = 41,
    u: Optional[Callable] = None,
    floor: float = 1e-12,
) -> PdeResidual:
    """Finite-difference residual of ``u_tt + 2 lambda(t) u_t - c^2 u_xx`` for the density.

    Second-order central differences with the same step ``h`` in ``t`` and ``x``,
    evaluated on ``|x| <= x_fraction_max * ct`` for ``t`` in ``t_range``. The
    residual is returned for every step in ``steps`` (decreasing), together
    with the raw-residual reduction per halving of ``h`` (``4`` for a
    truncation-dominated second-order scheme).

    Raises
    ------
    DiagnosticError
        If shrinking the step does not shrink the raw residual, the steps are
        in the roundoff-dominated regime and the residual says nothing about
        the equation.
    """
    if x_fraction_max > 0.9:
        raise DiagnosticError("x_fraction_max must stay <= 0.9; derivatives blow up near the light cone")
    steps = tuple(float(h) for h in steps)
    if len(steps) < 2 or any(b >= a for a, b in zip(steps, steps[1:])):
        raise DiagnosticError("need at least two strictly decreasing steps")
    if u is None:
        def u(tt, xx):
            return law.density(params, tt, xx)
    t_lo, t_hi = t_range
    if not (t_lo - steps[0] > 0):
        raise DiagnosticError("t_range must stay away from 0 by more than the largest step")
    ts = np.linspace(t_lo, t_hi, t_points)
    lam = lambda tt: lambda_at(params, tt)  # noqa: E731
    rel, raw = [], []
    for h in steps:
        r, w = _residual_at_step(u, lam, ts, x_fraction_max, x_points, params.c, h, floor)
        rel.append(r)
        raw.append(w)
    ratios = []
    for (h1, w1), (h2, w2) in zip(zip(steps, raw), zip(steps[1:], raw[1:])):
        if not w2 < w1:
            raise DiagnosticError(
                f"raw residual did not decrease from h={h1:g} ({w1:.3e}) to h={h2:g} ({w2:.3e}); "
                "steps are roundoff-dominated"
            )
        order = math.log(w1 / w2) / math.log(h1 / h2)
        ratios.append(2.0**order)
    return PdeResidual(steps, tuple(rel), tuple(raw), tuple(ratios))


def ks_distance(
    samples,
    params: ModelParams,
    t: float,
    grid_points: int = 2001,
) -> float:
    """Sup-distance between the empirical CDF of ``samples`` and ``law.cdf``.

    Taken over ``grid_points`` equispaced abscissae on ``[-ct, ct]`` plus the
    left limits at both atoms, which is where the atoms show up.
    """
    xs = np.sort(np.asarray(samples, dtype=float))
    if xs.size == 0:
        raise ValueError("samples must be nonempty")
    n = xs.size
    ct = params.c * t
    grid = np.linspace(-ct, ct, grid_points)
    emp = np.searchsorted(xs, grid, side="right") / n
    theo = law.cdf(params, t, grid)
    dist = float(np.max(np.abs(emp - theo)))
    atom = law.atom_mass(params, t)
    left_lo = np.searchsorted(xs, -ct, side="left") / n
    left_hi = np.searchsorted(xs, ct, side="left") / n
    return max(dist, abs(left_lo - 0.0), abs(left_hi - (1.0 - atom)))


def _mc_se_check(name, value, target, se, k, detail=""):
    return Criterion(name, value, target, "mc_se_multiplier", k * se, bool(abs(value - target) <= k * se), detail)


def _estimator_chunk(args):
    theta, c, T, n, level, seed, indices = args
    params = ModelParams(theta, c)
    out = []
    for i in indices:
        rng = make_rng(seed, _ESTIMATOR_STREAM, i)
        counts = sample_event_times_batch(params, T, n, rng).counts
        res = estimate_replicated(counts, T, level)
        # score sign change across theta_hat certifies the likelihood maximum
        if res.degenerate:
            mle_ok = True
        else:
            lo, hi = 0.99 * res.theta_hat, 1.01 * res.theta_hat
            mle_ok = poisson_score(lo, counts, T) > 0 > poisson_score(hi, counts, T)
        out.append((i, res, bool(mle_ok)))
    return out


def run_estimator_experiments(
    params: ModelParams, T: float, n: int, experiments: int, seed: int, level: float = 0.95, workers: int = 1
) -> list[tuple]:
    """``experiments`` independent replicated estimates, each from its own stream."""
    idx = list(range(experiments))
    if workers <= 1:
        return _estimator_chunk((params.theta, params.c, T, n, level, seed, idx))
    chunks = [idx[k::workers] for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_estimator_chunk, [(params.theta, params.c, T, n, level, seed, ch) for ch in chunks]))
    merged = sorted((r for part in parts for r in part), key=lambda r: r[0])
    return merged


def run_experiment(config: ExperimentConfig, workers: int = 1) -> ExperimentReport:
    """Run every check for ``config`` and collect pass/fail per named criterion."""
    config.validate()
    tol = config.tolerances
    params = config.params
    T, k = config.T, tol.mc_se_multiplier
    criteria: list[Criterion] = []
    summary: dict = {}

    # Monte Carlo paths
    N = config.mc_samples
    batch = simulate_batch(params, T, N, make_rng(config.seed, _MC_STREAM))
    counts = batch.counts_at(T).astype(float)
    lam_T = big_lambda_at(params, T)
    mean, var = float(counts.mean()), float(counts.var(ddof=1)) if N > 1 else 0.0
    summary["counts"] = {"mean": mean, "variance": var, "expected": lam_T, "samples": N}
    criteria.append(_mc_se_check("count_mean", mean, lam_T, math.sqrt(lam_T / N), k))
    ratio = var / mean if mean > 0 else float("inf")
    criteria.append(Criterion("count_dispersion", ratio if math.isfinite(ratio) else None, 1.0, "dispersion",
                              tol.dispersion, bool(abs(ratio - 1.0) <= tol.dispersion)))

    zero = counts == 0
    p0 = 2.0 * law.atom_mass(params, T)
    frac0 = float(zero.mean())
    criteria.append(_mc_se_check("zero_switch_fraction", frac0, p0, math.sqrt(p0 * (1 - p0) / N), k))
    x_T = batch.positions_at(T)
    n0 = int(zero.sum())
    if n0:
        plus = float(np.mean(x_T[zero] == params.c * T))
        criteria.append(_mc_se_check("zero_switch_plus_fraction", plus, 0.5, math.sqrt(0.25 / n0), k))

    same = float(np.mean(batch.velocities_at(T) == batch.velocities_at(0.0)))
    p_same, _ = law.velocity_transition(params, T)
    criteria.append(_mc_se_check("velocity_transition", same, p_same, math.sqrt(p_same * (1 - p_same) / N), k))
    s = 0.5 * T
    prod = batch.velocities_at(s) * batch.velocities_at(T)
    cov = law.velocity_covariance(params, s, T)
    cov_se = math.sqrt(max(params.c**4 - cov * cov, 0.0) / N)
    criteria.append(_mc_se_check("velocity_covariance", float(prod.mean()), cov, cov_se, k))
    criteria.append(_mc_se_check("position_symmetry", float(x_T.mean()), 0.0, float(x_T.std()) / math.sqrt(N), k))

    ks = ks_distance(x_T, params, T, config.grid.ks_points)
    ks_wrong = ks_distance(x_T, ModelParams(2.0 * params.theta, params.c), T, config.grid.ks_points)
    summary["ks"] = {"statistic": ks, "negative_control": ks_wrong}
    criteria.append(Criterion("ks_distance", ks, 0.0, "ks", tol.ks, bool(ks <= tol.ks)))
    criteria.append(Criterion("ks_negative_control", ks_wrong, None, "ks_negative_min", tol.ks_negative_min,
                              bool(ks_wrong > tol.ks_negative_min), "must exceed bound (theta doubled)"))

    # closed-form checks
    norm = check_normalization(params, T, tol.normalization)
    summary["normalization_error"] = abs(norm.value - norm.target)
    criteria.append(norm)

    ident = check_bessel_identities(params, T, tol.bessel_identity)
    ok = "c_over_theta" in ident["matched"] and ident["second_matches"]
    criteria.append(Criterion("bessel_identities", ident["first_integral"], ident["candidates"]["c_over_theta"],
                              "bessel_identity", tol.bessel_identity, bool(ok), f"matched={ident['matched']}"))
    disc = check_bessel_identities(ModelParams(DISCRIMINATING_POINT[0], DISCRIMINATING_POINT[1]),
                                   DISCRIMINATING_POINT[2], tol.bessel_identity)
    ok = len(disc["matched"]) == 1 and disc["second_matches"]
    criteria.append(Criterion("bessel_prefactor_resolution", disc["first_integral"],
                              disc["candidates"]["c_over_theta"], "bessel_identity", tol.bessel_identity,
                              bool(ok), f"matched={disc['matched']}"))
    summary["bessel_identities"] = {"config_point": ident, "discriminating_point": disc}

    g = config.grid
    pde = pde_residual(params, (g.t_min, g.t_max), g.x_fraction_max, g.fd_steps, g.t_points, g.x_points)
    summary["pde"] = {"steps": list(pde.steps), "max_relative": list(pde.max_relative),
                      "max_raw": list(pde.max_raw), "halving_ratios": list(pde.halving_ratios)}
    criteria.append(Criterion("pde_residual", pde.finest_relative, 0.0, "pde_relative", tol.pde_relative,
                              bool(pde.finest_relative <= tol.pde_relative), f"h={pde.steps[-1]:g}"))
    r_ok = all(tol.richardson_low <= r <= tol.richardson_high for r in pde.halving_ratios)
    worst = max(pde.halving_ratios, key=lambda r: abs(math.log(r / 4.0)))
    criteria.append(Criterion("pde_richardson", worst, 4.0, "richardson_low,richardson_high", None, bool(r_ok),
                              f"halving ratios {[round(r, 4) for r in pde.halving_ratios]} must lie in "
                              f"[{tol.richardson_low:g}, {tol.richardson_high:g}]"))

    # estimator experiments
    total = max(config.experiments, config.coverage_experiments)
    results = run_estimator_experiments(params, T, config.n, total, config.seed, config.level, workers)
    theta = params.theta
    rows = []
    for i, res, _ in results:
        rows.append({"experiment": i, "pi_hat": res.pi_hat, "theta_hat": res.theta_hat,
                     "std_error": res.std_error, "ci_low": res.ci_low, "ci_high": res.ci_high,
                     "covered": bool(res.ci_low <= theta <= res.ci_high)})
    head = np.array([r["theta_hat"] for r in rows[: config.experiments]])
    bias = float(head.mean() - theta)
    criteria.append(Criterion("estimator_bias", float(head.mean()), theta, "theta_bias", tol.theta_bias,
                              bool(abs(bias) <= tol.theta_bias)))
    v_target = asymptotic_variance(theta, T)
    est_summary = {"experiments": config.experiments, "n": config.n, "mean_theta_hat": float(head.mean()),
                   "asymptotic_variance": v_target}
    if config.experiments >= 2:
        scaled = math.sqrt(config.n) * (head - theta)
        v_emp = float(scaled.var(ddof=1))
        z = scaled / math.sqrt(v_target)
        q_lo, q_hi = (float(q) for q in np.quantile(z, [0.025, 0.975]))
        est_summary.update(empirical_variance=v_emp, quantile_025=q_lo, quantile_975=q_hi)
        rel = abs(v_emp / v_target - 1.0)
        criteria.append(Criterion("estimator_variance", v_emp, v_target, "variance_rel", tol.variance_rel,
                                  bool(rel <= tol.variance_rel), f"relative error {rel:.4f}"))
        zq = 1.959963984540054
        q_err = max(abs(q_lo + zq), abs(q_hi - zq))
        criteria.append(Criterion("estimator_gaussian_quantiles", q_err, 0.0, "quantile_abs", tol.quantile_abs,
                                  bool(q_err <= tol.quantile_abs), f"q025={q_lo:.4f} q975={q_hi:.4f}"))
    else:
        for name, tname in (("estimator_variance", "variance_rel"), ("estimator_gaussian_quantiles", "quantile_abs")):
            criteria.append(Criterion(name, None, None, tname, getattr(tol, tname), None,
                                      "informational: needs >= 2 experiments"))
    cover_rows = rows[: config.coverage_experiments]
    coverage = float(np.mean([r["covered"] for r in cover_rows]))
    est_summary["coverage"] = coverage
    est_summary["coverage_experiments"] = len(cover_rows)
    criteria.append(Criterion("ci_coverage", coverage, config.level, "coverage_halfwidth", tol.coverage_halfwidth,
                              bool(abs(coverage - config.level) <= tol.coverage_halfwidth)))
    mle_frac = float(np.mean([ok for _, _, ok in results]))
    criteria.append(Criterion("mle_score_sign_change", mle_frac, 1.0, None, None, bool(mle_frac == 1.0)))
    summary["estimator"] = est_summary

    return ExperimentReport(config.to_dict(), summary, criteria, rows)
