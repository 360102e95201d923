"""Method-of-moments estimation of ``theta`` from switch counts.

The mean switch count on ``(0, T]`` is ``pi = log(cosh(theta T))``, so
``theta(pi) = arccosh(exp(pi)) / T``. From ``n`` independent paths the plug-in
``theta(mean count)`` is asymptotically normal with variance
``log(cosh(theta T)) * coth(theta T)^2 / T^2`` (delta method), which is also
the inverse Fisher information of the Poisson count model. A single path
gives a point estimate only.

The estimator targets ``|theta|``; the law cannot distinguish the sign.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from statistics import NormalDist
from typing import Literal, Optional, Sequence

import numpy as np

from .errors import DegenerateModelError, DomainError
from .specfun import acosh_exp, log_cosh

__all__ = [
    "EstimateResult",
    "estimate_single",
    "estimate_replicated",
    "estimate_from_path",
    "asymptotic_variance",
    "confidence_interval",
    "poisson_log_likelihood",
    "poisson_score",
]


@dataclass(frozen=True)
class EstimateResult:
    theta_hat: float
    pi_hat: float
    std_error: Optional[float]
    ci_low: Optional[float]
    ci_high: Optional[float]
    n: int
    T: float
    scheme: Literal["single", "replicated"]
    level: float = 0.95
    degenerate: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _check_T(T: float) -> float:
    T = float(T)
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    return T


def estimate_single(pi_T: float, T: float) -> float:
    """``arccosh(exp(pi_T)) / T`` from the switch count of one path observed on ``[0, T]``."""
    T = _check_T(T)
    if pi_T < 0:
        raise DomainError(f"switch count must be >= 0, got {pi_T!r}")
    return acosh_exp(float(pi_T)) / T


def asymptotic_variance(theta: float, T: float) -> float:
    """Limit variance of ``sqrt(n) (theta_hat - theta)``.

    ``log(cosh(theta T)) * coth(theta T)^2 / T^2``; tends to ``(theta T - log 2) / T^2``
    for large ``theta T``.

    Raises
    ------
    DegenerateModelError
        For ``theta == 0``, where the Fisher information vanishes.
    """
    T = _check_T(T)
    theta = abs(float(theta))
    if theta == 0:
        raise DegenerateModelError("Fisher information is zero at theta = 0")
    y = theta * T
    coth = 1.0 / np.tanh(y)
    return float(log_cosh(y) * coth * coth / (T * T))


def confidence_interval(theta_hat: float, std_error: float, level: float = 0.95) -> tuple[float, float]:
    """Two-sided normal interval ``theta_hat +- z std_error``, clamped below at 0."""
    if not 0 < level < 1:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    z = NormalDist().inv_cdf(0.5 * (1.0 + level))
    return max(theta_hat - z * std_error, 0.0), theta_hat + z * std_error


def estimate_replicated(counts: Sequence[int], T: float, level: float = 0.95) -> EstimateResult:
    """Estimate ``theta`` from switch counts of ``n`` independent paths on ``[0, T]``.

    An all-zero sample returns ``theta_hat = 0`` with a zero-width interval
    and ``degenerate=True``: zero is the boundary maximiser of the likelihood.
    """
    T = _check_T(T)
    arr = np.asarray(counts, dtype=float)
    if arr.size == 0:
        raise DomainError("counts must be nonempty")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("counts must be finite and nonnegative")
    n = int(arr.size)
    pi_hat = float(arr.mean())
    if pi_hat == 0:
        return EstimateResult(0.0, 0.0, 0.0, 0.0, 0.0, n, T, "replicated", level, degenerate=True)
    theta_hat = acosh_exp(pi_hat) / T
    # the plug-in variance is pi_hat * (coth(theta_hat T) / T)^2 since log cosh(theta_hat T) = pi_hat
    std_error = float(np.sqrt(asymptotic_variance(theta_hat, T) / n))
    lo, hi = confidence_interval(theta_hat, std_error, level)
    return EstimateResult(theta_hat, pi_hat, std_error, lo, hi, n, T, "replicated", level)


def estimate_from_path(pi_T: int, T: float) -> EstimateResult:
    """Scheme with one long path: point estimate only, no standard error."""
    theta_hat = estimate_single(pi_T, T)
    return EstimateResult(
        theta_hat, float(pi_T), None, None, None, 1, float(T),
        "single", degenerate=pi_T == 0,
    )


def poisson_log_likelihood(theta: float, counts: Sequence[int], T: float) -> float:
    """Log-likelihood of i.i.d. Poisson(``log cosh(theta T)``) counts, up to a constant."""
    arr = np.asarray(counts, dtype=float)
    lam = log_cosh(theta * T)
    return float(arr.size * (arr.mean() * np.log(lam) - lam))


def poisson_score(theta: float, counts: Sequence[int], T: float) -> float:
    """Derivative of ``poisson_log_likelihood`` in ``theta``."""
    arr = np.asarray(counts, dtype=float)
    lam = log_cosh(theta * T)
    dlam = T * np.tanh(theta * T)
    return float(arr.size * (arr.mean() / lam - 1.0) * dlam)
