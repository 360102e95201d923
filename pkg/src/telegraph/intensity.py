"""Switching intensity ``lambda(t) = theta * tanh(theta * t)`` and its Poisson process.

The cumulative intensity is ``Lambda(t) = log(cosh(theta * t))`` with the
closed-form inverse ``Lambda^{-1}(u) = arccosh(exp(u)) / theta``, so event
times are sampled exactly by time rescaling of a unit-rate process. A
thinning sampler under the dominating rate ``|theta|`` is kept as an
independent check on the production sampler.

The law depends on ``|theta|`` only; ``ModelParams`` stores the magnitude.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateModelError, DomainError
from .specfun import acosh_exp, log_cosh

__all__ = [
    "ModelParams",
    "EventTimes",
    "make_rng",
    "lambda_at",
    "big_lambda_at",
    "big_lambda_inv",
    "sample_event_times_inversion",
    "sample_event_times_thinning",
    "sample_event_times_batch",
]


@dataclass(frozen=True)
class ModelParams:
    """Switching parameter ``theta`` (1/time) and speed ``c`` (length/time)."""

    theta: float
    c: float = 1.0

    def __post_init__(self):
        theta = float(self.theta)
        c = float(self.c)
        if not np.isfinite(theta):
            raise DomainError(f"theta must be finite, got {self.theta!r}")
        if not (np.isfinite(c) and c > 0):
            raise DomainError(f"c must be positive and finite, got {self.c!r}")
        object.__setattr__(self, "theta", abs(theta))
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class EventTimes:
    """Strictly increasing switch times in ``(0, horizon]``."""

    times: tuple[float, ...]
    horizon: float

    def __post_init__(self):
        times = tuple(float(s) for s in self.times)
        horizon = float(self.horizon)
        if not horizon > 0:
            raise DomainError(f"horizon must be positive, got {self.horizon!r}")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("event times must be strictly increasing")
        if times and (times[0] <= 0 or times[-1] > horizon):
            raise DomainError("event times must lie in (0, horizon]")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "horizon", horizon)

    def __len__(self) -> int:
        return len(self.times)


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for stream ``key`` under master ``seed``.

    Streams derived with distinct keys are statistically independent, which
    is what lets batch work be split across workers without changing results.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def _check_time(t, name="t"):
    if isinstance(t, (float, int)):
        if not t >= 0:
            raise DomainError(f"{name} must be >= 0")
        return float(t)
    arr = np.asarray(t, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError(f"{name} must be >= 0")
    return arr


def lambda_at(params: ModelParams, t):
    """Intensity ``|theta| * tanh(|theta| * t)`` for ``t >= 0``."""
    arr = _check_time(t)
    if isinstance(arr, float):
        return params.theta * math.tanh(params.theta * arr)
    val = params.theta * np.tanh(params.theta * arr)
    return float(val) if arr.ndim == 0 else val


def big_lambda_at(params: ModelParams, t):
    """Cumulative intensity ``log(cosh(theta * t))``; the mean switch count on ``(0, t]``."""
    arr = _check_time(t)
    return log_cosh(params.theta * arr)


def big_lambda_inv(params: ModelParams, u):
    """Inverse cumulative intensity, ``arccosh(exp(u)) / |theta|``.

    Raises
    ------
    DegenerateModelError
        If ``theta == 0``, where the cumulative intensity is identically zero.
    """
    if params.theta == 0:
        raise DegenerateModelError("cumulative intensity is identically 0 when theta = 0")
    arr = _check_time(u, "u")
    if isinstance(arr, float):
        return acosh_exp(arr) / params.theta
    val = np.asarray(acosh_exp(arr)) / params.theta
    return float(val) if arr.ndim == 0 else val


def sample_event_times_inversion(
    params: ModelParams, T: float, rng: np.random.Generator
) -> EventTimes:
    """Exact sample of the switch times on ``(0, T]`` by time rescaling.

    Unit-rate arrivals ``u_1 < u_2 < ...`` are accumulated from standard
    exponentials until they pass ``Lambda(T)``; each is mapped back through
    ``Lambda^{-1}``.
    """
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    if params.theta == 0:
        return EventTimes((), T)
    total = big_lambda_at(params, float(T))
    times = []
    u = rng.standard_exponential()
    while u <= total:
        s = min(big_lambda_inv(params, u), T)
        if times and s <= times[-1]:
            # Lambda^{-1} rounding can merge arrivals that are closer than an ulp
            s = np.nextafter(times[-1], np.inf)
            if s > T:
                break
        times.append(s)
        u += rng.standard_exponential()
    return EventTimes(tuple(times), T)


def sample_event_times_thinning(
    params: ModelParams, T: float, rng: np.random.Generator
) -> EventTimes:
    """Switch times by thinning a rate-``|theta|`` homogeneous process.

    A candidate at time ``s`` is kept with probability ``tanh(|theta| s)``.
    Only used to cross-check ``sample_event_times_inversion``.
    """
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    theta = params.theta
    if theta == 0:
        return EventTimes((), T)
    times = []
    s = rng.exponential(1.0 / theta)
    while s <= T:
        if rng.random() < math.tanh(theta * s):
            times.append(s)
        s += rng.exponential(1.0 / theta)
    return EventTimes(tuple(times), T)


@dataclass(frozen=True)
class EventBatch:
    """Switch times of many independent paths on a shared horizon.

    ``times`` is ``(n, k_max)`` padded with ``inf``; row ``i`` holds
    ``counts[i]`` finite increasing entries.
    """

    times: np.ndarray
    counts: np.ndarray
    horizon: float
    params: ModelParams = field(repr=False)

    def row(self, i: int) -> EventTimes:
        return EventTimes(tuple(self.times[i, : self.counts[i]]), self.horizon)


def sample_event_times_batch(
    params: ModelParams, T: float, n: int, rng: np.random.Generator
) -> EventBatch:
    """Vectorised inversion sampler for ``n`` independent paths.

    Same construction as ``sample_event_times_inversion``, advanced one
    arrival at a time across all still-active paths.
    """
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    if params.theta == 0:
        return EventBatch(np.empty((n, 0)), np.zeros(n, dtype=np.int64), float(T), params)
    total = big_lambda_at(params, T)
    arrivals = np.zeros(n)
    active = np.arange(n)
    columns = []
    counts = np.zeros(n, dtype=np.int64)
    while active.size:
        arrivals[active] += rng.standard_exponential(active.size)
        active = active[arrivals[active] <= total]
        col = np.full(n, np.inf)
        if active.size:
            col[active] = np.minimum(big_lambda_inv(params, arrivals[active]), T)
            counts[active] += 1
            columns.append(col)
    times = np.column_stack(columns) if columns else np.empty((n, 0))
    return EventBatch(times, counts, float(T), params)
