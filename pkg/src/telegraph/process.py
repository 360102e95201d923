"""Event-driven simulation of the telegraph particle.

A trajectory is stored as its initial velocity sign and switch times; the
velocity ``V(t) = V(0) (-1)^N(t)`` and the position ``X(t) = int_0^t V(s) ds``
are evaluated on demand. Switch counts are right-continuous: an event at
exactly ``t`` is counted at ``t``.
"""
from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .intensity import (
    EventBatch,
    EventTimes,
    ModelParams,
    sample_event_times_batch,
    sample_event_times_inversion,
)

__all__ = [
    "SwitchTrajectory",
    "TrajectoryBatch",
    "simulate_trajectory",
    "simulate_batch",
    "velocity_at",
    "position_at",
    "switch_count",
]


@dataclass(frozen=True)
class SwitchTrajectory:
    initial_velocity_sign: int
    events: EventTimes
    params: ModelParams

    def __post_init__(self):
        if self.initial_velocity_sign not in (-1, 1):
            raise DomainError("initial_velocity_sign must be -1 or +1")

    @property
    def horizon(self) -> float:
        return self.events.horizon

    def to_record(self, seed: Optional[int] = None, index: Optional[int] = None) -> dict:
        """JSON-ready record ``{seed, index, theta, c, T, sign, events}``."""
        return {
            "seed": seed,
            "index": index,
            "theta": self.params.theta,
            "c": self.params.c,
            "T": self.horizon,
            "sign": self.initial_velocity_sign,
            "events": list(self.events.times),
        }

    @classmethod
    def from_record(cls, record: dict) -> "SwitchTrajectory":
        params = ModelParams(record["theta"], record["c"])
        events = EventTimes(tuple(record["events"]), record["T"])
        return cls(int(record["sign"]), events, params)

    def to_json(self, **meta) -> str:
        return json.dumps(self.to_record(**meta))

    @classmethod
    def from_json(cls, text: str) -> "SwitchTrajectory":
        return cls.from_record(json.loads(text))


def simulate_trajectory(
    params: ModelParams, T: float, rng: np.random.Generator
) -> SwitchTrajectory:
    """Draw one path on ``[0, T]``: a fair coin for ``V(0)``, then the switch times."""
    sign = 1 if rng.random() < 0.5 else -1
    events = sample_event_times_inversion(params, T, rng)
    return SwitchTrajectory(sign, events, params)


def _check_query(traj: SwitchTrajectory, t: float) -> None:
    if not (0 <= t <= traj.horizon):
        raise DomainError(f"t={t!r} outside [0, {traj.horizon}]")


def switch_count(traj: SwitchTrajectory, t: float) -> int:
    """Number of switches in ``(0, t]``."""
    _check_query(traj, t)
    return bisect.bisect_right(traj.events.times, t)


def velocity_at(traj: SwitchTrajectory, t: float) -> float:
    k = switch_count(traj, t)
    return traj.initial_velocity_sign * traj.params.c * (-1.0) ** k


def position_at(traj: SwitchTrajectory, t: float) -> float:
    """Signed displacement at time ``t``, integrating the velocity segment by segment."""
    k = switch_count(traj, t)
    times = traj.events.times
    acc = 0.0
    prev = 0.0
    direction = 1.0
    for s in times[:k]:
        acc += direction * (s - prev)
        prev = s
        direction = -direction
    acc += direction * (t - prev)
    c = traj.params.c
    # rounding in the alternating sum must not leave the light cone
    return float(np.clip(traj.initial_velocity_sign * c * acc, -c * t, c * t))


@dataclass(frozen=True)
class TrajectoryBatch:
    """Many independent trajectories sharing ``params`` and horizon."""

    signs: np.ndarray
    events: EventBatch

    @property
    def params(self) -> ModelParams:
        return self.events.params

    @property
    def horizon(self) -> float:
        return self.events.horizon

    def __len__(self) -> int:
        return self.signs.size

    def _check(self, t: float) -> None:
        if not (0 <= t <= self.horizon):
            raise DomainError(f"t={t!r} outside [0, {self.horizon}]")

    def counts_at(self, t: float) -> np.ndarray:
        self._check(t)
        return np.sum(self.events.times <= t, axis=1)

    def velocities_at(self, t: float) -> np.ndarray:
        k = self.counts_at(t)
        return self.signs * self.params.c * np.where(k % 2 == 0, 1.0, -1.0)

    def positions_at(self, t: float) -> np.ndarray:
        self._check(t)
        times = self.events.times
        k = np.sum(times <= t, axis=1)
        # int_0^t (-1)^N ds = 2 * sum_j (-1)^(j-1) tau_j + (-1)^k t
        alt = np.where(np.arange(times.shape[1]) % 2 == 0, 1.0, -1.0)
        inside = np.where(times <= t, times, 0.0)
        integral = 2.0 * (inside @ alt) + np.where(k % 2 == 0, 1.0, -1.0) * t
        c = self.params.c
        return np.clip(self.signs * c * integral, -c * t, c * t)

    def trajectory(self, i: int) -> SwitchTrajectory:
        return SwitchTrajectory(int(self.signs[i]), self.events.row(i), self.params)


def simulate_batch(
    params: ModelParams, T: float, n: int, rng: np.random.Generator
) -> TrajectoryBatch:
    """Draw ``n`` independent trajectories at once (signs first, then switch times)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    signs = np.where(rng.random(n) < 0.5, 1, -1)
    events = sample_event_times_batch(params, T, n, rng)
    return TrajectoryBatch(signs, events)
