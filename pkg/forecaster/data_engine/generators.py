"""
Synthetic datasets.
- Activities: weekly template of five busy days then two quiet days, with per-day
  amplitude jitter and additive Gaussian noise, clipped at zero.
- Random walk: geometric walk standing in for stock closing prices.
Both are pure functions of the generator state and their parameters; each series
draws from its own child generator spawned in series order.
"""

from typing import List

import numpy as np

from .. import config as cfg
from ..errors import ArgumentError
from ..numkit import Rng
from .series import Series


def gen_activities(
    rng: Rng,
    n_series: int = cfg.ACTIVITIES_SERIES,
    length: int = cfg.ACTIVITIES_LENGTH,
    samples_per_day: int = cfg.SAMPLES_PER_DAY,
    high_level: float = cfg.HIGH_LEVEL,
    low_level: float = cfg.LOW_LEVEL,
    noise_sd: float = cfg.NOISE_SD,
    amplitude_jitter: float = cfg.AMPLITUDE_JITTER,
) -> List[Series]:
    if n_series < 1:
        raise ArgumentError(f"n_series must be >= 1, got {n_series}")
    if samples_per_day < 1:
        raise ArgumentError(f"samples_per_day must be >= 1, got {samples_per_day}")
    if length < cfg.DAYS_PER_WEEK * samples_per_day:
        raise ArgumentError(
            f"length {length} shorter than one week ({cfg.DAYS_PER_WEEK} x {samples_per_day} samples)"
        )
    if noise_sd < 0 or not 0 <= amplitude_jitter < 1:
        raise ArgumentError(f"need noise_sd >= 0 and 0 <= jitter < 1, got {noise_sd}, {amplitude_jitter}")

    n_days = -(-length // samples_per_day)
    weekday = np.arange(n_days) % cfg.DAYS_PER_WEEK
    day_level = np.where(weekday < cfg.HIGH_DAYS, high_level, low_level)

    out = []
    for k in range(n_series):
        series_rng = rng.spawn()
        if amplitude_jitter > 0:
            factor = series_rng.uniform(1 - amplitude_jitter, 1 + amplitude_jitter, 1, n_days).data
        else:
            factor = np.ones(n_days)
        values = np.repeat(day_level * factor, samples_per_day)[:length]
        if noise_sd > 0:
            values = values + series_rng.normal(0.0, noise_sd, length)
        out.append(Series(f"activities_{k + 1:02d}", np.clip(values, 0.0, None)))
    return out


def gen_random_walk(
    rng: Rng,
    n_series: int = cfg.RANDOM_WALK_SERIES,
    length: int = cfg.RANDOM_WALK_LENGTH,
    start: float = cfg.RANDOM_WALK_START,
    step_sd: float = cfg.RANDOM_WALK_STEP_SD,
) -> List[Series]:
    """x[t+1] = x[t] * exp(eps), eps ~ Normal(0, step_sd^2)."""
    if n_series < 1:
        raise ArgumentError(f"n_series must be >= 1, got {n_series}")
    if length < 2:
        raise ArgumentError(f"length must be >= 2, got {length}")
    if not start > 0 or step_sd < 0:
        raise ArgumentError(f"need start > 0 and step_sd >= 0, got {start}, {step_sd}")

    out = []
    for k in range(n_series):
        steps = rng.spawn().normal(0.0, step_sd, length - 1)
        log_path = np.concatenate([[0.0], np.cumsum(steps)])
        out.append(Series(f"random_walk_{k + 1:02d}", start * np.exp(log_path)))
    return out
