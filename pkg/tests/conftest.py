"""Shared fixtures: small series, a tiny experiment configuration."""

import numpy as np
import pytest

from forecaster.data_engine import Series, normalize
from forecaster.numkit import Rng
from forecaster.schemas import ActivitiesParams, DatasetSource, ExperimentConfig, TrainConfig


@pytest.fixture
def rng():
    return Rng(42)


@pytest.fixture
def wave_series():
    """Normalized weekly-looking wave, 80 samples."""
    t = np.arange(80)
    values = 10.0 + 5.0 * np.sin(2 * np.pi * t / 7.0) + 0.1 * t
    return normalize(Series("wave", values))


@pytest.fixture
def tiny_config(tmp_path):
    """Activities data small enough for an end-to-end run in seconds."""
    return ExperimentConfig(
        dataset=DatasetSource(
            kind="activities",
            activities=ActivitiesParams(n_series=3, length=120, samples_per_day=2),
        ),
        window=10,
        horizons=[1, 3],
        test_len=20,
        train=TrainConfig(epochs=2, batch_size=16, units=4, seed=7),
        output_dir=str(tmp_path / "run"),
        workers=2,
    )
