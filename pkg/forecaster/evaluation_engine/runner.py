"""
Evaluation Engine: run a forecaster over the test region of every series.
Per-series work runs on a thread pool; results come back in series order.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Protocol, Sequence

import numpy as np

from .. import config as cfg
from ..data_engine import REGION_TEST, PartitionSpec, Series, make_windows
from ..errors import ArgumentError
from ..explainability_engine import RunLog
from ..training_engine import Checkpoint
from .metrics import ForecastSet, directional_accuracy, rmse


class Forecaster(Protocol):
    name: str
    window: Optional[int]  # None: any window length
    horizon: int

    def predict(self, windows: np.ndarray) -> np.ndarray:
        """N x w windows -> N x f forecasts."""


class BaselineForecaster:
    """Repeats the last observed value for every step."""

    def __init__(self, horizon: int):
        if horizon < 1:
            raise ArgumentError(f"horizon must be >= 1, got {horizon}")
        self.name = cfg.MODEL_BASELINE
        self.window = None
        self.horizon = horizon

    def predict(self, windows: np.ndarray) -> np.ndarray:
        windows = np.asarray(windows, dtype=np.float64)
        return np.repeat(windows[:, -1:], self.horizon, axis=1)


class ModelForecaster:
    """Forward passes of a trained checkpoint; parameters are read-only here."""

    def __init__(self, checkpoint: Checkpoint):
        self.checkpoint = checkpoint
        self.name = checkpoint.kind
        self.window = checkpoint.window
        self.horizon = checkpoint.horizon
        self._state = checkpoint.to_state()

    def predict(self, windows: np.ndarray) -> np.ndarray:
        return self._state.predict(windows)


@dataclass(frozen=True)
class SeriesEvaluation:
    forecast_set: ForecastSet
    rmse: float
    da: float

    @property
    def series_name(self) -> str:
        return self.forecast_set.series_name


def _check_compatible(forecaster: Forecaster, spec: PartitionSpec) -> None:
    if forecaster.horizon != spec.horizon:
        raise ArgumentError(
            f"{forecaster.name} forecasts f={forecaster.horizon} but evaluation asks for f={spec.horizon}"
        )
    if forecaster.window is not None and forecaster.window != spec.window:
        raise ArgumentError(
            f"{forecaster.name} was trained with w={forecaster.window} but evaluation uses w={spec.window}"
        )


def evaluate(
    forecaster: Forecaster,
    series: Series,
    spec: PartitionSpec,
    normalized: bool = True,
) -> SeriesEvaluation:
    """
    Forecast every test origin of one (normalized) series and score it.
    With normalized=False errors are measured after mapping back with the series' own bounds.
    """
    _check_compatible(forecaster, spec)
    ds = make_windows(series, spec, REGION_TEST)
    fs = ForecastSet(
        predicted=forecaster.predict(ds.inputs),
        actual=ds.targets,
        last_observed=ds.last_observed,
        origins=ds.origins + spec.window,
        series_name=series.name,
        bounds=series.bounds,
    )
    scored = fs if normalized else fs.denormalized()
    return SeriesEvaluation(forecast_set=fs, rmse=rmse(scored), da=directional_accuracy(scored))


class EvaluationEngine:
    """Evaluates one forecaster on every series of a dataset."""

    def __init__(
        self,
        forecaster: Forecaster,
        spec: PartitionSpec,
        normalized: bool = True,
        workers: int = 1,
        log: Optional[RunLog] = None,
    ):
        _check_compatible(forecaster, spec)
        self.forecaster = forecaster
        self.spec = spec
        self.normalized = normalized
        self.workers = max(1, workers)
        self.log = log

    def _one(self, series: Series) -> SeriesEvaluation:
        return evaluate(self.forecaster, series, self.spec, self.normalized)

    def run(self, series: Sequence[Series]) -> List[SeriesEvaluation]:
        if self.workers == 1:
            results = [self._one(s) for s in series]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(self._one, series))
        if self.log is not None:
            for r in results:
                self.log.log(
                    "evaluate", "series_evaluated",
                    model=self.forecaster.name, horizon=self.spec.horizon,
                    series=r.series_name, rmse=r.rmse, da=r.da,
                )
        return results
