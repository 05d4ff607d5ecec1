"""Forecast sets, the persistence baseline, RMSE and Directional Accuracy."""

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, Optional, Sequence, Union

import numpy as np
import pandas as pd
from sklearn.metrics import mean_squared_error

from ..data_engine import Bounds, denormalize
from ..errors import ArgumentError, ShapeError


@dataclass(frozen=True)
class ForecastSet:
    """
    One row per consecutive test origin: predicted and actual f-vectors plus the
    last observed input value. Bounds allow denormalized reporting.
    """

    predicted: np.ndarray  # N x f
    actual: np.ndarray  # N x f
    last_observed: np.ndarray  # N
    origins: np.ndarray  # N, index of the first forecast step in the source series
    series_name: str = ""
    bounds: Optional[Bounds] = None

    def __post_init__(self):
        pred = np.asarray(self.predicted, dtype=np.float64)
        act = np.asarray(self.actual, dtype=np.float64)
        last = np.asarray(self.last_observed, dtype=np.float64).reshape(-1)
        if pred.ndim != 2 or pred.shape != act.shape:
            raise ShapeError(f"predicted {pred.shape} and actual {act.shape} must be equal N x f arrays")
        if last.shape[0] != pred.shape[0] or len(self.origins) != pred.shape[0]:
            raise ShapeError(f"{pred.shape[0]} forecasts but {last.shape[0]} last values / {len(self.origins)} origins")
        object.__setattr__(self, "predicted", pred)
        object.__setattr__(self, "actual", act)
        object.__setattr__(self, "last_observed", last)
        object.__setattr__(self, "origins", np.asarray(self.origins, dtype=np.int64))

    @property
    def size(self) -> int:
        return self.predicted.shape[0]

    @property
    def horizon(self) -> int:
        return self.predicted.shape[1]

    def denormalized(self) -> "ForecastSet":
        if self.bounds is None:
            raise ArgumentError(f"forecast set for '{self.series_name}' has no normalization bounds")
        return replace(
            self,
            predicted=denormalize(self.predicted, self.bounds),
            actual=denormalize(self.actual, self.bounds),
            last_observed=denormalize(self.last_observed, self.bounds),
            bounds=None,
        )

    def actual_path(self) -> np.ndarray:
        """The test region reconstructed from consecutive targets (length N + f - 1)."""
        if self.size == 0:
            return np.zeros(0)
        return np.concatenate([self.actual[:, 0], self.actual[-1, 1:]])


def baseline_forecast(window: Sequence[float], f: int) -> np.ndarray:
    """Persistence: repeat the last observed value f times."""
    arr = np.asarray(window, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise ArgumentError("baseline needs a non-empty window")
    if f < 1:
        raise ArgumentError(f"horizon must be >= 1, got {f}")
    return np.full(f, arr[-1])


def _require_non_empty(fs: ForecastSet) -> None:
    if fs.size == 0:
        raise ArgumentError("empty forecast set")


def rmse(fs: ForecastSet) -> float:
    """Root of the mean squared error over every (origin, step) pair."""
    _require_non_empty(fs)
    return float(np.sqrt(mean_squared_error(fs.actual.reshape(-1), fs.predicted.reshape(-1))))


def directional_accuracy(fs: ForecastSet) -> float:
    """
    Share of (origin, step) pairs whose predicted direction matches the actual one.
    Step 1 is referenced to the last observed input, step k > 1 to the actual value at k-1.
    Zero change is its own direction.
    """
    _require_non_empty(fs)
    ref = np.column_stack([fs.last_observed, fs.actual[:, :-1]])
    hits = np.sign(fs.predicted - ref) == np.sign(fs.actual - ref)
    return float(hits.mean())


def forecast_metrics(fs: ForecastSet) -> Dict[str, float]:
    return {"RMSE": rmse(fs), "DA": directional_accuracy(fs)}


def forecast_frame(fs: ForecastSet, model: str, horizon: int) -> pd.DataFrame:
    """Long format: one row per (origin, step)."""
    n, f = fs.predicted.shape
    return pd.DataFrame(
        {
            "series": fs.series_name,
            "model": model,
            "horizon": horizon,
            "origin": np.repeat(fs.origins, f),
            "step": np.tile(np.arange(1, f + 1), n),
            "predicted": fs.predicted.reshape(-1),
            "actual": fs.actual.reshape(-1),
            "last_observed": np.repeat(fs.last_observed, f),
            "raw_min": np.nan if fs.bounds is None else fs.bounds.lo,
            "raw_max": np.nan if fs.bounds is None else fs.bounds.hi,
        }
    )


def forecast_sets_from_frame(frame: pd.DataFrame) -> Dict[str, ForecastSet]:
    """Inverse of forecast_frame for every series in the frame, in first-seen order."""
    out: Dict[str, ForecastSet] = {}
    for name, part in frame.groupby("series", sort=False):
        part = part.sort_values(["origin", "step"])
        f = int(part["step"].max())
        n = len(part) // f
        first = part[part["step"] == 1]
        lo, hi = part["raw_min"].iloc[0], part["raw_max"].iloc[0]
        out[str(name)] = ForecastSet(
            predicted=part["predicted"].to_numpy().reshape(n, f),
            actual=part["actual"].to_numpy().reshape(n, f),
            last_observed=first["last_observed"].to_numpy(),
            origins=first["origin"].to_numpy(),
            series_name=str(name),
            bounds=None if pd.isna(lo) else Bounds(float(lo), float(hi)),
        )
    return out


def read_forecast_csv(path: Union[str, Path]) -> Dict[str, ForecastSet]:
    return forecast_sets_from_frame(pd.read_csv(path, float_precision="round_trip"))
