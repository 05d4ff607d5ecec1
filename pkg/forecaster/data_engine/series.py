"""Named univariate series and min-max normalization."""

from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from ..errors import ArgumentError, DegenerateSeriesError


@dataclass(frozen=True)
class Bounds:
    """Raw (min, max) recorded at normalization time."""

    lo: float
    hi: float

    @property
    def span(self) -> float:
        return self.hi - self.lo

    def check(self) -> "Bounds":
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or not self.hi > self.lo:
            raise ArgumentError(f"invalid bounds ({self.lo}, {self.hi}): need max > min")
        return self


@dataclass(frozen=True)
class Series:
    name: str
    values: np.ndarray
    bounds: Optional[Bounds] = None  # set once normalized

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ArgumentError(f"series '{self.name}' must be 1-D, got shape {arr.shape}")
        if arr.size < 2:
            raise ArgumentError(f"series '{self.name}' needs at least 2 samples, got {arr.size}")
        if not np.isfinite(arr).all():
            raise ArgumentError(f"series '{self.name}' contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def normalized(self) -> bool:
        return self.bounds is not None

    @property
    def raw_min(self) -> Optional[float]:
        return None if self.bounds is None else self.bounds.lo

    @property
    def raw_max(self) -> Optional[float]:
        return None if self.bounds is None else self.bounds.hi


def normalize(
    series: Series,
    degenerate_midpoint: bool = False,
    fit_length: Optional[int] = None,
) -> Series:
    """
    x' = (x - min) / (max - min), bounds taken over the full series
    (or over the first fit_length samples when fitting on the training region only).
    A constant series raises unless degenerate_midpoint is set: then every value maps
    to 0.5 and the recorded bounds are (c - 0.5, c + 0.5) so denormalize stays exact.
    """
    values = series.values
    fit = values if fit_length is None else values[:fit_length]
    if fit.size < 1:
        raise ArgumentError(f"fit_length must be >= 1, got {fit_length}")
    lo, hi = float(fit.min()), float(fit.max())
    if hi == lo:
        if not degenerate_midpoint:
            raise DegenerateSeriesError(f"series '{series.name}' is constant ({lo}); cannot normalize")
        if fit_length is None or np.all(values == lo):
            return replace(series, values=np.full(values.size, 0.5), bounds=Bounds(lo - 0.5, lo + 0.5))
        lo, hi = lo - 0.5, lo + 0.5
    return replace(series, values=(values - lo) / (hi - lo), bounds=Bounds(lo, hi))


ValuesLike = Union[Series, np.ndarray]


def denormalize(values: ValuesLike, bounds: Bounds) -> ValuesLike:
    """Inverse of normalize: x = x' * (max - min) + min."""
    bounds.check()
    if isinstance(values, Series):
        return replace(values, values=values.values * bounds.span + bounds.lo, bounds=None)
    return np.asarray(values, dtype=np.float64) * bounds.span + bounds.lo
