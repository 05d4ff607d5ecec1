"""
Train/test partitioning and stride-1 sliding windows.

Train region is [0, Q - test_len); a training target never reaches into the test region.
Test targets are the f-blocks lying fully inside [Q - test_len, Q); their input windows
may reach back into the train region.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .. import config as cfg
from ..errors import ArgumentError
from ..numkit import Matrix
from .series import Bounds, Series

REGION_TRAIN = "train"
REGION_TEST = "test"


@dataclass(frozen=True)
class PartitionSpec:
    window: int
    horizon: int
    test_len: int = cfg.TEST_LEN

    def __post_init__(self):
        if self.window < 1 or self.horizon < 1:
            raise ArgumentError(f"window and horizon must be >= 1, got w={self.window}, f={self.horizon}")
        if self.test_len < self.horizon:
            raise ArgumentError(f"test_len {self.test_len} must be >= horizon {self.horizon}")

    def check_length(self, q: int) -> None:
        if q - self.test_len < self.window + self.horizon:
            raise ArgumentError(
                f"series too short: Q={q}, w={self.window}, f={self.horizon}, "
                f"test_len={self.test_len} (need Q - test_len >= w + f)"
            )

    def train_size(self, q: int) -> int:
        return (q - self.test_len) - self.window - self.horizon + 1

    def test_size(self) -> int:
        return self.test_len - self.horizon + 1


@dataclass(frozen=True)
class WindowedDataset:
    inputs: np.ndarray  # N x w
    targets: np.ndarray  # N x f
    origins: np.ndarray  # start index of each window in the source series
    series_name: str
    region: str
    bounds: Optional[Bounds] = None

    @property
    def size(self) -> int:
        return self.inputs.shape[0]

    @property
    def window(self) -> int:
        return self.inputs.shape[1]

    @property
    def horizon(self) -> int:
        return self.targets.shape[1]

    @property
    def last_observed(self) -> np.ndarray:
        return self.inputs[:, -1]

    def batch(self, indices: Sequence[int]) -> Tuple[Matrix, Matrix]:
        """Column-per-sample matrices (w x B, f x B) for the given sample indices."""
        idx = np.asarray(indices, dtype=np.int64)
        return Matrix(self.inputs[idx].T), Matrix(self.targets[idx].T)


def make_windows(series: Series, spec: PartitionSpec, region: str = REGION_TRAIN) -> WindowedDataset:
    q = len(series)
    spec.check_length(q)
    w, f = spec.window, spec.horizon
    blocks = sliding_window_view(series.values, w + f)  # block s covers [s, s+w+f)
    boundary = q - spec.test_len
    if region == REGION_TRAIN:
        starts = np.arange(0, spec.train_size(q))
    elif region == REGION_TEST:
        starts = boundary - w + np.arange(spec.test_size())
    else:
        raise ArgumentError(f"unknown region '{region}' (expected train or test)")
    chosen = blocks[starts]
    return WindowedDataset(
        inputs=np.ascontiguousarray(chosen[:, :w]),
        targets=np.ascontiguousarray(chosen[:, w:]),
        origins=starts,
        series_name=series.name,
        region=region,
        bounds=series.bounds,
    )
