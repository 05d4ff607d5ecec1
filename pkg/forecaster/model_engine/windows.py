"""Coercion of windows/targets into column-per-sample matrices."""

from typing import Optional, Sequence, Union

import numpy as np

from ..errors import ShapeError
from ..numkit import Matrix

WindowLike = Union[Matrix, Sequence[float], np.ndarray]


def as_column_batch(values: WindowLike, expected_rows: Optional[int], what: str) -> Matrix:
    """A 1-D sequence becomes a single column; a Matrix is used as is (one sample per column)."""
    if isinstance(values, Matrix):
        m = values
    else:
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 1:
            raise ShapeError(f"{what} must be 1-D or a Matrix, got shape {arr.shape}")
        if arr.size == 0:
            raise ShapeError(f"{what} is empty")
        m = Matrix._wrap(arr.reshape(-1, 1))
    if expected_rows is not None and m.rows != expected_rows:
        raise ShapeError(f"{what} length {m.rows} does not match expected {expected_rows}")
    return m


def as_window_batch(window: WindowLike, window_len: Optional[int] = None) -> Matrix:
    return as_column_batch(window, window_len, "window")
