"""
Data Ingestion Engine: wide CSV datasets and synthetic generators.
Series are normalized independently; windows are cut per series on request.
"""

import re
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..errors import ArgumentError, ParseError
from ..numkit import Rng
from ..schemas import DatasetSource
from .generators import gen_activities, gen_random_walk
from .series import Series, normalize
from .windows import REGION_TEST, REGION_TRAIN, PartitionSpec, WindowedDataset, make_windows

_LINE_RE = re.compile(r"line (\d+)")


def _is_blank(row: pd.Series) -> bool:
    return bool(row.isna().all() or (row.fillna("").str.strip() == "").all())


def load_csv(path: Union[str, Path], date_column: bool = False) -> List[Series]:
    """
    Wide layout: header row of series names, one column per series, rows in time order.
    With date_column the first column (ISO-8601 dates) is skipped. Trailing blank lines are ignored.
    Line numbers in errors count the header as line 1.
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False)
    except pd.errors.EmptyDataError as e:
        raise ParseError("empty file", line=1) from e
    except pd.errors.ParserError as e:
        m = _LINE_RE.search(str(e))
        raise ParseError(f"ragged row: {e}", line=int(m.group(1)) if m else None) from e
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e

    n_rows = len(frame)
    while n_rows and _is_blank(frame.iloc[n_rows - 1]):
        n_rows -= 1
    frame = frame.iloc[:n_rows]
    if frame.empty:
        raise ParseError("no data rows", line=2)
    missing = frame.isna().any(axis=1).to_numpy()
    if missing.any():
        raise ParseError("ragged row: fewer fields than the header", line=int(np.argmax(missing)) + 2)
    first = 1 if date_column else 0
    if frame.shape[1] <= first:
        raise ParseError("no series columns", line=1)
    frame = frame.iloc[:, first:]

    # string pass locates bad cells only; values come from the round-trip parser below
    numeric = frame.apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
    bad = ~np.isfinite(numeric.to_numpy(dtype=np.float64))
    if bad.any():
        r, c = np.argwhere(bad)[0]
        raise ParseError(
            f"non-numeric value {frame.iat[r, c]!r} in column '{frame.columns[c]}'", line=int(r) + 2
        )

    exact = pd.read_csv(
        path, float_precision="round_trip", skipinitialspace=True, nrows=n_rows, keep_default_na=False
    ).iloc[:, first:]
    return [
        Series(str(name), exact.iloc[:, k].to_numpy(dtype=np.float64))
        for k, name in enumerate(frame.columns)
    ]


def write_csv(series: Sequence[Series], path: Union[str, Path]) -> Path:
    """Write series side by side as a wide CSV readable by load_csv."""
    if not series:
        raise ArgumentError("no series to write")
    lengths = {len(s) for s in series}
    if len(lengths) != 1:
        raise ArgumentError(f"series lengths differ: {sorted(lengths)}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({s.name: s.values for s in series})
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def generate(source: DatasetSource, seed: int) -> List[Series]:
    rng = Rng(seed)
    if source.kind == "activities":
        return gen_activities(rng, **source.activities.model_dump())
    if source.kind == "random-walk":
        return gen_random_walk(rng, **source.random_walk.model_dump())
    raise ArgumentError(f"dataset kind '{source.kind}' is not a generator")


class DataEngine:
    """
    Single source of series for an experiment.
    - Load raw series (CSV or generator)
    - Normalize each series on its own bounds (full series, or train region only)
    - Cut train/test windows per series
    """

    def __init__(
        self,
        source: DatasetSource,
        seed: int,
        test_len: int,
        fit_bounds_on_train: bool = False,
        degenerate_midpoint: bool = False,
    ):
        self.source = source
        self.seed = seed
        self.test_len = test_len
        self.fit_bounds_on_train = fit_bounds_on_train
        self.degenerate_midpoint = degenerate_midpoint

        self._raw: Optional[List[Series]] = None
        self._normalized: Optional[List[Series]] = None

    def load(self) -> List[Series]:
        if self.source.kind == "csv":
            raw = load_csv(self.source.csv_path, date_column=self.source.date_column)
        else:
            raw = generate(self.source, self.seed)
        self._raw = raw
        self._normalized = None
        return raw

    def get_raw(self) -> List[Series]:
        if self._raw is None:
            self.load()
        return self._raw

    def get_normalized(self) -> List[Series]:
        if self._normalized is None:
            self._normalized = [
                normalize(
                    s,
                    degenerate_midpoint=self.degenerate_midpoint,
                    fit_length=len(s) - self.test_len if self.fit_bounds_on_train else None,
                )
                for s in self.get_raw()
            ]
        return self._normalized

    @property
    def n_series(self) -> int:
        return len(self.get_raw())

    def series(self, index: int) -> Series:
        items = self.get_normalized()
        if not 0 <= index < len(items):
            raise ArgumentError(f"series index {index} out of range for {len(items)} series")
        return items[index]

    def train_windows(self, index: int, window: int, horizon: int) -> WindowedDataset:
        spec = PartitionSpec(window, horizon, self.test_len)
        return make_windows(self.series(index), spec, REGION_TRAIN)

    def test_windows(self, index: int, window: int, horizon: int) -> WindowedDataset:
        spec = PartitionSpec(window, horizon, self.test_len)
        return make_windows(self.series(index), spec, REGION_TEST)
