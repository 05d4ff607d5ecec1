"""
Checkpoint container and its binary file format.

    magic  b"TSFC"            4 bytes
    version                   u16 little-endian
    meta length               u32, then UTF-8 JSON metadata (CheckpointMeta)
    per tensor, in metadata order:
        rows u32, cols u32, rows*cols float64 little-endian
"""

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from .. import config as cfg
from ..data_engine import Bounds
from ..errors import CheckpointIOError, CheckpointVersionError, CorruptCheckpointError, NumericError
from ..model_engine import DenseParams, GruParams, LstmParams, ModelState
from ..numkit import Matrix

_HEADER = struct.Struct("<4sHI")
_SHAPE = struct.Struct("<II")
_F64 = np.dtype("<f8")


class TensorInfo(BaseModel):
    name: str
    rows: int
    cols: int


class CheckpointMeta(BaseModel):
    kind: str
    window: int
    horizon: int
    units: int
    series_name: str
    raw_min: Optional[float] = None
    raw_max: Optional[float] = None
    train_config: Dict[str, Any]
    tensors: List[TensorInfo]


@dataclass
class Checkpoint:
    kind: str
    params: Dict[str, Matrix]
    window: int
    horizon: int
    units: int
    series_name: str
    bounds: Optional[Bounds]
    train_config: Dict[str, Any]
    version: int = cfg.CHECKPOINT_VERSION

    @classmethod
    def from_state(
        cls,
        state: ModelState,
        series_name: str,
        bounds: Optional[Bounds],
        train_config: Dict[str, Any],
    ) -> "Checkpoint":
        return cls(
            kind=state.kind,
            params=state.named_params(),
            window=state.window,
            horizon=state.horizon,
            units=state.units,
            series_name=series_name,
            bounds=bounds,
            train_config=dict(train_config),
        )

    def to_state(self) -> ModelState:
        cell_type = LstmParams if self.kind == cfg.MODEL_LSTM else GruParams
        return ModelState(
            kind=self.kind,
            cell=cell_type.from_named(self.params),
            head=DenseParams.from_named(self.params),
            window=self.window,
        )

    def _meta(self) -> CheckpointMeta:
        return CheckpointMeta(
            kind=self.kind,
            window=self.window,
            horizon=self.horizon,
            units=self.units,
            series_name=self.series_name,
            raw_min=None if self.bounds is None else self.bounds.lo,
            raw_max=None if self.bounds is None else self.bounds.hi,
            train_config=self.train_config,
            tensors=[TensorInfo(name=k, rows=m.rows, cols=m.cols) for k, m in self.params.items()],
        )


def encode_checkpoint(c: Checkpoint) -> bytes:
    meta = c._meta().model_dump_json().encode("utf-8")
    chunks = [_HEADER.pack(cfg.CHECKPOINT_MAGIC, c.version, len(meta)), meta]
    for m in c.params.values():
        chunks.append(_SHAPE.pack(m.rows, m.cols))
        chunks.append(m.values.astype(_F64).tobytes(order="C"))
    return b"".join(chunks)


def decode_checkpoint(buf: bytes) -> Checkpoint:
    if len(buf) < _HEADER.size:
        raise CorruptCheckpointError(f"checkpoint truncated: {len(buf)} bytes, header needs {_HEADER.size}")
    magic, version, meta_len = _HEADER.unpack_from(buf, 0)
    if magic != cfg.CHECKPOINT_MAGIC:
        raise CorruptCheckpointError(f"bad magic {magic!r}, expected {cfg.CHECKPOINT_MAGIC!r}")
    if version != cfg.CHECKPOINT_VERSION:
        raise CheckpointVersionError(f"checkpoint version {version}, this build reads {cfg.CHECKPOINT_VERSION}")
    pos = _HEADER.size
    if pos + meta_len > len(buf):
        raise CorruptCheckpointError("checkpoint truncated inside metadata")
    try:
        meta = CheckpointMeta.model_validate_json(buf[pos : pos + meta_len])
    except ValidationError as e:
        raise CorruptCheckpointError(f"unreadable checkpoint metadata: {e}") from e
    pos += meta_len

    params: Dict[str, Matrix] = {}
    for info in meta.tensors:
        if pos + _SHAPE.size > len(buf):
            raise CorruptCheckpointError(f"checkpoint truncated before tensor {info.name}")
        rows, cols = _SHAPE.unpack_from(buf, pos)
        pos += _SHAPE.size
        if (rows, cols) != (info.rows, info.cols):
            raise CorruptCheckpointError(f"tensor {info.name}: shape {rows}x{cols} disagrees with metadata")
        nbytes = rows * cols * _F64.itemsize
        if pos + nbytes > len(buf):
            raise CorruptCheckpointError(f"checkpoint truncated inside tensor {info.name}")
        arr = np.frombuffer(buf, dtype=_F64, count=rows * cols, offset=pos).reshape(rows, cols)
        try:
            params[info.name] = Matrix(arr)
        except NumericError as e:
            raise CorruptCheckpointError(f"tensor {info.name}: {e}") from e
        pos += nbytes
    if pos != len(buf):
        raise CorruptCheckpointError(f"{len(buf) - pos} trailing bytes after last tensor")

    bounds = None
    if meta.raw_min is not None and meta.raw_max is not None:
        bounds = Bounds(meta.raw_min, meta.raw_max)
    checkpoint = Checkpoint(
        kind=meta.kind,
        params=params,
        window=meta.window,
        horizon=meta.horizon,
        units=meta.units,
        series_name=meta.series_name,
        bounds=bounds,
        train_config=meta.train_config,
        version=version,
    )
    try:
        checkpoint.to_state()
    except (KeyError, ValueError) as e:
        raise CorruptCheckpointError(f"checkpoint tensors do not form a {meta.kind} model: {e}") from e
    return checkpoint


def save_checkpoint(c: Checkpoint, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(encode_checkpoint(c))
    except OSError as e:
        raise CheckpointIOError(f"cannot write checkpoint {path}: {e}") from e
    return path


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    try:
        buf = Path(path).read_bytes()
    except OSError as e:
        raise CheckpointIOError(f"cannot read checkpoint {path}: {e}") from e
    return decode_checkpoint(buf)
