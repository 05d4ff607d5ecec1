"""
ModelState: recurrent cell + dense head, fixed (units, w, f), and gradient buffers
whose shapes mirror the parameters. Parameters are immutable matrices; updates swap
them through set_params, which is the single mutation handle.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Union

import numpy as np

from .. import config as cfg
from ..errors import ArgumentError, NumericError, ShapeError
from ..numkit import Matrix, Rng, add, scale, sub, sum_squares, zeros
from .dense import dense_backward, dense_forward
from .gru import gru_backward, gru_forward_batch
from .lstm import lstm_backward, lstm_forward_batch
from .params import GRU_GATES, LSTM_GATES, DenseParams, GateParams, GruParams, LstmParams
from .windows import as_column_batch, as_window_batch

CellParams = Union[LstmParams, GruParams]

PREDICT_CHUNK = 512


@dataclass
class ModelState:
    kind: str
    cell: CellParams
    head: DenseParams
    window: int
    grads: Dict[str, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in cfg.NETWORK_MODELS:
            raise ArgumentError(f"unknown model kind '{self.kind}'")
        expected = LstmParams if self.kind == cfg.MODEL_LSTM else GruParams
        if not isinstance(self.cell, expected):
            raise ArgumentError(f"{self.kind} model needs {expected.__name__}")
        if self.head.units != self.cell.units:
            raise ShapeError(f"head expects {self.head.units} units, cell has {self.cell.units}")
        if self.window < 1:
            raise ArgumentError(f"window must be >= 1, got {self.window}")
        if not self.grads:
            self.zero_grads()

    @property
    def units(self) -> int:
        return self.cell.units

    @property
    def horizon(self) -> int:
        return self.head.horizon

    def named_params(self) -> Dict[str, Matrix]:
        out = self.cell.named()
        out.update(self.head.named())
        return out

    def set_params(self, named: Dict[str, Matrix]) -> None:
        current = self.named_params()
        if set(named) != set(current):
            raise ShapeError(f"parameter names differ: {sorted(set(named) ^ set(current))}")
        for k, m in named.items():
            if m.shape != current[k].shape:
                raise ShapeError(f"{k}: expected {current[k].shape}, got {m.shape}")
        cell_type = LstmParams if self.kind == cfg.MODEL_LSTM else GruParams
        self.cell = cell_type.from_named(named)
        self.head = DenseParams.from_named(named)

    def zero_grads(self) -> None:
        self.grads = {k: zeros(*m.shape) for k, m in self.named_params().items()}

    def _encode(self, windows: Matrix):
        if self.kind == cfg.MODEL_LSTM:
            trace = lstm_forward_batch(self.cell, windows)
        else:
            trace = gru_forward_batch(self.cell, windows)
        return trace

    def forward(self, windows: Union[Matrix, Sequence[float]]) -> Matrix:
        """Forecast matrix f x B for a w x B window batch."""
        batch = as_window_batch(windows, self.window)
        return dense_forward(self.head, self._encode(batch).final_hidden)

    def predict(self, windows: np.ndarray) -> np.ndarray:
        """N x w array of windows -> N x f array of forecasts."""
        windows = np.asarray(windows, dtype=np.float64)
        if windows.ndim != 2 or windows.shape[1] != self.window:
            raise ShapeError(f"expected N x {self.window} windows, got shape {windows.shape}")
        out = []
        for start in range(0, windows.shape[0], PREDICT_CHUNK):
            chunk = Matrix(windows[start : start + PREDICT_CHUNK].T)
            out.append(self.forward(chunk).values.T)
        return np.vstack(out) if out else np.zeros((0, self.horizon))

    def backward_batch(self, windows: Matrix, targets: Matrix, accumulate: bool = False) -> float:
        """
        Mean MSE over the batch; fills grads with the mean per-sample gradient.
        With accumulate=True the new gradients are added to the existing buffers.
        """
        windows = as_window_batch(windows, self.window)
        targets = as_column_batch(targets, self.horizon, "target")
        if targets.cols != windows.cols:
            raise ShapeError(f"{windows.cols} windows but {targets.cols} targets")
        trace = self._encode(windows)
        h = trace.final_hidden
        pred = dense_forward(self.head, h)
        diff = sub(pred, targets)
        denom = self.horizon * windows.cols
        loss = sum_squares(diff) / denom
        if not math.isfinite(loss):
            raise NumericError("non-finite loss")

        dy = scale(diff, 2.0 / denom)
        dW, db, dh = dense_backward(self.head, h, dy)
        if self.kind == cfg.MODEL_LSTM:
            grads = lstm_backward(self.cell, trace, dh)
        else:
            grads = gru_backward(self.cell, trace, dh)
        grads["head.W"] = dW
        grads["head.b"] = db
        if accumulate:
            grads = {k: add(self.grads[k], g) for k, g in grads.items()}
        self.grads = grads
        return loss


def backward(
    state: ModelState,
    window: Union[Matrix, Sequence[float]],
    target: Union[Matrix, Sequence[float]],
    accumulate: bool = False,
) -> float:
    """Single-sample MSE loss (1/f) sum_k (y_hat_k - y_k)^2; gradients land in state.grads."""
    return state.backward_batch(as_window_batch(window), as_column_batch(target, None, "target"), accumulate)


def _init_gate(rng: Rng, units: int, bound: float) -> GateParams:
    W = rng.uniform(-bound, bound, units, 1)
    U = rng.uniform(-bound, bound, units, units)
    return GateParams(W=W, U=U, b=zeros(units, 1))


def init_model_state(kind: str, units: int, window: int, horizon: int, rng: Rng) -> ModelState:
    """Weights uniform in [-1/sqrt(units), 1/sqrt(units)], biases zero."""
    if units < 1 or horizon < 1:
        raise ArgumentError(f"units and horizon must be >= 1, got units={units}, horizon={horizon}")
    bound = 1.0 / math.sqrt(units)
    if kind == cfg.MODEL_LSTM:
        cell: CellParams = LstmParams({g: _init_gate(rng, units, bound) for g in LSTM_GATES})
    elif kind == cfg.MODEL_GRU:
        cell = GruParams({g: _init_gate(rng, units, bound) for g in GRU_GATES})
    else:
        raise ArgumentError(f"unknown model kind '{kind}'")
    head = DenseParams(W=rng.uniform(-bound, bound, horizon, units), b=zeros(horizon, 1))
    return ModelState(kind=kind, cell=cell, head=head, window=window)
