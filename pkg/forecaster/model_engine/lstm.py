"""
LSTM cell: forward pass over a window batch and backpropagation through time.

    i = sig(W_i x + U_i h + b_i)    f = sig(W_f x + U_f h + b_f)
    o = sig(W_o x + U_o h + b_o)    g = tanh(W_g x + U_g h + b_g)
    c' = f * c + i * g              h' = o * tanh(c')

h_0 = c_0 = 0 for every window. A batch holds one window per column (w x B).
The four gates are stacked (order input, forget, output, candidate) so each step is
one recurrent matmul; the step loop runs on raw arrays and the trace is checked for
finiteness once.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import NumericError
from ..numkit import Matrix, sigmoid_values
from .params import LSTM_GATES, LstmParams
from .windows import as_window_batch


def stack_gates(params, gates: Sequence[str], field: str) -> np.ndarray:
    return np.vstack([getattr(params[g], field).values for g in gates])


def split_grads(
    gates: Sequence[str], units: int, dW: np.ndarray, dU: np.ndarray, db: np.ndarray
) -> Dict[str, Matrix]:
    grads: Dict[str, Matrix] = {}
    for k, gate in enumerate(gates):
        rows = slice(k * units, (k + 1) * units)
        grads[f"cell.{gate}.W"] = Matrix._wrap(dW[rows])
        grads[f"cell.{gate}.U"] = Matrix._wrap(dU[rows])
        grads[f"cell.{gate}.b"] = Matrix._wrap(db[rows])
    return grads


def flat_steps(a: np.ndarray) -> np.ndarray:
    """(w, n, B) -> (n, w*B) with columns ordered by (step, sample)."""
    return a.transpose(1, 0, 2).reshape(a.shape[1], -1)


@dataclass
class LstmTrace:
    inputs: np.ndarray  # w x B
    hidden: np.ndarray  # (w+1) x units x B, h_0..h_w
    cell: np.ndarray  # (w+1) x units x B, c_0..c_w
    gates: np.ndarray  # w x 4*units x B, activations i, f, o, g stacked

    @property
    def final_hidden(self) -> Matrix:
        return Matrix._wrap(self.hidden[-1])

    def hidden_states(self) -> List[Matrix]:
        return [Matrix._wrap(h) for h in self.hidden]

    def cell_states(self) -> List[Matrix]:
        return [Matrix._wrap(c) for c in self.cell]


def lstm_forward_batch(params: LstmParams, windows: Matrix) -> LstmTrace:
    units, batch = params.units, windows.cols
    steps = windows.rows
    W = stack_gates(params, LSTM_GATES, "W")
    U = stack_gates(params, LSTM_GATES, "U")
    b = stack_gates(params, LSTM_GATES, "b")
    X = windows.values

    H = np.zeros((steps + 1, units, batch))
    C = np.zeros((steps + 1, units, batch))
    A = np.empty((steps, 4 * units, batch))
    with np.errstate(all="ignore"):
        xin = W[None, :, :] * X[:, None, :] + b[None, :, :]
        s = 3 * units
        for t in range(steps):
            a = xin[t] + U @ H[t]
            a[:s] = sigmoid_values(a[:s])
            a[s:] = np.tanh(a[s:])
            A[t] = a
            C[t + 1] = a[units : 2 * units] * C[t] + a[:units] * a[s:]
            H[t + 1] = a[2 * units : s] * np.tanh(C[t + 1])
    if not (np.isfinite(H).all() and np.isfinite(C).all()):
        raise NumericError("non-finite LSTM state")
    return LstmTrace(inputs=X, hidden=H, cell=C, gates=A)


def lstm_forward(
    params: LstmParams,
    window: Union[Matrix, Sequence[float]],
    window_len: Optional[int] = None,
) -> Tuple[List[Matrix], List[Matrix], Matrix]:
    """Single window (or batch). Returns (hidden trace, cell trace, h_w)."""
    trace = lstm_forward_batch(params, as_window_batch(window, window_len))
    return trace.hidden_states(), trace.cell_states(), trace.final_hidden


def lstm_backward(params: LstmParams, trace: LstmTrace, dh_final: Matrix) -> Dict[str, Matrix]:
    """BPTT from dL/dh_w. Returns gradients keyed like LstmParams.named()."""
    units = params.units
    U = stack_gates(params, LSTM_GATES, "U")
    Ut = U.T
    H, C, A, X = trace.hidden, trace.cell, trace.gates, trace.inputs
    steps = A.shape[0]
    s = 3 * units

    dA = np.empty_like(A)
    dh = dh_final.values
    dc = np.zeros_like(dh)
    with np.errstate(all="ignore"):
        for t in range(steps - 1, -1, -1):
            a = A[t]
            i, f, o, g = a[:units], a[units : 2 * units], a[2 * units : s], a[s:]
            tc = np.tanh(C[t + 1])
            dc = dc + dh * o * (1.0 - tc * tc)
            d = dA[t]
            d[:units] = dc * g * i * (1.0 - i)
            d[units : 2 * units] = dc * C[t] * f * (1.0 - f)
            d[2 * units : s] = dh * tc * o * (1.0 - o)
            d[s:] = dc * i * (1.0 - g * g)
            dc = dc * f
            dh = Ut @ d

        flat = flat_steps(dA)
        dU = flat @ flat_steps(H[:-1]).T
        dW = np.tensordot(dA, X, axes=([0, 2], [0, 1]))[:, None]
        db = dA.sum(axis=(0, 2))[:, None]
    return split_grads(LSTM_GATES, units, dW, dU, db)
