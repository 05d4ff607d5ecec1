"""
GRU cell, reset gate applied inside the candidate's recurrent term:

    z = sig(W_z x + U_z h + b_z)    r = sig(W_r x + U_r h + b_r)
    n = tanh(W_n x + U_n (r * h) + b_n)
    h' = (1 - z) * n + z * h

h_0 = 0 for every window. Update and reset share one stacked recurrent matmul per step.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import NumericError
from ..numkit import Matrix, sigmoid_values
from .lstm import flat_steps, split_grads, stack_gates
from .params import GRU_GATES, GruParams
from .windows import as_window_batch


@dataclass
class GruTrace:
    inputs: np.ndarray  # w x B
    hidden: np.ndarray  # (w+1) x units x B, h_0..h_w
    gates: np.ndarray  # w x 3*units x B, activations z, r, n stacked
    gated: np.ndarray  # w x units x B, r * h_{t-1}

    @property
    def final_hidden(self) -> Matrix:
        return Matrix._wrap(self.hidden[-1])

    def hidden_states(self) -> List[Matrix]:
        return [Matrix._wrap(h) for h in self.hidden]


def gru_forward_batch(params: GruParams, windows: Matrix) -> GruTrace:
    units, batch = params.units, windows.cols
    steps = windows.rows
    W = stack_gates(params, GRU_GATES, "W")
    b = stack_gates(params, GRU_GATES, "b")
    U_zr = stack_gates(params, GRU_GATES[:2], "U")
    U_n = params["candidate"].U.values
    X = windows.values

    H = np.zeros((steps + 1, units, batch))
    A = np.empty((steps, 3 * units, batch))
    RH = np.empty((steps, units, batch))
    with np.errstate(all="ignore"):
        xin = W[None, :, :] * X[:, None, :] + b[None, :, :]
        for t in range(steps):
            h = H[t]
            a = A[t]
            a[: 2 * units] = sigmoid_values(xin[t, : 2 * units] + U_zr @ h)
            z, r = a[:units], a[units : 2 * units]
            RH[t] = r * h
            a[2 * units :] = np.tanh(xin[t, 2 * units :] + U_n @ RH[t])
            H[t + 1] = (1.0 - z) * a[2 * units :] + z * h
    if not np.isfinite(H).all():
        raise NumericError("non-finite GRU state")
    return GruTrace(inputs=X, hidden=H, gates=A, gated=RH)


def gru_forward(
    params: GruParams,
    window: Union[Matrix, Sequence[float]],
    window_len: Optional[int] = None,
) -> Tuple[List[Matrix], Matrix]:
    """Single window (or batch). Returns (hidden trace, h_w)."""
    trace = gru_forward_batch(params, as_window_batch(window, window_len))
    return trace.hidden_states(), trace.final_hidden


def gru_backward(params: GruParams, trace: GruTrace, dh_final: Matrix) -> Dict[str, Matrix]:
    units = params.units
    U_zr_t = stack_gates(params, GRU_GATES[:2], "U").T
    U_n_t = params["candidate"].U.values.T
    H, A, RH, X = trace.hidden, trace.gates, trace.gated, trace.inputs
    steps = A.shape[0]

    dA = np.empty_like(A)
    dh = dh_final.values
    with np.errstate(all="ignore"):
        for t in range(steps - 1, -1, -1):
            h_prev = H[t]
            a = A[t]
            z, r, n = a[:units], a[units : 2 * units], a[2 * units :]
            d = dA[t]

            d[2 * units :] = dh * (1.0 - z) * (1.0 - n * n)
            d_rh = U_n_t @ d[2 * units :]
            d[:units] = dh * (h_prev - n) * z * (1.0 - z)
            d[units : 2 * units] = d_rh * h_prev * r * (1.0 - r)
            dh = dh * z + d_rh * r + U_zr_t @ d[: 2 * units]

        dU = np.vstack(
            [
                flat_steps(dA[:, : 2 * units]) @ flat_steps(H[:-1]).T,
                flat_steps(dA[:, 2 * units :]) @ flat_steps(RH).T,
            ]
        )
        dW = np.tensordot(dA, X, axes=([0, 2], [0, 1]))[:, None]
        db = dA.sum(axis=(0, 2))[:, None]
    return split_grads(GRU_GATES, units, dW, dU, db)
