"""Linear dense head: f-step forecast = W h + b. No activation, no clamping."""

from typing import Sequence, Tuple, Union

from ..numkit import Matrix, add, matmul, sum_cols, tile_cols, transpose
from .params import DenseParams
from .windows import as_column_batch


def dense_forward(head: DenseParams, h: Union[Matrix, Sequence[float]]) -> Matrix:
    """h is units x B (or a units-vector); result is f x B."""
    hm = as_column_batch(h, head.units, "hidden state")
    return add(matmul(head.W, hm), tile_cols(head.b, hm.cols))


def dense_backward(head: DenseParams, h: Matrix, dy: Matrix) -> Tuple[Matrix, Matrix, Matrix]:
    """Returns (dW, db, dh) for upstream gradient dy (f x B)."""
    return matmul(dy, transpose(h)), sum_cols(dy), matmul(transpose(head.W), dy)
