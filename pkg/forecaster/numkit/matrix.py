"""
Dense 2-D float64 matrices and the elementwise/matrix operations used by the cells.
Shapes must match exactly; nothing broadcasts. Every result is checked for finiteness.
"""

from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import ArgumentError, NumericError, ShapeError

ArrayLike = Union[np.ndarray, Sequence[Sequence[float]]]


class Matrix:
    """
    Immutable row-major float64 matrix.
    The wrapped ndarray is flagged read-only; operations always return new matrices.
    """

    __slots__ = ("_values",)

    def __init__(self, values: ArrayLike):
        arr = np.array(values, dtype=np.float64)
        self._values = _checked(arr)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Matrix":
        """Adopt a freshly computed array without copying it."""
        m = cls.__new__(cls)
        m._values = _checked(np.ascontiguousarray(arr, dtype=np.float64))
        return m

    @property
    def rows(self) -> int:
        return self._values.shape[0]

    @property
    def cols(self) -> int:
        return self._values.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._values.shape

    @property
    def data(self) -> np.ndarray:
        """Row-major flat view, length rows*cols."""
        return self._values.reshape(-1)

    @property
    def values(self) -> np.ndarray:
        """Read-only 2-D view."""
        return self._values

    def to_numpy(self) -> np.ndarray:
        return self._values.copy()

    def __getitem__(self, idx: Tuple[int, int]) -> float:
        return float(self._values[idx])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._values, other._values))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {self._values.tolist()!r})"


def _checked(arr: np.ndarray) -> np.ndarray:
    if arr.ndim != 2:
        raise ShapeError(f"matrix must be 2-D, got {arr.ndim}-D array of shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"matrix dimensions must be positive, got {arr.shape[0]}x{arr.shape[1]}")
    if not np.isfinite(arr).all():
        raise NumericError(f"non-finite value in {arr.shape[0]}x{arr.shape[1]} matrix")
    arr.setflags(write=False)
    return arr


def _shape(m: Matrix) -> str:
    return f"{m.rows}x{m.cols}"


def _require_same_shape(a: Matrix, b: Matrix, op: str) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"{op}: shape mismatch {_shape(a)} vs {_shape(b)}")


def zeros(rows: int, cols: int) -> Matrix:
    return Matrix._wrap(np.zeros((rows, cols)))


def ones(rows: int, cols: int) -> Matrix:
    return Matrix._wrap(np.ones((rows, cols)))


def identity(n: int) -> Matrix:
    return Matrix._wrap(np.eye(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ShapeError(f"matmul: cannot multiply {_shape(a)} by {_shape(b)}")
    return Matrix._wrap(a.values @ b.values)


def transpose(a: Matrix) -> Matrix:
    return Matrix._wrap(a.values.T)


def sigmoid_values(x: np.ndarray) -> np.ndarray:
    """Logistic function on a raw array; tanh form never overflows and is exactly symmetric around 0."""
    return 0.5 * (1.0 + np.tanh(0.5 * x))


_UNARY: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sigmoid": sigmoid_values,
    "tanh": np.tanh,
    "one_minus": lambda x: 1.0 - x,
    "square": np.square,
    "sqrt": np.sqrt,
}

_BINARY: Dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "add": np.add,
    "sub": np.subtract,
    "mul": np.multiply,
    "div": np.divide,
}


def elementwise(op: str, a: Matrix, b: Optional[Matrix] = None) -> Matrix:
    """Apply a named elementwise op. Binary ops need identical shapes."""
    if op in _BINARY:
        if b is None:
            raise ArgumentError(f"elementwise '{op}' needs two operands")
        _require_same_shape(a, b, op)
        with np.errstate(all="ignore"):
            return Matrix._wrap(_BINARY[op](a.values, b.values))
    if op in _UNARY:
        if b is not None:
            raise ArgumentError(f"elementwise '{op}' takes one operand")
        if op == "sqrt" and (a.values < 0).any():
            raise NumericError("sqrt of negative entry")
        return Matrix._wrap(_UNARY[op](a.values))
    raise ArgumentError(f"unknown elementwise op '{op}'")


def add(a: Matrix, b: Matrix) -> Matrix:
    return elementwise("add", a, b)


def sub(a: Matrix, b: Matrix) -> Matrix:
    return elementwise("sub", a, b)


def mul(a: Matrix, b: Matrix) -> Matrix:
    return elementwise("mul", a, b)


def div(a: Matrix, b: Matrix) -> Matrix:
    return elementwise("div", a, b)


def sigmoid(a: Matrix) -> Matrix:
    return elementwise("sigmoid", a)


def tanh(a: Matrix) -> Matrix:
    return elementwise("tanh", a)


def one_minus(a: Matrix) -> Matrix:
    return elementwise("one_minus", a)


def square(a: Matrix) -> Matrix:
    return elementwise("square", a)


def sqrt(a: Matrix) -> Matrix:
    return elementwise("sqrt", a)


def scale(a: Matrix, s: float) -> Matrix:
    return Matrix._wrap(a.values * float(s))


def tile_cols(a: Matrix, n: int) -> Matrix:
    """Repeat a column vector n times side by side (explicit, replaces broadcasting)."""
    if a.cols != 1:
        raise ShapeError(f"tile_cols: expected a column vector, got {_shape(a)}")
    if n < 1:
        raise ArgumentError(f"tile_cols: n must be >= 1, got {n}")
    return Matrix._wrap(np.repeat(a.values, n, axis=1))


def sum_cols(a: Matrix) -> Matrix:
    """Sum across columns; result is a rows x 1 column vector."""
    return Matrix._wrap(a.values.sum(axis=1, keepdims=True))


def row(a: Matrix, i: int) -> Matrix:
    if not 0 <= i < a.rows:
        raise ShapeError(f"row {i} out of range for {_shape(a)}")
    return Matrix._wrap(a.values[i : i + 1, :])


def sum_squares(a: Matrix) -> float:
    return float(np.sum(np.square(a.values)))
