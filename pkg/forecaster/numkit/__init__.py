from .matrix import (
    Matrix,
    add,
    div,
    elementwise,
    identity,
    matmul,
    mul,
    one_minus,
    ones,
    row,
    scale,
    sigmoid,
    sigmoid_values,
    sqrt,
    square,
    sub,
    sum_cols,
    sum_squares,
    tanh,
    tile_cols,
    transpose,
    zeros,
)
from .rng import Rng, rng_uniform

__all__ = [
    "Matrix",
    "Rng",
    "add",
    "div",
    "elementwise",
    "identity",
    "matmul",
    "mul",
    "one_minus",
    "ones",
    "rng_uniform",
    "row",
    "scale",
    "sigmoid",
    "sigmoid_values",
    "sqrt",
    "square",
    "sub",
    "sum_cols",
    "sum_squares",
    "tanh",
    "tile_cols",
    "transpose",
    "zeros",
]
