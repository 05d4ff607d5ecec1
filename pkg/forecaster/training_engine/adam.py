"""
Adam optimizer over named parameter matrices.

    m <- b1 m + (1 - b1) g          v <- b2 v + (1 - b2) g^2
    m_hat = m / (1 - b1^t)          v_hat = v / (1 - b2^t)
    theta <- theta - lr * m_hat / (sqrt(v_hat) + eps)
"""

import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .. import config as cfg
from ..errors import ArgumentError, NumericError, ShapeError
from ..numkit import Matrix, scale, sum_squares, zeros


@dataclass
class AdamState:
    learning_rate: float = cfg.LEARNING_RATE
    beta1: float = cfg.BETA1
    beta2: float = cfg.BETA2
    epsilon: float = cfg.ADAM_EPSILON
    t: int = 0
    m: Dict[str, Matrix] = field(default_factory=dict)
    v: Dict[str, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ArgumentError(f"learning rate must be > 0, got {self.learning_rate}")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ArgumentError(f"betas must lie in [0, 1), got {self.beta1}, {self.beta2}")
        if not self.epsilon > 0:
            raise ArgumentError(f"epsilon must be > 0, got {self.epsilon}")

    def _ensure_moments(self, params: Dict[str, Matrix]) -> None:
        for k, p in params.items():
            if k not in self.m:
                self.m[k] = zeros(*p.shape)
                self.v[k] = zeros(*p.shape)


def adam_step(adam: AdamState, params: Dict[str, Matrix], grads: Dict[str, Matrix]) -> Dict[str, Matrix]:
    """One update; returns the new parameter mapping and advances adam.t by one."""
    if set(params) != set(grads):
        raise ShapeError(f"params/grads names differ: {sorted(set(params) ^ set(grads))}")
    adam._ensure_moments(params)
    for k, p in params.items():
        g = grads[k]
        if not (p.shape == g.shape == adam.m[k].shape == adam.v[k].shape):
            raise ShapeError(f"{k}: param {p.shape}, grad {g.shape}, moments {adam.m[k].shape}")
        if not np.isfinite(g.values).all():
            raise NumericError(f"non-finite gradient for {k}")

    adam.t += 1
    b1, b2 = adam.beta1, adam.beta2
    c1 = 1.0 / (1.0 - b1 ** adam.t)
    c2 = 1.0 / (1.0 - b2 ** adam.t)
    updated = {}
    with np.errstate(all="ignore"):
        for k, p in params.items():
            g = grads[k].values
            m = b1 * adam.m[k].values + (1.0 - b1) * g
            v = b2 * adam.v[k].values + (1.0 - b2) * (g * g)
            adam.m[k], adam.v[k] = Matrix._wrap(m), Matrix._wrap(v)
            step = (m * c1) / (np.sqrt(v * c2) + adam.epsilon)
            updated[k] = Matrix._wrap(p.values - adam.learning_rate * step)
    return updated


def global_norm(grads: Dict[str, Matrix]) -> float:
    return math.sqrt(sum(sum_squares(g) for g in grads.values()))


def clip_by_global_norm(grads: Dict[str, Matrix], max_norm: float) -> Dict[str, Matrix]:
    norm = global_norm(grads)
    if norm <= max_norm:
        return grads
    factor = max_norm / norm
    return {k: scale(g, factor) for k, g in grads.items()}
