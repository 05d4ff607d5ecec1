"""
Training loop: epochs x ceil(N / batch_size) Adam steps on mini-batch MSE.
Batch gradient is the mean of the per-sample gradients. Deterministic given the seed.
"""

from typing import List, Optional, Tuple

import pandas as pd

from ..data_engine import WindowedDataset
from ..errors import ArgumentError, NumericError
from ..explainability_engine import RunLog
from ..model_engine import init_model_state
from ..numkit import Rng
from ..schemas import TrainConfig
from .adam import AdamState, adam_step, clip_by_global_norm
from .checkpoint import Checkpoint


def train(
    kind: str,
    dataset: WindowedDataset,
    config: TrainConfig,
    log: Optional[RunLog] = None,
) -> Tuple[Checkpoint, List[float]]:
    """Returns (checkpoint, per-epoch mean training loss)."""
    config.validate_ranges()
    if dataset.size == 0:
        raise ArgumentError(f"empty training dataset for series '{dataset.series_name}'")

    rng = Rng(config.seed)
    state = init_model_state(kind, config.units, dataset.window, dataset.horizon, rng)
    adam = AdamState(
        learning_rate=config.learning_rate,
        beta1=config.beta1,
        beta2=config.beta2,
        epsilon=config.epsilon,
    )
    n = dataset.size
    history: List[float] = []
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n) if config.shuffle else list(range(n))
        total = 0.0
        for batch_no, start in enumerate(range(0, n, config.batch_size), start=1):
            idx = order[start : start + config.batch_size]
            windows, targets = dataset.batch(idx)
            try:
                loss = state.backward_batch(windows, targets)
                grads = state.grads
                if config.clip_norm is not None:
                    grads = clip_by_global_norm(grads, config.clip_norm)
                state.set_params(adam_step(adam, state.named_params(), grads))
            except NumericError as e:
                raise NumericError(f"{kind} training diverged: {e}", epoch=epoch, batch=batch_no) from e
            total += loss * len(idx)
        epoch_loss = total / n
        history.append(epoch_loss)
        if log is not None:
            log.log(
                "train", "epoch",
                model=kind, horizon=dataset.horizon, epoch=epoch, epochs=config.epochs, loss=epoch_loss,
            )

    checkpoint = Checkpoint.from_state(
        state,
        series_name=dataset.series_name,
        bounds=dataset.bounds,
        train_config=config.model_dump(),
    )
    return checkpoint, history


def loss_history_frame(history: List[float]) -> pd.DataFrame:
    return pd.DataFrame({"epoch": range(1, len(history) + 1), "loss": history})
