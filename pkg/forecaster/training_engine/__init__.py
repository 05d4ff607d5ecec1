from .adam import AdamState, adam_step, clip_by_global_norm, global_norm
from .checkpoint import (
    Checkpoint,
    decode_checkpoint,
    encode_checkpoint,
    load_checkpoint,
    save_checkpoint,
)
from .trainer import loss_history_frame, train

__all__ = [
    "AdamState",
    "Checkpoint",
    "adam_step",
    "clip_by_global_norm",
    "decode_checkpoint",
    "encode_checkpoint",
    "global_norm",
    "load_checkpoint",
    "loss_history_frame",
    "save_checkpoint",
    "train",
]
