from .dense import dense_backward, dense_forward
from .gru import GruTrace, gru_backward, gru_forward, gru_forward_batch
from .lstm import LstmTrace, lstm_backward, lstm_forward, lstm_forward_batch
from .params import GRU_GATES, LSTM_GATES, DenseParams, GateParams, GruParams, LstmParams
from .state import ModelState, backward, init_model_state

__all__ = [
    "DenseParams",
    "GRU_GATES",
    "GateParams",
    "GruParams",
    "GruTrace",
    "LSTM_GATES",
    "LstmParams",
    "LstmTrace",
    "ModelState",
    "backward",
    "dense_backward",
    "dense_forward",
    "gru_backward",
    "gru_forward",
    "gru_forward_batch",
    "init_model_state",
    "lstm_backward",
    "lstm_forward",
    "lstm_forward_batch",
]
