# Time-series forecasting toolkit: LSTM/GRU from scratch vs persistence baseline
__version__ = "0.1.0"
