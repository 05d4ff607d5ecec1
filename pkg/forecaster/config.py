"""Central configuration for the forecasting toolkit."""

# Data preparation
WINDOW = 60
HORIZONS = (1, 20)
TEST_LEN = 251
TRAIN_SERIES_INDEX = 0

# Model
UNITS = 128
MODEL_LSTM = "lstm"
MODEL_GRU = "gru"
MODEL_BASELINE = "baseline"
NETWORK_MODELS = (MODEL_LSTM, MODEL_GRU)
MODELS = (MODEL_LSTM, MODEL_GRU, MODEL_BASELINE)

# Training
EPOCHS = 200
BATCH_SIZE = 32
SEED = 42
LEARNING_RATE = 0.001
BETA1 = 0.9
BETA2 = 0.999
ADAM_EPSILON = 1e-8

# Activities generator (five busy days, two quiet days)
ACTIVITIES_SERIES = 10
ACTIVITIES_LENGTH = 3584
SAMPLES_PER_DAY = 4
HIGH_LEVEL = 100.0
LOW_LEVEL = 20.0
NOISE_SD = 5.0
AMPLITUDE_JITTER = 0.10
HIGH_DAYS = 5
DAYS_PER_WEEK = 7

# Random-walk generator (stock-like closing prices)
RANDOM_WALK_SERIES = 10
RANDOM_WALK_LENGTH = 3032
RANDOM_WALK_START = 100.0
RANDOM_WALK_STEP_SD = 0.015

# Evaluation / plotting
REPORT_UNITS_NORMALIZED = "normalized"
REPORT_UNITS_RAW = "raw"
PLOT_LIMIT = 100
PLOT_STRIDE = 20
SD_KIND = "sample"

# Checkpoint file format
CHECKPOINT_MAGIC = b"TSFC"
CHECKPOINT_VERSION = 1

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
