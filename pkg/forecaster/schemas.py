"""
Pydantic models for training and experiment configuration.
JSON is the file format; the CLI overrides individual fields.
"""

from pathlib import Path
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from . import config as cfg
from .errors import ArgumentError, ConfigError

ModelName = Literal["lstm", "gru", "baseline"]
ReportUnits = Literal["normalized", "raw"]

_U64_MAX = (1 << 64) - 1


class TrainConfig(BaseModel):
    """Training knobs. Ranges are checked by validate_ranges() so callers get ArgumentError."""

    model_config = ConfigDict(extra="forbid")

    epochs: int = cfg.EPOCHS
    batch_size: int = cfg.BATCH_SIZE
    seed: int = Field(cfg.SEED, ge=0, le=_U64_MAX)
    units: int = cfg.UNITS
    shuffle: bool = True
    learning_rate: float = cfg.LEARNING_RATE
    beta1: float = cfg.BETA1
    beta2: float = cfg.BETA2
    epsilon: float = cfg.ADAM_EPSILON
    clip_norm: Optional[float] = None
    fit_bounds_on_train: bool = False
    degenerate_midpoint: bool = False

    def validate_ranges(self) -> "TrainConfig":
        if self.epochs < 1:
            raise ArgumentError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ArgumentError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.units < 1:
            raise ArgumentError(f"units must be >= 1, got {self.units}")
        if not self.learning_rate > 0:
            raise ArgumentError(f"learning_rate must be > 0, got {self.learning_rate}")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ArgumentError(f"betas must lie in [0, 1), got {self.beta1}, {self.beta2}")
        if not self.epsilon > 0:
            raise ArgumentError(f"epsilon must be > 0, got {self.epsilon}")
        if self.clip_norm is not None and not self.clip_norm > 0:
            raise ArgumentError(f"clip_norm must be > 0 when set, got {self.clip_norm}")
        return self


class ActivitiesParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_series: int = Field(cfg.ACTIVITIES_SERIES, ge=1)
    length: int = Field(cfg.ACTIVITIES_LENGTH, ge=2)
    samples_per_day: int = Field(cfg.SAMPLES_PER_DAY, ge=1)
    high_level: float = cfg.HIGH_LEVEL
    low_level: float = cfg.LOW_LEVEL
    noise_sd: float = Field(cfg.NOISE_SD, ge=0)
    amplitude_jitter: float = Field(cfg.AMPLITUDE_JITTER, ge=0, lt=1)


class RandomWalkParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_series: int = Field(cfg.RANDOM_WALK_SERIES, ge=1)
    length: int = Field(cfg.RANDOM_WALK_LENGTH, ge=2)
    start: float = Field(cfg.RANDOM_WALK_START, gt=0)
    step_sd: float = Field(cfg.RANDOM_WALK_STEP_SD, ge=0)


class DatasetSource(BaseModel):
    """Either a named generator with its parameters, or a wide CSV file."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["activities", "random-walk", "csv"] = "activities"
    activities: ActivitiesParams = Field(default_factory=ActivitiesParams)
    random_walk: RandomWalkParams = Field(default_factory=RandomWalkParams)
    csv_path: Optional[str] = None
    date_column: bool = False

    @model_validator(mode="after")
    def _csv_needs_path(self) -> "DatasetSource":
        if self.kind == "csv" and not self.csv_path:
            raise ValueError("dataset kind 'csv' needs csv_path")
        return self


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dataset: DatasetSource = Field(default_factory=DatasetSource)
    window: int = Field(cfg.WINDOW, ge=1)
    horizons: List[int] = Field(default_factory=lambda: list(cfg.HORIZONS), min_length=1)
    test_len: int = Field(cfg.TEST_LEN, ge=1)
    models: List[ModelName] = Field(default_factory=lambda: list(cfg.MODELS), min_length=1)
    train_series_index: int = Field(cfg.TRAIN_SERIES_INDEX, ge=0)
    train: TrainConfig = Field(default_factory=TrainConfig)
    output_dir: str = "runs/default"
    report_units: ReportUnits = cfg.REPORT_UNITS_NORMALIZED
    plot_limit: int = Field(cfg.PLOT_LIMIT, ge=1)
    plot_stride: int = Field(cfg.PLOT_STRIDE, ge=1)
    workers: int = Field(4, ge=1)

    @model_validator(mode="after")
    def _check(self) -> "ExperimentConfig":
        bad = [h for h in self.horizons if h < 1]
        if bad:
            raise ValueError(f"horizons must be >= 1, got {bad}")
        if len(set(self.horizons)) != len(self.horizons):
            raise ValueError(f"duplicate horizons {self.horizons}")
        if len(set(self.models)) != len(self.models):
            raise ValueError(f"duplicate models {self.models}")
        for h in self.horizons:
            if self.test_len < h:
                raise ValueError(f"test_len {self.test_len} shorter than horizon {h}")
        try:
            self.train.validate_ranges()
        except ArgumentError as e:
            raise ValueError(str(e)) from e
        return self

    @property
    def seed(self) -> int:
        return self.train.seed

    @property
    def network_models(self) -> List[str]:
        return [m for m in self.models if m in cfg.NETWORK_MODELS]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise ConfigError(f"invalid experiment config: {e}") from e


def load_experiment_config(path: Union[str, Path]) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    return ExperimentConfig.from_json(text)


def save_experiment_config(config: ExperimentConfig, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(config.to_json() + "\n", encoding="utf-8")
    return path


def apply_overrides(config: ExperimentConfig, overrides: dict) -> ExperimentConfig:
    """Dotted-key overrides ('train.epochs': 5) re-validated as a whole."""
    data = config.model_dump()
    for key, value in overrides.items():
        if value is None:
            continue
        node = data
        parts = key.split(".")
        for p in parts[:-1]:
            node = node[p]
        node[parts[-1]] = value
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration override: {e}") from e
