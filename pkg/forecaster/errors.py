"""Error hierarchy. Each class carries the CLI exit code it maps to."""

from typing import Optional

from . import config as cfg


class ForecasterError(Exception):
    exit_code = cfg.EXIT_USAGE


class ArgumentError(ForecasterError, ValueError):
    """Invalid argument or violated precondition."""


class ShapeError(ArgumentError):
    """Matrix or sequence dimensions do not agree."""


class DegenerateSeriesError(ArgumentError):
    """Series has zero range and cannot be min-max normalized."""


class ParseError(ArgumentError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(ForecasterError):
    """Experiment configuration invalid or unreadable."""


class CheckpointError(ForecasterError):
    pass


class CheckpointIOError(CheckpointError, OSError):
    pass


class CheckpointVersionError(CheckpointError):
    pass


class CorruptCheckpointError(CheckpointError):
    pass


class NumericError(ForecasterError, ArithmeticError):
    """Non-finite value produced; epoch/batch context attached when known."""

    exit_code = cfg.EXIT_NUMERIC

    def __init__(self, message: str, epoch: Optional[int] = None, batch: Optional[int] = None):
        self.epoch = epoch
        self.batch = batch
        where = []
        if epoch is not None:
            where.append(f"epoch {epoch}")
        if batch is not None:
            where.append(f"batch {batch}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class StageError(ForecasterError):
    """A pipeline stage failed; keeps the exit code of the underlying error."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", cfg.EXIT_USAGE)
        super().__init__(f"stage '{stage}' failed: {cause}")
