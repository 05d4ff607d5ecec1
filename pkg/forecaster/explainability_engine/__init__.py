from .logger import RunLog

__all__ = ["RunLog"]
