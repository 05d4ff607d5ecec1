"""
Run log: structured record of every pipeline event (data loaded, epoch finished,
checkpoint written, series evaluated, plot written). Each entry carries a short
plain-language summary; entries are mirrored to the standard `forecaster` logger.
"""

import copy
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

logger = logging.getLogger("forecaster")


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _plain_language(stage: str, event: str, details: Dict[str, Any]) -> str:
    if event == "epoch":
        return (
            f"{details.get('model')} f={details.get('horizon')}: epoch {details.get('epoch')}"
            f"/{details.get('epochs')} mean training loss {_fmt(details.get('loss'))}"
        )
    if event == "series_evaluated":
        return (
            f"{details.get('model')} f={details.get('horizon')} on {details.get('series')}: "
            f"RMSE {_fmt(details.get('rmse'))}, DA {_fmt(details.get('da'))}"
        )
    if event == "aggregate":
        return (
            f"{details.get('model')} f={details.get('horizon')} over {details.get('n_series')} series: "
            f"RMSE {_fmt(details.get('mean_rmse'))} +/- {_fmt(details.get('sd_rmse'))}, "
            f"DA {_fmt(details.get('mean_da'))} +/- {_fmt(details.get('sd_da'))}"
        )
    parts = ", ".join(f"{k}={_fmt(v)}" for k, v in details.items())
    return f"{stage}: {event.replace('_', ' ')}" + (f" ({parts})" if parts else "")


class RunLog:
    """
    Append-only list of event dicts: timestamp, stage, event, details, summary.
    Epoch events are logged at DEBUG so long trainings stay readable at INFO.
    """

    QUIET_EVENTS = ("epoch",)

    def __init__(self):
        self._entries: List[Dict[str, Any]] = []

    def log(self, stage: str, event: str, **details: Any) -> Dict[str, Any]:
        summary = _plain_language(stage, event, details)
        entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "stage": stage,
            "event": event,
            "details": copy.deepcopy(details),
            "summary": summary,
        }
        self._entries.append(entry)
        level = logging.DEBUG if event in self.QUIET_EVENTS else logging.INFO
        logger.log(level, summary)
        return entry

    def get_logs(self, limit: Optional[int] = None, stage: Optional[str] = None) -> List[Dict[str, Any]]:
        """Entries oldest first; optionally filtered by stage and limited to the last N."""
        entries = [e for e in self._entries if stage is None or e["stage"] == stage]
        if limit is not None:
            return entries[-limit:]
        return list(entries)

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self._entries, indent=2, default=str) + "\n", encoding="utf-8")
        return path

    def clear(self) -> None:
        self._entries.clear()
