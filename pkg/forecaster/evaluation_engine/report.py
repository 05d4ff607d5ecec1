"""Per-series results aggregated into mean/SD report tables (CSV and aligned text)."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .. import config as cfg
from ..errors import ArgumentError

ResultRow = Tuple[str, float, float]  # (series, rmse, da)


@dataclass(frozen=True)
class EvalReport:
    model: str
    horizon: int
    rows: List[ResultRow]
    mean_rmse: float
    sd_rmse: float
    mean_da: float
    sd_da: float
    metadata: Dict[str, str] = field(default_factory=dict)

    @property
    def n_series(self) -> int:
        return len(self.rows)

    def to_frame(self) -> pd.DataFrame:
        records = [
            {"model": self.model, "horizon": self.horizon, "row": "series", "series": s, "rmse": r, "da": d}
            for s, r, d in self.rows
        ]
        records.append(
            {"model": self.model, "horizon": self.horizon, "row": "mean", "series": "",
             "rmse": self.mean_rmse, "da": self.mean_da}
        )
        records.append(
            {"model": self.model, "horizon": self.horizon, "row": "sd", "series": "",
             "rmse": self.sd_rmse, "da": self.sd_da}
        )
        return pd.DataFrame.from_records(records)


def _sample_sd(values: np.ndarray) -> float:
    # n == 1 has no spread; reported as 0 by convention
    if values.size < 2:
        return 0.0
    return float(np.std(values, ddof=1))


def aggregate(
    results: Sequence[ResultRow],
    model: str = "",
    horizon: int = 0,
    units: str = cfg.REPORT_UNITS_NORMALIZED,
) -> EvalReport:
    """Arithmetic mean and sample (n-1) standard deviation of RMSE and DA."""
    if not results:
        raise ArgumentError("cannot aggregate an empty result list")
    rows = [(str(s), float(r), float(d)) for s, r, d in results]
    rmses = np.array([r for _, r, _ in rows])
    das = np.array([d for _, _, d in rows])
    return EvalReport(
        model=model,
        horizon=horizon,
        rows=rows,
        mean_rmse=float(rmses.mean()),
        sd_rmse=_sample_sd(rmses),
        mean_da=float(das.mean()),
        sd_da=_sample_sd(das),
        metadata={
            "sd": cfg.SD_KIND,
            "sd_single_series": "0",
            "units": units,
            "n_series": str(len(rows)),
        },
    )


def reports_frame(reports: Sequence[EvalReport]) -> pd.DataFrame:
    if not reports:
        raise ArgumentError("no reports")
    return pd.concat([r.to_frame() for r in reports], ignore_index=True)


def comparison_frame(reports: Sequence[EvalReport]) -> pd.DataFrame:
    """Aggregates side by side, best model per horizon flagged (lowest RMSE, highest DA)."""
    frame = pd.DataFrame.from_records(
        [
            {"horizon": r.horizon, "model": r.model, "mean_rmse": r.mean_rmse, "sd_rmse": r.sd_rmse,
             "mean_da": r.mean_da, "sd_da": r.sd_da}
            for r in reports
        ]
    )
    frame["best_rmse"] = frame["mean_rmse"] == frame.groupby("horizon")["mean_rmse"].transform("min")
    frame["best_da"] = frame["mean_da"] == frame.groupby("horizon")["mean_da"].transform("max")
    return frame.sort_values(["horizon", "model"], kind="stable").reset_index(drop=True)


def report_text(reports: Sequence[EvalReport]) -> str:
    units = reports[0].metadata.get("units", cfg.REPORT_UNITS_NORMALIZED) if reports else ""
    lines = [
        f"Forecast evaluation ({units} units, SD = {cfg.SD_KIND} standard deviation, n-1 divisor)",
        "",
    ]
    for r in reports:
        lines.append(f"[{r.model}] horizon f={r.horizon}")
        table = pd.DataFrame(r.rows, columns=["series", "RMSE", "DA"])
        lines.append(table.to_string(index=False, float_format=lambda v: f"{v:.6f}"))
        lines.append(
            f"mean RMSE {r.mean_rmse:.6f} (SD {r.sd_rmse:.6f})   mean DA {r.mean_da:.6f} (SD {r.sd_da:.6f})"
        )
        lines.append("")
    comparison = comparison_frame(reports)
    comparison["best_rmse"] = comparison["best_rmse"].map({True: "*", False: ""})
    comparison["best_da"] = comparison["best_da"].map({True: "*", False: ""})
    lines.append("Summary (* marks the best model per horizon)")
    lines.append(comparison.to_string(index=False, float_format=lambda v: f"{v:.6f}"))
    return "\n".join(lines) + "\n"


def write_reports(reports: Sequence[EvalReport], csv_path: Union[str, Path], text_path: Union[str, Path]) -> None:
    csv_path, text_path = Path(csv_path), Path(text_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    reports_frame(reports).to_csv(csv_path, index=False, lineterminator="\n")
    text_path.parent.mkdir(parents=True, exist_ok=True)
    text_path.write_text(report_text(reports), encoding="utf-8")
