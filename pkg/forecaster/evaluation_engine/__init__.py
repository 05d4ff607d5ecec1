from .metrics import (
    ForecastSet,
    baseline_forecast,
    directional_accuracy,
    forecast_frame,
    forecast_metrics,
    forecast_sets_from_frame,
    read_forecast_csv,
    rmse,
)
from .report import EvalReport, aggregate, comparison_frame, report_text, reports_frame, write_reports
from .runner import BaselineForecaster, EvaluationEngine, Forecaster, ModelForecaster, SeriesEvaluation, evaluate

__all__ = [
    "BaselineForecaster",
    "EvalReport",
    "EvaluationEngine",
    "ForecastSet",
    "Forecaster",
    "ModelForecaster",
    "SeriesEvaluation",
    "aggregate",
    "baseline_forecast",
    "comparison_frame",
    "directional_accuracy",
    "evaluate",
    "forecast_frame",
    "forecast_metrics",
    "forecast_sets_from_frame",
    "read_forecast_csv",
    "report_text",
    "reports_frame",
    "rmse",
    "write_reports",
]
