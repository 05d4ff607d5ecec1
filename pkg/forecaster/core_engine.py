"""
Experiment Engine: orchestrates data -> train -> evaluate -> plot.
Each stage reads what earlier stages left in the output directory, so stages can be
rerun on their own (e.g. evaluate-only reuses existing checkpoints).
"""

import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from . import config as cfg
from .data_engine import DataEngine, PartitionSpec, Series, generate, write_csv
from .errors import ArgumentError, ForecasterError, StageError
from .evaluation_engine import (
    BaselineForecaster,
    EvalReport,
    EvaluationEngine,
    ForecastSet,
    ModelForecaster,
    aggregate,
    forecast_frame,
    read_forecast_csv,
    write_reports,
)
from .explainability_engine import RunLog
from .plot_engine import plot_dataset, plot_forecast
from .run_state import RunManifest
from .schemas import DatasetSource, ExperimentConfig, save_experiment_config
from .training_engine import load_checkpoint, loss_history_frame, save_checkpoint, train

DATASET_FILE = "data/dataset.csv"
OVERVIEW_DIR = "data"
REPORT_CSV = "reports/report.csv"
REPORT_TXT = "reports/report.txt"
RUN_LOG = "run_log.json"
CONFIG_FILE = "config.json"
STAGES = ("data", "train", "evaluate", "plot")


def pair_key(model: str, horizon: int) -> str:
    return f"{model}_f{horizon}"


def generate_dataset(source: DatasetSource, seed: int, out_path: Union[str, Path]) -> Tuple[Path, List[Series]]:
    """Write a synthetic dataset as wide CSV; I/O failures surface as ArgumentError."""
    series = generate(source, seed)
    try:
        return write_csv(series, out_path), series
    except OSError as e:
        raise ArgumentError(f"cannot write dataset to {out_path}: {e}") from e


class ExperimentEngine:
    """
    Single engine for one experiment configuration and one output directory.
    """

    def __init__(self, config: ExperimentConfig, log: Optional[RunLog] = None):
        self.config = config
        self.out_dir = Path(config.output_dir)
        self.log = log or RunLog()
        self.manifest = RunManifest.load(self.out_dir)
        self.manifest.config = config.model_dump()
        self.manifest.seed = config.seed
        self._data: Optional[DataEngine] = None

    # ---------- paths ----------
    def _rel(self, path: Path) -> str:
        return Path(path).resolve().relative_to(self.out_dir.resolve()).as_posix()

    def checkpoint_path(self, model: str, horizon: int) -> Path:
        return self.out_dir / "checkpoints" / f"{pair_key(model, horizon)}.tsfc"

    def loss_path(self, model: str, horizon: int) -> Path:
        return self.out_dir / "training" / f"{pair_key(model, horizon)}_loss.csv"

    def forecast_path(self, model: str, horizon: int) -> Path:
        return self.out_dir / "forecasts" / f"{pair_key(model, horizon)}.csv"

    def plot_paths(self, series: str, model: str, horizon: int) -> Tuple[Path, Path]:
        stem = self.out_dir / "plots" / f"{series}_{pair_key(model, horizon)}"
        return stem.with_suffix(".svg"), stem.with_suffix(".csv")

    # ---------- data ----------
    def data_engine(self) -> DataEngine:
        if self._data is None:
            tc = self.config.train
            self._data = DataEngine(
                self.config.dataset,
                seed=self.config.seed,
                test_len=self.config.test_len,
                fit_bounds_on_train=tc.fit_bounds_on_train,
                degenerate_midpoint=tc.degenerate_midpoint,
            )
        return self._data

    def prepare_dataset(self) -> DataEngine:
        """
        Write generated datasets to data/dataset.csv and the raw/normalized overview charts
        for inspection. Later stages regenerate the same series from the seed rather than
        reading the file back.
        """
        data = self.data_engine()
        raw = data.load()
        if self.config.dataset.kind != "csv":
            path = write_csv(raw, self.out_dir / DATASET_FILE)
            self.manifest.add_path("dataset", self._rel(path))
        for svg in plot_dataset(raw, data.get_normalized(), self.out_dir / OVERVIEW_DIR, self.config.plot_limit):
            self.manifest.add_path("dataset", self._rel(svg))
        self.log.log("data", "dataset_loaded", kind=self.config.dataset.kind, n_series=len(raw), length=len(raw[0]))
        return data

    # ---------- stages ----------
    def train(self) -> Dict[str, List[float]]:
        cfg_ = self.config
        data = self.data_engine()
        if not 0 <= cfg_.train_series_index < data.n_series:
            raise ArgumentError(
                f"train_series_index {cfg_.train_series_index} out of range for {data.n_series} series"
            )
        pairs = [(m, h) for m in cfg_.network_models for h in cfg_.horizons]
        if not pairs:
            return {}
        datasets = {h: data.train_windows(cfg_.train_series_index, cfg_.window, h) for h in cfg_.horizons}

        def fit(pair):
            model, horizon = pair
            return train(model, datasets[horizon], cfg_.train, log=self.log)

        # pairs share no mutable state; results are merged in pair order
        with ThreadPoolExecutor(max_workers=min(cfg_.workers, max(len(pairs), 1))) as pool:
            results = list(pool.map(fit, pairs))

        histories = {}
        for (model, horizon), (checkpoint, history) in zip(pairs, results):
            ds = datasets[horizon]
            ckpt = save_checkpoint(checkpoint, self.checkpoint_path(model, horizon))
            loss_csv = self.loss_path(model, horizon)
            loss_csv.parent.mkdir(parents=True, exist_ok=True)
            loss_history_frame(history).to_csv(loss_csv, index=False, lineterminator="\n")
            key = pair_key(model, horizon)
            self.manifest.add_path("checkpoints", self._rel(ckpt), key)
            self.manifest.add_path("loss_histories", self._rel(loss_csv), key)
            self.log.log(
                "train", "checkpoint_written",
                model=model, horizon=horizon, series=ds.series_name, samples=ds.size, final_loss=history[-1],
            )
            histories[key] = history
        return histories

    def _forecaster(self, model: str, horizon: int):
        if model == cfg.MODEL_BASELINE:
            return BaselineForecaster(horizon)
        path = self.checkpoint_path(model, horizon)
        if not path.exists():
            raise ArgumentError(f"missing checkpoint for ({model}, f={horizon}): {path}")
        return ModelForecaster(load_checkpoint(path))

    def evaluate(self) -> List[EvalReport]:
        cfg_ = self.config
        series = self.data_engine().get_normalized()
        normalized = cfg_.report_units == cfg.REPORT_UNITS_NORMALIZED
        reports = []
        for model in cfg_.models:
            for horizon in cfg_.horizons:
                spec = PartitionSpec(cfg_.window, horizon, cfg_.test_len)
                engine = EvaluationEngine(
                    self._forecaster(model, horizon), spec, normalized=normalized,
                    workers=cfg_.workers, log=self.log,
                )
                results = engine.run(series)
                report = aggregate(
                    [(r.series_name, r.rmse, r.da) for r in results], model, horizon, cfg_.report_units
                )
                reports.append(report)
                self.log.log(
                    "evaluate", "aggregate",
                    model=model, horizon=horizon, n_series=report.n_series,
                    mean_rmse=report.mean_rmse, sd_rmse=report.sd_rmse,
                    mean_da=report.mean_da, sd_da=report.sd_da,
                )
                frame = pd.concat(
                    [forecast_frame(r.forecast_set, model, horizon) for r in results], ignore_index=True
                )
                fpath = self.forecast_path(model, horizon)
                fpath.parent.mkdir(parents=True, exist_ok=True)
                frame.to_csv(fpath, index=False, lineterminator="\n")
                self.manifest.add_path("forecasts", self._rel(fpath), pair_key(model, horizon))
        write_reports(reports, self.out_dir / REPORT_CSV, self.out_dir / REPORT_TXT)
        for rel in (REPORT_CSV, REPORT_TXT):
            self.manifest.add_path("reports", rel)
        return reports

    def load_forecasts(self, model: str, horizon: int) -> Dict[str, ForecastSet]:
        path = self.forecast_path(model, horizon)
        if not path.exists():
            raise ArgumentError(f"no evaluation output for ({model}, f={horizon}); run evaluate first")
        return read_forecast_csv(path)

    def plot(self) -> List[Path]:
        cfg_ = self.config
        written: List[Path] = []
        for model in cfg_.models:
            for horizon in cfg_.horizons:
                sets = self.load_forecasts(model, horizon)

                def draw(item, model=model, horizon=horizon):
                    name, fs = item
                    svg, csv = self.plot_paths(name, model, horizon)
                    return plot_forecast(fs, model, horizon, svg, csv, cfg_.plot_limit, cfg_.plot_stride)

                with ThreadPoolExecutor(max_workers=cfg_.workers) as pool:
                    pairs = list(pool.map(draw, sets.items()))
                for svg, csv in pairs:
                    self.manifest.add_path("plots", self._rel(svg))
                    self.manifest.add_path("plots", self._rel(csv))
                    written.extend([svg, csv])
                self.log.log("plot", "plots_written", model=model, horizon=horizon, n_series=len(pairs))
        return written

    def run(self, stages: Optional[Sequence[str]] = None) -> RunManifest:
        """generate/load -> train -> evaluate -> plot (or the named subset), each stage timed."""
        table = {
            "data": self.prepare_dataset,
            "train": self.train,
            "evaluate": self.evaluate,
            "plot": self.plot,
        }
        for name in stages or STAGES:
            if name not in table:
                raise ArgumentError(f"unknown stage '{name}'")
            started = time.perf_counter()
            try:
                table[name]()
            except ForecasterError as e:
                raise StageError(name, e) from e
            except OSError as e:
                raise StageError(name, ArgumentError(str(e))) from e
            self.manifest.timings[name] = round(time.perf_counter() - started, 3)
        return self.finalize()

    def finalize(self) -> RunManifest:
        """Write config echo, run log and manifest."""
        config_path = save_experiment_config(self.config, self.out_dir / CONFIG_FILE)
        self.manifest.add_path("logs", self._rel(config_path))
        self.manifest.add_path("logs", RUN_LOG)
        self.log.save(self.out_dir / RUN_LOG)
        self.manifest.save(self.out_dir)
        return self.manifest
