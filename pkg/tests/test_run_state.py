"""Run manifest, structured run log and experiment configuration."""

import json
import logging

import pytest

from forecaster import __version__
from forecaster.errors import ArgumentError, ConfigError, NumericError, StageError
from forecaster.explainability_engine import RunLog
from forecaster.run_state import MANIFEST_NAME, RunManifest
from forecaster.schemas import (
    ExperimentConfig,
    TrainConfig,
    apply_overrides,
    load_experiment_config,
    save_experiment_config,
)


class TestRunManifest:
    def test_save_load_merges(self, tmp_path):
        manifest = RunManifest(seed=3)
        manifest.add_path("checkpoints", "checkpoints/lstm_f1.tsfc", "lstm_f1")
        manifest.add_path("reports", "reports/report.csv")
        manifest.add_path("reports", "reports/report.csv")
        manifest.save(tmp_path)
        loaded = RunManifest.load(tmp_path)
        assert loaded.checkpoints == {"lstm_f1": "checkpoints/lstm_f1.tsfc"}
        assert loaded.reports == ["reports/report.csv"]
        assert loaded.toolkit_version == __version__

    def test_missing_paths(self, tmp_path):
        (tmp_path / "reports").mkdir()
        (tmp_path / "reports" / "report.csv").write_text("x\n")
        manifest = RunManifest(reports=["reports/report.csv"], plots=["plots/a.svg"])
        assert manifest.missing(tmp_path) == ["plots/a.svg"]

    def test_load_without_file(self, tmp_path):
        assert RunManifest.load(tmp_path) == RunManifest()

    def test_saved_json_is_sorted(self, tmp_path):
        path = RunManifest(seed=1).save(tmp_path)
        assert path.name == MANIFEST_NAME
        keys = list(json.loads(path.read_text()))
        assert keys == sorted(keys)


class TestRunLog:
    def test_entries_and_summaries(self, caplog):
        log = RunLog()
        with caplog.at_level(logging.INFO, logger="forecaster"):
            log.log("evaluate", "aggregate", model="lstm", horizon=1, n_series=10,
                    mean_rmse=0.05, sd_rmse=0.01, mean_da=0.7, sd_da=0.02)
            log.log("train", "epoch", model="gru", horizon=20, epoch=3, epochs=200, loss=0.0123)
        entries = log.get_logs()
        assert [e["event"] for e in entries] == ["aggregate", "epoch"]
        assert "lstm f=1 over 10 series" in entries[0]["summary"]
        assert "epoch 3/200" in entries[1]["summary"]
        # epoch events stay at DEBUG
        assert [r.message for r in caplog.records] == [entries[0]["summary"]]

    def test_filter_limit_and_save(self, tmp_path):
        log = RunLog()
        for k in range(5):
            log.log("plot", "plots_written", n_series=k)
        log.log("data", "dataset_loaded", n_series=2)
        assert len(log.get_logs(stage="plot")) == 5
        assert log.get_logs(limit=1)[0]["stage"] == "data"
        saved = json.loads(log.save(tmp_path / "log.json").read_text())
        assert len(saved) == 6
        log.clear()
        assert log.get_logs() == []


class TestExperimentConfig:
    def test_defaults(self):
        config = ExperimentConfig()
        assert (config.window, config.horizons, config.test_len) == (60, [1, 20], 251)
        assert config.models == ["lstm", "gru", "baseline"] and config.network_models == ["lstm", "gru"]
        assert config.train.epochs == 200 and config.train.batch_size == 32 and config.train.units == 128

    def test_file_round_trip(self, tmp_path, tiny_config):
        path = save_experiment_config(tiny_config, tmp_path / "c.json")
        assert load_experiment_config(path) == tiny_config
        assert ExperimentConfig.from_json(tiny_config.to_json()).to_json() == tiny_config.to_json()

    def test_overrides(self, tiny_config):
        updated = apply_overrides(tiny_config, {"train.epochs": 9, "horizons": [5], "window": None})
        assert updated.train.epochs == 9 and updated.horizons == [5] and updated.window == tiny_config.window

    @pytest.mark.parametrize(
        "overrides",
        [{"horizons": [0]}, {"horizons": [1, 1]}, {"test_len": 2, "horizons": [3]}, {"train.epochs": 0},
         {"models": ["arima"]}, {"train.batch_size": 0}],
    )
    def test_invalid_overrides(self, tiny_config, overrides):
        with pytest.raises(ConfigError):
            apply_overrides(tiny_config, overrides)

    def test_unknown_field(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json('{"windw": 5}')

    def test_csv_source_needs_path(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json('{"dataset": {"kind": "csv"}}')

    def test_train_ranges(self):
        with pytest.raises(ArgumentError):
            TrainConfig(batch_size=0).validate_ranges()


class TestErrors:
    def test_exit_codes(self):
        assert ArgumentError("x").exit_code == 2
        numeric = NumericError("boom", epoch=4, batch=2)
        assert numeric.exit_code == 3 and str(numeric) == "boom (epoch 4, batch 2)"
        wrapped = StageError("train", numeric)
        assert wrapped.exit_code == 3 and "stage 'train'" in str(wrapped)
