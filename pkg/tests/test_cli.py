"""End-to-end commands through main(argv): exit codes, artifacts, determinism."""

import json

import numpy as np
import pandas as pd
import pytest

from forecaster.cli import main
from forecaster.run_state import RunManifest
from forecaster.schemas import DatasetSource, ExperimentConfig, TrainConfig

TINY = [
    "--length", "120", "--series", "3", "--samples-per-day", "2",
    "--window", "10", "--horizons", "1,3", "--test-len", "20",
    "--units", "4", "--epochs", "2", "--batch-size", "16", "--seed", "7", "--quiet",
]


def _run(command, out, *extra):
    return main([command, "--out", str(out), *TINY, *extra])


class TestGenerate:
    def test_same_seed_same_bytes(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["generate", "activities", "--seed", "7", "--out", str(a)]) == 0
        assert main(["generate", "activities", "--seed", "7", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert "10 series x 3584 samples" in capsys.readouterr().out

    def test_random_walk_shape(self, tmp_path):
        out = tmp_path / "rw.csv"
        assert main(["generate", "random-walk", "--length", "3032", "--series", "10", "--out", str(out)]) == 0
        assert pd.read_csv(out).shape == (3032, 10)

    def test_unwritable_path(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        assert main(["generate", "activities", "--out", str(blocker / "a.csv")]) == 2
        assert "error" in capsys.readouterr().err


class TestRun:
    def test_artifacts_and_manifest(self, tmp_path, capsys):
        out = tmp_path / "run"
        assert _run("run", out) == 0
        assert "Summary" in capsys.readouterr().out

        checkpoints = sorted(p.name for p in (out / "checkpoints").iterdir())
        assert checkpoints == ["gru_f1.tsfc", "gru_f3.tsfc", "lstm_f1.tsfc", "lstm_f3.tsfc"]
        assert len(pd.read_csv(out / "training" / "lstm_f3_loss.csv")) == 2

        report = pd.read_csv(out / "reports" / "report.csv")
        assert len(report) == 3 * 3 * 2 + 2 * 3 * 2
        assert len(list((out / "plots").glob("*.svg"))) == 3 * 3 * 2
        assert sorted(p.name for p in (out / "data").glob("*.svg")) == ["overview_normalized.svg", "overview_raw.svg"]

        manifest = RunManifest.load(out)
        assert manifest.missing(out) == []
        assert manifest.seed == 7
        assert set(manifest.timings) == {"data", "train", "evaluate", "plot"}
        listed = set(manifest.all_paths())
        produced = {p.relative_to(out).as_posix() for p in out.rglob("*") if p.is_file()}
        assert produced - listed == {"manifest.json"}

        log = json.loads((out / "run_log.json").read_text())
        assert {e["stage"] for e in log} >= {"data", "train", "evaluate", "plot"}

    def test_same_seed_same_outputs(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert _run("run", a) == 0
        assert _run("run", b) == 0
        assert (a / "reports" / "report.csv").read_bytes() == (b / "reports" / "report.csv").read_bytes()
        for name in ("lstm_f1.tsfc", "gru_f3.tsfc"):
            assert (a / "checkpoints" / name).read_bytes() == (b / "checkpoints" / name).read_bytes()

    def test_config_file_is_echoed(self, tmp_path):
        out = tmp_path / "run"
        assert _run("run", out) == 0
        echoed = ExperimentConfig.from_json((out / "config.json").read_text())
        assert echoed.window == 10 and echoed.horizons == [1, 3] and echoed.train.units == 4


class TestStagedCommands:
    def test_evaluate_reuses_checkpoints(self, tmp_path):
        out = tmp_path / "run"
        assert _run("train", out) == 0
        ckpt = out / "checkpoints" / "lstm_f1.tsfc"
        before = ckpt.stat().st_mtime_ns
        assert _run("evaluate", out) == 0
        assert _run("plot", out) == 0
        assert ckpt.stat().st_mtime_ns == before
        assert (out / "reports" / "report.txt").exists()
        assert RunManifest.load(out).missing(out) == []

    def test_missing_checkpoint_names_pair(self, tmp_path, capsys):
        assert _run("evaluate", tmp_path / "run") == 2
        assert "(lstm, f=1)" in capsys.readouterr().err

    def test_plot_before_evaluate(self, tmp_path):
        assert _run("plot", tmp_path / "run", "--models", "baseline") == 2

    def test_window_mismatch(self, tmp_path):
        out = tmp_path / "run"
        assert _run("train", out) == 0
        assert main(["evaluate", "--out", str(out), *TINY, "--window", "12"]) == 2

    def test_train_series_out_of_range(self, tmp_path):
        assert _run("train", tmp_path / "run", "--train-series", "99") == 2

    def test_divergence_exit_code(self, tmp_path, capsys):
        assert _run("train", tmp_path / "run", "--learning-rate", "1e300") == 3
        assert "epoch" in capsys.readouterr().err

    def test_baseline_on_constant_csv(self, tmp_path):
        data = tmp_path / "flat.csv"
        pd.DataFrame({f"s{k}": np.full(60, 3.0 + k) for k in range(10)}).to_csv(data, index=False)
        config = ExperimentConfig(
            dataset=DatasetSource(kind="csv", csv_path=str(data)),
            window=10,
            horizons=[1],
            test_len=15,
            models=["baseline"],
            train=TrainConfig(degenerate_midpoint=True),
        )
        config_path = tmp_path / "config.json"
        config_path.write_text(config.to_json())
        out = tmp_path / "run"
        assert main(["evaluate", "--config", str(config_path), "--out", str(out), "--quiet"]) == 0
        report = pd.read_csv(out / "reports" / "report.csv")
        assert len(report) == 10 + 2
        mean = report[report["row"] == "mean"].iloc[0]
        assert mean["rmse"] == 0.0 and mean["da"] == 1.0


class TestUsage:
    def test_unknown_command(self):
        assert main(["bogus"]) == 2

    def test_invalid_override(self, tmp_path):
        assert main(["run", "--out", str(tmp_path), "--horizons", "0"]) == 2

    def test_unreadable_config(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "absent.json")]) == 2

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert "forecaster" in capsys.readouterr().out
