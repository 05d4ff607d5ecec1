"""SVG charts and the CSV twin of plotted values."""

import numpy as np
import pandas as pd
import pytest

from forecaster.data_engine import Bounds, Series, denormalize, normalize
from forecaster.errors import ArgumentError
from forecaster.evaluation_engine import ForecastSet
from forecaster.numkit import Rng
from forecaster.plot_engine import Line, plot_dataset, plot_forecast, plot_lines, render_line_chart, series_lines


def _forecast_set(n: int, f: int, seed: int = 0) -> ForecastSet:
    rng = Rng(seed)
    path = rng.uniform(0, 1, 1, n + f).data
    actual = np.array([path[i : i + f] for i in range(n)])
    return ForecastSet(
        predicted=rng.uniform(0, 1, n, f).values,
        actual=actual,
        last_observed=rng.uniform(0, 1, 1, n).data,
        origins=np.arange(500, 500 + n),
        series_name="activities_01",
        bounds=Bounds(20.0, 120.0),
    )


class TestRenderLineChart:
    def test_structure(self):
        svg = render_line_chart("title <x>", "step", "value", [Line("actual", [0, 1, 2], [1, 3, 2])])
        assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
        assert svg.count("<polyline") == 1
        assert "title &lt;x&gt;" in svg

    def test_no_lines(self):
        with pytest.raises(ArgumentError):
            render_line_chart("t", "x", "y", [])


class TestForecastPlot:
    def test_one_step_has_two_polylines(self, tmp_path):
        svg, csv = plot_forecast(_forecast_set(150, 1), "lstm", 1, tmp_path / "p.svg", tmp_path / "p.csv")
        text = svg.read_text()
        assert text.count("<polyline") == 2
        assert "lstm" in text and "1-step" in text
        assert 'data-label="actual"' in text and 'data-label="predicted"' in text

    def test_plotted_values_are_denormalized(self, tmp_path):
        fs = _forecast_set(150, 1, seed=3)
        _, csv = plot_forecast(fs, "gru", 1, tmp_path / "p.svg", tmp_path / "p.csv")
        table = pd.read_csv(csv)
        pred = table[table["line"] == "predicted"]
        actual = table[table["line"] == "actual"]
        assert len(pred) == 100 and len(actual) == 100
        np.testing.assert_allclose(pred["value"], denormalize(fs.predicted[:100, 0], fs.bounds), atol=1e-9)
        np.testing.assert_allclose(actual["value"], denormalize(fs.actual[:100, 0], fs.bounds), atol=1e-9)
        assert actual["series_index"].iloc[0] == 500

    def test_multi_step_segments_at_stride(self, tmp_path):
        fs = _forecast_set(150, 20, seed=5)
        svg, csv = plot_forecast(fs, "lstm", 20, tmp_path / "p.svg", tmp_path / "p.csv", limit=100, stride=20)
        assert svg.read_text().count("<polyline") == 1 + 5
        table = pd.read_csv(csv)
        pred = table[table["line"] == "predicted"]
        assert sorted(pred["origin"].unique()) == [0, 20, 40, 60, 80]
        seg = pred[pred["origin"] == 40].sort_values("step")
        np.testing.assert_allclose(seg["value"], denormalize(fs.predicted[40], fs.bounds), atol=1e-9)
        assert seg["position"].tolist() == list(range(40, 60))

    def test_short_test_region(self):
        lines, table = plot_lines(_forecast_set(30, 1), limit=100)
        assert len(lines) == 2
        assert table["position"].max() == 29

    def test_segments_clipped_to_window(self):
        lines, _ = plot_lines(_forecast_set(150, 20), limit=50, stride=15)
        assert max(max(line.xs) for line in lines) == 49
        assert len(lines) == 1 + 4

    def test_invalid_stride(self):
        with pytest.raises(ArgumentError):
            plot_lines(_forecast_set(10, 2), stride=0)


class TestDatasetPlot:
    @pytest.fixture
    def raw(self):
        rng = Rng(2)
        return [Series(f"s{k}", 50 + 10 * rng.uniform(0, 1, 1, 300).data) for k in range(3)]

    def test_raw_lines_cut_at_limit(self, raw):
        lines = series_lines(raw, limit=100)
        assert [line.label for line in lines] == ["s0", "s1", "s2"]
        assert all(len(line.ys) == 100 for line in lines)
        np.testing.assert_array_equal(lines[1].ys, raw[1].values[:100])

    def test_writes_both_overviews(self, raw, tmp_path):
        normalized = [normalize(s) for s in raw]
        raw_svg, norm_svg = plot_dataset(raw, normalized, tmp_path, limit=100)
        assert (raw_svg.name, norm_svg.name) == ("overview_raw.svg", "overview_normalized.svg")
        raw_text, norm_text = raw_svg.read_text(), norm_svg.read_text()
        assert raw_text.count("<polyline") == 3 and norm_text.count("<polyline") == 3
        assert "first 100 samples" in raw_text
        assert 'data-label="s2"' in norm_text

    def test_normalized_overview_needs_bounds(self, raw, tmp_path):
        with pytest.raises(ArgumentError):
            plot_dataset(raw, raw, tmp_path)

    def test_empty(self):
        with pytest.raises(ArgumentError):
            series_lines([])
