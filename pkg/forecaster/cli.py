"""
Command-line entry point: generate, train, evaluate, plot, run.
Flags override fields of the JSON experiment config given by --config.
Exit codes: 0 success, 2 usage/config/data error, 3 numeric failure.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from . import __version__
from . import config as cfg
from .core_engine import STAGES, ExperimentEngine, generate_dataset
from .errors import ForecasterError
from .explainability_engine import RunLog
from .schemas import ExperimentConfig, apply_overrides, load_experiment_config

logger = logging.getLogger("forecaster")

COMMAND_STAGES = {
    "train": ("data", "train"),
    "evaluate": ("evaluate",),
    "plot": ("plot",),
    "run": STAGES,
}


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _name_list(text: str) -> List[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got '{text}'")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {value}")
    return value


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="JSON experiment config")
    common.add_argument("--seed", type=_u64, default=None, help="RNG seed (u64)")
    common.add_argument("--out", type=str, default=None, help="Output directory (CSV path for generate)")
    common.add_argument("--quiet", action="store_true", help="Only warnings and errors on the console")
    return common


def _generator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--length", type=int, default=None, help="Samples per generated series")
    p.add_argument("--series", type=int, default=None, help="Number of generated series")
    p.add_argument("--samples-per-day", type=int, default=None)
    p.add_argument("--noise-sd", type=float, default=None)
    p.add_argument("--jitter", type=float, default=None, help="Per-series amplitude jitter")
    p.add_argument("--step-sd", type=float, default=None, help="Random-walk log-step SD")


def _experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dataset", choices=("activities", "random-walk", "csv"), default=None)
    p.add_argument("--csv", type=str, default=None, help="Wide CSV dataset (implies --dataset csv)")
    p.add_argument("--date-column", action="store_true", default=None, help="First CSV column holds dates")
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--horizons", type=_int_list, default=None, help="e.g. 1,20")
    p.add_argument("--test-len", type=int, default=None)
    p.add_argument("--models", type=_name_list, default=None, help="e.g. lstm,gru,baseline")
    p.add_argument("--train-series", type=int, default=None, help="Index of the training series")
    p.add_argument("--units", type=int, default=None)
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--batch-size", type=int, default=None)
    p.add_argument("--learning-rate", type=float, default=None)
    p.add_argument("--clip-norm", type=float, default=None)
    p.add_argument("--report-units", choices=(cfg.REPORT_UNITS_NORMALIZED, cfg.REPORT_UNITS_RAW), default=None)
    p.add_argument("--plot-stride", type=int, default=None)
    p.add_argument("--plot-limit", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    _generator_flags(p)


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="forecaster",
        description="LSTM/GRU time-series forecasting against a persistence baseline",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="Write a synthetic dataset as wide CSV")
    gen.add_argument("kind", choices=("activities", "random-walk"))
    _generator_flags(gen)

    for name, text in (
        ("train", "Train every network model for every horizon"),
        ("evaluate", "Evaluate models and baseline on the test region of every series"),
        ("plot", "Plot actual vs predicted test values"),
        ("run", "Data, train, evaluate and plot end to end"),
    ):
        _experiment_flags(sub.add_parser(name, parents=[common], help=text))
    return parser


def _generator_overrides(args: argparse.Namespace, kind: str) -> Dict[str, Any]:
    section = "dataset.activities" if kind == "activities" else "dataset.random_walk"
    out = {
        f"{section}.length": args.length,
        f"{section}.n_series": args.series,
    }
    if kind == "activities":
        out.update({
            f"{section}.samples_per_day": args.samples_per_day,
            f"{section}.noise_sd": args.noise_sd,
            f"{section}.amplitude_jitter": args.jitter,
        })
    else:
        out[f"{section}.step_sd"] = args.step_sd
    return out


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """--config file (or defaults) with every given flag applied on top."""
    config = load_experiment_config(args.config) if args.config else ExperimentConfig()
    overrides: Dict[str, Any] = {"train.seed": args.seed}

    if args.command == "generate":
        kind = args.kind
        overrides["dataset.kind"] = kind
    else:
        overrides["output_dir"] = args.out
        kind = args.dataset or ("csv" if args.csv else config.dataset.kind)
        overrides.update({
            "dataset.kind": kind,
            "dataset.csv_path": args.csv,
            "dataset.date_column": args.date_column,
            "window": args.window,
            "horizons": args.horizons,
            "test_len": args.test_len,
            "models": args.models,
            "train_series_index": args.train_series,
            "train.units": args.units,
            "train.epochs": args.epochs,
            "train.batch_size": args.batch_size,
            "train.learning_rate": args.learning_rate,
            "train.clip_norm": args.clip_norm,
            "report_units": args.report_units,
            "plot_stride": args.plot_stride,
            "plot_limit": args.plot_limit,
            "workers": args.workers,
        })
    if kind in ("activities", "random-walk"):
        overrides.update(_generator_overrides(args, kind))
    return apply_overrides(config, overrides)


def _configure_logging(quiet: bool) -> None:
    logging.basicConfig(
        level=logging.WARNING if quiet else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def cmd_generate(args: argparse.Namespace, config: ExperimentConfig) -> int:
    out = args.out or f"{args.kind}.csv"
    path, series = generate_dataset(config.dataset, config.seed, out)
    print(f"wrote {len(series)} series x {len(series[0])} samples to {path}")
    return cfg.EXIT_OK


def _run_stages(command: str, config: ExperimentConfig, show_report: bool = False) -> int:
    engine = ExperimentEngine(config, RunLog())
    manifest = engine.run(COMMAND_STAGES[command])
    if show_report:
        print((engine.out_dir / "reports" / "report.txt").read_text(encoding="utf-8"), end="")
    missing = manifest.missing(engine.out_dir)
    if missing:
        logger.error("outputs missing after %s: %s", command, ", ".join(missing))
        return cfg.EXIT_USAGE
    logger.info("%s finished; manifest at %s", command, engine.out_dir / "manifest.json")
    return cfg.EXIT_OK


def cmd_train(args: argparse.Namespace, config: ExperimentConfig) -> int:
    return _run_stages("train", config)


def cmd_evaluate(args: argparse.Namespace, config: ExperimentConfig) -> int:
    return _run_stages("evaluate", config, show_report=True)


def cmd_plot(args: argparse.Namespace, config: ExperimentConfig) -> int:
    return _run_stages("plot", config)


def cmd_run(args: argparse.Namespace, config: ExperimentConfig) -> int:
    return _run_stages("run", config, show_report=True)


COMMANDS = {
    "generate": cmd_generate,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "plot": cmd_plot,
    "run": cmd_run,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _configure_logging(args.quiet)
    try:
        config = resolve_config(args)
        return COMMANDS[args.command](args, config)
    except ForecasterError as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return cfg.EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
