"""Command-line entry point: fit / classify / sweep / report."""
from __future__ import annotations

import argparse
import sys
from datetime import datetime
from pathlib import Path

import numpy as np

from .harness import ExperimentConfig, layer_sweep, run_experiment, summarize
from .optimizer import OptimizerConfig
from .reports import emit_reports, emit_sweep_reports, regenerate_reports
from .tasks import PRESET_BOUNDARY_COEFFS, TARGET_DIMS, TaskSpec

CHAINING = {"state": "state_passing", "reencode": "re_encode"}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=["evqkan", "qnn"], default=None)
    parser.add_argument("--layers", type=int, default=None, metavar="N")
    parser.add_argument("--attempts", type=int, default=None, metavar="N")
    parser.add_argument("--seed", type=int, default=None, metavar="N")
    parser.add_argument("--grid", type=int, default=None, metavar="N")
    parser.add_argument("--budget", type=int, default=None, metavar="N",
                        help="optimizer evaluation budget per attempt")
    parser.add_argument("--transposed", action="store_true", default=None)
    parser.add_argument("--chaining", choices=list(CHAINING), default=None)
    parser.add_argument("--paper-mode", action="store_true", default=None,
                        help="pin the published boundary coefficients and defaults")
    parser.add_argument("--out", default=None, metavar="DIR")
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="JSON file mirroring the experiment config")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evqkan",
        description="Train and evaluate the tiled-ansatz network and its "
        "QNN baseline on the fitting and classification benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="function-fitting benchmark")
    _add_common(fit)
    fit.add_argument("--target", choices=sorted(TARGET_DIMS), default=None)

    classify = sub.add_parser("classify", help="2-d classification benchmark")
    _add_common(classify)

    sweep = sub.add_parser("sweep", help="repeat a run over layer counts")
    _add_common(sweep)
    sweep.add_argument("--task", choices=["fit", "classify"], default="fit")
    sweep.add_argument("--target", choices=sorted(TARGET_DIMS), default=None)
    sweep.add_argument("--layer-range", dest="layer_range", default=None,
                       metavar="A..B", help="e.g. 1..5 or 1,2,3 (uses --layers "
                       "as a single count when omitted)")

    report = sub.add_parser("report", help="regenerate summaries for a run directory")
    report.add_argument("dir")
    return parser


def _build_config(args, kind: str) -> ExperimentConfig:
    """Merge defaults, an optional JSON config file, and explicit flags."""
    base = ExperimentConfig.from_json(args.config).to_dict() if args.config else {}

    def pick(flag: str, base_value, fallback):
        value = getattr(args, flag, None)
        if value is not None:
            return value
        return base_value if base_value is not None else fallback

    method = pick("method", base.get("method"), "evqkan")
    seed = pick("seed", base.get("master_seed"), 42)
    transposed = bool(pick("transposed", base.get("transposed"), False))
    paper_mode = bool(getattr(args, "paper_mode", None) or False)

    if kind == "fit":
        target = pick("target", base.get("task", {}).get("target_id"), "eq7")
        task = TaskSpec.fit(target)
    else:
        base_coeffs = base.get("task", {}).get("boundary_coeffs")
        if paper_mode:
            key = "qnn" if method == "qnn" else (
                "evqkan_transposed" if transposed else "evqkan"
            )
            coeffs = PRESET_BOUNDARY_COEFFS[key]
        elif base_coeffs:
            coeffs = tuple(base_coeffs)
        else:
            # Fresh boundary coefficients, a per-experiment constant.
            coeffs = tuple(np.random.default_rng([seed, 2]).uniform(size=8))
        task = TaskSpec.classify(coeffs)

    chaining = getattr(args, "chaining", None)
    chaining = (
        CHAINING[chaining]
        if chaining is not None
        else base.get("layer_chaining", "state_passing")
    )
    base_opt = base.get("optimizer", {})

    return ExperimentConfig(
        method=method,
        task=task,
        num_layers=pick("layers", base.get("num_layers"), 3),
        num_qubits=base.get("num_qubits", 3),
        grid_size=pick("grid", base.get("grid_size"), 8),
        attempts=pick("attempts", base.get("attempts"), 10),
        master_seed=seed,
        transposed=transposed,
        layer_chaining=chaining,
        optimizer=OptimizerConfig(
            max_evaluations=pick("budget", base_opt.get("max_evaluations"), 1000)
        ),
    )


def _run_dir(out: str | None, label: str) -> Path:
    base = Path(out or "results")
    stamp = datetime.now().strftime("%Y%m%d-%H%M%S")
    path = base / f"{label}-{stamp}"
    counter = 1
    while path.exists():  # runs never append to an existing directory
        path = base / f"{label}-{stamp}-{counter}"
        counter += 1
    return path


def _parse_layer_range(text: str | None, single: int) -> list[int]:
    if text is None:
        return [single]
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v]


def _print_stats(stats, out_dir: Path) -> None:
    print(
        f"test-distance totals: average {stats.average:.6f}, "
        f"median {stats.median:.6f}, min {stats.minimum:.6f}, "
        f"max {stats.maximum:.6f}"
    )
    print(f"reports written to {out_dir}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "report":
        paths = regenerate_reports(args.dir)
        print(f"regenerated {len(paths)} artifacts in {args.dir}")
        return 0

    if args.command in ("fit", "classify"):
        config = _build_config(args, args.command)
        out_dir = _run_dir(args.out, f"{args.command}-{config.method}")
        config = ExperimentConfig.from_dict(
            {**config.to_dict(), "output_dir": str(out_dir)}
        )
        records = run_experiment(config)
        stats = summarize(records)
        emit_reports(records, stats, config, out_dir)
        _print_stats(stats, out_dir)
        return 0

    # sweep
    config = _build_config(args, args.task)
    layer_range = _parse_layer_range(args.layer_range, config.num_layers)
    out_dir = _run_dir(args.out, f"sweep-{args.task}-{config.method}")
    config = ExperimentConfig.from_dict(
        {**config.to_dict(), "output_dir": str(out_dir)}
    )
    rows = layer_sweep(config, layer_range)
    for row in rows:
        sub = Path(config.output_dir) / f"layers_{row.num_layers}"
        emit_reports(row.records, row.stats, config, sub)
    emit_sweep_reports(rows, config, out_dir)
    for row in rows:
        print(
            f"layers {row.num_layers}: average {row.stats.average:.6f} "
            f"(elapsed {row.mean_elapsed_seconds:.1f}s per attempt)"
        )
    print(f"reports written to {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
