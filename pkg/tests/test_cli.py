"""CLI surface: subcommands, flags, config files, report regeneration."""
import json

import numpy as np
import pytest

from evqkan.cli import _build_config, _parse_layer_range, build_parser, main
from evqkan.tasks import PRESET_BOUNDARY_COEFFS


def parse(argv):
    return build_parser().parse_args(argv)


def test_parser_accepts_documented_flags():
    args = parse(
        [
            "fit", "--method", "qnn", "--layers", "2", "--attempts", "3",
            "--seed", "9", "--grid", "8", "--budget", "120", "--transposed",
            "--chaining", "reencode", "--target", "radius", "--out", "o",
            "--paper-mode",
        ]
    )
    assert args.command == "fit"
    assert args.method == "qnn"
    assert args.target == "radius"
    assert args.chaining == "reencode"
    assert args.paper_mode is True


def test_build_config_defaults():
    config = _build_config(parse(["fit"]), "fit")
    assert config.method == "evqkan"
    assert config.num_layers == 3
    assert config.num_qubits == 3
    assert config.grid_size == 8
    assert config.attempts == 10
    assert config.optimizer.max_evaluations == 1000
    assert config.task.target_id == "eq7"
    assert config.layer_chaining == "state_passing"


def test_build_config_chaining_flag():
    config = _build_config(parse(["fit", "--chaining", "reencode"]), "fit")
    assert config.layer_chaining == "re_encode"


def test_paper_mode_pins_boundary_coefficients():
    config = _build_config(parse(["classify", "--paper-mode"]), "classify")
    assert config.task.boundary_coeffs == PRESET_BOUNDARY_COEFFS["evqkan"]
    config = _build_config(
        parse(["classify", "--paper-mode", "--method", "qnn"]), "classify"
    )
    assert config.task.boundary_coeffs == PRESET_BOUNDARY_COEFFS["qnn"]
    config = _build_config(
        parse(["classify", "--paper-mode", "--transposed"]), "classify"
    )
    assert config.task.boundary_coeffs == PRESET_BOUNDARY_COEFFS["evqkan_transposed"]


def test_fresh_classify_coefficients_are_seeded():
    a = _build_config(parse(["classify", "--seed", "11"]), "classify")
    b = _build_config(parse(["classify", "--seed", "11"]), "classify")
    c = _build_config(parse(["classify", "--seed", "12"]), "classify")
    assert a.task.boundary_coeffs == b.task.boundary_coeffs
    assert a.task.boundary_coeffs != c.task.boundary_coeffs


def test_config_file_with_flag_override(tmp_path):
    base = _build_config(parse(["fit", "--layers", "2", "--attempts", "4"]), "fit")
    path = tmp_path / "config.json"
    path.write_text(json.dumps(base.to_dict()), encoding="utf-8")
    loaded = _build_config(parse(["fit", "--config", str(path)]), "fit")
    assert loaded.num_layers == 2
    assert loaded.attempts == 4
    overridden = _build_config(
        parse(["fit", "--config", str(path), "--layers", "5"]), "fit"
    )
    assert overridden.num_layers == 5
    assert overridden.attempts == 4


def test_parse_layer_range():
    assert _parse_layer_range("1..4", 3) == [1, 2, 3, 4]
    assert _parse_layer_range("1,3,5", 3) == [1, 3, 5]
    assert _parse_layer_range(None, 3) == [3]


def test_fit_command_end_to_end(tmp_path, capsys):
    rc = main(
        [
            "fit", "--method", "qnn", "--layers", "1", "--attempts", "2",
            "--seed", "3", "--budget", "40", "--out", str(tmp_path),
        ]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "test-distance totals" in out
    run_dirs = list(tmp_path.glob("fit-qnn-*"))
    assert len(run_dirs) == 1
    for name in ("summary.json", "loss_trajectory.csv", "test_distances.csv",
                 "records.json"):
        assert (run_dirs[0] / name).exists()
    assert (run_dirs[0] / "figures" / "loss_trajectories.png").exists()
    assert (run_dirs[0] / "plotdata" / "test_distance_profile.csv").exists()


def test_classify_and_report_commands(tmp_path):
    rc = main(
        [
            "classify", "--method", "qnn", "--layers", "1", "--attempts", "2",
            "--seed", "3", "--budget", "40", "--paper-mode",
            "--out", str(tmp_path),
        ]
    )
    assert rc == 0
    run_dir = next(tmp_path.glob("classify-qnn-*"))
    summary = json.loads((run_dir / "summary.json").read_text(encoding="utf-8"))
    assert summary["config"]["task"]["boundary_coeffs"] == list(
        PRESET_BOUNDARY_COEFFS["qnn"]
    )
    (run_dir / "summary.json").unlink()
    assert main(["report", str(run_dir)]) == 0
    assert (run_dir / "summary.json").exists()


def test_sweep_command(tmp_path):
    rc = main(
        [
            "sweep", "--task", "fit", "--method", "qnn", "--attempts", "2",
            "--seed", "3", "--budget", "40", "--layer-range", "1,2",
            "--out", str(tmp_path),
        ]
    )
    assert rc == 0
    run_dir = next(tmp_path.glob("sweep-fit-qnn-*"))
    assert (run_dir / "sweep.csv").exists()
    assert (run_dir / "figures" / "layer_sweep.png").exists()
    assert (run_dir / "layers_1" / "summary.json").exists()
    assert (run_dir / "layers_2" / "summary.json").exists()
