import json
import math

import pytest

from curselab.cli import main


def run_cli(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(list(args) + ["--out", str(out)])
    text = out.read_bytes() if out.exists() else b""
    return code, text


def run_json(args, tmp_path, name="out.json"):
    code, text = run_cli(args, tmp_path, name)
    return code, json.loads(text)


def test_constants_gamma_passes_seven_eighths(tmp_path):
    code, payload = run_json(
        ["constants", "--gamma", "--delta", "0.26", "--eta", "0.25",
         "--check-below", "0.875"],
        tmp_path,
    )
    assert code == 0
    assert payload["schema"] == "curse-lab/1"
    value = payload["results"]["value"]
    assert value["provenance"] == "solver"
    assert value["value"] < 0.875
    assert payload["results"]["pass"] is True


def test_constants_gamma_violation_exit_code(tmp_path):
    code, payload = run_json(
        ["constants", "--gamma", "--delta", "0.26", "--eta", "0.25",
         "--check-below", "0.5"],
        tmp_path,
    )
    assert code == 2
    assert payload["results"]["pass"] is False


def test_constants_p_star(tmp_path):
    code, payload = run_json(["constants", "--p-star"], tmp_path)
    assert code == 0
    assert abs(payload["results"]["value"]["value"] - 170.5186) < 0.01


def test_constants_require_single_action(tmp_path):
    code, _ = run_cli(["constants", "--gamma", "--p-star"], tmp_path)
    assert code == 1


def test_constants_limit_ratio_handles_infinity(tmp_path):
    code, payload = run_json(["constants", "--limit-ratio", "--p", "1.5"], tmp_path)
    assert code == 0
    assert payload["results"]["value"]["value"] == "inf"


def test_volume_run_and_determinism(tmp_path):
    args = [
        "volume", "--domain", "lp:2", "--d", "6", "--n", "5",
        "--delta", "0.1", "--samples", "2000", "--seed", "7",
    ]
    code1, text1 = run_cli(args, tmp_path, "a.json")
    code2, text2 = run_cli(args, tmp_path, "b.json")
    code4, text4 = run_cli(args + ["--threads", "4"], tmp_path, "c.json")
    assert code1 == code2 == code4 == 0
    assert text1 == text2
    payload1 = json.loads(text1)
    payload4 = json.loads(text4)
    assert payload1["results"] == payload4["results"]
    assert payload1["results"]["mean"]["provenance"] == "monte_carlo"
    assert payload1["results"]["bound_source"] == "small_radius"


def test_volume_requires_seed(tmp_path):
    code, _ = run_cli(
        ["volume", "--domain", "cube", "--d", "3", "--n", "4",
         "--delta", "0.1", "--samples", "2000"],
        tmp_path,
    )
    assert code == 1


def test_volume_points_csv(tmp_path):
    csv = tmp_path / "pts.csv"
    csv.write_text("0.25,0.25\n0.75,0.75\n")
    code, payload = run_json(
        ["volume", "--domain", "cube", "--d", "2", "--points-csv", str(csv),
         "--delta", "0.05", "--samples", "2000", "--seed", "3"],
        tmp_path,
    )
    assert code == 0
    assert payload["results"]["n_points"]["value"] == 2
    assert 0.0 < payload["results"]["mean"]["value"] < 1.0


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("domain=cube\nd=3\nn=4\ndelta=0.1\nsamples=2000\nseed=5\n")
    code_base, payload_base = run_json(
        ["volume", "--config", str(cfg)], tmp_path, "base.json"
    )
    assert code_base == 0
    assert payload_base["config"]["seed"] == 5
    code_over, payload_over = run_json(
        ["volume", "--config", str(cfg), "--seed", "9"], tmp_path, "over.json"
    )
    assert code_over == 0
    assert payload_over["config"]["seed"] == 9


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense=1\n")
    code, _ = run_cli(["volume", "--config", str(cfg)], tmp_path)
    assert code == 1


def test_fool_check_c1_small(tmp_path):
    code, payload = run_json(
        ["fool-check", "--variant", "c1", "--d", "3", "--n", "4",
         "--delta", "0.02", "--pairs", "100", "--samples", "50", "--seed", "2"],
        tmp_path,
    )
    assert code == 0
    results = payload["results"]
    assert results["lipschitz_pass"] is True
    assert results["zeros_exact"] == results["zeros_total"]


def test_smooth_check_small(tmp_path):
    code, payload = run_json(
        ["smooth-check", "--d", "3", "--n", "4", "--delta", "0.05",
         "--k", "2", "--samples", "1000", "--seed", "6"],
        tmp_path,
    )
    assert code == 0
    assert payload["results"]["constant_pass"] is True
    assert payload["results"]["zero_pass"] is True


def test_quad_taylor_subcommand(tmp_path):
    code, payload = run_json(
        ["quad", "--algorithm", "taylor", "--d", "4", "--j", "2", "--seed", "3"],
        tmp_path,
    )
    assert code == 0
    results = payload["results"]
    assert results["error"]["value"] <= results["error_bound"]["value"]
    assert results["evaluations_used"] == 5


def test_quad_one_point_subcommand(tmp_path):
    code, payload = run_json(
        ["quad", "--algorithm", "one-point", "--d", "8", "--samples", "5000",
         "--seed", "4"],
        tmp_path,
    )
    assert code == 0
    assert payload["results"]["pass"] is True


def test_bounds_single_json(tmp_path):
    code, payload = run_json(
        ["bounds", "--which", "gradient-cube-lower", "--d", "7", "--eps", "0.5"],
        tmp_path,
    )
    assert code == 0
    expected = math.log(0.5) - math.log(8.0) + 7.0 * math.log(8.0 / 7.0)
    assert abs(payload["results"]["log_value"]["value"] - expected) < 1e-12


def test_bounds_sweep_csv(tmp_path):
    code, text = run_cli(
        ["bounds", "--which", "qpt-cost", "--c", "1.0", "--a", "2.718281828459045",
         "--d-list", "5,10", "--eps-list", "0.05,0.01"],
        tmp_path,
        "sweep.csv",
    )
    assert code == 0
    lines = text.decode().strip().splitlines()
    assert lines[0] == "d,eps,log_value,value,preconditions_met,rule"
    assert len(lines) == 5


def test_bounds_sweep_plot_data(tmp_path):
    plot = tmp_path / "plot.dat"
    code, _ = run_cli(
        ["bounds", "--which", "gradient-cube-lower", "--d-list", "4,6,8",
         "--eps-list", "0.5", "--plot-data", str(plot)],
        tmp_path,
        "sweep.csv",
    )
    assert code == 0
    rows = plot.read_text().strip().splitlines()
    assert len(rows) == 3
    assert all(len(row.split()) == 3 for row in rows)


def test_bounds_requires_dimension(tmp_path):
    code, _ = run_cli(["bounds", "--which", "gradient-cube-lower"], tmp_path)
    assert code == 1


def test_classify_finite_profile(tmp_path):
    code, payload = run_json(
        ["classify", "--k", "2", "--family", "cube",
         "--levels", "1:-0.5,1:-1,1:-1.2"],
        tmp_path,
    )
    assert code == 0
    assert payload["results"]["verdict"] == "indeterminate_gap"


def test_classify_infinite_profile(tmp_path):
    code, payload = run_json(
        ["classify", "--k", "inf", "--family", "cube", "--level0", "1:0",
         "--tail-constant", "1.0"],
        tmp_path,
    )
    assert code == 0
    assert payload["results"]["verdict"] == "WT"


def test_classify_validates_level_count(tmp_path):
    code, _ = run_cli(
        ["classify", "--k", "2", "--family", "cube", "--levels", "1:-0.5"],
        tmp_path,
    )
    assert code == 1


def test_unknown_subcommand_is_invalid(tmp_path):
    assert main(["frobnicate"]) == 1


def test_stdout_default(capsys):
    code = main(["constants", "--p-star"])
    captured = capsys.readouterr()
    assert code == 0
    payload = json.loads(captured.out)
    assert payload["subcommand"] == "constants"
