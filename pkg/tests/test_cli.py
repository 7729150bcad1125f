import json

import pytest

from maxplus_bscs.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def write_station(tmp_path, obj=None):
    path = tmp_path / "station.json"
    path.write_text(json.dumps(obj or {
        "dist": {"det": {"a": 25}}, "b": 5, "c": 100, "m": 4}))
    return str(path)


def write_network(tmp_path, stations, total=None):
    path = tmp_path / "network.json"
    obj = {"stations": stations}
    if total is not None:
        obj["M"] = total
    path.write_text(json.dumps(obj))
    return str(path)


def test_simulate_defaults(tmp_path, capsys):
    out = tmp_path / "trace.csv"
    code, stdout, _ = run(["simulate", "--out", str(out), "--seed", "11"], capsys)
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "k,x,y,lambda_hat"
    assert len(lines) == 41                      # 200 steps at stride 5
    assert "exact = 26.25" in stdout
    assert "lambda_hat(200)" in stdout


def test_simulate_figure_format(tmp_path, capsys):
    out = tmp_path / "fig.csv"
    code, _, _ = run(["simulate", "--figure", "--out", str(out)], capsys)
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "k,lambda_hat"
    assert lines[-1] == "exact,26.25"
    assert len(lines) == 42


def test_simulate_seed_reproducibility(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["simulate", "--out", str(out1), "--seed", "5"], capsys)[0] == 0
    assert run(["simulate", "--out", str(out2), "--seed", "5"], capsys)[0] == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_simulate_deterministic_ignores_seed(tmp_path, capsys):
    cfg = write_station(tmp_path)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["simulate", "--config", cfg, "--out", str(out1), "--seed", "1"], capsys)
    run(["simulate", "--config", cfg, "--out", str(out2), "--seed", "2"], capsys)
    assert out1.read_bytes() == out2.read_bytes()


def test_simulate_single_step(tmp_path, capsys):
    out = tmp_path / "one.csv"
    code, _, _ = run(["simulate", "--k", "1", "--stride", "1",
                      "--out", str(out)], capsys)
    assert code == 0
    assert len(out.read_text().strip().split("\n")) == 2


def test_seed_env_override(tmp_path, capsys, monkeypatch):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.setenv("BSCS_SEED", "77")
    run(["simulate", "--out", str(out1)], capsys)
    monkeypatch.delenv("BSCS_SEED")
    run(["simulate", "--out", str(out2), "--seed", "77"], capsys)
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_pass(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, stdout, _ = run(["verify", "--k", "20000", "--reps", "5",
                           "--tol", "0.05", "--seed", "3",
                           "--out", str(report)], capsys)
    assert code == 0
    assert "verdict    PASS" in stdout
    data = json.loads(report.read_text())
    assert data["pass"] is True
    assert data["equivalence"] is True
    assert abs(data["estimate"] - 26.25) / 26.25 < 0.05


def test_verify_fail_exit_code(tmp_path, capsys):
    code, stdout, _ = run(["verify", "--k", "30", "--reps", "2",
                           "--tol", "1e-9", "--seed", "3"], capsys)
    assert code == 2
    assert "verdict    FAIL" in stdout


def test_sweep_m(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(["sweep", "--vary", "m", "--values", "1,2,3,4,5",
                      "--k", "2000", "--reps", "2", "--seed", "1",
                      "--out", str(out)], capsys)
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "value,exact,estimate,rel_error"
    exacts = [float(line.split(",")[1]) for line in lines[1:]]
    assert exacts == [105.0, 52.5, 35.0, 26.25, 25.0]


def test_sweep_a(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(["sweep", "--vary", "a", "--values", "25,30",
                      "--k", "2000", "--reps", "2", "--out", str(out)], capsys)
    assert code == 0
    exacts = [float(line.split(",")[1])
              for line in out.read_text().strip().split("\n")[1:]]
    assert exacts == [26.25, 30.0]


def test_sweep_empty_values(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(["sweep", "--vary", "m", "--values", "", "--out", str(out)],
                     capsys)
    assert code == 0
    assert out.read_text() == "value,exact,estimate,rel_error\n"


def test_sweep_rejects_unknown_parameter(tmp_path, capsys):
    code, _, _ = run(["sweep", "--vary", "q", "--values", "1"], capsys)
    assert code == 1


def test_allocate(tmp_path, capsys):
    cfg = write_network(tmp_path, [{"a": 25, "b": 5, "c": 100, "r": 1}], total=4)
    out = tmp_path / "plan.json"
    code, stdout, _ = run(["allocate", "--config", cfg, "--out", str(out)], capsys)
    assert code == 0
    plan = json.loads(out.read_text())
    assert plan["counts"] == [4]
    assert plan["objective"] == pytest.approx(1 / 26.25)


def test_allocate_oracle_and_m_flag(tmp_path, capsys):
    stations = [{"a": 25, "b": 5, "c": 100, "r": 1},
                {"a": 10, "b": 2, "c": 50, "r": 2},
                {"a": 5, "b": 1, "c": 30, "r": 1}]
    cfg = write_network(tmp_path, stations)
    out = tmp_path / "plan.json"
    code, stdout, _ = run(["allocate", "--config", cfg, "--m", "10",
                           "--oracle", "--out", str(out)], capsys)
    assert code == 0
    plan = json.loads(out.read_text())
    assert sum(plan["counts"]) == 10
    assert plan["oracle"]["gap"] >= -1e-12
    assert "oracle objective" in stdout


def test_allocate_missing_fleet(tmp_path, capsys):
    cfg = write_network(tmp_path, [{"a": 25, "b": 5, "c": 100, "r": 1}])
    code, _, err = run(["allocate", "--config", cfg], capsys)
    assert code == 1
    assert "fleet size" in err


def test_bad_config_is_exit_1_and_writes_nothing(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    out = tmp_path / "x.csv"
    code, _, err = run(["simulate", "--config", str(cfg), "--out", str(out)], capsys)
    assert code == 1
    assert err
    assert not out.exists()

    cfg.write_text(json.dumps({"dist": {"exp": {"mean": -3}}, "b": 5, "c": 1, "m": 1}))
    code, _, _ = run(["simulate", "--config", str(cfg), "--out", str(out)], capsys)
    assert code == 1
    assert not out.exists()


def test_usage_error_is_exit_1(capsys):
    assert main(["frobnicate"]) == 1
    assert main([]) == 1
    assert main(["--help"]) == 0


def test_algebra_ops(capsys):
    code, out, _ = run(["algebra", "mul",
                        '[[1, 2], ["-inf", 0]]', "[[0], [3]]"], capsys)
    assert code == 0
    assert json.loads(out.strip().split("\n")[-1]) == [[5.0], [3.0]]

    code, out, _ = run(["algebra", "radius",
                        '[[5, "-inf", "-inf", "-inf"], [0, "-inf", "-inf", "-inf"], '
                        '["-inf", 0, "-inf", "-inf"], ["-inf", "-inf", 0, "-inf"]]'],
                       capsys)
    assert code == 0

    code, out, _ = run(["algebra", "solve",
                        '[["-inf", "-inf"], [-2, "-inf"]]', "[1, 0]"], capsys)
    assert code == 0
    assert json.loads(out.strip().split("\n")[-1]) == [1.0, 0.0]

    code, out, _ = run(["algebra", "norm", '["-inf", "-inf"]'], capsys)
    assert code == 0
    assert json.loads(out.strip().split("\n")[-1]) == "-inf"

    code, out, _ = run(["algebra", "star", "[[1.0]]"], capsys)
    assert code == 1  # positive cycle rejected

    code, out, _ = run(["algebra", "pow", "[[1, 2], [0, 1]]", "2"], capsys)
    assert code == 0
    assert json.loads(out.strip().split("\n")[-1]) == [[2.0, 3.0], [1.0, 2.0]]


def test_algebra_missing_operand(capsys):
    assert run(["algebra", "mul", "[[1]]"], capsys)[0] == 1
