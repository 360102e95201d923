import io
import json

import numpy as np
import pytest

from telegraph import law
from telegraph.cli import EXIT_OK, EXIT_USAGE, EXIT_VALIDATION_FAILED, main
from telegraph.intensity import ModelParams
from telegraph.tables import fmt, read_csv

SMOKE_CONFIG = {
    "n": 10, "experiments": 1, "coverage_experiments": 1, "mc_samples": 2000,
    "grid": {"t_points": 4, "x_points": 9, "ks_points": 101},
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    return read_csv(io.StringIO(text))


def test_simulate_zero_theta_positions(capsys):
    code, out, _ = run(capsys, "simulate", "--theta", "0", "--n", "5", "--T", "1", "--emit", "positions")
    assert code == EXIT_OK
    rows = table(out)
    assert len(rows) == 5
    assert {float(r["x"]) for r in rows} <= {1.0, -1.0}


def test_simulate_is_deterministic(capsys):
    argv = ("simulate", "--theta", "1.3", "--T", "2", "--n", "50", "--seed", "9", "--emit", "counts")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    assert run(capsys, *argv[:-4], "--seed", "10", "--emit", "counts")[1] != first


def test_seed_env_override(capsys, monkeypatch):
    argv = ("simulate", "--theta", "1", "--T", "2", "--n", "20", "--emit", "counts")
    default = run(capsys, *argv)[1]
    monkeypatch.setenv("TELEGRAPH_SEED", "0")
    assert run(capsys, *argv)[1] == default
    monkeypatch.setenv("TELEGRAPH_SEED", "5")
    assert run(capsys, *argv)[1] == run(capsys, *argv[:-2], "--seed", "5", "--emit", "counts")[1]
    monkeypatch.setenv("TELEGRAPH_SEED", "five")
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_simulate_trajectories_json_lines(capsys):
    code, out, _ = run(capsys, "simulate", "--theta", "2", "--T", "1", "--n", "3", "--emit", "trajectories", "--seed", "4")
    assert code == EXIT_OK
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["index"] for r in recs] == [0, 1, 2]
    assert all(r["seed"] == 4 for r in recs)
    code, _, err = run(capsys, "simulate", "--theta", "2", "--T", "1", "--emit", "trajectories", "--format", "csv")
    assert code == EXIT_USAGE and "JSON" in err


def test_simulate_counts_mean(capsys):
    code, out, _ = run(capsys, "simulate", "--theta", "1", "--c", "1", "--T", "2", "--n", "20000", "--emit", "counts")
    counts = np.array([int(r["count"]) for r in table(out)])
    assert abs(counts.mean() - 1.3250027473578645) <= 3 * np.sqrt(1.325 / counts.size)


def test_density_table(capsys, tmp_path):
    path = tmp_path / "d.csv"
    code, _, _ = run(capsys, "density", "--theta", "1", "--t", "1", "--xmin", "-2", "--xmax", "2",
                     "--points", "401", "--output", str(path))
    assert code == EXIT_OK
    rows = table(path.read_text())
    x = np.array([float(r["x"]) for r in rows])
    v = np.array([float(r["value"]) for r in rows])
    assert x[0] == -2.0 and x[-1] == 2.0 and x.size == 401
    assert np.all(v[np.abs(x) > 1] == 0.0)
    np.testing.assert_allclose(v, v[::-1], rtol=1e-14)
    assert v[200] == pytest.approx(0.18312688632119108, rel=1e-14)


def test_csv_round_trips_exactly(capsys):
    _, out, _ = run(capsys, "cdf", "--theta", "1.7", "--c", "0.3", "--t", "2", "--points", "33")
    rows = table(out)
    x = np.array([float(r["x"]) for r in rows])
    vals = law.cdf(ModelParams(1.7, 0.3), 2.0, x)
    assert [float(r["value"]) for r in rows] == vals.tolist()
    assert all(fmt(float(r["value"])) == r["value"] for r in rows)
    assert float(rows[-1]["value"]) == 1.0


def test_json_format(capsys):
    _, out, _ = run(capsys, "velocity", "--theta", "1", "--tmax", "1", "--points", "3", "--s", "0.5", "--format", "json")
    doc = json.loads(out)
    assert doc["columns"] == ["t", "p_same", "p_flip", "covariance"]
    last = doc["rows"][-1]
    assert last["p_same"] == pytest.approx(0.709987170807013, rel=1e-15)
    assert last["covariance"] == pytest.approx(0.5340143076389557, rel=1e-14)


@pytest.mark.parametrize(
    "argv",
    [
        ("density", "--theta", "1", "--t", "0"),
        ("density", "--theta", "1", "--t", "1", "--points", "1"),
        ("cdf", "--theta", "1", "--t", "1", "--xmin", "1", "--xmax", "0"),
        ("simulate", "--theta", "1", "--T", "1", "--n", "0"),
        ("estimate", "--T", "1", "--from-simulation"),
        ("velocity", "--theta", "1", "--tmin", "2", "--tmax", "1"),
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(list(argv))
        raise SystemExit(code)
    assert info.value.code == EXIT_USAGE


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_estimate_from_counts(capsys, tmp_path):
    code, out, _ = run(capsys, "estimate", "--T", "1", "--counts-file", write(tmp_path, "k", "1\n1\n\n1\n1\n"))
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["theta_hat"] == pytest.approx(1.6574544541530773, rel=1e-15)
    assert doc["n"] == 4 and doc["level"] == 0.95


def test_estimate_degenerate(capsys, tmp_path):
    _, out, _ = run(capsys, "estimate", "--T", "1", "--counts-file", write(tmp_path, "k", "0\n0\n0"))
    doc = json.loads(out)
    assert doc["theta_hat"] == 0.0 and doc["degenerate"] is True


def test_estimate_single_path(capsys, tmp_path):
    _, out, _ = run(capsys, "estimate", "--T", "2", "--single", "--counts-file", write(tmp_path, "k", "3\n"))
    doc = json.loads(out)
    assert doc["scheme"] == "single" and doc["std_error"] is None


def test_estimate_malformed_file_names_line(capsys, tmp_path):
    path = write(tmp_path, "k", "1\n2\nx\n")
    code, _, err = run(capsys, "estimate", "--T", "1", "--counts-file", path)
    assert code == EXIT_USAGE
    assert f"{path}:3" in err
    code, _, err = run(capsys, "estimate", "--T", "1", "--counts-file", str(tmp_path / "missing"))
    assert code == EXIT_USAGE


def test_estimate_from_simulation(capsys):
    code, out, _ = run(capsys, "estimate", "--T", "1", "--from-simulation", "--theta", "1",
                       "--n", "10000", "--seed", "7")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert abs(doc["theta_hat"] - 1.0) <= 3 * doc["std_error"]


def test_validate_smoke_config(capsys, tmp_path):
    cfg = write(tmp_path, "c.json", json.dumps(SMOKE_CONFIG))
    rows = tmp_path / "rows.csv"
    code, out, err = run(capsys, "validate", "--config", cfg, "--rows-csv", str(rows))
    assert code in (EXIT_OK, EXIT_VALIDATION_FAILED)
    report = json.loads(out)
    assert (code == EXIT_OK) == report["passed"]
    assert "INFO estimator_variance" in err
    assert table(rows.read_text())[0]["experiment"] == "0"


def test_validate_zero_tolerance_fails(capsys, tmp_path):
    cfg = dict(SMOKE_CONFIG, tolerances={"normalization": 0.0, "pde_relative": 0.0})
    code, _, err = run(capsys, "validate", "--config", write(tmp_path, "c.json", json.dumps(cfg)))
    assert code == EXIT_VALIDATION_FAILED
    assert "FAIL pde_residual" in err


def test_validate_bad_config(capsys, tmp_path):
    code, _, err = run(capsys, "validate", "--config", write(tmp_path, "c.json", '{"theta": "a", "n": 0.5}'))
    assert code == EXIT_USAGE
    assert "theta" in err and "n:" in err
    code, _, _ = run(capsys, "validate", "--config", write(tmp_path, "d.json", "{not json"))
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "validate", "--config", str(tmp_path / "missing.json"))
    assert code == EXIT_USAGE
