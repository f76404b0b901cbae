import csv
import json
import math

import pytest

from dce_quasimode.cli import main


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture
def cfg_file(tmp_path):
    def write(text):
        p = tmp_path / "run.cfg"
        p.write_text(text)
        return str(p)
    return write


def test_simulate_writes_artifacts(tmp_path, cfg_file):
    cfg = cfg_file("epsilon = 0.04\nQ = 100\nmethods = closed_general, phenomenological\npoints = 30\n")
    out = tmp_path / "out"
    assert main(["simulate", "--config", cfg, "--out", str(out), "--svg", "--quiet"]) == 0
    rows = read_csv(out / "series.csv")
    assert list(rows[0]) == ["t", "t_over_tau", "closed_general", "phenomenological"]
    assert len(rows) == 30
    last = rows[-1]
    assert float(last["t_over_tau"]) == pytest.approx(10.0)
    assert float(last["closed_general"]) == pytest.approx(math.sinh(2.0) ** 2, rel=0.01)
    assert float(last["phenomenological"]) > 10 * float(last["closed_general"])
    doc = json.loads((out / "series.json").read_text())
    assert doc["metadata"]["saturation"]["fraction"] == 0.99
    assert doc["config"]["epsilon"] == 0.04
    svg = (out / "series.svg").read_text()
    assert "stroke-dasharray" in svg and "closed_general" in svg and "<!-- generated" in svg


def test_simulate_quadrature_cross_check(tmp_path):
    out = tmp_path / "o"
    code = main(["simulate", "--epsilon", "0.001", "--Q", "100", "--methods", "quadrature,closed_weak",
                 "--points", "15", "--out", str(out), "--quiet"])
    assert code == 0
    rows = read_csv(out / "series.csv")
    worst = max(abs(float(r["quadrature"]) / float(r["closed_weak"]) - 1) for r in rows)
    assert worst <= 1e-4
    doc = json.loads((out / "series.json").read_text())
    assert doc["metadata"]["cross_check"]["quadrature_vs_closed_weak_max_rel_diff"] == pytest.approx(worst, rel=1e-6)


def test_simulate_deterministic(tmp_path, cfg_file):
    cfg = cfg_file("epsilon = 0.02\npoints = 20\n")
    out = tmp_path / "o"
    blobs = []
    for _ in range(2):
        assert main(["simulate", "--config", cfg, "--out", str(out), "--svg", "--no-timestamp", "--quiet"]) == 0
        blobs.append([(out / n).read_bytes() for n in ("series.csv", "series.json", "series.svg")])
    assert blobs[0] == blobs[1]
    assert b"generated" not in blobs[0][2]


def test_empty_methods_writes_nothing(tmp_path, capsys):
    out = tmp_path / "none"
    assert main(["simulate", "--methods", "", "--out", str(out)]) == 2
    assert not out.exists()
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["field"] == "methods" and record["exit_code"] == 2


def test_config_errors_exit_2(tmp_path, cfg_file, capsys):
    assert main(["simulate", "--config", cfg_file("epsilonn = 0.1\n"), "--out", str(tmp_path)]) == 2
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["field"] == "epsilonn" and record["line"] == 1
    assert main(["simulate", "--epsilon", "1.5", "--out", str(tmp_path)]) == 2
    assert main(["simulate", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_numerical_failure_exit_3(tmp_path, capsys):
    out = tmp_path / "o"
    code = main(["simulate", "--epsilon", "0.9", "--Q", "1e5", "--methods", "closed_general", "--out", str(out)])
    assert code == 3
    assert not out.exists()
    assert json.loads(capsys.readouterr().err.strip().splitlines()[-1])["error"] == "RangeError"


def test_sweep_q(tmp_path):
    assert main(["sweep", "--epsilon", "0.01", "--axis", "Q", "--values", "50,100,200",
                 "--out", str(tmp_path), "--quiet"]) == 0
    rows = read_csv(tmp_path / "sweep.csv")
    got = [float(r["N_inf_general"]) for r in rows]
    assert got == pytest.approx([math.sinh(x) ** 2 for x in (0.25, 0.5, 1.0)], rel=1e-14)
    assert [r["status"] for r in rows] == ["ok"] * 3


def test_sweep_epsilon_zero_and_bad_rows(tmp_path):
    assert main(["sweep", "--axis", "epsilon", "--values", "0,0.01,1.5",
                 "--out", str(tmp_path), "--quiet"]) == 0
    rows = read_csv(tmp_path / "sweep.csv")
    assert float(rows[0]["N_inf_general"]) == 0.0
    assert rows[1]["status"] == "ok"
    assert rows[2]["status"].startswith("error") and "epsilon" in rows[2]["status"]


def test_sweep_omega_axis(tmp_path):
    assert main(["sweep", "--axis", "Omega", "--values", "1,2", "--out", str(tmp_path), "--quiet"]) == 0
    rows = read_csv(tmp_path / "sweep.csv")
    assert [float(r["alpha"]) for r in rows] == pytest.approx([0.02, 0.01])


def test_sweep_empty_values(tmp_path):
    assert main(["sweep", "--axis", "Q", "--values", "", "--out", str(tmp_path)]) == 2
    assert not (tmp_path / "sweep.csv").exists()


def test_resonances(tmp_path, capsys):
    assert main(["resonances", "--lmin", "-5", "--lmax", "5", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "resonances.csv")
    assert (rows[0]["l"], rows[0]["Omega_over_omega0"], rows[0]["alpha"]) == ("0", "2", "0.01")
    assert all(float(r["Omega_over_omega0"]) > 0 for r in rows)
    assert "dominant" in capsys.readouterr().out


def test_resonances_empty_set(tmp_path):
    assert main(["resonances", "--lmin", "1", "--lmax", "4", "--out", str(tmp_path), "--quiet"]) == 0
    assert (tmp_path / "resonances.csv").read_text() == "l,sign,Omega_over_omega0,alpha,bessel_weight\n"
    assert main(["resonances", "--lmin", "4", "--lmax", "1", "--out", str(tmp_path)]) == 2


def test_validate_subset(tmp_path, capsys):
    assert main(["validate", "--only", "C1,C10", "--json", "--out", str(tmp_path)]) == 0
    first = capsys.readouterr().out
    doc = json.loads((tmp_path / "validate.json").read_text())
    assert doc["passed"] and [c["key"] for c in doc["criteria"]] == ["C1", "C10"]
    main(["validate", "--only", "C1,C10"])
    assert capsys.readouterr().out == first


def test_validate_corrupted_tolerance(capsys):
    assert main(["validate", "--only", "C1,C4", "--corrupt", "C4"]) == 1
    captured = capsys.readouterr()
    assert "FAIL  C4" in captured.out and "C4" in captured.err
    assert "PASS  C1" in captured.out
