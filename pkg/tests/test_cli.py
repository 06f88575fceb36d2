import csv
import io

import pytest

from quadcurl import cli

HEADER = ("example,bc,sigma,eps,N,h,E_L2,rate_L2,E_curl,rate_curl,E_gc,rate_gc,E_energy,rate_energy")


def run(capsys, *args):
    code = cli.main(list(args))
    return code, capsys.readouterr()


def test_study_csv(capsys):
    code, out = run(capsys, "study", "--example", "1", "--eps", "1", "--n", "2", "--n", "3", "--bc", "weak")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0].startswith(HEADER)
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert [r["N"] for r in rows] == ["2", "3"]
    assert rows[0]["rate_L2"] == "" and len(rows[1]["rate_L2"].split(".")[1]) == 2
    assert "e-" in rows[0]["E_L2"] and len(rows[0]["E_L2"].split("e")[0]) == 5


def test_deterministic_output(capsys, tmp_path):
    args = ["study", "--eps", "1", "--n", "2", "--n", "3", "--out"]
    assert cli.main(args + [str(tmp_path / "a.csv")]) == 0
    assert cli.main(args + [str(tmp_path / "b.csv")]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_markdown(capsys):
    code, out = run(capsys, "study", "--eps", "0.5", "--n-min", "2", "--n-max", "3", "--n-step", "1",
                    "--bc", "strong", "--format", "markdown")
    assert code == 0
    head = out.out.splitlines()[0]
    assert "E_{A}" in head and head.count("rate") == 4


def test_config_errors(capsys):
    assert run(capsys, "study", "--example", "2", "--subdomain", "true", "--n", "8", "--n", "12")[0] == 1
    assert run(capsys, "study", "--n", "2", "--n-min", "2", "--n-max", "3")[0] == 1
    assert run(capsys, "study", "--sigma", "-1", "--n", "2")[0] == 1
    assert run(capsys, "study", "--bc", "sideways")[0] == 1
    assert run(capsys, "study", "--eps", "2", "--n", "2")[0] == 1


def test_numerical_failure_exit(monkeypatch, capsys):
    from quadcurl import study
    from quadcurl.solver import SolverError

    def boom(*a, **k):
        raise SolverError("forced")

    monkeypatch.setattr(study, "solve_saddle", boom)
    code, out = run(capsys, "study", "--eps", "1", "--n", "2")
    assert code == 2
    assert "forced" in out.out


def test_check(capsys):
    code, out = run(capsys, "check")
    assert code == 0
    assert out.out.count("PASS") == 6


def test_bool_flag():
    assert cli._bool("yes") is True and cli._bool("0") is False
    with pytest.raises(Exception):
        cli._bool("maybe")
