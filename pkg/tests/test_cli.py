import json
import subprocess
import sys

import pytest

from disklab import cli
from disklab.experiments import EXPERIMENTS
from disklab.report import Report


def run(*args):
    return cli.main([str(a) for a in args])


@pytest.fixture
def stub(monkeypatch):
    def make(passed):
        def experiment(cfg, zeros=None):
            r = Report("stub", cfg.echo())
            r.table("t", ["x"], [[1.0]])
            r.verdict("ok", passed, "t", [0], "stub verdict")
            return r
        monkeypatch.setitem(EXPERIMENTS, "stub", experiment)
    return make


def test_exit_codes(stub, tmp_path):
    stub(True)
    assert run("run", "stub", "--out", tmp_path / "a.json") == 0
    stub(False)
    assert run("run", "stub", "--out", tmp_path / "b.json") == 2
    assert json.loads((tmp_path / "b.json").read_text())["verdicts"]["ok"]["status"] == "fail"


def test_usage_errors(tmp_path, capsys):
    assert run("run", "nosuch", "--out", tmp_path / "x.json") == 64
    assert "unknown experiment" in capsys.readouterr().err
    assert run("walk", "identities") == 64
    assert run("run", "identities") == 64
    assert run("run", "identities", "--out", tmp_path / "x", "--format", "xml") == 64


def test_config_error_exit(stub, tmp_path, capsys):
    stub(True)
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("abs_tol = 1e-10\nbogus = 1\n")
    assert run("run", "stub", "--config", cfg, "--out", tmp_path / "x.json") == 1
    assert "bad.cfg:2" in capsys.readouterr().err
    assert run("run", "stub", "--config", tmp_path / "missing.cfg", "--out", tmp_path / "x.json") == 1


@pytest.mark.parametrize("body, line", [
    ("re,im\n0.5,0.1\n0.5,abc\n", 3),
    ("re,im\n0.5,0.1\n1.5,0\n", 3),
    ("x,y\n0.5,0.1\n", 1),
    ("modulus,arg_radians\n0.5\n", 2),
    ("# only a comment\n", 1),
])
def test_malformed_zero_file(stub, tmp_path, capsys, body, line):
    stub(True)
    z = tmp_path / "z.csv"
    z.write_text(body)
    assert run("run", "stub", "--zeros", z, "--out", tmp_path / "x.json") == 65
    assert f"line {line}" in capsys.readouterr().err


def test_missing_zero_file(stub, tmp_path):
    stub(True)
    assert run("run", "stub", "--zeros", tmp_path / "none.csv", "--out", tmp_path / "x.json") == 65


def test_identities_end_to_end(tmp_path, capsys):
    out = tmp_path / "ident.json"
    assert run("run", "identities", "--out", out) == 0
    text = capsys.readouterr().out
    assert str(out) in text and "pass  " in text
    d = json.loads(out.read_text())
    assert d["schema"] == "disklab-report/1" and d["experiment"] == "identities" and d["passed"]
    for v in d["verdicts"].values():
        assert v["table"] in d["tables"]
        assert all(0 <= i < len(d["tables"][v["table"]]["rows"]) for i in v["rows"])


def test_csv_format(tmp_path):
    out = tmp_path / "ident.csv"
    assert run("run", "identities", "--out", out, "--format", "csv") == 0
    assert out.exists() and len(list(tmp_path.glob("ident.*.csv"))) >= 3


def test_custom_zero_file_is_used(tmp_path):
    z = tmp_path / "z.csv"
    z.write_text("modulus,arg_radians\n" + "".join(f"{1 - 2.0 ** -k!r},0\n" for k in range(1, 9)))
    out = tmp_path / "b.json"
    run("run", "breal", "--zeros", z, "--out", out)
    d = json.loads(out.read_text())
    assert len(d["tables"]["orbit"]["rows"]) == 7
    assert not any(k.startswith("pinned_") for k in d["verdicts"])


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "disklab.cli", "run", "nosuch", "--out", "x"],
                         capture_output=True, text=True)
    assert out.returncode == 64
