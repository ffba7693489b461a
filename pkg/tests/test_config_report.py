import csv
import json

import pytest

from disklab.config import Config, ConfigError, load_config, parse_config
from disklab.report import SCHEMA, Report, load_pinned


def test_defaults_and_parse():
    cfg = parse_config("""
        # quadrature
        abs_tol = 1e-11
        theta_grid = 2048   # doubled
        domain = comb
        j_points = 2, 3
        ui_eps = 0.3, 0.1
    """)
    assert cfg.abs_tol == 1e-11 and cfg.theta_grid == 2048 and cfg.domain == "comb"
    assert cfg.j_points == (2, 3) and cfg.ui_eps == (0.3, 0.1)
    assert cfg.quadrature.abs_tol == 1e-11
    assert Config().rel_tol == 1e-8 and Config().max_depth == 40 and Config().theta_grid == 1024


@pytest.mark.parametrize("text, where", [
    ("abs_tol = 1e-10\nfoo = 3\n", ":2: unknown key"),
    ("grid_n = 128\ngrid_n = 256\n", ":2: duplicate key"),
    ("max_depth = many\n", ":1: bad value"),
    ("just a line\n", ":1: expected"),
    ("theta_grid = 1000\n", "powers of two"),
    ("abs_tol = -1\n", "positive"),
    ("domain = annulus\n", "unknown domain"),
])
def test_config_errors(text, where):
    with pytest.raises(ConfigError, match=where):
        parse_config(text, "cfg.txt")


def test_load_config(tmp_path):
    assert load_config(None) == Config()
    p = tmp_path / "c.cfg"
    p.write_text("n_zeros = 12\n")
    assert load_config(p).n_zeros == 12
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "missing.cfg")


def test_with_defaults_keeps_explicit_values():
    cfg = parse_config("n_zeros = 7").with_defaults(n_zeros=20, rule="geometric")
    assert cfg.n_zeros == 7 and cfg.rule == "geometric"


def make_report():
    r = Report("demo", Config().echo())
    r.table("t", ["k", "x"], [[1, 0.5], [2, 0.25]])
    r.constant("c", 0.125, "k <= 2")
    ok = r.refine("c", 1.0, 1.05, 0.1, "n -> 2n")
    r.verdict("small", True, "t", [0, 1], "x <= 0.5", stability=["c"])
    return r, ok


def test_report_schema_and_determinism():
    r, ok = make_report()
    assert ok and r.passed
    d = json.loads(r.to_json("T"))
    assert d["schema"] == SCHEMA and d["timestamp"] == "T"
    assert d["verdicts"]["small"]["table"] == "t" and d["verdicts"]["small"]["rows"] == [0, 1]
    assert d["constants"]["c"] == {"value": 0.125, "provenance": "k <= 2"}
    assert make_report()[0].to_json("T") == r.to_json("T")


def test_unstable_refinement_demotes_pass():
    r = Report("demo", {})
    assert not r.refine("c", 1.0, 1.5, 0.1, "n -> 2n")
    r.verdict("v", True, "t", [], "", stability=["c"])
    assert r.verdicts["v"]["status"] == "unstable" and not r.passed
    r.verdict("w", False, "t", [], "", stability=["c"])
    assert r.verdicts["w"]["status"] == "fail"


def test_pinned_check():
    r = Report("demo", {})
    rel = r.pinned_check("x", 1.05, {"value": 1.0, "rel_tol": 0.1}, "t", [])
    assert rel == pytest.approx(0.05) and r.passed
    r.pinned_check("y", 1.5, {"value": 1.0, "rel_tol": 0.1}, "t", [])
    assert r.verdicts["pinned_y"]["status"] == "fail"


def test_pinned_file_has_every_group():
    pins = load_pinned()
    for group, keys in {"breal": ["slope", "alpha_est", "beta_est"], "stolz": ["delta_est", "gamma_est"],
                        "frostman": ["C_frostman", "brv_sup"], "spiral": ["sup_Hp"]}.items():
        for k in keys:
            assert pins[group][k]["value"] > 0 and pins[group][k]["rel_tol"] > 0


def test_csv_output(tmp_path):
    r, _ = make_report()
    paths = r.write(tmp_path / "out.csv", "csv")
    assert [p.name for p in paths] == ["out.csv", "out.t.csv"]
    rows = list(csv.reader(open(paths[0])))
    assert rows[0] == ["kind", "name", "status_or_value", "detail"]
    assert ["verdict", "small", "pass", "x <= 0.5"] in rows
    table = list(csv.reader(open(paths[1])))
    assert table == [["k", "x"], ["1", "0.5"], ["2", "0.25"]]
    with pytest.raises(ValueError):
        r.write(tmp_path / "out.xml", "xml")


def test_non_finite_values_serialize():
    r = Report("demo", {})
    r.constant("inf", float("inf"), "")
    r.constant("z", 1 + 2j, "")
    d = json.loads(r.to_json())
    assert d["constants"]["inf"]["value"] == "inf" and d["constants"]["z"]["value"] == [1.0, 2.0]
