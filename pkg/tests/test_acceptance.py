"""Acceptance criteria 1-11, one test each.

Every experiment runs twice through the CLI with the default configuration;
the first report feeds criteria 3-10 and the pair feeds criterion 11. Each
test prints one PASS/FAIL line and the terminal summary repeats them.
"""
import json

import numpy as np
import pytest

from conftest import ACCEPTANCE, disk_points
from disklab import blaschke as bl
from disklab import cli
from disklab.geometry import DiskPoint, PseudoDisk, pseudo_disk_euclidean, rho
from disklab.experiments import EXPERIMENTS

RUNS = {}


def record(n, checks):
    ok = all(c[1] for c in checks)
    bad = [f"{name} ({detail})" for name, good, detail in checks if not good]
    detail = "; ".join(bad) if bad else "; ".join(f"{name} ({detail})" for name, _, detail in checks)
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def run_twice(name, tmp_path_factory):
    if name not in RUNS:
        d = tmp_path_factory.mktemp(name)
        texts = []
        for i in (1, 2):
            out = d / f"{name}{i}.json"
            cli.main(["run", name, "--out", str(out)])
            texts.append(out.read_text())
        RUNS[name] = texts
    return RUNS[name]


@pytest.fixture(scope="module")
def report(tmp_path_factory):
    return lambda name: json.loads(run_twice(name, tmp_path_factory)[0])


def verdict(rep, name):
    v = rep["verdicts"][name]
    return name, v["status"] == "pass", v["detail"]


def stable(rep, name, tol):
    r = rep["refinement"][name]
    return name, r["relative_delta"] <= tol, f"relative change {r['relative_delta']:.3g} <= {tol}"


def mobius(a, z):
    return (a - z) / (1 - np.conj(a) * z)


def test_criterion_01_geometry():
    rng = np.random.default_rng(1)
    a, z, w = (disk_points(rng, 1000, 0.95) for _ in range(3))
    inv = float(np.max(np.abs(rho(mobius(a, z), mobius(a, w)) - rho(z, w))))
    worst = 0.0
    for _ in range(50):
        c0 = complex(disk_points(rng, 1, 0.95)[0])
        r = float(rng.uniform(0.05, 0.95))
        c, R = pseudo_disk_euclidean(PseudoDisk(DiskPoint.of(c0), r))
        bd = c + R * np.exp(2j * np.pi * rng.random(256))
        worst = max(worst, float(np.max(np.abs(rho(np.full(256, c0), bd) - r))))
    record(1, [("mobius_invariance", inv <= 1e-12, f"max error {inv:.3g} <= 1e-12 on 1000 triples"),
               ("pseudo_disk_boundary", worst <= 1e-10, f"max error {worst:.3g} <= 1e-10")])


def test_criterion_02_blaschke_kernel():
    rng = np.random.default_rng(2)
    t = np.exp(2j * np.pi * np.arange(256) / 256)
    uni, count_ok, resid = 0.0, True, 0.0
    for _ in range(50):
        n = int(rng.integers(2, 13))
        B = bl.BlaschkeProduct(bl.ZeroSequence.from_points(disk_points(rng, n, 0.95)))
        uni = max(uni, float(np.max(np.abs(np.abs(B(t)) - 1))))
        c = bl.critical_points(B)
        count_ok &= len(c.points) == n - 1 and bool(np.all(np.abs(c.points) < 1))
        resid = max(resid, float(np.max(c.residuals)))
    inter = True
    for _ in range(20):
        a = np.sort(rng.uniform(0.02, 0.98, int(rng.integers(2, 13))))
        zs = bl.ZeroSequence.from_points(a)
        inter &= bl.interlace_check(zs, bl.critical_points(bl.BlaschkeProduct(zs)))
    record(2, [("unimodular", uni <= 1e-12, f"max ||B|-1| {uni:.3g} on 256 boundary points"),
               ("riemann_hurwitz", count_ok and resid <= 1e-9, f"n-1 critical points, residual {resid:.3g}"),
               ("interlacing", inter, "20 random real-zero sets")])


def test_criterion_03_identities(report):
    rep = report("identities")
    assert rep["config"]["abs_tol"] == 1e-10
    record(3, [verdict(rep, "integration_by_parts"), verdict(rep, "s_power"), verdict(rep, "t_h_h")])


def test_criterion_04_inequalities(report):
    rep = report("classes")
    rows = rep["tables"]["inequalities"]["rows"]
    checks = [verdict(rep, "inequalities"), ("battery_size", len(rows) == 10, f"{len(rows)} polynomials")]
    record(4, checks)


def test_criterion_05_breal(report):
    rep = report("breal")
    orbit = rep["tables"]["orbit"]["rows"]
    checks = [("midpoints", len(orbit) == 19, f"{len(orbit)} midpoints")]
    checks += [verdict(rep, k) for k in ("orbit_increasing", "disk_increments_positive", "positive_slope",
                                         "pinned_slope", "pinned_alpha_est", "pinned_beta_est",
                                         "pinned_orbit_final")]
    record(5, checks)


def test_criterion_06_stolz(report):
    rep = report("stolz")
    ks = [r[0] for r in rep["tables"]["circle_max"]["rows"]]
    record(6, [verdict(rep, "circle_max_bound"), ("k_range", ks == list(range(5, 16)), "5 <= k <= 15"),
               verdict(rep, "gamma_positive"), stable(rep, "gamma_est", 0.10)])


def test_criterion_07_frostman(report):
    rep = report("frostman")
    record(7, [verdict(rep, "frostman_finite"), verdict(rep, "brv_finite")]
           + [stable(rep, k, 0.02) for k in ("C_frostman_grid", "C_frostman_zeros",
                                             "brv_sup_grid", "brv_sup_zeros")])


def test_criterion_08_spiral(report):
    rep = report("spiral")
    record(8, [verdict(rep, "re_h_asymptotic"), verdict(rep, "pinned_sup_Hp"),
               verdict(rep, "arc_distance_loop_bound"), verdict(rep, "log_growth_positive"),
               stable(rep, "exp_diameter", 0.05)])


def test_criterion_09_comb(report):
    rep = report("comb")
    n = len(rep["tables"]["distances"]["rows"])
    record(9, [verdict(rep, "distance_below_2"), ("samples", n == 200, f"{n} sample points")])


def test_criterion_10_classes(report):
    rep = report("classes")
    js = [r[0] for r in rep["tables"]["h1_growth"]["rows"]]
    eps = sorted(r[0] for r in rep["tables"]["ui_radius"]["rows"])
    record(10, [verdict(rep, "l1_tail"), verdict(rep, "h1_increasing"), ("j_range", js == list(range(5, 15)),
                                                                         "j = 5..14"),
                verdict(rep, "h1_doubling"), verdict(rep, "ui_finite"), verdict(rep, "ui_monotone"),
                ("eps_grid", eps == [0.05, 0.1, 0.2], "eps in {0.2, 0.1, 0.05}")])


def test_criterion_11_determinism(tmp_path_factory):
    checks = []
    for name in EXPERIMENTS:
        a, b = ("".join(ln for ln in t.splitlines(True) if not ln.lstrip().startswith('"timestamp"'))
                for t in run_twice(name, tmp_path_factory))
        checks.append((name, a == b, "byte-identical modulo timestamp"))
    record(11, checks)
