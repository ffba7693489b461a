import math

import numpy as np
import pytest
from scipy.optimize import brentq

from disklab import blaschke as bl
from disklab.geometry import rho
from conftest import disk_points

Z = bl.ZeroSequence


def product(points):
    return bl.BlaschkeProduct(Z.from_points(points))


def random_product(rng, n):
    return product(disk_points(rng, n, 0.95))


def real_zero_sets(rng, count, n_max=12):
    for _ in range(count):
        n = int(rng.integers(2, n_max + 1))
        yield np.sort(rng.uniform(0.02, 0.98, n))


def test_zero_sequence_rejects_bad_points():
    with pytest.raises(ValueError):
        Z.from_points([0.0])
    with pytest.raises(ValueError):
        Z.from_points([1.0])


def test_generation_rules():
    r = bl.GenerationRule.parse("geometric 0.5")
    z = Z.from_rule(r, 20)
    assert np.allclose(z.points, 1 - 2.0 ** -np.arange(1, 21))
    assert z.tail_mass() == pytest.approx(2.0 ** -20)
    f = Z.frostman4(5)
    assert np.allclose(f.depths, 4.0 ** -np.arange(1, 6))
    assert np.allclose(f.angles, 2.0 ** -np.arange(1, 6))
    assert f.tail_mass() == pytest.approx(sum(4.0 ** -k for k in range(6, 80)))
    s = Z.one_over_k_sq(3)
    assert np.allclose(1 - s.depths, [1 - 1 / 4, 1 - 1 / 9, 1 - 1 / 16])
    assert s.tail_mass() == pytest.approx(sum(1 / k ** 2 for k in range(5, 200000)), rel=1e-4)
    for bad in ("geometric", "geometric 1.5", "frostman4 2", "spiral", ""):
        with pytest.raises(ValueError):
            bl.GenerationRule.parse(bad)


def test_eval_examples():
    B = product([0.5])
    assert bl.eval_b(B, 0)[0] == pytest.approx(0.5)
    v, e = bl.eval_b(B, 0.5)
    assert abs(v) <= e + 1e-16
    d, _ = bl.eval_b_prime(B, 0.5)
    assert abs(d) == pytest.approx(4 / 3)


def test_zeros_are_zeros(rng):
    B = random_product(rng, 9)
    v, e = B.eval(B.zeros.points)
    assert np.all(np.abs(v) <= e + 1e-15)


def test_derivative_at_zero_matches_subproduct(rng):
    B = random_product(rng, 7)
    a = B.zeros.points
    for k in range(7):
        Bk = B.subproduct(k)
        # B_k(z) = B(z) (|a|/a) (1 - conj(a) z)/(a - z); B'(a_k) = -(|a_k|/a_k) B_k(a_k)/(1-|a_k|^2)
        want = -(abs(a[k]) / a[k]) * Bk(np.array([a[k]]))[0] / (1 - abs(a[k]) ** 2)
        assert abs(B.prime(np.array([a[k]]))[0] - want) <= 1e-10 * abs(want)


def test_unimodular_on_boundary(rng):
    for _ in range(10):
        B = random_product(rng, int(rng.integers(1, 13)))
        t = np.exp(2j * np.pi * np.arange(256) / 256)
        assert np.max(np.abs(np.abs(B(t)) - 1)) <= 1e-12


def test_modulus_bounded_by_one_plus_err(rng):
    B = bl.BlaschkeProduct(Z.geometric(10))
    z = disk_points(rng, 500, 0.999)
    v, e = B.eval(z)
    assert np.all(np.abs(v) <= 1 + e)


def test_infinite_product_rejects_boundary():
    B = bl.BlaschkeProduct(Z.geometric(10))
    with pytest.raises(ValueError):
        B.eval(np.array([1.0 + 0j]))


def test_certified_tail(rng):
    z = disk_points(rng, 300, 0.995)
    for n in (5, 10, 15):
        Bn = bl.BlaschkeProduct(Z.geometric(n))
        Bbig = bl.BlaschkeProduct(Z.geometric(n + 40))
        v, e = Bn.eval(z)
        assert np.all(np.abs(v - Bbig(z)) <= e)


def test_subproduct_identity(rng):
    B = random_product(rng, 8)
    z = disk_points(rng, 100, 0.9)
    for k in range(8):
        assert np.max(np.abs(B.subproduct(k)(z) * B.factor(k, z) - B(z))) <= 1e-12


def test_derivative_finite_difference(rng):
    B = random_product(rng, 6)
    z = disk_points(rng, 100, 0.9)
    h = 1e-5
    fd = (B(z + h) - B(z - h)) / (2 * h)
    d = B.prime(z)
    assert np.max(np.abs(fd - d) / np.abs(d)) <= 1e-6


def test_polar_evaluation_matches_cartesian(rng):
    B = random_product(rng, 6)
    s = rng.uniform(0.01, 1.0, 200)
    t = rng.uniform(0, 2 * np.pi, 200)
    z = (1 - s) * np.exp(1j * t)
    assert np.allclose(B.eval_polar(s, t)[0], B(z), atol=1e-13)
    assert np.allclose(B.deriv_polar(s, t)[0], B.prime(z), atol=1e-11)


def test_frostman_sup_examples():
    out = bl.frostman_sup(Z.from_points([0.5]), [math.pi])
    assert out.sup == pytest.approx(1 / 3)
    zs = Z.from_points([0.5, 0.3j])
    grid = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    want = max(sum((1 - abs(a)) / abs(a - np.exp(1j * t)) for a in zs.points) for t in grid)
    assert bl.frostman_sup(zs, grid).sup == pytest.approx(want)
    with pytest.raises(ValueError):
        bl.frostman_sup(zs, [])


def test_frostman4_refinement():
    grid = lambda m, z: np.unique(np.concatenate([2 * np.pi * np.arange(m) / m, z.angles]))
    z25, z50 = Z.frostman4(25), Z.frostman4(50)
    c = bl.frostman_sup(z25, grid(4096, z25)).sup
    assert math.isfinite(c)
    assert abs(bl.frostman_sup(z25, grid(8192, z25)).sup - c) <= 0.02 * c
    assert abs(bl.frostman_sup(z50, grid(4096, z25)).sup - c) <= 0.02 * c


def test_frostman_tail_bounds_explicit_terms():
    z = Z.frostman4(6)
    far = Z.frostman4(60).finite()
    for t in np.concatenate([np.linspace(0, 2 * np.pi, 97), far.angles]):
        explicit = bl.frostman_sup(far, [t]).sup
        certified = bl.frostman_sup(z, [t]).sup
        assert explicit <= certified + 1e-12


def test_separation_constant():
    assert bl.separation_constant(Z.from_points([0.5, -0.5])) == pytest.approx(0.8)
    assert bl.separation_constant(Z.from_points([0.5, 0.5])) == 0.0
    a = 1 - 2.0 ** -np.arange(1, 21)
    adj = min(rho(a[i], a[i + 1]) for i in range(19))
    assert bl.separation_constant(Z.geometric(20)) == pytest.approx(adj)


def test_interp_delta():
    assert bl.interp_delta(Z.from_points([0.5, -0.5])) == pytest.approx(0.8)
    assert bl.interp_delta(Z.from_points([0.5])) == 1.0
    assert bl.interp_delta(Z.from_points([0.5, 0.5])) == 0.0
    d20 = bl.interp_delta(Z.geometric(20))
    d25 = bl.interp_delta(Z.geometric(25))
    assert 0 < d25 <= d20 and abs(d20 - d25) <= 0.01 * d20
    assert d20 <= bl.separation_constant(Z.geometric(20))


def _logder_root(a, lo, hi):
    f = lambda t: sum((1 - x * x) / ((x - t) * (1 - x * t)) for x in a)
    return brentq(f, lo + 1e-12, hi - 1e-12, xtol=1e-15)


def test_critical_points_examples():
    c = bl.critical_points(product([0.5, -0.5]))
    assert len(c.points) == 1 and abs(c.points[0]) <= 1e-12
    for method in ("companion", "bracket", "auto"):
        c = bl.critical_points(product([1 / 3, 2 / 3]), method)
        assert c.points[0].real == pytest.approx(_logder_root([1 / 3, 2 / 3], 1 / 3, 2 / 3), abs=1e-12)
    with pytest.raises(ValueError):
        bl.critical_points(product([0.5]))
    with pytest.raises(ValueError):
        bl.critical_points(product([0.5, 0.3j]), "bracket")


def test_riemann_hurwitz_count(rng):
    for _ in range(50):
        n = int(rng.integers(2, 13))
        B = random_product(rng, n)
        c = bl.critical_points(B)
        assert len(c.points) == n - 1
        assert np.all(np.abs(c.points) < 1)
        assert np.all(c.residuals <= 1e-9)


def test_companion_and_bracket_agree(rng):
    for a in real_zero_sets(rng, 10):
        B = product(a)
        p1 = bl.critical_points(B, "companion").points
        p2 = bl.critical_points(B, "bracket").points
        assert np.max(np.abs(p1 - p2)) <= 1e-9


def test_interlacing(rng):
    for a in real_zero_sets(rng, 20):
        zs = Z.from_points(a)
        assert bl.interlace_check(zs, bl.critical_points(bl.BlaschkeProduct(zs)))
    g = Z.geometric(12).finite()
    assert bl.interlace_check(g, bl.critical_points(bl.BlaschkeProduct(g)))
    with pytest.raises(ValueError):
        zs = Z.from_points([0.5, -0.5])
        bl.interlace_check(zs, bl.critical_points(bl.BlaschkeProduct(zs)))


def test_derivative_factorization(rng):
    B = product([1 / 3, 2 / 3])
    bt, G = bl.derivative_factorization(B)
    assert bt.degree == 1
    assert (1 - bt.zeros.depths[0]) == pytest.approx(_logder_root([1 / 3, 2 / 3], 1 / 3, 2 / 3), abs=1e-12)
    for a in list(real_zero_sets(rng, 5)) + [1 - 2.0 ** -np.arange(1, 21)]:
        B = product(a)
        bt, G = bl.derivative_factorization(B)
        t = np.linspace(0.005, 0.995, 100).astype(complex)
        g = G(t)
        assert np.all(np.abs(g.imag) <= 1e-12 * np.abs(g.real)) and np.all(g.real > 0)
        z = disk_points(rng, 100, 0.95)
        lhs = np.abs(B.prime(z))
        assert np.max(np.abs(lhs - np.abs(bt(z)) * np.abs(G(z))) / np.maximum(lhs, 1)) <= 1e-9
    with pytest.raises(ValueError):
        bl.derivative_factorization(product([0.5, 0.3j]))


def test_min_modulus_off_disks():
    B = product([0.5])
    grid = disk_points(np.random.default_rng(1), 2000, 0.99)
    assert bl.min_modulus_off_disks(B, 0.5, grid) > 0
    # the filter drops every point inside the pseudo-disk
    assert bl.min_modulus_off_disks(B, 0.5, np.array([0.5, 0.55, -0.5])) == pytest.approx(0.8)
    with pytest.raises(ValueError):
        bl.min_modulus_off_disks(B, 0.5, np.array([0.5]))


def test_max_on_circle():
    B = product([0.5])
    assert bl.max_on_circle(B, 0) > 0
    empty = bl.BlaschkeProduct(Z(np.zeros(0), np.zeros(0)))
    assert bl.max_on_circle(empty, 0) == 1.0
    g = bl.BlaschkeProduct(Z.geometric(20), truncation=40)
    delta = bl.interp_delta(Z.geometric(20))
    assert all(bl.max_on_circle(g, k - 1) >= delta / 4 for k in range(5, 16))


def test_gpv_constants():
    g = bl.gpv_constants(Z.from_points([0.5, -0.5]))
    assert g.alpha <= 0.4 and g.beta > 0
    one = bl.gpv_constants(Z.from_points([0.3]))
    assert one.alpha == 0.5 and one.beta > 0
    z15 = Z.geometric(15).finite()
    b1, b2 = bl.gpv_constants(z15, 256).beta, bl.gpv_constants(z15, 512).beta
    assert b1 > 0 and abs(b1 - b2) <= 0.1 * b1
    with pytest.raises(ValueError):
        bl.gpv_constants(Z.from_points([0.5, 0.5]))


def test_gamma_stable_under_grid_doubling():
    z = Z.geometric(15).finite()
    eps = bl.gpv_alpha(z) / 2
    B = bl.BlaschkeProduct(z)
    g1 = bl.min_modulus_off_disks(B, eps, bl.zero_adapted_grid(z, eps, 0.9, 16, 64))
    g2 = bl.min_modulus_off_disks(B, eps, bl.zero_adapted_grid(z, eps, 0.9, 32, 128, 64))
    assert g1 > 0 and abs(g1 - g2) <= 0.1 * g1


def test_read_zero_csv(tmp_path):
    p = tmp_path / "z.csv"
    p.write_text("re,im\n0.5,0\n# comment\n0,-0.25\n")
    z = bl.read_zero_csv(p)
    assert np.allclose(z.points, [0.5, -0.25j])
    p.write_text("modulus,arg_radians\n0.5,3.141592653589793\n")
    assert np.allclose(bl.read_zero_csv(p).points, [-0.5])


@pytest.mark.parametrize("text, line", [
    ("x,y\n0.5,0\n", 1),
    ("re,im\n0.5,0\n0.2\n", 3),
    ("re,im\n0.5,abc\n", 2),
    ("re,im\n0.5,0\n1.5,0\n", 3),
    ("re,im\n", 1),
])
def test_read_zero_csv_errors_carry_line(tmp_path, text, line):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(bl.ZeroFileError) as info:
        bl.read_zero_csv(p)
    assert info.value.lineno == line
