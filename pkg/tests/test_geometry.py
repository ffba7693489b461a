import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from disklab.geometry import (CarlesonSquare, DiskPoint, PointMassMeasure, PseudoDisk, StolzRegion,
                              canonical_angle, carleson_constant, mobius, pseudo_disk_euclidean,
                              pseudo_disks_disjoint, rho, stolz_contains)
from conftest import disk_points

inside = st.builds(lambda r, t: r * complex(math.cos(t), math.sin(t)),
                   st.floats(0, 0.999), st.floats(0, 2 * math.pi))


def test_diskpoint_rejects_boundary():
    with pytest.raises(ValueError):
        DiskPoint(1.0, 0.0)
    with pytest.raises(ValueError):
        DiskPoint(0.8, 0.7)
    with pytest.raises(ValueError):
        DiskPoint(float("nan"), 0.0)


def test_rho_examples():
    assert rho(0, 0.5) == pytest.approx(0.5)
    assert rho(0.5, 0.5) == 0.0
    assert rho(0.5, -0.5) == pytest.approx(0.8, abs=1e-15)


def test_rho_rejects_outside_points():
    with pytest.raises(ValueError):
        rho(0, 1.0)


@given(inside, inside)
def test_rho_symmetric_and_in_range(z, w):
    a, b = rho(z, w), rho(w, z)
    assert a == pytest.approx(b, abs=1e-15)
    assert 0.0 <= a < 1.0


def test_mobius_invariance(rng):
    a = disk_points(rng, 1000, 0.95)
    z = disk_points(rng, 1000, 0.95)
    w = disk_points(rng, 1000, 0.95)
    lhs = rho(mobius_arr(a, z), mobius_arr(a, w))
    assert np.max(np.abs(lhs - rho(z, w))) <= 1e-12


def mobius_arr(a, z):
    return (a - z) / (1 - np.conj(a) * z)


def test_mobius_is_an_involution():
    a = 0.3 - 0.4j
    z = 0.1 + 0.7j
    assert abs(mobius(a, mobius(a, z)) - z) < 1e-15


def test_pseudo_disk_centered():
    c, r = pseudo_disk_euclidean(PseudoDisk(DiskPoint(0, 0), 0.3))
    assert c == 0 and r == pytest.approx(0.3)


def test_pseudo_disk_set_equality(rng):
    for _ in range(20):
        a = complex(disk_points(rng, 1, 0.95)[0])
        r = float(rng.uniform(0.05, 0.95))
        c, R = pseudo_disk_euclidean(PseudoDisk(DiskPoint.of(a), r))
        bd = c + R * np.exp(2j * np.pi * rng.random(200))
        assert np.max(np.abs(rho(np.full(200, a), bd) - r)) <= 1e-10
        assert abs(c) + R < 1.0


def test_pseudo_disk_diameter_bound():
    _, R = pseudo_disk_euclidean(PseudoDisk(DiskPoint(0.9, 0), 0.5))
    assert 2 * R >= 0.05


def test_pseudo_disks_disjoint():
    assert pseudo_disks_disjoint([0.5, -0.5], 0.4)
    assert not pseudo_disks_disjoint([0.5, -0.5], 0.6)
    assert pseudo_disks_disjoint([0.3j], 0.9)


def test_canonical_angle_range():
    assert canonical_angle(-0.1) == pytest.approx(2 * math.pi - 0.1)
    assert canonical_angle(2 * math.pi) == 0.0
    assert CarlesonSquare(-1.0, 1.0).arc_center == pytest.approx(2 * math.pi - 1.0)


def test_carleson_square_contains():
    sq = CarlesonSquare(0.0, math.pi / 2)
    assert sq.contains(0.9)
    assert not sq.contains(0.5)
    assert not sq.contains(-0.9)
    assert sq.area > 0


def test_carleson_constant_single_atom_at_origin():
    mu = PointMassMeasure(((DiskPoint(0, 0), 1.0),))
    # only the full-circle square (generation 0) contains the origin
    assert carleson_constant(mu, 6) == pytest.approx(1 / (2 * math.pi))


def test_carleson_constant_matches_enumeration(rng):
    pts = disk_points(rng, 30, 0.99)
    mass = rng.random(30)
    mu = PointMassMeasure.from_arrays(pts, mass)
    best = 0.0
    for j in range(7):
        arc = 2 * math.pi / 2 ** j
        for m in range(2 ** j):
            sq_mass = 0.0
            for p, w in zip(pts, mass):
                t = math.atan2(p.imag, p.real) % (2 * math.pi)
                if abs(p) >= 1 - 2.0 ** -j and m * arc <= t < (m + 1) * arc:
                    sq_mass += w
            best = max(best, sq_mass / arc)
    assert carleson_constant(mu, 6) == pytest.approx(best, rel=1e-12)


def test_carleson_constant_empty_and_monotone():
    assert carleson_constant(PointMassMeasure(()), 3) == 0.0
    k = np.arange(1, 21)
    mu = PointMassMeasure.from_arrays(1 - 2.0 ** -k, 2.0 ** -k)
    vals = [carleson_constant(mu, d) for d in range(1, 25)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert math.isfinite(vals[19])
    assert abs(vals[23] - vals[19]) <= 0.05 * vals[19]


def test_point_mass_rejects_negative_mass():
    with pytest.raises(ValueError):
        PointMassMeasure(((DiskPoint(0, 0), -1.0),))


def test_stolz_examples():
    assert stolz_contains(StolzRegion(0.0, 2.0), 0)
    assert not stolz_contains(StolzRegion(0.0, 1.0), 0.5j)
    for r in np.linspace(0, 0.999, 50):
        assert stolz_contains(StolzRegion(0.0, 1.0), r)
    with pytest.raises(ValueError):
        StolzRegion(0.0, 0.5)
