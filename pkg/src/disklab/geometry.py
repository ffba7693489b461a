"""Pseudo-hyperbolic and Carleson geometry of the unit disk."""
from dataclasses import dataclass
import math

import numpy as np

TWO_PI = 2.0 * math.pi


def canonical_angle(theta):
    """Map an angle into [0, 2*pi)."""
    t = math.fmod(float(theta), TWO_PI)
    if t < 0.0:
        t += TWO_PI
    return 0.0 if t >= TWO_PI else t


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disk. Out-of-disk input raises, it is never projected."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("DiskPoint coordinates must be finite")
        if self.re * self.re + self.im * self.im >= 1.0:
            raise ValueError(f"point {complex(self.re, self.im)} is not inside the unit disk")

    @classmethod
    def of(cls, z):
        if isinstance(z, DiskPoint):
            return z
        z = complex(z)
        return cls(z.real, z.imag)

    def __complex__(self):
        return complex(self.re, self.im)

    @property
    def z(self):
        return complex(self.re, self.im)


def as_complex(z):
    """Complex value of a DiskPoint, validating membership of plain numbers."""
    return DiskPoint.of(z).z


def rho(z, w):
    """Pseudo-hyperbolic distance ``|(z - w) / (1 - conj(w) z)|``.

    Scalars are validated as disk points; arrays are used as given.
    """
    if np.ndim(z) == 0 and np.ndim(w) == 0:
        z, w = as_complex(z), as_complex(w)
        return abs(z - w) / abs(1.0 - w.conjugate() * z)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.abs(z - w) / np.abs(1.0 - np.conj(w) * z)


def mobius(a, z):
    """Disk automorphism ``phi_a(z) = (a - z) / (1 - conj(a) z)``; an involution."""
    a = complex(a)
    return (a - z) / (1.0 - np.conj(a) * z)


@dataclass(frozen=True)
class PseudoDisk:
    center: DiskPoint
    radius: float

    def __post_init__(self):
        if not 0.0 < self.radius < 1.0:
            raise ValueError("pseudo-disk radius must lie in (0, 1)")
        object.__setattr__(self, "center", DiskPoint.of(self.center))


def pseudo_disk_euclidean(d):
    """Euclidean (center, radius) of the pseudo-hyperbolic disk ``Delta(a, r)``.

    The two descriptions agree as sets; the diameter is at least ``r(1-|a|)``.
    """
    a = d.center.z
    r = d.radius
    s = 1.0 - r * r * abs(a) ** 2
    return a * (1.0 - r * r) / s, r * (1.0 - abs(a) ** 2) / s


def pseudo_disks_disjoint(centers, r):
    """True when the disks ``Delta(a_k, r)`` are pairwise disjoint (strict)."""
    centers = np.asarray(centers, dtype=complex)
    if centers.size < 2:
        return True
    m2 = np.abs(centers) ** 2
    s = 1.0 - r * r * m2
    c = centers * (1.0 - r * r) / s
    rad = r * (1.0 - m2) / s
    order = np.argsort(c.real)
    c, rad = c[order], rad[order]
    for i in range(len(c) - 1):
        gap = np.abs(c[i + 1:] - c[i]) - (rad[i + 1:] + rad[i])
        if np.any(gap <= 1e-15 * (rad[i + 1:] + rad[i])):
            return False
    return True


@dataclass(frozen=True)
class CarlesonSquare:
    arc_center: float
    arc_length: float

    def __post_init__(self):
        if not 0.0 < self.arc_length <= TWO_PI:
            raise ValueError("arc_length must lie in (0, 2*pi]")
        object.__setattr__(self, "arc_center", canonical_angle(self.arc_center))

    @property
    def inner_radius(self):
        return 1.0 - self.arc_length / TWO_PI

    def contains(self, z):
        z = complex(z)
        if abs(z) < self.inner_radius or abs(z) >= 1.0:
            return False
        off = canonical_angle(math.atan2(z.imag, z.real) - self.arc_center + 0.5 * self.arc_length)
        return off < self.arc_length

    @property
    def area(self):
        r0 = self.inner_radius
        return 0.5 * self.arc_length * (1.0 - r0 * r0)


@dataclass(frozen=True)
class PointMassMeasure:
    atoms: tuple  # of (DiskPoint, mass)

    def __post_init__(self):
        atoms = tuple((DiskPoint.of(p), float(m)) for p, m in self.atoms)
        if any(m < 0 or not math.isfinite(m) for _, m in atoms):
            raise ValueError("masses must be finite and nonnegative")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_arrays(cls, points, masses):
        return cls(tuple(zip(np.asarray(points, dtype=complex), np.asarray(masses, dtype=float))))

    @property
    def total_mass(self):
        return math.fsum(m for _, m in self.atoms)


def carleson_constant(mu, depth):
    """Largest ``mu(S_I) / |I|`` over dyadic Carleson squares of generations 0..depth.

    Generation ``j`` uses the arcs ``[2 pi m / 2^j, 2 pi (m+1) / 2^j)``; a
    point ``r e^{it}`` lies in that square when ``r >= 1 - 2^-j``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if not mu.atoms:
        return 0.0
    pts = np.array([p.z for p, _ in mu.atoms])
    mass = np.array([m for _, m in mu.atoms])
    r = np.abs(pts)
    theta = np.mod(np.angle(pts), TWO_PI)
    best = 0.0
    for j in range(depth + 1):
        inside = r >= 1.0 - 2.0 ** -j
        if not inside.any():
            continue
        cells = np.minimum(np.floor(theta[inside] * 2.0 ** j / TWO_PI), 2 ** j - 1).astype(np.int64)
        _, inv = np.unique(cells, return_inverse=True)
        sums = np.bincount(inv, weights=mass[inside])
        best = max(best, float(sums.max()) / (TWO_PI * 2.0 ** -j))
    return best


@dataclass(frozen=True)
class StolzRegion:
    vertex: float
    aperture: float

    def __post_init__(self):
        if self.aperture < 1.0:
            raise ValueError("aperture must be >= 1")
        object.__setattr__(self, "vertex", canonical_angle(self.vertex))


def stolz_contains(region, z):
    """``|e^{i vertex} - z| <= M (1 - |z|)``."""
    z = as_complex(z)
    v = complex(math.cos(region.vertex), math.sin(region.vertex))
    return abs(v - z) <= region.aperture * (1.0 - abs(z))
