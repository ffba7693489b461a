"""Slit domains: two spirals in the disk and a comb in the unit square.

Membership and the winding coordinate are computed in closed form from the
spiral parameterization. Arc-length distances come from grid shortest paths
with slits thickened by a clearance band.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import kernels
from .quadrature import IntegralResult, QuadratureConfig, adaptive

TWO_PI = 2.0 * math.pi
SLIT_TOL = 1e-12


class DomainError(ValueError):
    """A point or path is not inside the domain."""


class NoPathError(RuntimeError):
    """The grid graph does not connect the requested points; refine the grid."""


# -- domains -------------------------------------------------------------------------

@dataclass(frozen=True)
class SpiralDomain:
    """``D`` minus the closure of a spiral slit.

    ``reciprocal``: ``gamma(t) = e^{2 pi i t} / t`` for ``t >= 1``.
    ``exponential``: ``gamma(t) = e^{2 pi i t} / 2^t`` for ``t >= 0``.
    ``t_max`` truncates the slit for grid construction only; the disk of
    radius ``|gamma(t_max)|`` about the accumulation point 0 is then blocked.
    """

    kind: str = "reciprocal"
    t_max: float = 1e8

    def __post_init__(self):
        if self.kind not in ("reciprocal", "exponential"):
            raise ValueError(f"unknown spiral kind {self.kind!r}")
        if self.t_max <= 1.0:
            raise ValueError("t_max must exceed 1")

    @property
    def box(self):
        return (-1.0, 1.0, -1.0, 1.0)

    @property
    def t_min(self):
        return 1.0 if self.kind == "reciprocal" else 0.0

    @property
    def cos_pitch(self):
        # the slit meets circles |z| = r at angle at most atan(c / 2 pi)
        c = 1.0 if self.kind == "reciprocal" else math.log(2.0)
        return math.cos(math.atan(c / TWO_PI))

    def _tau(self, rho):
        with np.errstate(divide="ignore"):
            return 1.0 / rho if self.kind == "reciprocal" else -np.log2(rho)

    def _radius(self, t):
        with np.errstate(divide="ignore", over="ignore"):
            return 1.0 / t if self.kind == "reciprocal" else np.exp2(-t)

    def gamma(self, t):
        t = np.asarray(t, dtype=float)
        return self._radius(t) * np.exp(1j * TWO_PI * t)

    def channel(self, z):
        """``(k, phi, inner_gap, outer_gap)`` for points ``z = rho e^{i phi}``, phi in [0, 2 pi).

        ``k`` counts the slit parameters ``t = m + phi/2pi < tau(rho)``, so
        the winding coordinate is ``phi + 2 pi k``. Gaps are radial distances
        to the slit crossings just inside and just outside ``z`` (inf when the
        neighbour is the unit circle).
        """
        z = np.asarray(z, dtype=complex)
        rho = np.abs(z)
        phi = np.mod(np.angle(z), TWO_PI)
        phi = np.where(phi >= TWO_PI, 0.0, phi)
        frac = phi / TWO_PI
        tau = self._tau(rho)
        k = np.ceil(tau - frac)
        t_in = k + frac
        t_out = k - 1.0 + frac
        inner = rho - self._radius(t_in)
        outer = np.where(t_out >= self.t_min, self._radius(t_out) - rho, np.inf)
        return k, phi, inner, outer

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        rho = np.abs(z)
        with np.errstate(invalid="ignore", divide="ignore"):
            _, _, inner, outer = self.channel(np.where(rho > 0, z, 0.5))
        ok = (rho < 1.0) & (rho > 0.0) & (inner > SLIT_TOL) & (outer > SLIT_TOL)
        return bool(ok) if ok.ndim == 0 else ok

    def sheet(self, z):
        k, phi, _, _ = self.channel(z)
        return phi + TWO_PI * k

    def slit_distance(self, z):
        """Lower estimate of the Euclidean distance to the (truncated) slit."""
        _, _, inner, outer = self.channel(z)
        d = np.minimum(inner, outer) * self.cos_pitch
        rho = np.abs(np.asarray(z))
        return np.where(rho <= self._radius(self.t_max), 0.0, d)


def r_points(n, domain=None):
    """``r_n = (1/n + 1/(n+1)) / 2``: the positive-axis midpoints between slit crossings."""
    n = np.asarray(n)
    if np.any(n < 1):
        raise ValueError("n must be >= 1")
    return 0.5 * (1.0 / n + 1.0 / (n + 1.0))


def branch_log(domain, z):
    """``l(z) = log|z| + i (phi + 2 pi k)`` with the winding index ``k`` of the channel of z."""
    if domain.kind != "reciprocal":
        raise ValueError("branch_log is defined for the reciprocal spiral")
    z = np.asarray(z, dtype=complex)
    inside = domain.contains(z)
    if not np.all(inside):
        raise DomainError("branch_log requested outside the domain")
    k, phi, _, _ = domain.channel(z)
    return np.log(np.abs(z)) + 1j * (phi + TWO_PI * k)


def h_and_hprime(domain, z):
    """``H = Log l(z)`` (principal branch) and ``H' = 1 / (z l(z))``."""
    z = np.asarray(z, dtype=complex)
    ell = branch_log(domain, z)
    return np.log(ell), 1.0 / (z * ell)


class HPrime:
    """``H'`` on the reciprocal spiral domain as a vectorized callable."""

    def __init__(self, domain):
        self.domain = domain
        self.name = "H'"

    def __call__(self, z):
        return h_and_hprime(self.domain, z)[1]


@dataclass(frozen=True)
class CombDomain:
    """``(0,1)^2`` minus the slits ``{2^-n + iy : 1/2 < y < 1}``, ``n = 1..n_slits``."""

    n_slits: int = 30

    def __post_init__(self):
        if self.n_slits < 1:
            raise ValueError("n_slits must be >= 1")

    @property
    def box(self):
        return (0.0, 1.0, 0.0, 1.0)

    @property
    def basepoint(self):
        return complex(0.5, 0.25)

    @property
    def slit_x(self):
        return 2.0 ** -np.arange(1, self.n_slits + 1)

    def slit_distance(self, z):
        z = np.asarray(z, dtype=complex)
        x, y = z.real[..., None], z.imag[..., None]
        dy = np.maximum(0.0, np.maximum(0.5 - y, y - 1.0))
        d = np.hypot(x - self.slit_x, dy)
        return d.min(axis=-1)

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        ok = (z.real > 0) & (z.real < 1) & (z.imag > 0) & (z.imag < 1)
        ok = ok & (self.slit_distance(z) > SLIT_TOL)
        return bool(ok) if ok.ndim == 0 else ok

    def sheet(self, z):
        return np.zeros(np.shape(z))


def make_domain(name, n_slits=30, t_max=1e8):
    if name == "comb":
        return CombDomain(n_slits)
    if name == "spiral_reciprocal":
        return SpiralDomain("reciprocal", t_max)
    if name == "spiral_exponential":
        return SpiralDomain("exponential", t_max)
    raise ValueError(f"unknown domain {name!r}")


# -- paths and path integrals -------------------------------------------------------

@dataclass(frozen=True)
class DomainPath:
    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex).ravel()
        if v.size < 2:
            raise ValueError("a path needs at least two vertices")
        object.__setattr__(self, "vertices", v)

    @property
    def length(self):
        return float(np.sum(np.abs(np.diff(self.vertices))))

    def then(self, other):
        if abs(self.vertices[-1] - other.vertices[0]) > 1e-12:
            raise ValueError("paths do not join")
        return DomainPath(np.concatenate([self.vertices, other.vertices[1:]]))

    def sample(self, per_segment=16):
        a, b = self.vertices[:-1, None], self.vertices[1:, None]
        t = np.linspace(0.0, 1.0, per_segment + 1)[None, :]
        return (a + (b - a) * t).ravel()

    def clearance(self, domain, per_segment=16):
        return float(np.min(domain.slit_distance(self.sample(per_segment))))


def segment_path(*points):
    return DomainPath(np.array(points, dtype=complex))


def channel_path(n, per_turn=512, start=1):
    """Polyline along ``c(u) = e^{2 pi i u} (1/u + 1/(u+1)) / 2``, u from ``start`` to ``n``.

    ``c`` runs midway between consecutive slit loops of the reciprocal spiral
    and passes through ``r_u`` at integer ``u``.
    """
    if n < start:
        raise ValueError("need n >= start")
    if n == start:
        x = float(r_points(start))
        return DomainPath(np.array([x, x]))
    u = np.linspace(start, n, int(per_turn * (n - start)) + 1)
    v = np.exp(1j * TWO_PI * u) * 0.5 * (1.0 / u + 1.0 / (u + 1.0))
    v[0] = r_points(start)
    v[-1] = r_points(n)
    return DomainPath(v)


def exp_channel_path(u0, u1, per_turn=512):
    """Polyline along ``e^{2 pi i u} (3/4) 2^-u`` in the exponential spiral."""
    u = np.linspace(u0, u1, max(2, int(per_turn * abs(u1 - u0)) + 1))
    return DomainPath(np.exp(1j * TWO_PI * u) * 0.75 * np.exp2(-u))


def j_integral(domain, f, w0, w, path, q=None):
    """``J_{w0} f(w) = int_{w0}^{w} f(t) dt`` along a polyline inside the domain."""
    cfg = q or QuadratureConfig()
    v = path.vertices
    if abs(v[0] - complex(w0)) > 1e-12 or abs(v[-1] - complex(w)) > 1e-12:
        raise ValueError("path endpoints do not match w0 and w")
    if not np.all(domain.contains(path.sample())):
        raise DomainError("path leaves the domain")
    seg = np.diff(v)
    nseg = seg.size

    def integrand(s):
        i = np.minimum(np.floor(s).astype(np.int64), nseg - 1)
        z = v[i] + (s - i) * seg[i]
        return f(z) * seg[i]

    pieces, perr, evals, ok = adaptive(integrand, np.arange(nseg + 1, dtype=float), cfg)
    return IntegralResult(complex(pieces.sum()), float(perr.sum()), ok, False, evals)


# -- grid shortest paths ------------------------------------------------------------

def _octile(dx, dy):
    a, b = abs(dx), abs(dy)
    return max(a, b) + (math.sqrt(2.0) - 1.0) * min(a, b)


@dataclass
class DomainGrid:
    """Node-centred ``grid_n x grid_n`` grid over the domain's bounding box."""

    domain: object
    grid_n: int
    clearance: float = None
    allowed: np.ndarray = field(init=False, repr=False)
    sheet: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.grid_n < 16:
            raise ValueError("grid_n must be >= 16")
        x0, x1, y0, y1 = self.domain.box
        self.h = (x1 - x0) / self.grid_n
        if self.clearance is None:
            self.clearance = 10.0 / self.grid_n
        self.x = x0 + (np.arange(self.grid_n) + 0.5) * self.h
        self.y = y0 + (np.arange(self.grid_n) + 0.5) * self.h
        z = self.x[None, :] + 1j * self.y[:, None]
        ok = self.domain.contains(z)
        with np.errstate(invalid="ignore", divide="ignore"):
            ok &= self.domain.slit_distance(np.where(ok, z, 0.5)) >= self.clearance
            self.sheet = np.where(ok, self.domain.sheet(np.where(ok, z, 0.5)), 0.0)
        self.allowed = ok

    def node(self, idx):
        i, j = divmod(int(idx), self.grid_n)
        return complex(self.x[j], self.y[i])

    def snap(self, w, radius=3):
        """Allowed nodes near ``w`` on the same sheet, with their distances to ``w``.

        Distances use the 8-neighbour (octile) metric of the grid itself; a
        Euclidean leg would undercut grid paths and break monotone refinement.
        """
        w = complex(w)
        if not self.domain.contains(w):
            raise DomainError(f"{w} is not in the domain")
        x0, _, y0, _ = self.domain.box
        jc = int(math.floor((w.real - x0) / self.h))
        ic = int(math.floor((w.imag - y0) / self.h))
        sw = float(self.domain.sheet(w))
        idx, dist = [], []
        for i in range(max(0, ic - radius), min(self.grid_n, ic + radius + 2)):
            for j in range(max(0, jc - radius), min(self.grid_n, jc + radius + 2)):
                if self.allowed[i, j] and abs(self.sheet[i, j] - sw) < math.pi:
                    idx.append(i * self.grid_n + j)
                    dist.append(_octile(self.x[j] - w.real, self.y[i] - w.imag))
        if not idx:
            raise NoPathError(f"no grid node near {w}; refine the grid")
        return np.array(idx, dtype=np.int64), np.array(dist)

    def distances_from(self, w):
        idx, dist = self.snap(w)
        return kernels.grid_dijkstra(self.allowed, self.sheet, self.h, idx, dist)

    def distance_to(self, field_, w):
        idx, dist = self.snap(w)
        out = float(np.min(field_[idx] + dist))
        if not math.isfinite(out):
            raise NoPathError(f"grid does not connect to {w}; refine the grid")
        return out

    def resolvable(self, z):
        """Points far enough from the slits to be reached at this resolution."""
        z = np.asarray(z, dtype=complex)
        ok = self.domain.contains(z)
        with np.errstate(invalid="ignore", divide="ignore"):
            return ok & (self.domain.slit_distance(np.where(ok, z, 0.5)) >= self.clearance + self.h)


def arc_length_distance(domain, a, b, grid_n=2048, grid=None):
    """Grid shortest-path length between ``a`` and ``b`` (an upper estimate)."""
    grid = grid or DomainGrid(domain, grid_n)
    return grid.distance_to(grid.distances_from(a), b)


def arc_length_distances(domain, a, targets, grid_n=2048, grid=None):
    grid = grid or DomainGrid(domain, grid_n)
    f = grid.distances_from(a)
    return np.array([grid.distance_to(f, w) for w in targets])


def arc_length_diameter(domain, samples, grid_n=2048, grid=None):
    """Largest pairwise grid distance among the samples."""
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    grid = grid or DomainGrid(domain, grid_n)
    best = 0.0
    for i, a in enumerate(samples[:-1]):
        f = grid.distances_from(a)
        for b in samples[i + 1:]:
            best = max(best, grid.distance_to(f, b))
    return best
