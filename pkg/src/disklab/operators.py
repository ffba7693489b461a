"""The operators T_g, S_g, M_g and radial-variation probes.

All radial integrals are written in the depth variable ``s = 1 - t``. Panels
are dyadic in ``s``, so a point at depth 2^-40 is resolved exactly even
though ``1 - 2^-40`` is barely distinct from 1 in double precision.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .functions import AnalyticMap, ClosedForm, sup_norm_estimate
from .geometry import DiskPoint
from .quadrature import IntegralResult, QuadratureConfig, adaptive

TWO_PI = 2.0 * math.pi
_DECAY = 0.75
_RUN = 8


def _depth_breaks(s_lo, s_hi=1.0):
    """``s_lo``, the dyadic depths 2^-j strictly between, and ``s_hi`` (ascending)."""
    if not 0.0 <= s_lo < s_hi <= 1.0:
        raise ValueError("need 0 <= s_lo < s_hi <= 1")
    pts = [s_lo]
    j = 60 if s_lo == 0.0 else int(math.floor(-math.log2(s_lo)))
    for k in range(j, 0, -1):
        x = 2.0 ** -k
        if s_lo < x < s_hi:
            pts.append(x)
    pts.append(s_hi)
    return np.array(pts)


def _radial_T(g, f, s_end, theta, cfg, swap=False):
    """``int_0^z f g'`` (or ``f' g`` with swap) along the radius to ``(1 - s_end) e^{i theta}``."""
    if s_end >= 1.0:
        return IntegralResult(0j, 0.0, True, False, 0)
    rot = complex(math.cos(theta), math.sin(theta))

    def integrand(s):
        if swap:
            a = f.deriv_polar(s, theta)[0]
            b = g.eval_polar(s, theta)[0]
        else:
            a = f.eval_polar(s, theta)[0]
            b = g.deriv_polar(s, theta)[0]
        return rot * a * b

    pieces, perr, evals, ok = adaptive(integrand, _depth_breaks(s_end), cfg)
    return IntegralResult(complex(pieces.sum()), float(perr.sum()), ok, False, evals, pieces)


def _polar(z):
    z = DiskPoint.of(z).z
    r = abs(z)
    theta = math.atan2(z.imag, z.real) if r > 0 else 0.0
    return 1.0 - r, theta


def apply_T(g, f, z, q=None):
    """``T_g f(z) = int_0^z f(t) g'(t) dt`` along the segment [0, z]."""
    s, theta = _polar(z)
    return _radial_T(g, f, s, theta, q or QuadratureConfig())


def apply_S(g, f, z, q=None):
    """``S_g f(z) = int_0^z f'(t) g(t) dt``."""
    s, theta = _polar(z)
    return _radial_T(g, f, s, theta, q or QuadratureConfig(), swap=True)


def apply_M(g, f, z):
    z = np.asarray(z, dtype=complex)
    return g(z) * f(z)


def identity_residual(g, f, z, q=None):
    """``|M_g f(z) - f(0) g(0) - T_g f(z) - S_g f(z)|``."""
    t = apply_T(g, f, z, q)
    s = apply_S(g, f, z, q)
    t.require()
    s.require()
    zz = DiskPoint.of(z).z
    m = complex(apply_M(g, f, zz))
    c = complex(apply_M(g, f, 0j))
    return abs(m - c - t.value - s.value)


# -- radial variation --------------------------------------------------------------------

def diverging_increments(increments, threshold):
    """Heuristic: the last 8 dyadic increments all exceed ``threshold`` and none
    drops below 3/4 of its predecessor."""
    inc = np.asarray(increments, dtype=float)
    if inc.size < _RUN:
        return False
    tail = inc[-_RUN:]
    if np.any(tail <= threshold):
        return False
    return bool(np.all(tail[1:] >= _DECAY * tail[:-1]))


def _abs_deriv(g, theta):
    def f(s):
        return np.abs(g.deriv_polar(s, theta)[0])
    return f


def _increments(g, theta, levels, cfg):
    """Dyadic increments ``int_{2^-(j+1)}^{2^-j} |g'|`` for ``j = 0 .. levels-1``."""
    breaks = 2.0 ** -np.arange(levels, -1, -1, dtype=float)
    pieces, perr, evals, ok = adaptive(_abs_deriv(g, theta), breaks, cfg)
    return pieces.real[::-1], float(perr.sum()), evals, ok


def radial_variation(g, theta, r_max=None, q=None, depth=None):
    """``int_0^{r_max} |g'(t e^{i theta})| dt``.

    ``depth = 1 - r_max`` may be given instead of ``r_max`` when it is below
    double-precision resolution of ``r_max``.
    """
    cfg = q or QuadratureConfig()
    if depth is None:
        if r_max is None or not 0.0 <= r_max < 1.0:
            raise ValueError("r_max must lie in [0, 1)")
        depth = 1.0 - r_max
    if not 0.0 < depth <= 1.0:
        raise ValueError("depth must lie in (0, 1]")
    if depth == 1.0:
        return IntegralResult(0j, 0.0, True, False, 0, np.zeros(0))
    breaks = _depth_breaks(depth)
    pieces, perr, evals, ok = adaptive(_abs_deriv(g, theta), breaks, cfg)
    value = complex(pieces.real.sum())
    # full dyadic panels, ordered toward the boundary
    partial = math.frexp(depth)[0] != 0.5
    full = pieces.real[int(partial):][::-1]
    div = diverging_increments(full, cfg.divergence_threshold)
    return IntegralResult(value, float(perr.sum()), ok and not div, div, evals, pieces.real[::-1])


@dataclass(frozen=True)
class VariationProfile:
    thetas: np.ndarray
    values: tuple  # IntegralResult per theta
    sup_finite: float = None
    argmax: float = None

    def __post_init__(self):
        if self.sup_finite is not None and not all(v.converged for v in self.values):
            raise ValueError("sup_finite requires every theta to converge")

    @property
    def array(self):
        return np.array([v.value.real for v in self.values])


def brv_sup(g, thetas, r_max=None, q=None, depth=None):
    """Per-angle radial variation and its grid supremum."""
    thetas = np.asarray(thetas, dtype=float).ravel()
    if thetas.size == 0:
        raise ValueError("empty theta grid")
    vals = tuple(radial_variation(g, t, r_max, q, depth) for t in thetas)
    if all(v.converged for v in vals):
        arr = np.array([v.value.real for v in vals])
        i = int(np.argmax(arr))
        return VariationProfile(thetas, vals, float(arr[i]), float(thetas[i]))
    return VariationProfile(thetas, vals)


def _beyond(g, levels, inc):
    """Bound for ``int_0^{2^-levels} |g'|`` (uniform in theta), or None."""
    b = g.radial_tail_bound(1.0 - 2.0 ** -levels)
    if b is not None:
        return float(b)
    last = inc[-4:]
    if np.any(last[:-1] <= 0.0):
        return 0.0 if np.all(last == 0.0) else None
    ratio = float(np.max(last[1:] / last[:-1]))
    if ratio >= 1.0:
        return None
    return float(last[-1] * ratio / (1.0 - ratio))


def ui_radius(g, eps, thetas, q=None, levels=40, bisect_steps=30):
    """Smallest ``r`` such that ``sup_theta int_r^1 |g'(t e^{i theta})| dt <= eps``.

    The tail is the sum of dyadic increments down to depth ``2^-levels`` plus
    a bound for what lies beyond (``g.radial_tail_bound`` or a geometric
    extrapolation of the last increments). Returns 1.0 when no radius is
    found or some angle diverges.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    cfg = q or QuadratureConfig()
    thetas = np.asarray(thetas, dtype=float).ravel()
    tails = []
    for t in thetas:
        inc, _, _, ok = _increments(g, t, levels, cfg)
        if not ok or diverging_increments(inc, cfg.divergence_threshold):
            return 1.0
        extra = _beyond(g, levels, inc)
        if extra is None:
            return 1.0
        # tails[j] = int over depths (0, 2^-j]
        tails.append(np.cumsum(inc[::-1])[::-1] + extra)
    sup = np.max(np.array(tails), axis=0)
    ok = np.flatnonzero(sup <= eps)
    if ok.size == 0:
        return 1.0
    j = int(ok[0])
    if j == 0:
        return 0.0
    lo, hi = 2.0 ** -j, 2.0 ** -(j - 1)
    base = np.array([tl[j] for tl in tails])
    for _ in range(bisect_steps):
        mid = 0.5 * (lo + hi)
        worst = 0.0
        for t, b in zip(thetas, base):
            pieces, _, _, _ = adaptive(_abs_deriv(g, t), [2.0 ** -j, mid], cfg)
            worst = max(worst, b + float(pieces.real.sum()))
            if worst > eps:
                break
        if worst <= eps:
            lo = mid
        else:
            hi = mid
    return 1.0 - lo


# -- lower bounds and probes ------------------------------------------------------------

def polar_grid(r_max, n_r, n_t, extra_angles=()):
    """Points ``r_max * i / n_r * e^{i theta}`` (i = 0..n_r) on ``n_t`` equispaced angles."""
    r = r_max * np.arange(n_r + 1) / n_r
    t = np.concatenate([TWO_PI * np.arange(n_t) / n_t, np.asarray(extra_angles, dtype=float)])
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


def bloch_lower(g, grid):
    """``max (1-|z|^2)|g'(z)|`` over the grid; a lower bound for ``||T_g||`` on H^inf."""
    grid = np.asarray(grid, dtype=complex).ravel()
    if grid.size == 0:
        raise ValueError("empty grid")
    if np.any(np.abs(grid) >= 1.0):
        raise ValueError("grid must lie inside the disk")
    return float(np.max((1.0 - np.abs(grid) ** 2) * np.abs(g.prime(grid))))


def s_lower(g, grid):
    """``max |g|`` over the grid; a lower bound for ``||S_g||`` on H^inf."""
    grid = np.asarray(grid, dtype=complex).ravel()
    if grid.size == 0:
        raise ValueError("empty grid")
    return float(np.max(np.abs(g(grid))))


@dataclass(frozen=True)
class BoundReport:
    bloch_lower: float
    s_lower: float
    brv_upper: float = None
    tolerance: float = 1e-6

    @property
    def consistent(self):
        return self.brv_upper is None or self.bloch_lower <= self.brv_upper + self.tolerance


def bound_report(g, grid, thetas, r_max=None, q=None, depth=None):
    prof = brv_sup(g, thetas, r_max, q, depth)
    return BoundReport(bloch_lower(g, grid), s_lower(g, grid), prof.sup_finite)


def monomial(n):
    return ClosedForm(lambda z: z ** n, lambda z: n * z ** (n - 1) if n else 0 * z, f"z^{n}")


class DilationDifference(AnalyticMap):
    """``f - f_r`` with ``f_r(z) = f(rz)``."""

    def __init__(self, f, r):
        self.f = f
        self.r = float(r)
        self.name = f"{f.name}-{f.name}_{r:.6g}"

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        a, ea = self.f.eval(z)
        b, eb = self.f.eval(self.r * z)
        return a - b, ea + eb

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        a, ea = self.f.deriv(z)
        b, eb = self.f.deriv(self.r * z)
        return a - self.r * b, ea + self.r * eb


@dataclass(frozen=True)
class ProbeSequence:
    n: np.ndarray
    values: np.ndarray
    converged: np.ndarray = field(repr=False, default=None)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def compactness_probe(g, family="monomials", n_max=16, q=None, r=1.0 - 2.0 ** -12, thetas=None,
                      base=None, check_m=256):
    """Grid estimates of ``||T_g f_n||_inf`` for n = 1..n_max.

    ``monomials``: ``f_n = z^n``. ``dilation``: ``f_n = base - base_{r_n}`` with
    ``r_n = 1 - 2^-n``. Values are sup estimates over ``r e^{i theta}``; the
    trend is returned, never a verdict.
    """
    cfg = q or QuadratureConfig()
    thetas = TWO_PI * np.arange(64) / 64 if thetas is None else np.asarray(thetas, dtype=float)
    if family == "monomials":
        members = [monomial(n) for n in range(1, n_max + 1)]
    elif family == "dilation":
        if base is None:
            raise ValueError("dilation family needs a base function")
        members = [DilationDifference(base, 1.0 - 2.0 ** -n) for n in range(1, n_max + 1)]
    else:
        raise ValueError(f"unknown family {family!r}")
    s_end = 1.0 - r
    vals, conv = [], []
    for f in members:
        if sup_norm_estimate(f, min(r, 1.0 - 1e-9), check_m) > 1.0 + 1e-9:
            raise ValueError(f"family member {f.name} has sup norm estimate above 1")
        best, ok = 0.0, True
        for t in thetas:
            res = _radial_T(g, f, s_end, float(t), cfg)
            ok &= res.converged
            best = max(best, abs(res.value))
        vals.append(best)
        conv.append(ok)
    return ProbeSequence(np.arange(1, n_max + 1), np.array(vals), np.array(conv))


def rotation_modulus(g, delta, grid, boundary=False):
    """``max |g(z) - g(z e^{i delta})|`` over the grid (outermost circle only if ``boundary``)."""
    grid = np.asarray(grid, dtype=complex).ravel()
    if boundary:
        rad = np.abs(grid)
        grid = grid[np.isclose(rad, rad.max(), rtol=0.0, atol=1e-14)]
    rot = complex(math.cos(delta), math.sin(delta))
    return float(np.max(np.abs(g(grid) - g(grid * rot))))
