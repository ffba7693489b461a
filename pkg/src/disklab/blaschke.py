"""Blaschke products: certified evaluation and zero-sequence diagnostics.

Zeros are stored as ``depth = 1 - |a|`` and ``angle = arg a``. Every factor is
evaluated as ``((1-u) - d) / ((1-u) + d u)`` with ``u = z e^{-i angle}``, which
keeps full relative accuracy for zeros much closer to the circle than machine
epsilon allows for ``|a|`` itself.
"""
from dataclasses import dataclass, field
import csv
import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import polygamma

from . import kernels
from .functions import AnalyticMap
from .geometry import DiskPoint, PseudoDisk, pseudo_disk_euclidean, pseudo_disks_disjoint

TWO_PI = 2.0 * math.pi


class ZeroFileError(ValueError):
    def __init__(self, path, lineno, msg):
        super().__init__(f"{path}, line {lineno}: {msg}")
        self.path = path
        self.lineno = lineno


class CriticalPointError(RuntimeError):
    """Root finding returned the wrong number of critical points."""


# -- generation rules --------------------------------------------------------------------

@dataclass(frozen=True)
class GenerationRule:
    """Closed-form zero sequence ``a_k`` with exact tail mass ``sum_{k>N} (1-|a_k|)``."""

    name: str
    params: tuple = ()

    RULES = ("geometric", "frostman4", "one_over_k_sq")

    def __post_init__(self):
        if self.name not in self.RULES:
            raise ValueError(f"unknown generation rule {self.name!r}")
        if self.name == "geometric":
            if len(self.params) != 1 or not 0.0 < self.params[0] < 1.0:
                raise ValueError("geometric rule needs one parameter q in (0, 1)")
        elif self.params:
            raise ValueError(f"rule {self.name} takes no parameters")

    @classmethod
    def parse(cls, text):
        parts = text.split()
        if not parts:
            raise ValueError("empty rule")
        return cls(parts[0], tuple(float(p) for p in parts[1:]))

    def __str__(self):
        return " ".join([self.name, *(repr(p) for p in self.params)])

    @property
    def first_index(self):
        # 1 - 1/k^2 vanishes at k = 1, and zeros must be nonzero
        return 2 if self.name == "one_over_k_sq" else 1

    def terms(self, k):
        k = np.asarray(k, dtype=float)
        if self.name == "geometric":
            return self.params[0] ** k, np.zeros(k.shape)
        if self.name == "frostman4":
            return 4.0 ** -k, 2.0 ** -k
        return 1.0 / (k * k), np.zeros(k.shape)

    def tail_mass(self, n):
        """``sum (1-|a_k|)`` over the zeros after the first ``n``."""
        last = self.first_index + n - 1
        if self.name == "geometric":
            q = self.params[0]
            return q ** (last + 1) / (1.0 - q)
        if self.name == "frostman4":
            return 4.0 ** -last / 3.0
        return float(polygamma(1, last + 1))

    def frostman_tail(self, n, theta):
        """Upper bound for the Frostman sum over the zeros after the first ``n``.

        ``inf`` signals a boundary angle where the sum diverges.
        """
        last = self.first_index + n - 1
        tail = self.tail_mass(n)
        psi = math.remainder(theta, TWO_PI)
        if self.name == "frostman4":
            if last < 3:
                return math.inf
            # tail angles 2^-k lie in (0, 2^-(last+1)]; see the case split in the docs
            if psi <= 0.0 or psi >= 2.0 ** -last:
                return 2.0 * 2.0 ** -last
            return 2.0 + 5.0 * 2.0 ** -last
        d_next = self.terms(last + 1)[0]
        chord = 2.0 * abs(math.sin(0.5 * psi))
        sep = max(abs(math.sin(psi)), chord - float(d_next))
        if sep <= 0.0:
            return math.inf
        return tail / sep


# -- zero sequences ---------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroSequence:
    depths: np.ndarray
    angles: np.ndarray
    rule: GenerationRule = None

    def __post_init__(self):
        d = np.ascontiguousarray(self.depths, dtype=float).ravel()
        a = np.mod(np.ascontiguousarray(self.angles, dtype=float).ravel(), TWO_PI)
        if d.shape != a.shape:
            raise ValueError("depths and angles differ in length")
        if np.any(~(d > 0.0)) or np.any(d >= 1.0):
            raise ValueError("zeros must lie in the punctured open disk (0 < 1-|a| < 1)")
        object.__setattr__(self, "depths", d)
        object.__setattr__(self, "angles", a)

    @classmethod
    def from_points(cls, points):
        p = np.atleast_1d(np.asarray(points, dtype=complex))
        r = np.abs(p)
        if np.any(r == 0.0):
            raise ValueError("zeros must be nonzero")
        if np.any(r >= 1.0):
            raise ValueError("zeros must lie inside the unit disk")
        return cls(1.0 - r, np.angle(p))

    @classmethod
    def from_rule(cls, rule, n):
        if isinstance(rule, str):
            rule = GenerationRule.parse(rule)
        k = np.arange(rule.first_index, rule.first_index + n)
        d, a = rule.terms(k)
        return cls(d, a, rule)

    @classmethod
    def geometric(cls, n, q=0.5):
        return cls.from_rule(GenerationRule("geometric", (q,)), n)

    @classmethod
    def frostman4(cls, n):
        return cls.from_rule(GenerationRule("frostman4"), n)

    @classmethod
    def one_over_k_sq(cls, n):
        return cls.from_rule(GenerationRule("one_over_k_sq"), n)

    def __len__(self):
        return self.depths.size

    @property
    def points(self):
        return (1.0 - self.depths) * np.exp(1j * self.angles)

    @property
    def is_finite(self):
        return self.rule is None

    def tail_mass(self):
        return 0.0 if self.rule is None else self.rule.tail_mass(len(self))

    def truncate(self, n):
        return ZeroSequence(self.depths[:n], self.angles[:n], self.rule)

    def extend(self, n):
        if self.rule is None:
            raise ValueError("a finite sequence cannot be extended")
        return ZeroSequence.from_rule(self.rule, n)

    def finite(self):
        """The same zeros, regarded as a finite sequence (no tail)."""
        return ZeroSequence(self.depths, self.angles, None)

    def without(self, k):
        keep = np.arange(len(self)) != k
        return ZeroSequence(self.depths[keep], self.angles[keep], None)

    def is_real_increasing(self):
        return bool(np.all(self.angles == 0.0) and np.all(np.diff(self.depths) < 0.0))


def read_zero_csv(path):
    """Rows ``re,im`` or ``modulus,arg_radians`` (selected by the header)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    body = [(i, r) for i, r in enumerate(rows, start=1) if r and not r[0].lstrip().startswith("#")]
    if not body:
        raise ZeroFileError(path, 1, "empty zero file")
    lineno, header = body[0]
    header = [h.strip() for h in header]
    if header == ["re", "im"]:
        polar = False
    elif header == ["modulus", "arg_radians"]:
        polar = True
    else:
        raise ZeroFileError(path, lineno, "header must be 're,im' or 'modulus,arg_radians'")
    depths, angles = [], []
    for lineno, row in body[1:]:
        if len(row) != 2:
            raise ZeroFileError(path, lineno, "expected two columns")
        try:
            x, y = float(row[0]), float(row[1])
        except ValueError:
            raise ZeroFileError(path, lineno, "non-numeric value") from None
        if polar:
            r, t = x, y
        else:
            r, t = math.hypot(x, y), math.atan2(y, x)
        if not (0.0 < r < 1.0) or not math.isfinite(t):
            raise ZeroFileError(path, lineno, "zero must satisfy 0 < |a| < 1")
        depths.append(1.0 - r)
        angles.append(t)
    if not depths:
        raise ZeroFileError(path, lineno, "no zeros listed")
    return ZeroSequence(np.array(depths), np.array(angles))


def rho_stable(d1, p1, d2, p2):
    """Pseudo-hyperbolic distance between zeros given in depth/angle form (broadcasts)."""
    psi = np.asarray(p2) - np.asarray(p1)
    one_minus = 2.0 * np.sin(0.5 * psi) ** 2 - 1j * np.sin(psi)  # 1 - e^{i psi}
    e = np.exp(1j * psi)
    num = one_minus - d1 + d2 * e
    den = one_minus + (d1 + d2 - d1 * d2) * e
    return np.abs(num) / np.abs(den)


# -- the product ----------------------------------------------------------------------

class BlaschkeProduct(AnalyticMap):
    """``phase * prod_k (|a_k|/a_k)(a_k - z)/(1 - conj(a_k) z)`` over the stored zeros.

    When the zero sequence carries a generation rule, the omitted tail is
    certified by ``|1 - factor_k(z)| <= 2(1-|a_k|)/(1-|z|)``.
    """

    def __init__(self, zeros, truncation=None, phase=1.0, name="B"):
        if truncation is not None:
            zeros = zeros.extend(truncation) if zeros.rule is not None else zeros.truncate(truncation)
        self.zeros = zeros
        self.phase = complex(phase)
        if abs(abs(self.phase) - 1.0) > 1e-14:
            raise ValueError("phase must be unimodular")
        self.name = name

    @property
    def degree(self):
        return len(self.zeros)

    @property
    def is_finite(self):
        return self.zeros.is_finite

    def _tail_eps(self, z):
        tail = self.zeros.tail_mass()
        if tail == 0.0:
            return np.zeros(np.shape(z))
        gap = 1.0 - np.abs(z)
        if np.any(gap <= 0.0):
            raise ValueError("infinite Blaschke product cannot be evaluated on or outside |z| = 1")
        return np.minimum(np.expm1(2.0 * tail / gap), 2.0)

    def _both(self, z):
        return kernels.blaschke_values(z, self.zeros.depths, self.zeros.angles)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        eps = self._tail_eps(z)
        v, _ = self._both(z)
        return self.phase * v, eps

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        eps = self._tail_eps(z)
        _, d = self._both(z)
        with np.errstate(divide="ignore"):
            err = np.where(eps > 0, 3.0 * eps / (1.0 - np.abs(z) ** 2), 0.0)
        return self.phase * d, err

    def _tail_eps_polar(self, s):
        tail = self.zeros.tail_mass()
        if tail == 0.0:
            return np.zeros(np.shape(s))
        if np.any(np.asarray(s) <= 0.0):
            raise ValueError("infinite Blaschke product cannot be evaluated on or outside |z| = 1")
        return np.minimum(np.expm1(2.0 * tail / np.asarray(s)), 2.0)

    def eval_polar(self, s, theta):
        v, _ = kernels.blaschke_values_polar(s, theta, self.zeros.depths, self.zeros.angles)
        return self.phase * v, self._tail_eps_polar(s)

    def deriv_polar(self, s, theta):
        eps = self._tail_eps_polar(s)
        _, d = kernels.blaschke_values_polar(s, theta, self.zeros.depths, self.zeros.angles)
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore"):
            err = np.where(eps > 0, 3.0 * eps / (s * (2.0 - s)), 0.0)
        return self.phase * d, err

    def values_and_derivatives(self, z):
        v, d = self._both(np.asarray(z, dtype=complex))
        return self.phase * v, self.phase * d

    def subproduct(self, k):
        """``B_k``: the product with the k-th stored zero (0-based) removed."""
        return BlaschkeProduct(self.zeros.without(k), phase=self.phase, name=f"{self.name}_{k}")

    def factor(self, k, z):
        d = self.zeros.depths[k]
        u = np.asarray(z, dtype=complex) * np.exp(-1j * self.zeros.angles[k])
        return ((1.0 - u) - d) / ((1.0 - u) + d * u)


def _scalar_point(B, z):
    if B.is_finite and isinstance(z, (complex, float, int)) and abs(complex(z)) <= 1.0:
        return complex(z)
    return DiskPoint.of(z).z


def eval_b(B, z):
    """``(B(z), err)`` at one point."""
    z = _scalar_point(B, z)
    v, e = B.eval(np.array([z]))
    return complex(v[0]), float(e[0])


def eval_b_prime(B, z):
    z = _scalar_point(B, z)
    v, e = B.deriv(np.array([z]))
    return complex(v[0]), float(e[0])


# -- sequence diagnostics ---------------------------------------------------------------

@dataclass(frozen=True)
class FrostmanSup:
    sup: float
    argmax: float
    diverging: bool
    values: np.ndarray = field(repr=False, default=None)


def frostman_sup(zeros, thetas):
    """Grid maximum of ``sum_k (1-|a_k|)/|a_k - e^{i theta}|`` with certified tail."""
    thetas = np.asarray(thetas, dtype=float).ravel()
    if thetas.size == 0:
        raise ValueError("empty theta grid")
    vals = kernels.frostman_sums(thetas, zeros.depths, zeros.angles)
    if zeros.rule is not None:
        vals = vals + np.array([zeros.rule.frostman_tail(len(zeros), t) for t in thetas])
    diverging = bool(np.any(~np.isfinite(vals)))
    i = int(np.argmax(vals))
    return FrostmanSup(float(vals[i]), float(thetas[i]), diverging, vals)


def separation_constant(zeros):
    """``min_{j != k} rho(a_j, a_k)`` over the stored zeros."""
    n = len(zeros)
    if n < 2:
        raise ValueError("need at least two zeros")
    d, p = zeros.depths, zeros.angles
    r = rho_stable(d[:, None], p[:, None], d[None, :], p[None, :])
    r[np.diag_indices(n)] = np.inf
    return float(r.min())


def _log_rho_rows(d, p, dj, pj):
    r = rho_stable(d[:, None], p[:, None], dj[None, :], pj[None, :])
    with np.errstate(divide="ignore"):
        return np.log(r)


def interp_delta(zeros, extra_terms=400):
    """``min_k |B_k(a_k)|`` over the stored zeros.

    For rule-generated sequences the omitted zeros enter through explicit
    factors up to ``extra_terms`` further indices and then the certified
    multiplier ``sqrt(1 - 4 tail / (1-|a_k|))``.
    """
    n = len(zeros)
    if n == 1 and zeros.rule is None:
        return 1.0
    d, p = zeros.depths, zeros.angles
    logs = _log_rho_rows(d, p, d, p)
    logs[np.diag_indices(n)] = 0.0
    total = logs.sum(axis=1)
    if zeros.rule is not None:
        ext = zeros.extend(n + extra_terms)
        dj, pj = ext.depths[n:], ext.angles[n:]
        total = total + _log_rho_rows(d, p, dj, pj).sum(axis=1)
        x = 4.0 * ext.tail_mass() / d
        with np.errstate(divide="ignore"):
            total = total + 0.5 * np.log(np.maximum(0.0, 1.0 - x))
    return float(np.exp(total.min()))


# -- critical points and factorization -----------------------------------------------

@dataclass(frozen=True)
class CriticalPointSet:
    points: np.ndarray
    residuals: np.ndarray  # |B'(b)|
    scaled_residuals: np.ndarray  # |B'(b)| (1 - |b|^2)
    depths: np.ndarray = field(default=None, repr=False)  # 1 - |b| when known exactly


def _numerator_poly(zeros):
    P = np.polynomial.polynomial
    a = zeros.points
    p = P.polyfromroots(a) * (-1) ** len(a)  # prod (a_k - z)
    q = np.array([1.0 + 0j])
    for ak in a:
        q = P.polymul(q, [1.0, -np.conj(ak)])  # prod (1 - conj(a_k) z)
    return P.polysub(P.polymul(P.polyder(p), q), P.polymul(p, P.polyder(q)))


def _numerator_logder(zeros, z):
    """``N'/N`` for the numerator ``N`` of ``B'`` (roots: critical points and reflections).

    ``N = (B'/B) P Q`` with ``P = prod (z - a_k)``, ``Q = prod (1 - conj(a_k) z)``;
    all pieces are evaluated in depth/angle form.
    """
    d = zeros.depths
    rot = np.exp(-1j * zeros.angles)
    u = z[:, None] * rot
    w = 1.0 - u
    num = w - d
    den = w + d * u
    c = d * (2.0 - d)
    pn = den * num
    L = np.sum(-rot * c / pn, axis=1)
    dL = np.sum(rot * rot * c * ((d - 1.0) * num - den) / (pn * pn), axis=1)
    # z - a_k = -e^{i phi} num ; z - 1/conj(a_k) = -e^{i phi} den / (1 - d)
    poles = np.sum(-rot / num, axis=1) + np.sum(-rot * (1.0 - d) / den, axis=1)
    return dL / L + poles


def _critical_companion(B, iters=200):
    P = np.polynomial.polynomial
    num = np.trim_zeros(_numerator_poly(B.zeros), "b")
    z = P.polyroots(num).astype(complex)
    # companion roots are poorly conditioned for clustered zeros; use them only
    # to seed a simultaneous Aberth refinement
    rng = np.random.default_rng(0)
    z = z + 1e-9 * (rng.standard_normal(z.size) + 1j * rng.standard_normal(z.size))
    for _ in range(iters):
        with np.errstate(all="ignore"):
            ratio = 1.0 / _numerator_logder(B.zeros, z)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            corr = ratio / (1.0 - ratio * np.sum(1.0 / diff, axis=1))
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z = z - corr
        if np.all(np.abs(corr) <= 1e-16 * np.maximum(np.abs(z), 1.0)):
            break
    return z[np.abs(z) < 1.0 - 1e-12], None


def _critical_bracket(B):
    # real zeros a_1 < ... < a_n in (0,1): exactly one critical point per gap;
    # solve for the depth s = 1 - t of the log-derivative root
    d = B.zeros.depths

    def logder(s):
        return -np.sum(d * (2.0 - d) / ((s - d) * (s + d * (1.0 - s))))

    depths = []
    for k in range(len(d) - 1):
        hi, lo = d[k], d[k + 1]
        w = hi - lo
        left, right = lo + 1e-13 * w, hi - 1e-13 * w
        depths.append(brentq(logder, left, right, xtol=1e-300, rtol=1e-15, maxiter=500))
    depths = np.array(depths)
    return (1.0 - depths).astype(complex), depths


def critical_points(B, method="auto"):
    """Zeros of ``B'`` in the disk for a finite product of degree ``n >= 2``.

    ``companion``: roots of the numerator of ``B'`` by companion matrix, kept
    when ``|z| < 1 - 1e-12``, then Newton-polished. ``bracket``: for real
    increasing zeros only, one root of the log-derivative per gap. ``auto``
    picks ``bracket`` when it applies. A count other than ``n - 1`` raises.
    """
    n = B.degree
    if n < 2:
        raise ValueError("need a product of degree >= 2")
    if method == "auto":
        method = "bracket" if B.zeros.is_real_increasing() else "companion"
    if method == "bracket":
        if not B.zeros.is_real_increasing():
            raise ValueError("bracketing needs real increasing zeros")
        pts, depths = _critical_bracket(B)
    elif method == "companion":
        pts, depths = _critical_companion(B)
    else:
        raise ValueError(f"unknown method {method!r}")
    if len(pts) != n - 1:
        raise CriticalPointError(f"found {len(pts)} critical points, expected {n - 1}")
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    depths = None if depths is None else depths[order]
    _, der = B.values_and_derivatives(pts)
    res = np.abs(der)
    return CriticalPointSet(pts, res, res * (1.0 - np.abs(pts) ** 2), depths)


def interlace_check(zeros, crit):
    """True iff every critical point is real, in (0,1), one in each gap (a_k, a_{k+1})."""
    if not zeros.is_real_increasing():
        raise ValueError("interlace_check needs real, strictly increasing zeros in (0, 1)")
    a = 1.0 - zeros.depths
    b = np.asarray(crit.points)
    if np.any(np.abs(b.imag) > 1e-12) or len(b) != len(a) - 1:
        return False
    b = np.sort(b.real)
    return bool(np.all((b > a[:-1]) & (b < a[1:])))


class FactorG(AnalyticMap):
    """``G = B' / Btilde = kappa prod (1 - conj(b_k) z)^2 / prod (1 - conj(a_j) z)^2``.

    This is the numerator of ``B'`` with the in-disk roots divided out; the
    remaining roots ``1/conj(b_k)`` pair with the denominator of ``Btilde``.
    """

    def __init__(self, zeros, crit_zeros, kappa):
        self.zeros = zeros
        self.crit = crit_zeros
        self.kappa = complex(kappa)
        self.name = "G"

    @staticmethod
    def _den(seq, z):
        u = z[..., None] * np.exp(-1j * seq.angles)
        return (1.0 - u) + seq.depths * u

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        fb = self._den(self.crit, z)
        fa = self._den(self.zeros, z)
        v = self.kappa * np.prod(fb * fb, axis=-1) / np.prod(fa * fa, axis=-1)
        return v, np.zeros(z.shape)

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        v, _ = self.eval(z)
        cb = np.conj(self.crit.points)
        ca = np.conj(self.zeros.points)
        s = np.sum(-2.0 * cb / self._den(self.crit, z), axis=-1)
        s -= np.sum(-2.0 * ca / self._den(self.zeros, z), axis=-1)
        return v * s, np.zeros(z.shape)


def derivative_factorization(B, crit=None):
    """``B' = Btilde * G`` with Btilde vanishing at the critical points and G > 0 on (0,1)."""
    if not B.is_finite:
        raise ValueError("derivative factorization needs a finite product")
    if not B.zeros.is_real_increasing():
        raise ValueError("derivative factorization needs real increasing zeros in (0, 1)")
    crit = crit or critical_points(B)
    if crit.depths is not None:
        cz = ZeroSequence(crit.depths, np.zeros(len(crit.depths)))
    else:
        cz = ZeroSequence.from_points(crit.points.real)
    btilde = BlaschkeProduct(cz, name="Btilde")
    _, d0 = B.values_and_derivatives(np.array([0.0 + 0j]))
    bt0, _ = btilde.values_and_derivatives(np.array([0.0 + 0j]))
    kappa = d0[0] / bt0[0]
    phase = kappa / abs(kappa)
    btilde = BlaschkeProduct(cz, phase=phase, name="Btilde")
    return btilde, FactorG(B.zeros, cz, abs(kappa))


# -- modulus estimates ------------------------------------------------------------------

def zero_adapted_grid(zeros, inner, outer, n_rad, n_ang, n_polar=32):
    """Points on pseudo-hyperbolic rings ``inner <= rho(z, a_k) <= outer`` around
    every zero, plus a polar grid on ``|z| <= 1 - min depth``."""
    a = zeros.points
    s = np.linspace(inner * (1.0 + 1e-9), outer, n_rad)
    t = TWO_PI * np.arange(n_ang) / n_ang
    w = (s[:, None] * np.exp(1j * t[None, :])).ravel()
    pts = [(ak - w) / (1.0 - np.conj(ak) * w) for ak in a]
    rmax = 1.0 - float(np.min(zeros.depths))
    radii = rmax * np.sqrt(np.linspace(0.0, 1.0, n_polar + 1)[1:])
    tp = TWO_PI * np.arange(4 * n_polar) / (4 * n_polar)
    pts.append((radii[:, None] * np.exp(1j * tp[None, :])).ravel())
    pts.append(np.array([0.0 + 0j]))
    return np.concatenate(pts)


def min_modulus_off_disks(B, eps, grid):
    """``min |B|`` over the grid points outside every ``Delta(a_k, eps)``."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    grid = np.asarray(grid, dtype=complex).ravel()
    grid = grid[np.abs(grid) < 1.0]
    a = B.zeros.points
    keep = np.ones(grid.size, dtype=bool)
    for ak in a:
        keep &= np.abs(grid - ak) >= eps * np.abs(1.0 - np.conj(ak) * grid)
    if not keep.any():
        raise ValueError("no grid point lies outside the pseudo-disks")
    v, _ = B.eval(grid[keep])
    return float(np.min(np.abs(v)))


def max_on_circle(B, k, m=512):
    """``max |B|`` on the circle about ``a_k`` (0-based) of radius ``(1-|a_k|)/2``."""
    if m < 512:
        raise ValueError("use at least 512 points on the circle")
    if B.degree == 0:
        return float(abs(B.phase))
    ak = B.zeros.points[k]
    r = 0.5 * B.zeros.depths[k]
    z = ak + r * np.exp(1j * TWO_PI * np.arange(m) / m)
    v, _ = B.eval(z)
    return float(np.max(np.abs(v)))


@dataclass(frozen=True)
class GpvConstants:
    alpha: float
    beta: float


def gpv_alpha(zeros, cap=0.5, steps=40):
    """Largest ``cap * 2^-j`` (j < steps) making the disks Delta(a_k, alpha) pairwise disjoint."""
    if len(zeros) >= 2 and separation_constant(zeros) == 0.0:
        raise ValueError("zeros are not separated")
    pts = zeros.points
    alpha = cap
    for _ in range(steps):
        if pseudo_disks_disjoint(pts, alpha):
            return alpha
        alpha *= 0.5
    raise ValueError("no disjoint pseudo-disk radius found")


def pseudo_disk_samples(a, alpha, samples):
    n_r = max(2, int(round(math.sqrt(samples / 4.0))))
    n_t = max(4, samples // n_r)
    s = alpha * np.arange(1, n_r + 1) / n_r
    t = TWO_PI * np.arange(n_t) / n_t
    w = np.concatenate([[0.0], (s[:, None] * np.exp(1j * t[None, :])).ravel()])
    return (a - w) / (1.0 - np.conj(a) * w)


def gpv_constants(zeros, samples=256, B=None):
    """Empirical ``alpha`` (disjoint pseudo-disks) and ``beta = min |B'(z)| (1-|a_k|)``."""
    alpha = gpv_alpha(zeros)
    B = B or BlaschkeProduct(zeros.finite())
    beta = math.inf
    for a, d in zip(zeros.points, zeros.depths):
        _, der = B.values_and_derivatives(pseudo_disk_samples(a, alpha, samples))
        beta = min(beta, float(np.min(np.abs(der))) * d)
    return GpvConstants(alpha, beta)


def real_pseudo_interval(a, r):
    """``Delta(a, r) ∩ (0, 1)`` for real ``a`` in (0,1), as ``(lo, hi)``."""
    c, R = pseudo_disk_euclidean(PseudoDisk(DiskPoint(a, 0.0), r))
    return max(0.0, c.real - R), min(1.0, c.real + R)
