"""Analytic functions on the disk with certified evaluation, and the classical norms
and inequalities (H^1, l^1 tails, Hardy, Fejer-Riesz) built on them."""
from dataclasses import dataclass
import csv
import math

import numpy as np

TWO_PI = 2.0 * math.pi


class AnalyticMap:
    """Evaluation contract: ``eval``/``deriv`` return ``(value, err)`` arrays.

    ``err`` bounds the representation error (truncation of a series or a
    product); it is zero for closed forms.
    """

    name = "f"

    def eval(self, z):
        raise NotImplementedError

    def deriv(self, z):
        raise NotImplementedError

    def eval_polar(self, s, theta):
        """``eval`` at ``(1 - s) e^{i theta}``; overridden where depth precision matters."""
        return self.eval((1.0 - np.asarray(s)) * np.exp(1j * np.asarray(theta)))

    def deriv_polar(self, s, theta):
        return self.deriv((1.0 - np.asarray(s)) * np.exp(1j * np.asarray(theta)))

    def __call__(self, z):
        return self.eval(z)[0]

    def prime(self, z):
        return self.deriv(z)[0]

    def derivative(self):
        """The derivative as an AnalyticMap (value only, no second derivative)."""
        return _Derivative(self)

    def radial_tail_bound(self, r):
        """Upper bound for ``int_r^1 |f'(t e^{i theta})| dt`` uniform in theta, or None."""
        return None


class _Derivative(AnalyticMap):
    def __init__(self, base):
        self.base = base
        self.name = f"{base.name}'"

    def eval(self, z):
        return self.base.deriv(z)


class ClosedForm(AnalyticMap):
    """A function given by exact formulas for the value and the derivative."""

    def __init__(self, f, fprime, name="f", fsecond=None):
        self.f = f
        self.fprime = fprime
        self.fsecond = fsecond
        self.name = name

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        return np.asarray(self.f(z), dtype=complex) + 0 * z, np.zeros(z.shape)

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        return np.asarray(self.fprime(z), dtype=complex) + 0 * z, np.zeros(z.shape)

    def derivative(self):
        if self.fsecond is None:
            return _Derivative(self)
        return ClosedForm(self.fprime, self.fsecond, f"{self.name}'")


def _zero_tail(rho):
    return np.zeros(np.shape(rho))


class PowerSeries(AnalyticMap):
    """``sum_{n<=N} a_n z^n`` plus a rule bounding the omitted tail.

    ``tail(rho)`` bounds ``sum_{n>N} |a_n| rho^n`` and ``dtail(rho)`` bounds
    ``sum_{n>N} n |a_n| rho^(n-1)``, for ``0 <= rho <= 1``.
    """

    def __init__(self, coefficients, tail=None, dtail=None, name="p", derivative_rules=None):
        c = np.atleast_1d(np.asarray(coefficients, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("need a nonempty 1-d coefficient sequence")
        self.coefficients = c
        self.tail = tail or _zero_tail
        self.dtail = dtail or _zero_tail
        self.name = name
        self._derivative_rules = derivative_rules
        self._support = np.flatnonzero(c)

    @property
    def degree(self):
        return self.coefficients.size - 1

    @property
    def is_polynomial(self):
        return self.tail is _zero_tail and self.dtail is _zero_tail

    @classmethod
    def lacunary(cls, K, name="lacunary"):
        """``sum_{k=0}^K 2^-k z^(2^k)`` with the exact geometric tail of the infinite series."""
        n = 2 ** K
        c = np.zeros(n + 1, dtype=complex)
        for k in range(K + 1):
            c[2 ** k] = 2.0 ** -k
        m = 2 ** (K + 1)

        def tail(rho):
            return 2.0 ** -K * np.asarray(rho, dtype=float) ** m

        def dtail(rho):
            rho = np.asarray(rho, dtype=float)
            with np.errstate(divide="ignore"):
                return np.where(rho < 1.0, rho ** (m - 1) / np.maximum(1.0 - rho, 0.0), np.inf)

        def ddtail(rho):
            # sum_{j >= m-2} (j+1) rho^j bounds sum_{k>K} (2^k - 1) rho^(2^k - 2)
            rho = np.asarray(rho, dtype=float)
            j = m - 2
            with np.errstate(divide="ignore", invalid="ignore"):
                s = 1.0 - rho
                out = rho ** j * ((j + 1) / s + rho / (s * s))
            return np.where(rho < 1.0, out, np.inf)

        return cls(c, tail, dtail, name, derivative_rules=(dtail, ddtail))

    @classmethod
    def from_csv(cls, path, name=None):
        """Read ``n,re,im`` rows (ascending n, no gaps) into a polynomial."""
        coeffs = []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != ["n", "re", "im"]:
                raise ValueError(f"{path}: expected header n,re,im")
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                try:
                    n, re, im = int(row[0]), float(row[1]), float(row[2])
                except (ValueError, IndexError) as exc:
                    raise ValueError(f"{path}:{lineno}: malformed coefficient row") from exc
                if n != len(coeffs):
                    raise ValueError(f"{path}:{lineno}: expected n={len(coeffs)}, got {n}")
                coeffs.append(complex(re, im))
        return cls(coeffs, name=name or "p")

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "re", "im"])
            for n, a in enumerate(self.coefficients):
                w.writerow([n, repr(float(a.real)), repr(float(a.imag))])

    def _sum(self, c, z):
        support = np.flatnonzero(c)
        if support.size == 0:
            return np.zeros(z.shape, dtype=complex)
        if support.size * 4 < c.size:
            out = np.zeros(z.shape, dtype=complex)
            for n in support:
                out += c[n] * z ** int(n)
            return out
        out = np.full(z.shape, c[-1], dtype=complex)
        for a in c[-2::-1]:
            out = out * z + a
        return out

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        return self._sum(self.coefficients, z), np.asarray(self.tail(np.abs(z)), dtype=float)

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        c = self.coefficients[1:] * np.arange(1, self.coefficients.size)
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        return self._sum(c, z), np.asarray(self.dtail(np.abs(z)), dtype=float)

    def derivative(self):
        c = self.coefficients[1:] * np.arange(1, self.coefficients.size)
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if self.is_polynomial:
            return PowerSeries(c, name=f"{self.name}'")
        if self._derivative_rules is None:
            return PowerSeries(c, self.dtail, lambda rho: np.full(np.shape(rho), np.inf), f"{self.name}'")
        t, dt = self._derivative_rules
        return PowerSeries(c, t, dt, f"{self.name}'")

    def coefficient_l1(self, start=0):
        """``sum_{n >= start} |a_n|`` including the tail bound at rho = 1."""
        return math.fsum(np.abs(self.coefficients[start:])) + float(self.tail(1.0))

    def radial_tail_bound(self, r):
        # int_r^1 |g'| <= sum_n |a_n| (1 - r^n) + sum_{n>N} |a_n|
        n = np.arange(self.coefficients.size)
        return math.fsum(np.abs(self.coefficients) * (1.0 - r ** n)) + float(self.tail(1.0))


class DilatedMap(AnalyticMap):
    """``z -> base(scale * z)`` with ``scale = r e^{i delta}``."""

    def __init__(self, base, scale):
        self.base = base
        self.scale = complex(scale)
        self.name = f"{base.name}[{self.scale:.6g}]"

    @property
    def factor(self):
        return abs(self.scale)

    @property
    def angle(self):
        return math.atan2(self.scale.imag, self.scale.real)

    def eval(self, z):
        return self.base.eval(self.scale * np.asarray(z, dtype=complex))

    def deriv(self, z):
        v, e = self.base.deriv(self.scale * np.asarray(z, dtype=complex))
        return self.scale * v, abs(self.scale) * e


def _compose(f, scale):
    if isinstance(f, DilatedMap):
        return DilatedMap(f.base, f.scale * scale)
    return DilatedMap(f, scale)


def dilate(f, r):
    """``f_r(z) = f(rz)`` for ``0 < r <= 1``."""
    if not 0.0 < r <= 1.0:
        raise ValueError("dilation factor must lie in (0, 1]")
    return _compose(f, complex(r, 0.0))


def rotate(f, delta):
    """``f^delta(z) = f(z e^{i delta})``."""
    return _compose(f, complex(math.cos(delta), math.sin(delta)))


def circle(r, m):
    return r * np.exp(1j * TWO_PI * np.arange(m) / m)


@dataclass(frozen=True)
class NormEstimate:
    value: float
    eval_err: float
    r: float
    m: int
    flagged: bool = False

    def __float__(self):
        return float(self.value)


def _check_circle(r, m):
    if m < 16:
        raise ValueError("need at least 16 quadrature nodes")
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must lie in [0, 1)")


def h1_norm(f, r, m, tol=None):
    """Circle mean ``(1/2pi) int |f(r e^{it})| dt`` by the m-node periodic trapezoid rule."""
    _check_circle(r, m)
    v, e = f.eval(circle(r, m))
    err = float(np.max(e)) if np.size(e) else 0.0
    return NormEstimate(float(np.mean(np.abs(v))), err, r, m, tol is not None and err > tol)


def sup_norm_estimate(f, r, m):
    """Grid maximum of |f| on |z| = r: a lower bound for the sup norm."""
    _check_circle(r, m)
    return float(np.max(np.abs(f(circle(r, m)))))


def l1_tail(f, K):
    """``sum_{K < n <= N} |a_n| + tail(1)``."""
    if K > f.degree:
        raise ValueError(f"only {f.degree + 1} coefficients stored, cannot cut at K={K}")
    return math.fsum(np.abs(f.coefficients[K + 1:])) + float(f.tail(1.0))


def hardy_margin(g, r, m):
    """``pi * ||g'||_{H^1(r)} - sum_{k>=1} |a_k|``; nonnegative by Hardy's inequality."""
    h = h1_norm(g.derivative(), r, m)
    return math.pi * h.value - g.coefficient_l1(start=1)


def fejer_riesz_margin(g, theta, r, m, q=None):
    """``pi * ||g'||_{H^1(r)} - int_0^r |g'(t e^{i theta})| dt``."""
    from .operators import radial_variation

    h = h1_norm(g.derivative(), r, m)
    v = radial_variation(g, theta, r, q)
    v.require()
    return math.pi * h.value - v.value.real
