"""End-to-end experiments. Each runner returns a :class:`Report`."""
import math

import numpy as np

from . import blaschke as bl
from . import operators as op
from . import slits
from .config import ConfigError
from .functions import ClosedForm, PowerSeries, fejer_riesz_margin, h1_norm, hardy_margin, l1_tail
from .quadrature import adaptive
from .report import Report, load_pinned

TWO_PI = 2.0 * math.pi


def _zeros(cfg, zeros, rule, n):
    if zeros is not None:
        return zeros
    return bl.ZeroSequence.from_rule(cfg.rule or rule, cfg.n_zeros or n)


def _poly(rng, degree):
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return PowerSeries(c / (degree + 1))


def _disk_points(rng, n, radius):
    return radius * np.sqrt(rng.random(n)) * np.exp(1j * TWO_PI * rng.random(n))


def _fit(x, y):
    slope, icpt = np.polyfit(x, y, 1)
    res = y - (slope * x + icpt)
    tot = y - y.mean()
    r2 = 1.0 - float(res @ res) / float(tot @ tot)
    return float(slope), float(icpt), r2


# -- identities ---------------------------------------------------------------------

def run_identities(cfg, zeros=None):
    rep = Report("identities", cfg.echo())
    q = cfg.quadrature
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for i in range(cfg.identity_pairs):
        df, dg = rng.integers(0, cfg.identity_degree + 1, size=2)
        f, g = _poly(rng, int(df)), _poly(rng, int(dg))
        z = complex(_disk_points(rng, 1, 0.95)[0])
        t, s = op.apply_T(g, f, z, q), op.apply_S(g, f, z, q)
        res = abs(complex(f(z) * g(z)) - complex(f(0j) * g(0j)) - t.require() - s.require())
        rows.append([i, int(df), int(dg), z.real, z.imag, res, t.err + s.err])
    rep.table("integration_by_parts", ["i", "deg_f", "deg_g", "re_z", "im_z", "residual", "quad_err"], rows)
    worst = max(r[5] for r in rows)
    rep.verdict("integration_by_parts", worst <= 1e-9, "integration_by_parts", "all",
                f"max residual {worst:.3g} <= 1e-9")

    g = ClosedForm(lambda z: (z + 0.3) / 1.3, lambda z: 1.0 / 1.3 + 0 * z, "g")
    pts = _disk_points(rng, 5, 0.95)
    rows = []
    for n in range(1, cfg.spower_max + 1):
        gn = ClosedForm(lambda z, n=n: ((z + 0.3) / 1.3) ** n,
                        lambda z, n=n: n * ((z + 0.3) / 1.3) ** (n - 1) / 1.3)
        for z in pts:
            val = op.apply_S(g, gn, complex(z), q).require()
            exact = n / (n + 1) * (complex(g(z)) ** (n + 1) - (0.3 / 1.3) ** (n + 1))
            rows.append([n, z.real, z.imag, abs(val - exact)])
    rep.table("s_power", ["n", "re_z", "im_z", "residual"], rows)
    worst = max(r[3] for r in rows)
    rep.verdict("s_power", worst <= 1e-8, "s_power", "all", f"max residual {worst:.3g} <= 1e-8")

    h = ClosedForm(lambda z: z - z ** 3, lambda z: 1 - 3 * z ** 2, "h")
    rows = []
    for z in _disk_points(rng, 50, 0.95):
        val = op.apply_T(h, h, complex(z), q).require()
        rows.append([z.real, z.imag, abs(val - complex(h(z)) ** 2 / 2)])
    rep.table("t_h_h", ["re_z", "im_z", "residual"], rows)
    worst = max(r[2] for r in rows)
    rep.verdict("t_h_h", worst <= 1e-10, "t_h_h", "all", f"max residual {worst:.3g} <= 1e-10")
    return rep


# -- real zeros: the T_B Btilde orbit ----------------------------------------------------

def _disk_depths(d, r):
    """Depth interval of ``Delta(1 - d, r) ∩ (0, 1)``."""
    lo = d * (1.0 - r) / (1.0 + r - d * r)
    hi = d * (1.0 + r) / (1.0 - r + d * r)
    return lo, min(hi, 1.0)


def breal_orbit(B, btilde, alpha, q):
    """Orbit ``T_B Btilde`` at inter-zero midpoints and per-disk increments over
    ``Delta(a_k, alpha/2) ∩ (0,1)``, all in the depth variable."""
    d = B.zeros.depths
    mid = 0.5 * (d[:-1] + d[1:])
    disks = [_disk_depths(dk, 0.5 * alpha) for dk in d]
    pts = {1.0, *d.tolist(), *btilde.zeros.depths.tolist(), *mid.tolist()}
    for lo, hi in disks:
        pts.update((lo, hi))
    s_min = min(mid.min(), min(lo for lo, _ in disks))
    breaks = np.array(sorted(p for p in pts if s_min <= p <= 1.0))

    def integrand(s):
        v = btilde.eval_polar(s, 0.0)[0] * B.deriv_polar(s, 0.0)[0]
        return v.real

    pieces, perr, _, ok = adaptive(integrand, breaks, q)
    pieces = pieces.real

    def over(lo, hi):
        sel = (breaks[:-1] >= lo) & (breaks[1:] <= hi)
        return float(pieces[sel].sum()), float(perr[sel].sum())

    orbit = [over(m, 1.0) for m in mid]
    incs = [over(lo, hi) for lo, hi in disks]
    return mid, orbit, disks, incs, ok


def run_breal(cfg, zeros=None):
    rep = Report("breal", cfg.echo())
    q = cfg.quadrature
    pinned = load_pinned()["breal"] if zeros is None else None
    z = _zeros(cfg, zeros, "geometric 0.5", 20).finite()
    if not z.is_real_increasing():
        raise ConfigError("breal needs real increasing zeros in (0, 1)")
    B = bl.BlaschkeProduct(z)
    crit = bl.critical_points(B)
    cd = crit.depths if crit.depths is not None else 1.0 - np.abs(crit.points)
    rep.table("critical_points", ["k", "depth", "scaled_residual"],
              [[k + 1, float(cd[k]), float(crit.scaled_residuals[k])] for k in range(len(cd))])
    rep.verdict("interlacing", bl.interlace_check(z, crit), "critical_points", "all",
                "one critical point in each (a_k, a_k+1)")
    btilde, G = bl.derivative_factorization(B, crit)

    gpv = bl.gpv_constants(z, cfg.gpv_samples, B)
    gpv2 = bl.gpv_constants(z, 2 * cfg.gpv_samples, B)
    rep.constant("alpha_est", gpv.alpha, f"halving search from 0.5, {len(z)} zeros")
    rep.constant("beta_est", gpv.beta, f"{cfg.gpv_samples} samples per disk, {len(z)} zeros")
    stable_beta = rep.refine("beta_est", gpv.beta, gpv2.beta, 0.10, "gpv sample doubling")

    mid, orbit, disks, incs, ok = breal_orbit(B, btilde, gpv.alpha, q)
    a = 1.0 - z.depths
    rows = [[k + 1, float(mid[k]), float(1.0 - mid[k]), orbit[k][0], orbit[k][1]] for k in range(len(mid))]
    rep.table("orbit", ["k", "depth", "midpoint", "T_B_Btilde", "quad_err"], rows)
    rep.table("disk_increments", ["k", "a_k", "depth_lo", "depth_hi", "increment", "quad_err"],
              [[k + 1, float(a[k]), disks[k][0], disks[k][1], incs[k][0], incs[k][1]] for k in range(len(a))])
    vals = np.array([o[0] for o in orbit])
    rep.verdict("quadrature_converged", ok, "orbit", "all", "adaptive quadrature met its tolerance")
    rep.verdict("orbit_increasing", bool(np.all(np.diff(vals) > 0)), "orbit", "all",
                "T_B Btilde strictly increasing across midpoints")
    rep.verdict("disk_increments_positive", all(i[0] > 0 for i in incs), "disk_increments", "all",
                "every per-disk increment > 0", stability=("beta_est",))
    k = np.arange(1, len(vals) + 1, dtype=float)
    slope, icpt, r2 = _fit(k, vals)
    lo, hi = min(4, len(k) - 2), max(len(k) - 3, min(4, len(k) - 2) + 2)
    s_in, i_in, r2_in = _fit(k[lo:hi], vals[lo:hi])
    rep.table("fit", ["range", "k_first", "k_last", "slope", "intercept", "r2"],
              [["all", 1, len(k), slope, icpt, r2], ["interior", lo + 1, hi, s_in, i_in, r2_in]])
    rep.constant("slope", slope, "least squares of orbit against k")
    rep.verdict("positive_slope", slope > 0 and r2 >= 0.9, "fit", [0],
                f"slope {slope:.6g} > 0 with r2 {r2:.6g} >= 0.9")

    gam = bl.min_modulus_off_disks(btilde, 0.5 * gpv.alpha, bl.zero_adapted_grid(
        btilde.zeros, 0.5 * gpv.alpha, 0.9, cfg.gamma_rad, cfg.gamma_ang))
    rep.constant("gamma_tilde_est", gam, "min |Btilde| off Delta(b_k, alpha/2), zero-adapted grid")
    floor = 0.5 * gpv.alpha * gpv.beta * gam
    rep.verdict("increment_floor", all(i[0] >= floor for i in incs), "disk_increments", "all",
                f"every per-disk increment >= alpha*beta*gamma/2 = {floor:.3g}", stability=("beta_est",))
    t = np.linspace(0.05, 0.95, 10).astype(complex)
    gt = G(t)
    fe = np.abs(btilde(t) * gt - B.prime(t))
    rep.table("derivative_factorization", ["t", "G", "abs_err"],
              [[float(a.real), float(b.real), float(c)] for a, b, c in zip(t, gt, fe)])
    if pinned:
        for name, value in (("slope", slope), ("alpha_est", gpv.alpha), ("beta_est", gpv.beta),
                            ("orbit_final", float(vals[-1]))):
            rep.pinned_check(name, value, pinned[name], *(("orbit", [len(vals) - 1]) if name == "orbit_final" else ("fit", [0])))
    return rep


# -- Stolz / circle maxima -----------------------------------------------------------

def circle_max(B, k, m=512):
    ak = B.zeros.points[k]
    r = 0.5 * B.zeros.depths[k]
    pts = ak + r * np.exp(1j * TWO_PI * np.arange(m) / m)
    v, e = B.eval(pts)
    return float(np.max(np.abs(v))), float(np.max(e))


def gamma_estimate(z, eps, rad, ang, n_polar=32):
    B = bl.BlaschkeProduct(z.finite())
    grid = bl.zero_adapted_grid(z, eps, 0.9, rad, ang, n_polar)
    return bl.min_modulus_off_disks(B, eps, grid)


def run_stolz(cfg, zeros=None):
    rep = Report("stolz", cfg.echo())
    pinned = load_pinned()["stolz"] if zeros is None else None
    z = _zeros(cfg, zeros, "geometric 0.5", 20)
    n = len(z)
    delta = bl.interp_delta(z)
    rep.constant("delta_est", delta, f"min_k |B_k(a_k)|, {n} zeros plus certified tail")
    drows = [[n, delta]]
    if z.rule is not None:
        d5 = bl.interp_delta(z.extend(n + 5))
        rep.refine("delta_est", delta, d5, 0.01, "truncation N -> N+5")
        drows.append([n + 5, d5])
    rep.table("delta", ["zeros", "delta_est"], drows)
    B = bl.BlaschkeProduct(z, truncation=n + cfg.eval_extra) if z.rule else bl.BlaschkeProduct(z)
    rows = []
    lo_k, hi_k = 5, min(15, n)
    for k in range(lo_k, hi_k + 1):
        mk, err = circle_max(B, k - 1)
        a = B.zeros.points[k - 1]
        mid = 0.5 * (a + B.zeros.points[k]) if k < B.degree else a
        rad = float(abs(B(np.array([mid]))[0]))
        rows.append([k, float(abs(a)), rad, mk, err, mk - err])
    rep.table("circle_max", ["k", "a_k", "abs_B_midpoint", "M_k", "eval_err", "M_k_lower"], rows)
    ok = all(r[5] >= delta / 4 for r in rows)
    rep.verdict("circle_max_bound", ok, "circle_max", "all",
                f"M_k - err >= delta_est/4 = {delta / 4:.6g} for {lo_k} <= k <= {hi_k}",
                stability=("delta_est",) if "delta_est" in rep.refinement else ())

    zg = z.truncate(min(15, n)).finite()
    alpha = bl.gpv_alpha(zg)
    eps = 0.5 * alpha
    g1 = gamma_estimate(zg, eps, cfg.gamma_rad, cfg.gamma_ang)
    g2 = gamma_estimate(zg, eps, 2 * cfg.gamma_rad, 2 * cfg.gamma_ang, 64)
    rep.constant("gamma_est", g1, f"min |B| off Delta(a_k, {eps:g}), {len(zg)} zeros, "
                                  f"grid {cfg.gamma_rad}x{cfg.gamma_ang}")
    rep.refine("gamma_est", g1, g2, 0.10, "zero-adapted grid doubling")
    rep.table("gamma", ["eps", "grid", "gamma_est"], [[eps, "coarse", g1], [eps, "fine", g2]])
    rep.verdict("gamma_positive", g1 > 0, "gamma", "all", "gamma_est > 0", stability=("gamma_est",))
    if pinned:
        rep.pinned_check("delta_est", delta, pinned["delta_est"], "delta", [0])
        rep.pinned_check("gamma_est", g1, pinned["gamma_est"], "gamma", "all")
    return rep


# -- uniformly Frostman zeros ---------------------------------------------------------

def frostman_grid(z, m):
    return np.unique(np.concatenate([TWO_PI * np.arange(m) / m, z.angles]))


def frostman_constant(z, m):
    return bl.frostman_sup(z, frostman_grid(z, m))


def brv_profile(z, m, q):
    B = bl.BlaschkeProduct(z.finite())
    return op.brv_sup(B, frostman_grid(z, m), q=q, depth=float(z.depths.min()) * 2.0 ** -10)


def run_frostman(cfg, zeros=None):
    rep = Report("frostman", cfg.echo())
    q = cfg.quadrature
    pinned = load_pinned()["frostman"] if zeros is None else None
    z = _zeros(cfg, zeros, "frostman4", 25)
    m = cfg.frostman_grid
    c1 = frostman_constant(z, m)
    c2 = frostman_constant(z, 2 * m)
    rows = [["base", len(z), m, c1.sup, c1.argmax], ["grid x2", len(z), 2 * m, c2.sup, c2.argmax]]
    stab = ["C_frostman_grid"]
    rep.refine("C_frostman_grid", c1.sup, c2.sup, 0.02, "theta grid doubling")
    if z.rule is not None:
        c3 = frostman_constant(z.extend(2 * len(z)), m)
        rows.append(["zeros x2", 2 * len(z), m, c3.sup, c3.argmax])
        rep.refine("C_frostman_zeros", c1.sup, c3.sup, 0.02, "truncation doubling")
        stab.append("C_frostman_zeros")
    rep.table("frostman", ["run", "zeros", "grid", "sup", "argmax"], rows)
    rep.constant("C_frostman", c1.sup, f"grid {m} plus zero angles, {len(z)} zeros, certified tail")
    finite = not c1.diverging and math.isfinite(c1.sup)
    rep.verdict("frostman_finite", finite, "frostman", "all", "Frostman sum bounded on the grid",
                stability=tuple(stab))

    nb = min(cfg.brv_zeros, len(z))
    zb = z.truncate(nb) if z.rule is None else z.extend(nb)
    p1 = brv_profile(zb, cfg.theta_grid, q)
    p2 = brv_profile(zb, 2 * cfg.theta_grid, q)
    rows = [["base", nb, cfg.theta_grid, p1.sup_finite, p1.argmax],
            ["grid x2", nb, 2 * cfg.theta_grid, p2.sup_finite, p2.argmax]]
    stab = []
    brv_ok = p1.sup_finite is not None and p2.sup_finite is not None
    if brv_ok:
        stab.append("brv_sup_grid")
        rep.refine("brv_sup_grid", p1.sup_finite, p2.sup_finite, 0.02, "theta grid doubling")
    if z.rule is not None:
        p3 = brv_profile(z.extend(2 * nb), cfg.theta_grid, q)
        rows.append(["zeros x2", 2 * nb, cfg.theta_grid, p3.sup_finite, p3.argmax])
        brv_ok &= p3.sup_finite is not None
        if brv_ok:
            stab.append("brv_sup_zeros")
            rep.refine("brv_sup_zeros", p1.sup_finite, p3.sup_finite, 0.02, "truncation doubling")
    rep.table("brv", ["run", "zeros", "grid", "sup", "argmax"], rows)
    rep.constant("brv_sup", p1.sup_finite, f"grid {cfg.theta_grid} plus zero angles, {nb} zeros")
    rep.verdict("brv_finite", brv_ok, "brv", "all", "every radial variation converged",
                stability=tuple(stab))
    B = bl.BlaschkeProduct(zb.finite())
    grid = np.concatenate([op.polar_grid(1.0 - 2.0 ** -12, 256, 256),
                           bl.zero_adapted_grid(zb, 1e-3, 0.9, 8, 32, 8)])
    grid = grid[np.abs(grid) < 1.0]
    bloch = op.bloch_lower(B, grid)
    rep.constant("bloch_lower", bloch, "max (1-|z|^2)|B'| over polar and zero-adapted grids")
    if p1.sup_finite is not None:
        rep.verdict("chain_consistency", bloch <= p1.sup_finite + 1e-6, "brv", [0],
                    f"bloch_lower {bloch:.6g} <= brv_sup + 1e-6")

    # open candidate: no verdict, profile only
    cz = bl.ZeroSequence.one_over_k_sq(cfg.candidate_zeros)
    ct = TWO_PI * np.arange(cfg.candidate_thetas) / cfg.candidate_thetas
    rows = []
    for n in (cfg.candidate_zeros // 2, cfg.candidate_zeros):
        zz = cz.truncate(n)
        prof = op.brv_sup(bl.BlaschkeProduct(zz.finite()), ct, q=q, depth=float(zz.depths.min()) * 2.0 ** -10)
        for t, v in zip(ct, prof.values):
            rows.append([n, float(t), v.value.real, bool(v.converged)])
    rep.table("candidate_one_over_k_sq", ["zeros", "theta", "variation", "converged"], rows)
    if pinned:
        rep.pinned_check("C_frostman", c1.sup, pinned["C_frostman"], "frostman", [0])
        if p1.sup_finite is not None:
            rep.pinned_check("brv_sup", p1.sup_finite, pinned["brv_sup"], "brv", [0])
    return rep


# -- spirals -------------------------------------------------------------------------

def _harmonic_tail(n):
    return sum(1.0 / k for k in range(2, n + 1))


def run_spiral(cfg, zeros=None):
    rep = Report("spiral", cfg.echo())
    q = cfg.quadrature
    pinned = load_pinned()["spiral"]
    kinds = {"spiral_reciprocal": ["reciprocal"], "spiral_exponential": ["exponential"],
             None: ["reciprocal", "exponential"]}.get(cfg.domain)
    if kinds is None:
        raise ConfigError(f"domain {cfg.domain!r} is not a spiral")
    if "reciprocal" in kinds:
        _spiral_reciprocal(rep, cfg, q, pinned)
    if "exponential" in kinds:
        _spiral_exponential(rep, cfg)
    return rep


def _spiral_reciprocal(rep, cfg, q, pinned):
    S = slits.SpiralDomain("reciprocal", cfg.t_max)
    n = np.arange(1, cfg.spiral_n_max + 1)
    r = slits.r_points(n)
    H, _ = slits.h_and_hprime(S, r)
    target = np.log(TWO_PI * (n + 1))
    diff = np.abs(H.real - target)
    sel = n >= cfg.spiral_n_min
    rep.table("re_h", ["n", "r_n", "re_H", "log_2pi_n1", "abs_diff"],
              [[int(a), float(b), float(c), float(d), float(e)] for a, b, c, d, e in
               zip(n[sel], r[sel], H.real[sel], target[sel], diff[sel])])
    worst = float(diff[sel].max())
    rep.verdict("re_h_asymptotic", worst <= 1e-4, "re_h", "all",
                f"max |Re H(r_n) - log(2 pi (n+1))| = {worst:.3g} for "
                f"{cfg.spiral_n_min} <= n <= {cfg.spiral_n_max} (tolerance 1e-4)")
    rep.verdict("re_h_increasing", bool(np.all(np.diff(H.real) > 0)), "re_h", "all",
                "Re H(r_n) strictly increasing in n")

    rng = np.random.default_rng(cfg.seed)
    pts = _disk_points(rng, cfg.hp_samples, 1.0)
    pts = pts[S.contains(pts)]
    hp = float(np.max(np.abs(slits.h_and_hprime(S, pts)[1])))
    rep.constant("sup_Hp", hp, f"max |H'| over {pts.size} uniform samples (seed {cfg.seed})")
    rep.table("sup_hp", ["samples", "sup_Hp"], [[int(pts.size), hp]])
    rep.pinned_check("sup_Hp", hp, pinned["sup_Hp"], "sup_hp", "all")

    rows = []
    w0 = float(slits.r_points(1))
    hfun = slits.HPrime(S)
    for nn in cfg.j_points:
        path = slits.channel_path(nn)
        res = slits.j_integral(S, hfun, w0, float(slits.r_points(nn)), path, q)
        Hn = slits.h_and_hprime(S, np.array([slits.r_points(nn), w0]))[0]
        rows.append([nn, path.length, res.value.real, res.value.imag, abs(res.value - (Hn[0] - Hn[1])), res.err])
    rep.table("j_integral", ["n", "path_length", "re_J", "im_J", "abs_err", "quad_err"], rows)
    worst = max(r_[4] for r_ in rows)
    rep.verdict("j_integral_h", worst <= 1e-8, "j_integral", "all",
                f"J_w0 H'(r_n) = H(r_n) - H(w0) within {worst:.3g} <= 1e-8")

    grid = slits.DomainGrid(S, cfg.grid_n)
    field = grid.distances_from(w0)
    rows = []
    for nn in range(1, 200):
        try:
            d = grid.distance_to(field, float(slits.r_points(nn)))
        except slits.NoPathError:
            break
        h = _harmonic_tail(nn)
        rows.append([nn, d, h, 0.5 * TWO_PI * h])
    rep.table("arc_distance", ["n", "distance", "harmonic_2_n", "half_loop_bound"], rows)
    rep.constant("grid_clearance", grid.clearance, f"grid_n {cfg.grid_n}")
    d = np.array([r_[1] for r_ in rows])
    hs = np.array([r_[2] for r_ in rows])
    rep.verdict("arc_distance_nondecreasing", len(rows) >= 3 and bool(np.all(np.diff(d) >= 0)),
                "arc_distance", "all", f"grid distance to r_n nondecreasing for n <= {len(rows)}")
    rep.verdict("arc_distance_loop_bound", bool(np.all(d[1:] >= np.array([r_[3] for r_ in rows])[1:])),
                "arc_distance", list(range(1, len(rows))), "distance >= 0.5 * sum_{k=2}^n 2 pi / k")
    if len(rows) >= 3:
        c, _, r2 = _fit(hs[1:], d[1:])
    else:
        c, r2 = float("nan"), float("nan")
    rep.constant("log_growth_c", c, "least squares of distance against sum_{k=2}^n 1/k")
    rep.verdict("log_growth_positive", c > 0, "arc_distance", list(range(1, len(rows))), f"fitted c = {c:.6g} > 0")


def exponential_samples(count):
    u = 0.5 * np.arange(count)
    return [complex(p) for p in np.exp(1j * TWO_PI * u) * 0.75 * np.exp2(-u)]


def _spiral_exponential(rep, cfg):
    E = slits.SpiralDomain("exponential", cfg.t_max)
    coarse = slits.DomainGrid(E, cfg.grid_n // 2)
    fine = slits.DomainGrid(E, cfg.grid_n)
    samples = [w for w in exponential_samples(cfg.exp_samples) if coarse.resolvable(w)]
    d1 = slits.arc_length_diameter(E, samples, grid=coarse)
    d2 = slits.arc_length_diameter(E, samples, grid=fine)
    rep.table("exp_diameter", ["grid_n", "samples", "diameter"],
              [[cfg.grid_n // 2, len(samples), d1], [cfg.grid_n, len(samples), d2]])
    rep.constant("exp_diameter", d2, f"max pairwise grid distance, {len(samples)} centerline samples")
    rep.refine("exp_diameter", d1, d2, 0.05, "grid doubling")
    rep.verdict("exp_diameter_finite", math.isfinite(d2) and len(samples) >= 2, "exp_diameter", "all",
                "finite and stable under grid doubling", stability=("exp_diameter",))


# -- comb ---------------------------------------------------------------------------

def run_comb(cfg, zeros=None):
    rep = Report("comb", cfg.echo())
    if cfg.domain not in (None, "comb"):
        raise ConfigError(f"domain {cfg.domain!r} is not the comb")
    C = slits.CombDomain(cfg.n_slits)
    grid = slits.DomainGrid(C, cfg.grid_n)
    field = grid.distances_from(C.basepoint)
    rng = np.random.default_rng(cfg.seed)
    pts = []
    while len(pts) < cfg.comb_samples:
        cand = rng.random(4 * cfg.comb_samples) + 1j * rng.random(4 * cfg.comb_samples)
        pts.extend(complex(p) for p in cand[grid.resolvable(cand)])
    pts = pts[:cfg.comb_samples]
    d = np.array([grid.distance_to(field, p) for p in pts])
    slack = 10.0 * grid.clearance
    rep.table("distances", ["i", "x", "y", "distance"],
              [[i, p.real, p.imag, float(v)] for i, (p, v) in enumerate(zip(pts, d))])
    rep.constant("clearance", grid.clearance, f"grid_n {cfg.grid_n}")
    rep.verdict("distance_below_2", float(d.max()) < 2.0 + slack, "distances", "all",
                f"max distance {float(d.max()):.6g} < 2 + 10 * clearance")
    far = [pts[i] for i in np.argsort(-d, kind="stable")[:max(1, cfg.diameter_samples - 1)]]
    diam = slits.arc_length_diameter(C, [C.basepoint] + far, grid=grid)
    rep.table("diameter", ["samples", "diameter"], [[len(far) + 1, diam]])
    rep.constant("diameter", diam, "max pairwise grid distance over w0 and the farthest samples")
    rep.verdict("diameter_below_4", diam <= 4.0 + 2 * slack, "diameter", "all",
                f"diameter {diam:.6g} <= 4 + 20 * clearance")
    return rep


# -- function classes -------------------------------------------------------------------

def run_classes(cfg, zeros=None):
    rep = Report("classes", cfg.echo())
    q = cfg.quadrature
    K = cfg.lacunary_k
    lac = PowerSeries.lacunary(K)
    tail = l1_tail(lac, 2 ** K)
    rep.table("l1_tail", ["K", "tail"], [[2 ** K, tail]])
    rep.verdict("l1_tail", tail <= 2.0 ** -K, "l1_tail", "all", f"l1 tail {tail:.6g} <= 2^-{K}")

    big = PowerSeries.lacunary(cfg.h1_terms).derivative()
    j0, j1 = cfg.h1_j
    rows = []
    for j in range(j0, j1 + 1):
        est = h1_norm(big, 1.0 - 2.0 ** -j, cfg.h1_m)
        rows.append([j, 1.0 - 2.0 ** -j, est.value, est.eval_err])
    rep.table("h1_growth", ["j", "r", "h1_norm", "eval_err"], rows)
    v = np.array([r[2] for r in rows])
    rep.verdict("h1_increasing", bool(np.all(np.diff(v) > 0)), "h1_growth", "all",
                "h1_norm(g', 1-2^-j) strictly increasing")
    ratio = float(v[-1] / v[0])
    rep.constant("h1_ratio", ratio, f"h1_norm at j={j1} over j={j0}, m={cfg.h1_m}")
    rep.verdict("h1_doubling", ratio >= 2.0, "h1_growth", [0, len(rows) - 1], f"final/initial = {ratio:.6g} >= 2")

    thetas = TWO_PI * np.arange(cfg.ui_thetas) / cfg.ui_thetas
    rows = [[e, op.ui_radius(lac, e, thetas, q)] for e in sorted(cfg.ui_eps, reverse=True)]
    rep.table("ui_radius", ["eps", "r"], rows)
    radii = [r[1] for r in rows]
    rep.verdict("ui_finite", all(r < 1.0 for r in radii), "ui_radius", "all", "a radius found for every eps")
    rep.verdict("ui_monotone", all(a <= b for a, b in zip(radii, radii[1:])), "ui_radius", "all",
                "radius nonincreasing as eps grows")

    rng = np.random.default_rng(cfg.seed)
    rows = []
    for i in range(10):
        g = _poly(rng, int(rng.integers(1, 9)))
        hm = hardy_margin(g, 1.0 - 1e-6, 4096)
        fr = min(fejer_riesz_margin(g, t, 1.0 - 1e-6, 4096, q) for t in TWO_PI * np.arange(32) / 32)
        rows.append([i, g.degree, hm, fr])
    rep.table("inequalities", ["i", "degree", "hardy_margin", "fejer_riesz_margin"], rows)
    worst = min(min(r[2], r[3]) for r in rows)
    rep.verdict("inequalities", worst >= -1e-6, "inequalities", "all", f"min margin {worst:.3g} >= -1e-6")

    zf = bl.ZeroSequence.frostman4(12)
    family = {
        "polynomial": PowerSeries([0.0, 0.5, 0.25, 0.125]),
        "lacunary": lac,
        "frostman": bl.BlaschkeProduct(zf),
    }
    pt = TWO_PI * np.arange(cfg.probe_thetas) / cfg.probe_thetas
    rows = []
    for name, g in family.items():
        th = np.unique(np.concatenate([pt, zf.angles])) if name == "frostman" else pt
        seq = op.compactness_probe(g, "monomials", cfg.probe_n, q, thetas=th)
        rows.extend([name, int(n), float(v), bool(c)] for n, v, c in zip(seq.n, seq.values, seq.converged))
    rep.table("compactness_probe", ["g", "n", "sup_T_g_zn", "converged"], rows)
    return rep


EXPERIMENTS = {
    "identities": run_identities,
    "breal": run_breal,
    "frostman": run_frostman,
    "stolz": run_stolz,
    "spiral": run_spiral,
    "comb": run_comb,
    "classes": run_classes,
}


def run_experiment(name, cfg, zeros=None):
    if name not in EXPERIMENTS:
        raise KeyError(name)
    return EXPERIMENTS[name](cfg, zeros)
