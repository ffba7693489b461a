"""Hot numeric kernels.

Each kernel has a numba implementation and a numpy (or scipy) twin with the
same signature. The public names dispatch on :func:`disklab._accel.use_numba`.
Zeros are passed as ``(depths, angles)`` with ``depth = 1 - |a|`` kept exact,
so factors stay accurate when ``|a|`` rounds to 1 in double precision.
"""
import math

import numpy as np

from ._accel import njit, use_numba

_CHUNK = 4096


# -- Blaschke product and derivative -------------------------------------------------

@njit
def _blaschke_nb(z, depths, angles):
    m = z.shape[0]
    n = depths.shape[0]
    val = np.empty(m, dtype=np.complex128)
    der = np.empty(m, dtype=np.complex128)
    rot = np.empty(n, dtype=np.complex128)
    for k in range(n):
        rot[k] = complex(math.cos(angles[k]), -math.sin(angles[k]))
    fac = np.empty(n, dtype=np.complex128)
    dfac = np.empty(n, dtype=np.complex128)
    pre = np.empty(n + 1, dtype=np.complex128)
    for i in range(m):
        zi = z[i]
        for k in range(n):
            d = depths[k]
            u = zi * rot[k]
            w = 1.0 - u
            den = w + d * u
            fac[k] = (w - d) / den
            dfac[k] = -rot[k] * d * (2.0 - d) / (den * den)
        pre[0] = 1.0
        for k in range(n):
            pre[k + 1] = pre[k] * fac[k]
        suf = 1.0 + 0.0j
        acc = 0.0j
        for k in range(n - 1, -1, -1):
            acc += dfac[k] * pre[k] * suf
            suf *= fac[k]
        val[i] = pre[n]
        der[i] = acc
    return val, der


def _blaschke_np(z, depths, angles):
    m = z.shape[0]
    n = depths.shape[0]
    val = np.empty(m, dtype=np.complex128)
    der = np.empty(m, dtype=np.complex128)
    if n == 0:
        val[:] = 1.0
        der[:] = 0.0
        return val, der
    rot = np.exp(-1j * angles)
    for s in range(0, m, _CHUNK):
        zz = z[s:s + _CHUNK, None]
        u = zz * rot[None, :]
        w = 1.0 - u
        den = w + depths[None, :] * u
        fac = (w - depths[None, :]) / den
        dfac = -rot[None, :] * depths * (2.0 - depths) / (den * den)
        ones = np.ones((fac.shape[0], 1), dtype=np.complex128)
        pre = np.cumprod(np.concatenate([ones, fac[:, :-1]], axis=1), axis=1)
        suf = np.cumprod(np.concatenate([ones, fac[:, :0:-1]], axis=1), axis=1)[:, ::-1]
        val[s:s + _CHUNK] = pre[:, -1] * fac[:, -1]
        der[s:s + _CHUNK] = np.sum(dfac * pre * suf, axis=1)
    return val, der


def blaschke_values(z, depths, angles):
    """Finite Blaschke product and its derivative at the points ``z``.

    Returns arrays shaped like ``z``.
    """
    zz = np.ascontiguousarray(np.asarray(z, dtype=np.complex128).ravel())
    d = np.ascontiguousarray(depths, dtype=np.float64)
    a = np.ascontiguousarray(angles, dtype=np.float64)
    if use_numba():
        val, der = _blaschke_nb(zz, d, a)
    else:
        val, der = _blaschke_np(zz, d, a)
    shape = np.shape(z)
    return val.reshape(shape), der.reshape(shape)


@njit
def _blaschke_polar_nb(s, theta, depths, angles):
    m = s.shape[0]
    n = depths.shape[0]
    val = np.empty(m, dtype=np.complex128)
    der = np.empty(m, dtype=np.complex128)
    fac = np.empty(n, dtype=np.complex128)
    dfac = np.empty(n, dtype=np.complex128)
    pre = np.empty(n + 1, dtype=np.complex128)
    for i in range(m):
        si = s[i]
        for k in range(n):
            d = depths[k]
            psi = theta[i] - angles[k]
            sh = math.sin(0.5 * psi)
            c = math.cos(psi)
            sn = math.sin(psi)
            e = complex(c, sn)
            u = (1.0 - si) * e
            w = complex(2.0 * sh * sh + si * c, -sn + si * sn)
            den = w + d * u
            fac[k] = (w - d) / den
            dfac[k] = -complex(math.cos(angles[k]), -math.sin(angles[k])) * d * (2.0 - d) / (den * den)
        pre[0] = 1.0
        for k in range(n):
            pre[k + 1] = pre[k] * fac[k]
        suf = 1.0 + 0.0j
        acc = 0.0j
        for k in range(n - 1, -1, -1):
            acc += dfac[k] * pre[k] * suf
            suf *= fac[k]
        val[i] = pre[n]
        der[i] = acc
    return val, der


def _blaschke_polar_np(s, theta, depths, angles):
    m = s.shape[0]
    n = depths.shape[0]
    val = np.empty(m, dtype=np.complex128)
    der = np.empty(m, dtype=np.complex128)
    if n == 0:
        val[:] = 1.0
        der[:] = 0.0
        return val, der
    rot = np.exp(-1j * angles)
    for a in range(0, m, _CHUNK):
        ss = s[a:a + _CHUNK, None]
        psi = theta[a:a + _CHUNK, None] - angles[None, :]
        e = np.exp(1j * psi)
        w = 2.0 * np.sin(0.5 * psi) ** 2 - 1j * np.sin(psi) + ss * e
        den = w + depths * (1.0 - ss) * e
        fac = (w - depths) / den
        dfac = -rot * depths * (2.0 - depths) / (den * den)
        ones = np.ones((fac.shape[0], 1), dtype=np.complex128)
        pre = np.cumprod(np.concatenate([ones, fac[:, :-1]], axis=1), axis=1)
        suf = np.cumprod(np.concatenate([ones, fac[:, :0:-1]], axis=1), axis=1)[:, ::-1]
        val[a:a + _CHUNK] = pre[:, -1] * fac[:, -1]
        der[a:a + _CHUNK] = np.sum(dfac * pre * suf, axis=1)
    return val, der


def blaschke_values_polar(s, theta, depths, angles):
    """As :func:`blaschke_values` at ``z = (1 - s) e^{i theta}`` with ``s`` kept exact."""
    s, theta = np.broadcast_arrays(np.asarray(s, dtype=np.float64), np.asarray(theta, dtype=np.float64))
    shape = s.shape
    ss = np.ascontiguousarray(s.ravel())
    tt = np.ascontiguousarray(theta.ravel())
    d = np.ascontiguousarray(depths, dtype=np.float64)
    a = np.ascontiguousarray(angles, dtype=np.float64)
    if use_numba():
        val, der = _blaschke_polar_nb(ss, tt, d, a)
    else:
        val, der = _blaschke_polar_np(ss, tt, d, a)
    return val.reshape(shape), der.reshape(shape)


# -- Frostman sums --------------------------------------------------------------------

@njit
def _frostman_nb(thetas, depths, angles):
    out = np.empty(thetas.shape[0])
    for i in range(thetas.shape[0]):
        s = 0.0
        for k in range(depths.shape[0]):
            psi = thetas[i] - angles[k]
            sh = math.sin(0.5 * psi)
            re = 2.0 * sh * sh - depths[k]
            im = math.sin(psi)
            s += depths[k] / math.sqrt(re * re + im * im)
        out[i] = s
    return out


def _frostman_np(thetas, depths, angles):
    out = np.zeros(thetas.shape[0])
    for s in range(0, thetas.shape[0], _CHUNK):
        psi = thetas[s:s + _CHUNK, None] - angles[None, :]
        re = 2.0 * np.sin(0.5 * psi) ** 2 - depths[None, :]
        im = np.sin(psi)
        out[s:s + _CHUNK] = np.sum(depths[None, :] / np.hypot(re, im), axis=1)
    return out


def frostman_sums(thetas, depths, angles):
    """``sum_k (1-|a_k|) / |a_k - e^{i theta}|`` for every theta."""
    t = np.ascontiguousarray(thetas, dtype=np.float64).ravel()
    d = np.ascontiguousarray(depths, dtype=np.float64)
    a = np.ascontiguousarray(angles, dtype=np.float64)
    if use_numba():
        return _frostman_nb(t, d, a)
    return _frostman_np(t, d, a)


# -- grid shortest paths --------------------------------------------------------------

_OFFSETS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


@njit
def _heap_less(kd, ki, a, b):
    return kd[a] < kd[b] or (kd[a] == kd[b] and ki[a] < ki[b])


@njit
def _heap_push(kd, ki, size, d, idx):
    if size == kd.shape[0]:
        kd2 = np.empty(2 * size)
        ki2 = np.empty(2 * size, dtype=np.int64)
        kd2[:size] = kd
        ki2[:size] = ki
        kd, ki = kd2, ki2
    c = size
    kd[c] = d
    ki[c] = idx
    while c > 0:
        par = (c - 1) // 2
        if not _heap_less(kd, ki, c, par):
            break
        kd[c], kd[par] = kd[par], kd[c]
        ki[c], ki[par] = ki[par], ki[c]
        c = par
    return kd, ki, size + 1


@njit
def _heap_pop(kd, ki, size):
    d = kd[0]
    idx = ki[0]
    size -= 1
    kd[0] = kd[size]
    ki[0] = ki[size]
    c = 0
    while True:
        m = 2 * c + 1
        if m >= size:
            break
        if m + 1 < size and _heap_less(kd, ki, m + 1, m):
            m += 1
        if not _heap_less(kd, ki, m, c):
            break
        kd[c], kd[m] = kd[m], kd[c]
        ki[c], ki[m] = ki[m], ki[c]
        c = m
    return d, idx, size


@njit
def _grid_dijkstra_nb(allowed, sheet, h, src_idx, src_dist):
    ny, nx = allowed.shape
    n = ny * nx
    dist = np.full(n, np.inf)
    done = np.zeros(n, dtype=np.bool_)
    kd = np.empty(n + src_idx.shape[0] + 16)
    ki = np.empty(kd.shape[0], dtype=np.int64)
    size = 0
    # binary min-heap on (distance, index) with lazy deletion
    for s in range(src_idx.shape[0]):
        p = src_idx[s]
        if src_dist[s] < dist[p]:
            dist[p] = src_dist[s]
            kd, ki, size = _heap_push(kd, ki, size, src_dist[s], p)
    diag = h * math.sqrt(2.0)
    while size > 0:
        d, p, size = _heap_pop(kd, ki, size)
        if done[p]:
            continue
        done[p] = True
        i = p // nx
        j = p - i * nx
        wp = sheet[i, j]
        for di in range(-1, 2):
            for dj in range(-1, 2):
                if di == 0 and dj == 0:
                    continue
                ii = i + di
                jj = j + dj
                if ii < 0 or jj < 0 or ii >= ny or jj >= nx:
                    continue
                if not allowed[ii, jj] or abs(sheet[ii, jj] - wp) >= math.pi:
                    continue
                q = ii * nx + jj
                if done[q]:
                    continue
                nd = d + (diag if di != 0 and dj != 0 else h)
                if nd < dist[q]:
                    dist[q] = nd
                    kd, ki, size = _heap_push(kd, ki, size, nd, q)
    return dist


def _grid_dijkstra_scipy(allowed, sheet, h, src_idx, src_dist):
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import dijkstra

    ny, nx = allowed.shape
    n = ny * nx
    idx = np.arange(n).reshape(ny, nx)
    rows, cols, wts = [], [], []
    for di, dj in _OFFSETS:
        if (di, dj) < (0, 0):
            continue
        a = (slice(max(0, -di), ny - max(0, di)), slice(max(0, -dj), nx - max(0, dj)))
        b = (slice(max(0, di), ny - max(0, -di)), slice(max(0, dj), nx - max(0, -dj)))
        ok = allowed[a] & allowed[b] & (np.abs(sheet[a] - sheet[b]) < math.pi)
        w = h * (math.sqrt(2.0) if di != 0 and dj != 0 else 1.0)
        rows.append(idx[a][ok])
        cols.append(idx[b][ok])
        wts.append(np.full(int(ok.sum()), w))
    # virtual source node n carries the snapping offsets
    rows.append(np.full(len(src_idx), n))
    cols.append(np.asarray(src_idx))
    wts.append(np.asarray(src_dist, dtype=float) + 1e-300)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    w = np.concatenate(wts)
    g = coo_matrix((w, (r, c)), shape=(n + 1, n + 1)).tocsr()
    dist = dijkstra(g, directed=False, indices=n)
    return dist[:n]


def grid_dijkstra(allowed, sheet, h, src_idx, src_dist):
    """Multi-source Dijkstra on an 8-connected grid.

    Nodes with ``allowed == False`` are removed. An edge is removed when the
    ``sheet`` coordinates of its ends differ by pi or more (it would cross a
    slit between two branches of the winding coordinate). Returns the flat
    distance array.
    """
    allowed = np.ascontiguousarray(allowed, dtype=np.bool_)
    sheet = np.ascontiguousarray(sheet, dtype=np.float64)
    src_idx = np.ascontiguousarray(src_idx, dtype=np.int64)
    src_dist = np.ascontiguousarray(src_dist, dtype=np.float64)
    if use_numba():
        return _grid_dijkstra_nb(allowed, sheet, float(h), src_idx, src_dist)
    return _grid_dijkstra_scipy(allowed, sheet, float(h), src_idx, src_dist)
