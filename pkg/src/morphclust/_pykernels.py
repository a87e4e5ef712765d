"""Pure Python / numpy implementations of the grid kernels.

Used when the compiled ``_ckernels`` extension is unavailable or when
``MORPHCLUST_PURE_PYTHON=1`` is set. Every function here has a twin with
the same signature in ``_ckernels.pyx`` and must return identical arrays.

Conventions shared by both backends:

* grids are C-contiguous 3D arrays; a 2D grid carries a trailing axis of
  length 1
* cell ``(i, j, k)`` sits at integer coordinates ``(i, j, k)`` (zero-based)
* a "site" is the flat C-order index of a labeled cell, ``-1`` for none
* ties are resolved by the key ``(squared distance, label, site)``
"""

import math

import numpy as np

INF = float("inf")


def _backward_offsets(full):
    if not full:
        return [(-1, 0, 0), (0, -1, 0), (0, 0, -1)]
    out = []
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            for dk in (-1, 0, 1):
                if (di, dj, dk) < (0, 0, 0):
                    out.append((di, dj, dk))
    return out


def dilate(occ, offsets):
    nx, ny, nz = occ.shape
    out = np.zeros_like(occ)
    for di, dj, dk in offsets:
        # out[z] |= occ[z - o], restricted to in-bounds source and target
        sx = slice(max(0, -di), nx - max(0, di))
        sy = slice(max(0, -dj), ny - max(0, dj))
        sz = slice(max(0, -dk), nz - max(0, dk))
        tx = slice(max(0, di), nx - max(0, -di))
        ty = slice(max(0, dj), ny - max(0, -dj))
        tz = slice(max(0, dk), nz - max(0, -dk))
        out[tx, ty, tz] |= occ[sx, sy, sz]
    return out


def label(occ, full):
    nx, ny, nz = occ.shape
    flat = occ.ravel()
    parent = {}

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    offsets = _backward_offsets(full)
    syz = ny * nz
    for idx in np.flatnonzero(flat).tolist():
        parent[idx] = idx
        i, rem = divmod(idx, syz)
        j, k = divmod(rem, nz)
        for di, dj, dk in offsets:
            a, b, c = i + di, j + dj, k + dk
            if 0 <= a < nx and 0 <= b < ny and 0 <= c < nz:
                nb = (a * ny + b) * nz + c
                if flat[nb]:
                    ra, rb = find(idx), find(nb)
                    if ra != rb:
                        if ra < rb:
                            parent[rb] = ra
                        else:
                            parent[ra] = rb

    out = np.zeros(flat.shape[0], dtype=np.int32)
    ids = {}
    for idx in sorted(parent):
        root = find(idx)
        if root not in ids:
            ids[root] = len(ids) + 1
        out[idx] = ids[root]
    return out.reshape(occ.shape), len(ids)


def _edt_line(g, s, labels_flat):
    """Lower envelope of parabolas along one line, with site tie-breaking."""
    n = len(g)
    v = [0] * n
    z = [0.0] * (n + 1)
    k = -1
    for q in range(n):
        if g[q] == INF:
            continue
        if k < 0:
            k = 0
            v[0] = q
            z[0] = -INF
            z[1] = INF
            continue
        while True:
            p = v[k]
            sq = ((g[q] + q * q) - (g[p] + p * p)) / (2 * q - 2 * p)
            if sq <= z[k]:
                k -= 1
                if k < 0:
                    break
            else:
                break
        k += 1
        v[k] = q
        z[k] = -INF if k == 0 else sq
        z[k + 1] = INF
    if k < 0:
        return list(g), list(s)
    top = k
    dist = [INF] * n
    site = [-1] * n
    k = 0
    for q in range(n):
        while z[k + 1] < q:
            k += 1
        p = v[k]
        best = (q - p) * (q - p) + g[p]
        bsite = s[p]
        if k < top:
            p2 = v[k + 1]
            alt = (q - p2) * (q - p2) + g[p2]
            s2 = s[p2]
            if alt < best or (
                alt == best and (labels_flat[s2], s2) < (labels_flat[bsite], bsite)
            ):
                best, bsite = alt, s2
        dist[q] = best
        site[q] = bsite
    return dist, site


def edt(labels):
    """Exact squared Euclidean distance to the nearest labeled cell.

    Returns ``(dist2, site)`` arrays shaped like ``labels``.
    """
    labels_flat = labels.ravel()
    dist = np.where(labels > 0, 0.0, INF)
    site = np.where(labels > 0, np.arange(labels.size).reshape(labels.shape), -1)
    for axis in (2, 1, 0):
        d_ax = np.moveaxis(dist, axis, -1)
        s_ax = np.moveaxis(site, axis, -1)
        for idx in np.ndindex(d_ax.shape[:-1]):
            g = d_ax[idx].tolist()
            s = s_ax[idx].tolist()
            dd, ss = _edt_line(g, s, labels_flat)
            d_ax[idx] = dd
            s_ax[idx] = ss
    return dist, site.astype(np.int64)


def _pick(d2, lab, site):
    """Index of the lexicographic minimum of (d2, lab, site) per row."""
    best = d2.min(axis=1, keepdims=True)
    lab_m = np.where(d2 == best, lab, np.iinfo(np.int64).max)
    best_lab = lab_m.min(axis=1, keepdims=True)
    site_m = np.where(lab_m == best_lab, site, np.iinfo(np.int64).max)
    return site_m.argmin(axis=1)


def _sq_dist(points, coords):
    dx = points[:, None, 0] - coords[None, :, 0]
    dy = points[:, None, 1] - coords[None, :, 1]
    dz = points[:, None, 2] - coords[None, :, 2]
    return dx * dx + dy * dy + dz * dz


def nearest_brute(points, labels, chunk=512):
    sites = np.flatnonzero(labels.ravel()).astype(np.int64)
    coords = np.stack(np.unravel_index(sites, labels.shape), axis=1).astype(np.float64)
    labs = labels.ravel()[sites].astype(np.int64)
    n = points.shape[0]
    out_lab = np.zeros(n, dtype=np.int32)
    out_d2 = np.full(n, INF)
    out_site = np.full(n, -1, dtype=np.int64)
    if sites.size == 0:
        return out_lab, out_d2, out_site
    for start in range(0, n, chunk):
        block = points[start:start + chunk]
        d2 = _sq_dist(block, coords)
        j = _pick(d2, labs[None, :], sites[None, :])
        rows = np.arange(block.shape[0])
        out_lab[start:start + chunk] = labs[j]
        out_d2[start:start + chunk] = d2[rows, j]
        out_site[start:start + chunk] = sites[j]
    return out_lab, out_d2, out_site


def nearest_window(points, labels, dist2):
    """Exact nearest labeled cell using the distance map as a search bound.

    The nearest site to the point's containing cell ``c`` lies at distance
    ``sqrt(dist2[c])`` from ``c``, so the true nearest site of the point is
    within ``sqrt(dist2[c]) + |p - c|`` of the point; only that box is scanned.
    """
    shape = labels.shape
    n = points.shape[0]
    out_lab = np.zeros(n, dtype=np.int32)
    out_d2 = np.full(n, INF)
    out_site = np.full(n, -1, dtype=np.int64)
    hi_idx = np.array(shape) - 1
    for i in range(n):
        p = points[i]
        c = np.clip(np.floor(p + 0.5), 0, hi_idx).astype(np.int64)
        d0 = dist2[c[0], c[1], c[2]]
        if d0 == INF:
            continue
        off = p - c
        r = math.sqrt(d0) + math.sqrt(off[0] * off[0] + off[1] * off[1] + off[2] * off[2])
        r += 1e-7 * (1.0 + r)
        lo = np.maximum(np.ceil(p - r), 0).astype(np.int64)
        hi = np.minimum(np.floor(p + r), hi_idx).astype(np.int64)
        win = labels[lo[0]:hi[0] + 1, lo[1]:hi[1] + 1, lo[2]:hi[2] + 1]
        loc = np.flatnonzero(win.ravel())
        ii, jj, kk = np.unravel_index(loc, win.shape)
        coords = np.stack([ii + lo[0], jj + lo[1], kk + lo[2]], axis=1)
        sites = np.ravel_multi_index(coords.T, shape).astype(np.int64)
        labs = labels.ravel()[sites].astype(np.int64)
        d2 = _sq_dist(p[None, :], coords.astype(np.float64))
        j = _pick(d2, labs[None, :], sites[None, :])[0]
        out_lab[i] = labs[j]
        out_d2[i] = d2[0, j]
        out_site[i] = sites[j]
    return out_lab, out_d2, out_site
