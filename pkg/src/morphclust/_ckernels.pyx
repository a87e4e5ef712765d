# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled grid kernels. Signatures and results match ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, floor, ceil, INFINITY

cnp.import_array()

ctypedef cnp.uint8_t u8
ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64


def dilate(const u8[:, :, ::1] occ, const i64[:, ::1] offsets):
    cdef Py_ssize_t nx = occ.shape[0], ny = occ.shape[1], nz = occ.shape[2]
    cdef Py_ssize_t no = offsets.shape[0]
    out_arr = np.zeros((nx, ny, nz), dtype=np.uint8)
    cdef u8[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, k, o, a, b, c
    for i in range(nx):
        for j in range(ny):
            for k in range(nz):
                if not occ[i, j, k]:
                    continue
                for o in range(no):
                    a = i + offsets[o, 0]
                    b = j + offsets[o, 1]
                    c = k + offsets[o, 2]
                    if 0 <= a < nx and 0 <= b < ny and 0 <= c < nz:
                        out[a, b, c] = 1
    return out_arr


cdef inline i64 _find(i64[::1] parent, i64 a) noexcept nogil:
    cdef i64 root = a, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


def label(const u8[:, :, ::1] occ, bint full):
    cdef Py_ssize_t nx = occ.shape[0], ny = occ.shape[1], nz = occ.shape[2]
    cdef Py_ssize_t n = nx * ny * nz
    cdef i64[:, ::1] offs
    if full:
        offs = np.array([(di, dj, dk)
                         for di in (-1, 0, 1) for dj in (-1, 0, 1) for dk in (-1, 0, 1)
                         if (di, dj, dk) < (0, 0, 0)], dtype=np.int64)
    else:
        offs = np.array([(-1, 0, 0), (0, -1, 0), (0, 0, -1)], dtype=np.int64)
    cdef Py_ssize_t no = offs.shape[0]
    parent_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] parent = parent_arr
    cdef Py_ssize_t i, j, k, o, a, b, c
    cdef i64 idx, nb, ra, rb
    for i in range(nx):
        for j in range(ny):
            for k in range(nz):
                if not occ[i, j, k]:
                    continue
                idx = (i * ny + j) * nz + k
                parent[idx] = idx
                for o in range(no):
                    a = i + offs[o, 0]
                    b = j + offs[o, 1]
                    c = k + offs[o, 2]
                    if 0 <= a < nx and 0 <= b < ny and 0 <= c < nz and occ[a, b, c]:
                        nb = (a * ny + b) * nz + c
                        ra = _find(parent, idx)
                        rb = _find(parent, nb)
                        if ra < rb:
                            parent[rb] = ra
                        elif rb < ra:
                            parent[ra] = rb
    out_arr = np.zeros(n, dtype=np.int32)
    ids_arr = np.zeros(n, dtype=np.int32)
    cdef i32[::1] out = out_arr
    cdef i32[::1] ids = ids_arr
    cdef i32 count = 0
    for idx in range(n):
        if parent[idx] < 0:
            continue
        ra = _find(parent, idx)
        if ids[ra] == 0:
            count += 1
            ids[ra] = count
        out[idx] = ids[ra]
    return out_arr.reshape((nx, ny, nz)), int(count)


cdef inline bint _key_less(double d1, i64 s1, double d2, i64 s2, const i32[::1] lab) noexcept nogil:
    if d1 < d2:
        return True
    if d1 > d2:
        return False
    if lab[s1] != lab[s2]:
        return lab[s1] < lab[s2]
    return s1 < s2


cdef void _edt_line(double[::1] g, i64[::1] s, Py_ssize_t n,
                    i64[::1] v, double[::1] z,
                    double[::1] dout, i64[::1] sout, const i32[::1] lab) noexcept nogil:
    cdef Py_ssize_t q, p, p2, k = -1, top
    cdef double sq = 0, best, alt
    cdef i64 bsite, s2
    for q in range(n):
        if g[q] == INFINITY:
            continue
        if k < 0:
            k = 0
            v[0] = q
            z[0] = -INFINITY
            z[1] = INFINITY
            continue
        while True:
            p = v[k]
            sq = ((g[q] + <double>(q * q)) - (g[p] + <double>(p * p))) / <double>(2 * q - 2 * p)
            if sq <= z[k]:
                k -= 1
                if k < 0:
                    break
            else:
                break
        k += 1
        v[k] = q
        z[k] = -INFINITY if k == 0 else sq
        z[k + 1] = INFINITY
    if k < 0:
        for q in range(n):
            dout[q] = g[q]
            sout[q] = s[q]
        return
    top = k
    k = 0
    for q in range(n):
        while z[k + 1] < q:
            k += 1
        p = v[k]
        best = <double>((q - p) * (q - p)) + g[p]
        bsite = s[p]
        if k < top:
            p2 = v[k + 1]
            alt = <double>((q - p2) * (q - p2)) + g[p2]
            s2 = s[p2]
            if _key_less(alt, s2, best, bsite, lab):
                best = alt
                bsite = s2
        dout[q] = best
        sout[q] = bsite


def edt(labels):
    lab_arr = np.ascontiguousarray(labels, dtype=np.int32)
    cdef const i32[::1] lab = lab_arr.ravel()
    dist_arr = np.where(lab_arr > 0, 0.0, np.inf)
    site_arr = np.where(lab_arr > 0, np.arange(lab_arr.size).reshape(lab_arr.shape), -1).astype(np.int64)
    cdef Py_ssize_t m = max(lab_arr.shape[0], lab_arr.shape[1], lab_arr.shape[2])
    cdef double[::1] g = np.empty(m)
    cdef i64[::1] s = np.empty(m, dtype=np.int64)
    cdef double[::1] dout = np.empty(m)
    cdef i64[::1] sout = np.empty(m, dtype=np.int64)
    cdef i64[::1] v = np.empty(m, dtype=np.int64)
    cdef double[::1] z = np.empty(m + 1)
    cdef double[:, :, :] d3
    cdef i64[:, :, :] s3
    cdef Py_ssize_t axis, a, b, q, n
    for axis in (2, 1, 0):
        d3 = np.moveaxis(dist_arr, axis, -1)
        s3 = np.moveaxis(site_arr, axis, -1)
        n = d3.shape[2]
        for a in range(d3.shape[0]):
            for b in range(d3.shape[1]):
                for q in range(n):
                    g[q] = d3[a, b, q]
                    s[q] = s3[a, b, q]
                _edt_line(g, s, n, v, z, dout, sout, lab)
                for q in range(n):
                    d3[a, b, q] = dout[q]
                    s3[a, b, q] = sout[q]
    return dist_arr, site_arr


def nearest_brute(const double[:, ::1] points, labels):
    lab_arr = np.ascontiguousarray(labels, dtype=np.int32)
    cdef const i32[::1] lab = lab_arr.ravel()
    cdef Py_ssize_t ny = lab_arr.shape[1], nz = lab_arr.shape[2]
    cdef i64[::1] sites = np.flatnonzero(lab_arr.ravel()).astype(np.int64)
    cdef Py_ssize_t m = sites.shape[0], n = points.shape[0], i, j
    cdef double[:, ::1] coords = np.empty((m, 3))
    for j in range(m):
        coords[j, 0] = sites[j] // (ny * nz)
        coords[j, 1] = (sites[j] // nz) % ny
        coords[j, 2] = sites[j] % nz
    out_lab_arr = np.zeros(n, dtype=np.int32)
    out_d2_arr = np.full(n, np.inf)
    out_site_arr = np.full(n, -1, dtype=np.int64)
    cdef i32[::1] out_lab = out_lab_arr
    cdef double[::1] out_d2 = out_d2_arr
    cdef i64[::1] out_site = out_site_arr
    cdef double dx, dy, dz, d2, best
    cdef i64 bsite
    with nogil:
        for i in range(n):
            best = INFINITY
            bsite = -1
            for j in range(m):
                dx = points[i, 0] - coords[j, 0]
                dy = points[i, 1] - coords[j, 1]
                dz = points[i, 2] - coords[j, 2]
                d2 = dx * dx + dy * dy + dz * dz
                if bsite < 0 or _key_less(d2, sites[j], best, bsite, lab):
                    best = d2
                    bsite = sites[j]
            if bsite >= 0:
                out_lab[i] = lab[bsite]
                out_d2[i] = best
                out_site[i] = bsite
    return out_lab_arr, out_d2_arr, out_site_arr


def nearest_window(const double[:, ::1] points, labels, const double[:, :, ::1] dist2):
    lab_arr = np.ascontiguousarray(labels, dtype=np.int32)
    cdef const i32[::1] lab = lab_arr.ravel()
    cdef Py_ssize_t nx = lab_arr.shape[0]
    cdef Py_ssize_t ny = lab_arr.shape[1], nz = lab_arr.shape[2]
    cdef Py_ssize_t n = points.shape[0], i, a, b, c
    cdef Py_ssize_t ci, cj, ck, lo0, lo1, lo2, hi0, hi1, hi2
    out_lab_arr = np.zeros(n, dtype=np.int32)
    out_d2_arr = np.full(n, np.inf)
    out_site_arr = np.full(n, -1, dtype=np.int64)
    cdef i32[::1] out_lab = out_lab_arr
    cdef double[::1] out_d2 = out_d2_arr
    cdef i64[::1] out_site = out_site_arr
    cdef double px, py, pz, d0, ox, oy, oz, r, dx, dy, dz, d2, best
    cdef i64 bsite, site
    with nogil:
        for i in range(n):
            px = points[i, 0]
            py = points[i, 1]
            pz = points[i, 2]
            ci = <Py_ssize_t>min(max(floor(px + 0.5), 0.0), <double>(nx - 1))
            cj = <Py_ssize_t>min(max(floor(py + 0.5), 0.0), <double>(ny - 1))
            ck = <Py_ssize_t>min(max(floor(pz + 0.5), 0.0), <double>(nz - 1))
            d0 = dist2[ci, cj, ck]
            if d0 == INFINITY:
                continue
            ox = px - ci
            oy = py - cj
            oz = pz - ck
            r = sqrt(d0) + sqrt(ox * ox + oy * oy + oz * oz)
            r += 1e-7 * (1.0 + r)
            lo0 = <Py_ssize_t>max(ceil(px - r), 0.0)
            lo1 = <Py_ssize_t>max(ceil(py - r), 0.0)
            lo2 = <Py_ssize_t>max(ceil(pz - r), 0.0)
            hi0 = <Py_ssize_t>min(floor(px + r), <double>(nx - 1))
            hi1 = <Py_ssize_t>min(floor(py + r), <double>(ny - 1))
            hi2 = <Py_ssize_t>min(floor(pz + r), <double>(nz - 1))
            best = INFINITY
            bsite = -1
            for a in range(lo0, hi0 + 1):
                for b in range(lo1, hi1 + 1):
                    for c in range(lo2, hi2 + 1):
                        site = (a * ny + b) * nz + c
                        if lab[site] == 0:
                            continue
                        dx = px - a
                        dy = py - b
                        dz = pz - c
                        d2 = dx * dx + dy * dy + dz * dz
                        if bsite < 0 or _key_less(d2, site, best, bsite, lab):
                            best = d2
                            bsite = site
            if bsite >= 0:
                out_lab[i] = lab[bsite]
                out_d2[i] = best
                out_site[i] = bsite
    return out_lab_arr, out_d2_arr, out_site_arr
