# cython: language_level=3
"""Compiled depth kernels: angular sort around each query plus two-pointer sweeps.

Directions are first radix-sorted on an integer pseudo-angle key and then repaired with an exact
comparator (half-plane, cross-product sign, index), so the sweeps see the
same order the integer predicates imply. Per query the cost is
O(m log m) instead of the O(m^2) of the numpy fallback.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, ldexp
from libc.stdint cimport uint32_t
from libc.string cimport memcpy, memset

cnp.import_array()

NAME = "cython"


cdef inline double _cross(double ax, double ay, double bx, double by) noexcept nogil:
    return ax * by - ay * bx


cdef inline int _half(double vx, double vy) noexcept nogil:
    if vy > 0.0 or (vy == 0.0 and vx > 0.0):
        return 0
    return 1


cdef inline bint _before(double* vx, double* vy, int* hf, int a, int b) noexcept nogil:
    # exact angular order; equal directions ordered by index
    if hf[a] != hf[b]:
        return hf[a] < hf[b]
    cdef double c = _cross(vx[a], vy[a], vx[b], vy[b])
    if c > 0.0:
        return True
    if c < 0.0:
        return False
    return a < b


cdef inline double _pseudo_angle(double vx, double vy) noexcept nogil:
    # monotone in the polar angle on [0, 2 pi), valued in [0, 4)
    cdef double r = vy / (fabs(vx) + fabs(vy))
    if vx < 0.0:
        return 2.0 - r
    if r >= 0.0:
        return r
    return 4.0 + r


cdef void _radix_sort(uint32_t* keys, uint32_t* scratch, int m) noexcept nogil:
    cdef size_t count[256]
    cdef int shift, j, d
    cdef size_t total, c
    cdef uint32_t* src = keys
    cdef uint32_t* dst = scratch
    cdef uint32_t* swap
    for shift in range(0, 32, 8):
        memset(count, 0, sizeof(count))
        for j in range(m):
            count[(src[j] >> shift) & 0xFF] += 1
        if count[(src[0] >> shift) & 0xFF] == <size_t>m:
            continue
        total = 0
        for d in range(256):
            c = count[d]
            count[d] = total
            total += c
        for j in range(m):
            d = (src[j] >> shift) & 0xFF
            dst[count[d]] = src[j]
            count[d] += 1
        swap = src
        src = dst
        dst = swap
    if src != keys:
        memcpy(keys, src, m * sizeof(uint32_t))


cdef int _sorted_directions(double qx, double qy, const double[:, ::1] pts,
                            double* vx, double* vy, int* hf, int* order,
                            uint32_t* keys, uint32_t* scratch) noexcept nogil:
    """Fill vx/vy/hf for the non-coincident points, sort them, return their count."""
    cdef Py_ssize_t m_all = pts.shape[0]
    cdef Py_ssize_t i
    cdef int m = 0, j, t, tmp
    cdef int idx_bits = 1
    cdef double dx, dy, scale
    cdef uint32_t top, ang, mask
    while (1 << idx_bits) < m_all:
        idx_bits += 1
    # coarse angle bits are fine: ties and near-ties are settled by the repair pass
    top = (<uint32_t>1) << (32 - idx_bits)
    scale = ldexp(1.0, 30 - idx_bits)
    mask = ((<uint32_t>1) << idx_bits) - 1
    for i in range(m_all):
        dx = pts[i, 0] - qx
        dy = pts[i, 1] - qy
        if dx == 0.0 and dy == 0.0:
            continue
        vx[m] = dx
        vy[m] = dy
        hf[m] = _half(dx, dy)
        ang = <uint32_t>(<int>(_pseudo_angle(dx, dy) * scale))
        if ang >= top:
            ang = top - 1
        keys[m] = (ang << idx_bits) | <uint32_t>m
        m += 1
    if m == 0:
        return 0
    _radix_sort(keys, scratch, m)
    for j in range(m):
        order[j] = <int>(keys[j] & mask)
    # insertion repair: keys only misorder directions sharing an angle bucket
    for j in range(1, m):
        t = j
        while t > 0 and _before(vx, vy, hf, order[t], order[t - 1]):
            tmp = order[t]
            order[t] = order[t - 1]
            order[t - 1] = tmp
            t -= 1
    return m


cdef inline bint _strict_ahead(double* vx, double* vy, int a, int b, bint wrapped) noexcept nogil:
    # b lies at angular offset in [0, pi) from a, equal directions only if not wrapped
    cdef double c = _cross(vx[a], vy[a], vx[b], vy[b])
    if c > 0.0:
        return True
    if c < 0.0:
        return False
    return (not wrapped) and (vx[a] * vx[b] + vy[a] * vy[b] > 0.0)


cdef inline bint _closed_ahead(double* vx, double* vy, int a, int b, bint wrapped) noexcept nogil:
    # b lies at angular offset in [0, pi] from a
    cdef double c = _cross(vx[a], vy[a], vx[b], vy[b])
    cdef double d
    if c > 0.0:
        return True
    if c < 0.0:
        return False
    d = vx[a] * vx[b] + vy[a] * vy[b]
    if d < 0.0:
        return True
    return (not wrapped) and d > 0.0


def halfspace_counts(const double[:, ::1] query, const double[:, ::1] points):
    cdef Py_ssize_t nq = query.shape[0]
    cdef Py_ssize_t m_all = points.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(nq, dtype=np.int64)
    cdef double[::1] vx = np.empty(max(m_all, 1))
    cdef double[::1] vy = np.empty(max(m_all, 1))
    cdef int[::1] hf = np.empty(max(m_all, 1), dtype=np.intc)
    cdef int[::1] order = np.empty(max(m_all, 1), dtype=np.intc)
    cdef uint32_t[::1] keys = np.empty(max(m_all, 1), dtype=np.uint32)
    cdef uint32_t[::1] scratch = np.empty(max(m_all, 1), dtype=np.uint32)
    cdef Py_ssize_t k
    cdef int m, p, end, nxt, a, b, ahead, best, here
    with nogil:
        for k in range(nq):
            m = _sorted_directions(query[k, 0], query[k, 1], points,
                                   &vx[0], &vy[0], &hf[0], &order[0],
                                   &keys[0], &scratch[0])
            if m == 0:
                out[k] = m_all
                continue
            best = m
            end = 0
            for p in range(m):
                if end < p:
                    end = p
                a = order[p]
                while end + 1 < p + m:
                    nxt = end + 1
                    b = order[nxt - m if nxt >= m else nxt]
                    if not _closed_ahead(&vx[0], &vy[0], a, b, nxt >= m):
                        break
                    end = nxt
                # only the last member of a same-direction group gives the arc count
                if p + 1 < m:
                    b = order[p + 1]
                    if hf[a] == hf[b] and _cross(vx[a], vy[a], vx[b], vy[b]) == 0.0:
                        continue
                ahead = end - p
                here = ahead if ahead < m - ahead else m - ahead
                if here < best:
                    best = here
            out[k] = (m_all - m) + best
    return out


def simplicial_counts(const double[:, ::1] query, const double[:, ::1] points):
    cdef Py_ssize_t nq = query.shape[0]
    cdef Py_ssize_t m_all = points.shape[0]
    cdef long long total = (<long long>m_all) * (m_all - 1) * (m_all - 2) // 6
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(nq, dtype=np.int64)
    cdef double[::1] vx = np.empty(max(m_all, 1))
    cdef double[::1] vy = np.empty(max(m_all, 1))
    cdef int[::1] hf = np.empty(max(m_all, 1), dtype=np.intc)
    cdef int[::1] order = np.empty(max(m_all, 1), dtype=np.intc)
    cdef uint32_t[::1] keys = np.empty(max(m_all, 1), dtype=np.uint32)
    cdef uint32_t[::1] scratch = np.empty(max(m_all, 1), dtype=np.uint32)
    cdef Py_ssize_t k
    cdef int m, p, end, nxt, a, b
    cdef long long kp, outside
    with nogil:
        for k in range(nq):
            m = _sorted_directions(query[k, 0], query[k, 1], points,
                                   &vx[0], &vy[0], &hf[0], &order[0],
                                   &keys[0], &scratch[0])
            outside = 0
            end = 0
            for p in range(m):
                if end < p:
                    end = p
                a = order[p]
                while end + 1 < p + m:
                    nxt = end + 1
                    b = order[nxt - m if nxt >= m else nxt]
                    if not _strict_ahead(&vx[0], &vy[0], a, b, nxt >= m):
                        break
                    end = nxt
                kp = end - p
                outside += kp * (kp - 1) // 2
            out[k] = total - outside
    return out


def oja_area_sums(const double[:, ::1] query, const double[:, ::1] points):
    cdef Py_ssize_t nq = query.shape[0]
    cdef Py_ssize_t m_all = points.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(nq, dtype=np.float64)
    cdef double[::1] vx = np.empty(max(m_all, 1))
    cdef double[::1] vy = np.empty(max(m_all, 1))
    cdef int[::1] hf = np.empty(max(m_all, 1), dtype=np.intc)
    cdef int[::1] order = np.empty(max(m_all, 1), dtype=np.intc)
    cdef double[::1] sx = np.empty(2 * max(m_all, 1) + 1)
    cdef double[::1] sy = np.empty(2 * max(m_all, 1) + 1)
    cdef uint32_t[::1] keys = np.empty(max(m_all, 1), dtype=np.uint32)
    cdef uint32_t[::1] scratch = np.empty(max(m_all, 1), dtype=np.uint32)
    cdef Py_ssize_t k
    cdef int m, p, end, nxt, a, b, t
    cdef double acc, wx, wy
    with nogil:
        for k in range(nq):
            m = _sorted_directions(query[k, 0], query[k, 1], points,
                                   &vx[0], &vy[0], &hf[0], &order[0],
                                   &keys[0], &scratch[0])
            sx[0] = 0.0
            sy[0] = 0.0
            for t in range(2 * m):
                a = order[t - m if t >= m else t]
                sx[t + 1] = sx[t] + vx[a]
                sy[t + 1] = sy[t] + vy[a]
            acc = 0.0
            end = 0
            for p in range(m):
                if end < p:
                    end = p
                a = order[p]
                while end + 1 < p + m:
                    nxt = end + 1
                    b = order[nxt - m if nxt >= m else nxt]
                    if not _strict_ahead(&vx[0], &vy[0], a, b, nxt >= m):
                        break
                    end = nxt
                # every pair with positive cross appears once, from its trailing member
                wx = sx[end + 1] - sx[p + 1]
                wy = sy[end + 1] - sy[p + 1]
                acc += _cross(vx[a], vy[a], wx, wy)
            out[k] = acc
    return out
