# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: exact phase reduction, cosine series, pairwise sup distances."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from libc.math cimport cos, sin, fabs, frexp, ldexp, M_PI
from libc.stdint cimport int64_t, uint64_t

from . import _exact

cdef uint64_t ALL_ONES = 0xFFFFFFFFFFFFFFFFULL


cdef inline double _cospi(double q) noexcept nogil:
    cdef double t = fabs(q)
    if t <= 0.25:
        return cos(M_PI * t)
    if t <= 0.75:
        return sin(M_PI * (0.5 - t))
    return -cos(M_PI * (1.0 - t))


cdef inline double _sinpi(double q) noexcept nogil:
    cdef double t = fabs(q)
    cdef double s
    if t <= 0.25:
        s = sin(M_PI * t)
    elif t <= 0.75:
        s = cos(M_PI * (0.5 - t))
    else:
        s = sin(M_PI * (1.0 - t))
    return -s if q < 0 else s


cdef inline int _decompose(double x, int64_t* num, int* shift) noexcept nogil:
    """Split x into num / 2**shift; return 0 when shift exceeds the 64-bit path."""
    cdef int e
    cdef double m
    cdef int64_t n
    cdef int k
    if x == 0.0:
        num[0] = 0
        shift[0] = 0
        return 1
    m = frexp(x, &e)
    n = <int64_t>ldexp(m, 53)
    k = 53 - e
    while (n & 1) == 0:
        n >>= 1
        k -= 1
    if k < 0:
        n <<= -k
        k = 0
    num[0] = n
    shift[0] = k
    return k <= 63


cdef inline void _fill_phases(int64_t num, int shift, uint64_t b, Py_ssize_t order,
                              double* out) noexcept nogil:
    cdef uint64_t mask, half, r
    cdef Py_ssize_t n
    if shift >= 63:
        mask = ALL_ONES
    else:
        mask = ((<uint64_t>1) << (shift + 1)) - 1
    half = (<uint64_t>1) << shift
    r = (<uint64_t>num) & mask
    for n in range(order):
        if r > half:
            out[n] = -ldexp(<double>(mask - r + 1), -shift)
        else:
            out[n] = ldexp(<double>r, -shift)
        r = (r * b) & mask


def phase_table(x, long b, Py_ssize_t order):
    cdef double[::1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t count = xs.shape[0]
    result = np.empty((count, order), dtype=np.float64)
    cdef double[:, ::1] out = result
    cdef Py_ssize_t i
    cdef int64_t num
    cdef int shift
    for i in range(count):
        if _decompose(xs[i], &num, &shift):
            if order > 0:
                _fill_phases(num, shift, <uint64_t>b, order, &out[i, 0])
        else:
            result[i] = _exact.phases(float(xs[i]), b, order)
    return result


def cos_series(x, double a, long b, Py_ssize_t order):
    cdef double[::1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef double[::1] weights = a ** np.arange(order, dtype=np.float64)
    cdef Py_ssize_t count = xs.shape[0]
    result = np.zeros(count, dtype=np.float64)
    cdef double[::1] out = result
    cdef double[::1] scratch = np.empty(max(order, 1), dtype=np.float64)
    cdef Py_ssize_t i, n
    cdef int64_t num
    cdef int shift
    cdef double acc
    for i in range(count):
        if _decompose(xs[i], &num, &shift):
            _fill_phases(num, shift, <uint64_t>b, order, &scratch[0])
        else:
            slow = _exact.phases(float(xs[i]), b, order)
            for n in range(order):
                scratch[n] = slow[n]
        acc = 0.0
        for n in range(order):
            acc += weights[n] * _cospi(scratch[n])
        out[i] = acc
    return result


def cospi(q):
    arr = np.ascontiguousarray(q, dtype=np.float64)
    cdef double[::1] flat = arr.ravel()
    result = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[::1] out = result
    cdef Py_ssize_t i
    for i in range(flat.shape[0]):
        out[i] = _cospi(flat[i])
    return result.reshape(arr.shape)


def sinpi(q):
    arr = np.ascontiguousarray(q, dtype=np.float64)
    cdef double[::1] flat = arr.ravel()
    result = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[::1] out = result
    cdef Py_ssize_t i
    for i in range(flat.shape[0]):
        out[i] = _sinpi(flat[i])
    return result.reshape(arr.shape)


cdef enum:
    ROW_BLOCK = 32
    COL_BLOCK = 512


cdef inline double _max_abs_diff(const double* u, const double* w, Py_ssize_t g) noexcept nogil:
    # four independent accumulators; the select form lets the compiler emit packed max
    cdef double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0, d
    cdef Py_ssize_t k = 0
    while k + 4 <= g:
        d = fabs(u[k] - w[k])
        m0 = d if d > m0 else m0
        d = fabs(u[k + 1] - w[k + 1])
        m1 = d if d > m1 else m1
        d = fabs(u[k + 2] - w[k + 2])
        m2 = d if d > m2 else m2
        d = fabs(u[k + 3] - w[k + 3])
        m3 = d if d > m3 else m3
        k += 4
    while k < g:
        d = fabs(u[k] - w[k])
        m0 = d if d > m0 else m0
        k += 1
    m0 = m1 if m1 > m0 else m0
    m2 = m3 if m3 > m2 else m2
    return m2 if m2 > m0 else m0


cdef void _chebyshev_rows(const double[:, ::1] v, double[:, ::1] out,
                          Py_ssize_t start, Py_ssize_t stop) noexcept nogil:
    """Fill out[i, j] (and out[j, i]) for start <= i < stop, j > i; tiles keep rows cache-resident."""
    cdef Py_ssize_t n = v.shape[0], g = v.shape[1]
    cdef Py_ssize_t i0, j0, k0, i, j, i1, j1, width
    cdef double d
    i0 = start
    while i0 < stop:
        i1 = min(i0 + ROW_BLOCK, stop)
        j0 = i0 + 1
        while j0 < n:
            j1 = min(j0 + ROW_BLOCK, n)
            k0 = 0
            while k0 < g:
                width = min(COL_BLOCK, g - k0)
                for i in range(i0, i1):
                    for j in range(max(j0, i + 1), j1):
                        d = _max_abs_diff(&v[i, k0], &v[j, k0], width)
                        if d > out[i, j]:
                            out[i, j] = d
                k0 += COL_BLOCK
            j0 += ROW_BLOCK
        i0 += ROW_BLOCK
    for i in range(start, stop):
        for j in range(i + 1, n):
            out[j, i] = out[i, j]


def _run_rows(v, out, Py_ssize_t start, Py_ssize_t stop):
    cdef const double[:, ::1] vv = v
    cdef double[:, ::1] oo = out
    with nogil:
        _chebyshev_rows(vv, oo, start, stop)


def pairwise_chebyshev(values, int workers=1):
    v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    out = np.zeros((n, n), dtype=np.float64)
    if n < 2 or v.shape[1] == 0:
        return out
    if workers <= 1:
        _run_rows(v, out, 0, n)
        return out
    # row i costs ~(n - i): many small stripes keep the threads balanced
    bounds = np.linspace(0, n, 8 * workers + 1).astype(np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(lambda s: _run_rows(v, out, bounds[s], bounds[s + 1]),
                      range(len(bounds) - 1)))
    return out
