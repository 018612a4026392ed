# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_fallback.py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t
from libc.math cimport fabs

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t ROW_SALT = 0xD1B54A32D192ED03ULL
cdef uint64_t COL_SALT = 0x8CB92BA72F3D8DD7ULL
cdef double INV53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def mix64(z):
    arr = np.asarray(z, dtype=np.uint64)
    flat = np.ascontiguousarray(arr).ravel()
    cdef const uint64_t[::1] v = flat
    cdef Py_ssize_t i
    out = np.empty(flat.shape[0], dtype=np.uint64)
    cdef uint64_t[::1] o = out
    for i in range(v.shape[0]):
        o[i] = _mix64(v[i])
    return out.reshape(arr.shape)


def counter_uniforms(seed, Py_ssize_t p, Py_ssize_t n, Py_ssize_t slots,
                     Py_ssize_t row0=0, Py_ssize_t col0=0):
    cdef uint64_t s0 = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    out = np.empty((p, n, slots), dtype=np.float64)
    cdef double[:, :, ::1] o = out
    cdef Py_ssize_t j, k, s
    cdef uint64_t kr, kc
    with nogil:
        for j in range(p):
            kr = _mix64(s0 ^ ((<uint64_t>(row0 + j) + 1) * ROW_SALT))
            for k in range(n):
                kc = _mix64(kr ^ ((<uint64_t>(col0 + k) + 1) * COL_SALT))
                for s in range(slots):
                    o[j, k, s] = (<double>(_mix64(kc + (<uint64_t>s + 1) * GOLDEN) >> 11) + 0.5) * INV53
    return out


def ks_two_sample(a, b):
    cdef const double[::1] x = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[::1] y = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t na = x.shape[0], nb = y.shape[0]
    cdef Py_ssize_t i = 0, k = 0
    cdef double t, d, best = 0.0
    with nogil:
        while i < na or k < nb:
            if k >= nb or (i < na and x[i] <= y[k]):
                t = x[i]
            else:
                t = y[k]
            while i < na and x[i] <= t:
                i += 1
            while k < nb and y[k] <= t:
                k += 1
            d = fabs(<double>i / na - <double>k / nb)
            if d > best:
                best = d
    return best


def stieltjes_sums(eigs, zs):
    cdef const double[::1] lam = np.ascontiguousarray(eigs, dtype=np.float64)
    zarr = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    flat = np.ascontiguousarray(zarr).ravel()
    cdef const double complex[::1] z = flat
    out = np.empty(flat.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i, m, N = lam.shape[0]
    cdef double ur, vi, dr, den, sr, si
    with nogil:
        for m in range(z.shape[0]):
            ur = z[m].real
            vi = z[m].imag
            sr = 0.0
            si = 0.0
            for i in range(N):
                # 1/(lam - u - iv) = (lam - u + iv) / ((lam - u)^2 + v^2)
                dr = lam[i] - ur
                den = dr * dr + vi * vi
                sr += dr / den
                si += vi / den
            o[m] = (sr / N) + 1j * (si / N)
    return out.reshape(zarr.shape)


def max_pair_gap(eigs):
    cdef const double[::1] lam = np.ascontiguousarray(eigs, dtype=np.float64)
    cdef Py_ssize_t i, m = lam.shape[0] // 2 * 2
    cdef double g, best = 0.0
    for i in range(0, m, 2):
        g = fabs(lam[i + 1] - lam[i])
        if g > best:
            best = g
    return best
