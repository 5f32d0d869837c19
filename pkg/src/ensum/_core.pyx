# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the per-entry loops of the simulator.

Signatures and results match :mod:`ensum._core_py` exactly; inputs are
assumed validated by the caller.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor, ldexp

cnp.import_array()


def encode_values(const double[::1] values, int k):
    cdef Py_ssize_t i, n = values.shape[0]
    cdef double scale = ldexp(1.0, k)
    cdef cnp.uint64_t top = (<cnp.uint64_t>1 << k) - 1
    cdef cnp.uint64_t m
    out = np.empty(n, dtype=np.uint64)
    cdef cnp.uint64_t[::1] o = out
    with nogil:
        for i in range(n):
            # scaling by a power of two is exact
            m = <cnp.uint64_t>floor(values[i] * scale)
            o[i] = m if m < top else top
    return out


def xor_codes(const cnp.uint64_t[::1] codes, const cnp.uint64_t[::1] fcodes):
    cdef Py_ssize_t i, n = codes.shape[0]
    out = np.empty(n, dtype=np.uint64)
    cdef cnp.uint64_t[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = codes[i] ^ fcodes[i]
    return out


def spin_signals(const double[::1] weights, const cnp.uint64_t[::1] codes, int k):
    cdef Py_ssize_t i, n = weights.shape[0]
    cdef int j
    cdef cnp.uint64_t c
    cdef double w
    out = np.zeros(k, dtype=np.float64)
    cdef double[::1] g = out
    with nogil:
        for i in range(n):
            c = codes[i]
            w = weights[i]
            for j in range(k):
                g[j] += w * <double>((c >> j) & 1)
    return out
