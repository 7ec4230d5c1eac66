# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled statevector kernels: Pauli-sum application and expectation.

Same packed-mask convention as the pure-python fallback. Loops run without
the GIL so pool scans can thread across candidates.
"""

import numpy as np

cimport numpy as cnp

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def apply_pauli_sum(cnp.complex128_t[::1] amps,
                    cnp.uint64_t[::1] x_masks,
                    cnp.uint64_t[::1] z_masks,
                    cnp.complex128_t[::1] coeffs,
                    cnp.complex128_t[::1] out):
    """out <- sum_k coeff_k P_k |amps> (out is overwritten)."""
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t nt = x_masks.shape[0]
    cdef Py_ssize_t k, j
    cdef unsigned long long xm, zm, src
    cdef double complex c, acc
    with nogil:
        for j in range(n):
            out[j] = 0.0
        for k in range(nt):
            xm = x_masks[k]
            zm = z_masks[k]
            c = coeffs[k]
            for j in range(n):
                src = (<unsigned long long> j) ^ xm
                if __builtin_popcountll(src & zm) & 1:
                    out[j] = out[j] - c * amps[src]
                else:
                    out[j] = out[j] + c * amps[src]


def expectation_pauli_sum(cnp.complex128_t[::1] amps,
                          cnp.uint64_t[::1] x_masks,
                          cnp.uint64_t[::1] z_masks,
                          cnp.complex128_t[::1] coeffs):
    """<amps| sum_k coeff_k P_k |amps> as a complex number."""
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t nt = x_masks.shape[0]
    cdef Py_ssize_t k, j
    cdef unsigned long long xm, zm, src
    cdef double complex c, acc, total
    total = 0.0
    with nogil:
        for k in range(nt):
            xm = x_masks[k]
            zm = z_masks[k]
            c = coeffs[k]
            acc = 0.0
            for j in range(n):
                src = (<unsigned long long> j) ^ xm
                if __builtin_popcountll(src & zm) & 1:
                    acc = acc - amps[src] * amps[j].conjugate()
                else:
                    acc = acc + amps[src] * amps[j].conjugate()
            total = total + c * acc
    return complex(total)
