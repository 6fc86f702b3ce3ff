# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Bartlett assembly kernel.

Given the Cholesky factor L of the scale matrix and pre-drawn randoms
(sqrt chi-square diagonals, standard-normal strict lower triangle), build
each sample L T T' L' in place.  Randoms are drawn by the caller so the
numpy fallback produces bit-identical output.
"""

import numpy as np


def batch_bartlett(double[:, ::1] L,
                   double[:, ::1] tdiag,
                   double[:, ::1] offd,
                   double[:, :, ::1] out):
    cdef Py_ssize_t n = tdiag.shape[0]
    cdef Py_ssize_t d = L.shape[0]
    cdef Py_ssize_t k, i, j, m, idx
    cdef double acc
    T_arr = np.zeros((d, d))
    A_arr = np.zeros((d, d))
    cdef double[:, ::1] T = T_arr
    cdef double[:, ::1] A = A_arr
    for k in range(n):
        idx = 0
        for i in range(d):
            T[i, i] = tdiag[k, i]
            for j in range(i):
                T[i, j] = offd[k, idx]
                idx += 1
        # A = L T; both lower triangular, so A is too.
        for i in range(d):
            for j in range(i + 1):
                acc = 0.0
                for m in range(j, i + 1):
                    acc += L[i, m] * T[m, j]
                A[i, j] = acc
        # out[k] = A A'
        for i in range(d):
            for j in range(i + 1):
                acc = 0.0
                for m in range(j + 1):
                    acc += A[i, m] * A[j, m]
                out[k, i, j] = acc
                out[k, j, i] = acc
