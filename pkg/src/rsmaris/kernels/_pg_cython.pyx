# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled projected-gradient kernels (BLAS zgemv inner loop, GIL released)."""

import numpy as np

cimport numpy as cnp
from scipy.linalg.cython_blas cimport zgemv

cnp.import_array()

cdef extern from "complex.h" nogil:
    double cabs(double complex)


cdef void _loop(double complex[::1, :] kf,
                double complex[::1, :] khf,
                double complex[::1] hbar,
                double complex[::1] theta,
                double complex[::1] y,
                double complex[::1] grad,
                double step,
                int n_updates,
                bint minimize) noexcept nogil:
    cdef int n_rows = kf.shape[0]
    cdef int L = kf.shape[1]
    cdef int inc = 1
    cdef double complex one = 1.0
    cdef double complex zero = 0.0
    cdef double complex v
    cdef double mag
    cdef int it, l
    cdef char trans = b'N'

    for it in range(n_updates):
        if minimize:
            # y = kbar @ theta + hbar
            for l in range(n_rows):
                y[l] = hbar[l]
            zgemv(&trans, &n_rows, &L, &one, &kf[0, 0], &n_rows,
                  &theta[0], &inc, &one, &y[0], &inc)
        else:
            zgemv(&trans, &n_rows, &L, &one, &kf[0, 0], &n_rows,
                  &theta[0], &inc, &zero, &y[0], &inc)
        # grad = kbar^H @ y
        zgemv(&trans, &L, &n_rows, &one, &khf[0, 0], &L,
              &y[0], &inc, &zero, &grad[0], &inc)
        for l in range(L):
            if minimize:
                v = theta[l] - step * grad[l]
            else:
                v = theta[l] + step * grad[l]
            mag = cabs(v)
            if mag > 0.0:
                theta[l] = v / mag
            # zero magnitude: keep the previous phase


def ascend(kbar, theta0, double step, int n_updates):
    """Run ``n_updates`` steps of theta <- proj(theta + step * K^H K theta)."""
    kf = np.asfortranarray(kbar, dtype=np.complex128)
    khf = np.asfortranarray(np.conj(kbar).T, dtype=np.complex128)
    theta = np.array(theta0, dtype=np.complex128, copy=True)
    n_rows = kf.shape[0]
    y = np.empty(n_rows, dtype=np.complex128)
    grad = np.empty(kf.shape[1], dtype=np.complex128)
    dummy = np.empty(1, dtype=np.complex128)
    if n_updates > 0:
        _loop(kf, khf, dummy, theta, y, grad, step, n_updates, False)
    return theta


def descend(kbar, hbar, theta0, double step, int n_updates):
    """Run ``n_updates`` steps of theta <- proj(theta - step * K^H (K theta + h))."""
    kf = np.asfortranarray(kbar, dtype=np.complex128)
    khf = np.asfortranarray(np.conj(kbar).T, dtype=np.complex128)
    hb = np.ascontiguousarray(hbar, dtype=np.complex128)
    theta = np.array(theta0, dtype=np.complex128, copy=True)
    n_rows = kf.shape[0]
    y = np.empty(n_rows, dtype=np.complex128)
    grad = np.empty(kf.shape[1], dtype=np.complex128)
    if n_updates > 0:
        _loop(kf, khf, hb, theta, y, grad, step, n_updates, True)
    return theta
