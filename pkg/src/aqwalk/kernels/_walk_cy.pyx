# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled walk kernel; same contract as ``_walk_py.evolve_window``.

Complex arrays are viewed as interleaved (re, im) float64 pairs so the loop
is plain double arithmetic, matching the numpy fallback operation for
operation (up to summation order in the recorded moments).
"""

from libc.math cimport sqrt

import numpy as np


def evolve_window(object up, object down, Py_ssize_t origin, Py_ssize_t t0,
                  double[::1] c00, double[::1] c01, double[::1] c10, double[::1] c11,
                  double[::1] sigma_out, double[::1] norm_out):
    cdef Py_ssize_t n = up.shape[0]
    cdef Py_ssize_t steps = c00.shape[0]
    if steps == 0:
        return
    if up.dtype != np.complex128 or down.dtype != np.complex128:
        raise TypeError("up/down must be complex128 arrays")
    if t0 + steps > min(origin, n - 1 - origin):
        raise ValueError("kernel capacity exceeded; enlarge the lattice")

    cdef double[::1] au = up.view(np.float64)
    cdef double[::1] ad = down.view(np.float64)
    bu_arr = np.zeros(2 * n, dtype=np.float64)
    bd_arr = np.zeros(2 * n, dtype=np.float64)
    cdef double[::1] bu = bu_arr
    cdef double[::1] bd = bd_arr

    cdef double* cu = &au[0]
    cdef double* cd = &ad[0]
    cdef double* nu = &bu[0]
    cdef double* nd = &bd[0]
    cdef double* tp

    cdef Py_ssize_t i, t, lo, hi, k
    cdef double a, b, c, d, ur, ui, dr, di
    cdef double p, m0, m1, m2, kr, var

    with nogil:
        for i in range(steps):
            t = t0 + i
            lo = origin - t
            hi = origin + t
            a = c00[i]
            b = c01[i]
            c = c10[i]
            d = c11[i]
            for k in range(lo, hi + 1):
                ur = cu[2 * k]
                ui = cu[2 * k + 1]
                dr = cd[2 * k]
                di = cd[2 * k + 1]
                nu[2 * (k + 1)] = a * ur + b * dr
                nu[2 * (k + 1) + 1] = a * ui + b * di
                nd[2 * (k - 1)] = c * ur + d * dr
                nd[2 * (k - 1) + 1] = c * ui + d * di
            nu[2 * (lo - 1)] = 0.0
            nu[2 * (lo - 1) + 1] = 0.0
            nu[2 * lo] = 0.0
            nu[2 * lo + 1] = 0.0
            nd[2 * hi] = 0.0
            nd[2 * hi + 1] = 0.0
            nd[2 * (hi + 1)] = 0.0
            nd[2 * (hi + 1) + 1] = 0.0
            tp = cu; cu = nu; nu = tp
            tp = cd; cd = nd; nd = tp

            lo -= 1
            hi += 1
            m0 = 0.0
            m1 = 0.0
            m2 = 0.0
            for k in range(lo, hi + 1):
                p = (cu[2 * k] * cu[2 * k] + cu[2 * k + 1] * cu[2 * k + 1]
                     + cd[2 * k] * cd[2 * k] + cd[2 * k + 1] * cd[2 * k + 1])
                kr = <double> (k - origin)
                m0 += p
                m1 += p * kr
                m2 += p * kr * kr
            norm_out[i] = m0
            var = m2 - m1 * m1
            sigma_out[i] = sqrt(var) if var > 0.0 else 0.0

        if steps & 1:
            # state ended in the scratch buffers; copy the final window back
            lo = origin - (t0 + steps)
            hi = origin + (t0 + steps)
            for k in range(2 * lo, 2 * hi + 2):
                au[k] = cu[k]
                ad[k] = cd[k]
