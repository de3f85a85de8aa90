# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: cyclic Jacobi sweeps and elimination modulo a prime."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()


def jacobi_eigh(a_in, double tol=1e-15, int max_sweeps=60):
    """Cyclic Jacobi on a symmetric float64 matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)``; eigenvectors are columns.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] arr = np.array(a_in, dtype=np.float64, order="C")
    cdef Py_ssize_t n = arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] varr = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] a = arr
    cdef double[:, ::1] v = varr
    cdef Py_ssize_t p, q, k
    cdef double apq, theta, t, c, s, akp, akq, off, total
    cdef int sweep = 0

    total = 0.0
    for p in range(n):
        for q in range(n):
            total += a[p, q] * a[p, q]
    if total == 0.0:
        return np.zeros(n), varr, 0

    while sweep < max_sweeps:
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += a[p, q] * a[p, q]
        if off <= tol * tol * total:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if fabs(apq) == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta > 1e150 or theta < -1e150:
                    t = 0.5 / theta  # theta^2 would overflow
                elif theta >= 0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = c * akp - s * akq
                    a[q, k] = s * akp + c * akq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    akp = v[k, p]
                    akq = v[k, q]
                    v[k, p] = c * akp - s * akq
                    v[k, q] = s * akp + c * akq
    return np.diagonal(arr).copy(), varr, sweep


cdef inline long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(m_in, long long p):
    """Reduced row echelon form modulo a prime ``p < 2**31``.

    Returns ``(rref, pivot_columns)``.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.mod(np.array(m_in, dtype=np.int64), p).astype(np.int64, order="C")
    cdef long long[:, ::1] m = arr
    cdef Py_ssize_t nrows = arr.shape[0], ncols = arr.shape[1]
    cdef Py_ssize_t row = 0, col, r, k, piv
    cdef long long inv, f, val
    pivots = []
    for col in range(ncols):
        if row >= nrows:
            break
        piv = -1
        for r in range(row, nrows):
            if m[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            for k in range(col, ncols):
                val = m[row, k]
                m[row, k] = m[piv, k]
                m[piv, k] = val
        inv = _inv_mod(m[row, col], p)
        if inv != 1:
            for k in range(col, ncols):
                m[row, k] = (m[row, k] * inv) % p
        for r in range(nrows):
            if r == row:
                continue
            f = m[r, col]
            if f == 0:
                continue
            for k in range(col, ncols):
                if m[row, k] != 0:
                    val = m[r, k] - (f * m[row, k]) % p
                    if val < 0:
                        val += p
                    m[r, k] = val
        pivots.append(col)
        row += 1
    return arr, pivots
