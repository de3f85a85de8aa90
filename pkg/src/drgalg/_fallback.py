"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def jacobi_eigh(a_in, tol=1e-15, max_sweeps=60):
    a = np.array(a_in, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    total = float(np.sum(a * a))
    if total == 0.0:
        return np.zeros(n), v, 0
    sweep = 0
    while sweep < max_sweeps:
        off_diag = a - np.diag(np.diagonal(a))
        total_off = float(np.sum(off_diag * off_diag))
        if total_off <= tol * tol * total:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta > 1e150 or theta < -1e150:
                    t = 0.5 / theta  # theta^2 would overflow
                elif theta >= 0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diagonal(a).copy(), v, sweep


def rref_mod_p(m_in, p):
    m = np.mod(np.array(m_in, dtype=np.int64), p)
    nrows, ncols = m.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(m[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            m[[row, piv], col:] = m[[piv, row], col:]
        inv = pow(int(m[row, col]), -1, p)
        m[row, col:] = (m[row, col:] * inv) % p
        f = m[:, col].copy()
        f[row] = 0
        hit = np.nonzero(f)[0]
        if hit.size:
            m[np.ix_(hit, np.arange(col, ncols))] = (
                m[np.ix_(hit, np.arange(col, ncols))] - np.outer(f[hit], m[row, col:]) % p
            ) % p
        pivots.append(col)
        row += 1
    return m, pivots
