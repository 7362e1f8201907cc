"""Inner Jacobi iteration loops, JIT-compiled when numba is available.

The loops are written against plain complex128 arrays with scalar updates
so the same source runs compiled (numba) or interpreted (fallback).  No
fastmath: results are bit-identical either way.
"""

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@njit(cache=True, nogil=True)
def jacobi_hermitian(H, V, tol, max_sweeps):
    """Cyclic two-sided Jacobi on a Hermitian matrix, in place.

    Drives the off-diagonal Frobenius mass below tol * ||H||_F.  V
    accumulates the unitary so that V* H_in V = diag on return.  Returns the
    sweep count on convergence, -1 if the cap is exceeded.
    """
    n = H.shape[0]
    norm2 = 0.0
    for i in range(n):
        for j in range(n):
            norm2 += abs(H[i, j]) ** 2
    if norm2 == 0.0:
        return 0
    thresh2 = (tol * tol) * norm2
    for sweep in range(max_sweeps):
        off2 = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off2 += abs(H[i, j]) ** 2
        if off2 <= thresh2:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = H[p, q]
                r = abs(b)
                if r == 0.0:
                    continue
                ph = b / r
                tau = (H[q, q].real - H[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                sph = s * ph
                sphc = s * np.conj(ph)
                for k in range(n):
                    hkp = H[k, p]
                    hkq = H[k, q]
                    H[k, p] = c * hkp - sphc * hkq
                    H[k, q] = sph * hkp + c * hkq
                for k in range(n):
                    hpk = H[p, k]
                    hqk = H[q, k]
                    H[p, k] = c * hpk - sph * hqk
                    H[q, k] = sphc * hpk + c * hqk
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - sphc * vkq
                    V[k, q] = sph * vkp + c * vkq
    # final check after the last sweep's rotations
    off2 = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                off2 += abs(H[i, j]) ** 2
    if off2 <= thresh2:
        return max_sweeps
    return -1


@njit(cache=True, nogil=True)
def jacobi_onesided(W, V, tol, max_sweeps):
    """One-sided Jacobi SVD sweep on the columns of W, in place.

    Rotates column pairs until all pairs satisfy |<w_p, w_q>| <=
    tol * ||w_p|| * ||w_q||.  V accumulates the right factor so that
    W_out = W_in V.  Returns sweeps used, -1 on cap.
    """
    n = W.shape[0]
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = 0.0
                aqq = 0.0
                apq = 0.0 + 0.0j
                for k in range(n):
                    wkp = W[k, p]
                    wkq = W[k, q]
                    app += wkp.real * wkp.real + wkp.imag * wkp.imag
                    aqq += wkq.real * wkq.real + wkq.imag * wkq.imag
                    apq += np.conj(wkp) * wkq
                r = abs(apq)
                if r == 0.0 or r <= tol * np.sqrt(app * aqq):
                    continue
                rotated = True
                ph = apq / r
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                sph = s * ph
                sphc = s * np.conj(ph)
                for k in range(n):
                    wkp = W[k, p]
                    wkq = W[k, q]
                    W[k, p] = c * wkp - sphc * wkq
                    W[k, q] = sph * wkp + c * wkq
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - sphc * vkq
                    V[k, q] = sph * vkp + c * vkq
        if not rotated:
            return sweep
    return -1
