# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot Hilbert-space kernels.

Same five-function interface and conventions as ``darksqueeze._kernels_py``
(the pure-NumPy twin); see that module for the basis-layout documentation.
The scatter loops here skip zero source amplitudes, which pays off while a
state's support is still growing during repeated creation-operator passes.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def popcount_table(int N):
    """Number of set bits for every basis index in range(2**N)."""
    cdef Py_ssize_t dim = 1 << N
    out = np.zeros(dim, dtype=np.int64)
    cdef long long[::1] ov = out
    cdef Py_ssize_t mask, m
    cdef long long c
    for mask in range(dim):
        m = mask
        c = 0
        while m:
            c += m & 1
            m >>= 1
        ov[mask] = c
    return out


def apply_sigma_raise(psi, int N, coeffs):
    """Return sum_j coeffs[j] * sigma_+^(j) |psi> for psi of shape (M, 2**N)."""
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    cv_arr = np.ascontiguousarray(coeffs, dtype=np.complex128)
    out = np.zeros_like(psi)
    cdef double complex[:, ::1] pv = psi
    cdef double complex[:, ::1] ov = out
    cdef double complex[::1] cv = cv_arr
    cdef Py_ssize_t M = psi.shape[0], dim = psi.shape[1]
    cdef Py_ssize_t m, mask, j
    cdef double complex amp
    for m in range(M):
        for mask in range(dim):
            amp = pv[m, mask]
            if amp == 0:
                continue
            for j in range(N):
                if not (mask >> j) & 1:
                    ov[m, mask | (1 << j)] += cv[j] * amp
    return out


def apply_sigma_lower(psi, int N, coeffs):
    """Return sum_j coeffs[j] * sigma_-^(j) |psi> for psi of shape (M, 2**N)."""
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    cv_arr = np.ascontiguousarray(coeffs, dtype=np.complex128)
    out = np.zeros_like(psi)
    cdef double complex[:, ::1] pv = psi
    cdef double complex[:, ::1] ov = out
    cdef double complex[::1] cv = cv_arr
    cdef Py_ssize_t M = psi.shape[0], dim = psi.shape[1]
    cdef Py_ssize_t m, mask, j
    cdef double complex amp
    for m in range(M):
        for mask in range(dim):
            amp = pv[m, mask]
            if amp == 0:
                continue
            for j in range(N):
                if (mask >> j) & 1:
                    ov[m, mask & ~(1 << j)] += cv[j] * amp
    return out


def trit_hamiltonian_apply(psi, int N, g_coeffs, om_coeffs):
    """Apply the three-level Raman Hamiltonian to a (M, 3**N) qutrit state."""
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    g_arr = np.ascontiguousarray(g_coeffs, dtype=np.complex128)
    om_arr = np.ascontiguousarray(om_coeffs, dtype=np.complex128)
    out = np.zeros_like(psi)
    cdef double complex[:, ::1] pv = psi
    cdef double complex[:, ::1] ov = out
    cdef double complex[::1] gv = g_arr
    cdef double complex[::1] omv = om_arr
    cdef Py_ssize_t M = psi.shape[0], dim = psi.shape[1]
    cdef Py_ssize_t m, t, j, d
    cdef Py_ssize_t pow3[32]
    cdef double complex amp
    cdef double sq
    pow3[0] = 1
    for j in range(1, N + 1):
        pow3[j] = 3 * pow3[j - 1]
    for m in range(M):
        sq = (<double> m) ** 0.5
        for t in range(dim):
            amp = pv[m, t]
            if amp == 0:
                continue
            for j in range(N):
                d = (t // pow3[j]) % 3
                if d == 0:
                    # from |k, g> only the photon-consuming g a sigma_eg term acts
                    if m > 0:
                        ov[m - 1, t + 2 * pow3[j]] += gv[j] * sq * amp
                elif d == 1:
                    ov[m, t + pow3[j]] += omv[j] * amp
                else:
                    ov[m, t - pow3[j]] += omv[j].conjugate() * amp
                    if m + 1 < M:
                        ov[m + 1, t - 2 * pow3[j]] += gv[j].conjugate() * ((<double> (m + 1)) ** 0.5) * amp
    return out


def kraus_site(rho, int N, int j, kraus):
    """Apply sum_k K_k rho K_k^dag on site j (0-based bit) of a 2**N density."""
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    kmat = np.ascontiguousarray(np.stack([np.asarray(km, dtype=np.complex128) for km in kraus]))
    out = np.zeros_like(rho)
    cdef double complex[:, ::1] rv = rho
    cdef double complex[:, ::1] ov = out
    cdef double complex[:, :, ::1] kv = kmat
    cdef Py_ssize_t dim = rho.shape[0]
    cdef Py_ssize_t nk = kmat.shape[0]
    cdef Py_ssize_t row, col, k, a, d, b, c, bit
    cdef Py_ssize_t row0, col0
    cdef double complex amp, acc
    bit = 1 << j
    for row in range(dim):
        b = 1 if (row & bit) else 0
        row0 = row & ~bit
        for col in range(dim):
            amp = rv[row, col]
            if amp == 0:
                continue
            c = 1 if (col & bit) else 0
            col0 = col & ~bit
            for k in range(nk):
                for a in range(2):
                    if kv[k, a, b] == 0:
                        continue
                    for d in range(2):
                        if kv[k, d, c] == 0:
                            continue
                        ov[row0 | (a * bit), col0 | (d * bit)] += (
                            kv[k, a, b] * amp * kv[k, d, c].conjugate()
                        )
    return out
