"""Pure-NumPy implementations of the hot Hilbert-space kernels.

This module mirrors the optional compiled extension ``darksqueeze._kernels``;
``darksqueeze.kernels`` picks one of the two at import time.  Both expose the
same five functions with identical semantics.

Conventions shared by all kernels:

* Qubit (two-level) many-body states are arrays of shape ``(M, 2**N)``
  where ``M`` indexes an auxiliary mode (e.g. photon number) and the basis
  index is a bitmask with bit ``j`` holding the state of site ``j + 1``
  (0 = ground, 1 = flipped).
* Qutrit (three-level) states are ``(M, 3**N)`` with base-3 digit ``j``
  holding site ``j + 1`` (0 = ground, 1 = metastable, 2 = excited).
* Density matrices are ``(2**N, 2**N)`` over the qubit basis.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def popcount_table(N: int) -> np.ndarray:
    """Number of set bits for every basis index in ``range(2**N)``."""
    masks = np.arange(1 << N, dtype=np.int64)
    counts = np.zeros(1 << N, dtype=np.int64)
    for j in range(N):
        counts += (masks >> j) & 1
    return counts


def _bit_view(arr: np.ndarray, N: int, j: int) -> np.ndarray:
    """Reshape the last axis (length 2**N) to expose bit j as its own axis."""
    lead = arr.shape[:-1]
    hi = 1 << (N - 1 - j)
    lo = 1 << j
    return arr.reshape(*lead, hi, 2, lo)


def apply_sigma_raise(psi: np.ndarray, N: int, coeffs: np.ndarray) -> np.ndarray:
    """Return sum_j coeffs[j] * sigma_+^(j) |psi>.

    ``sigma_+^(j)`` flips bit ``j`` from 0 to 1.  ``psi`` has shape
    ``(M, 2**N)``; ``coeffs`` has length ``N``.
    """
    out = np.zeros_like(psi)
    for j in range(N):
        src = _bit_view(psi, N, j)
        dst = _bit_view(out, N, j)
        dst[..., 1, :] += coeffs[j] * src[..., 0, :]
    return out


def apply_sigma_lower(psi: np.ndarray, N: int, coeffs: np.ndarray) -> np.ndarray:
    """Return sum_j coeffs[j] * sigma_-^(j) |psi> (flips bit j from 1 to 0)."""
    out = np.zeros_like(psi)
    for j in range(N):
        src = _bit_view(psi, N, j)
        dst = _bit_view(out, N, j)
        dst[..., 0, :] += coeffs[j] * src[..., 1, :]
    return out


def _trit_view(arr: np.ndarray, N: int, j: int) -> np.ndarray:
    lead = arr.shape[:-1]
    hi = 3 ** (N - 1 - j)
    lo = 3**j
    return arr.reshape(*lead, hi, 3, lo)


def trit_hamiltonian_apply(
    psi: np.ndarray, N: int, g_coeffs: np.ndarray, om_coeffs: np.ndarray
) -> np.ndarray:
    """Apply the three-level Raman Hamiltonian to a qutrit-chain state.

    ``psi`` has shape ``(M, 3**N)`` with photon number along axis 0.  The
    applied operator is

        H = sum_j [ g_coeffs[j] * a sigma_eg^(j) + om_coeffs[j] * sigma_em^(j) + h.c. ]

    where sigma_eg^(j) = |e><g| and sigma_em^(j) = |e><m| on site j + 1, and
    a is the photon annihilator (a |k> = sqrt(k) |k-1>).
    """
    M = psi.shape[0]
    out = np.zeros_like(psi)
    sqrt_k = np.sqrt(np.arange(M, dtype=np.float64))
    for j in range(N):
        src = _trit_view(psi, N, j)
        dst = _trit_view(out, N, j)
        # g a |e><g| : removes a photon, promotes g -> e
        if M > 1:
            dst[:-1, :, 2, :] += (g_coeffs[j] * sqrt_k[1:])[:, None, None] * src[1:, :, 0, :]
            # h.c. : g* a^dag |g><e|
            dst[1:, :, 0, :] += (np.conj(g_coeffs[j]) * sqrt_k[1:])[:, None, None] * src[:-1, :, 2, :]
        # Omega |e><m| and h.c.
        dst[:, :, 2, :] += om_coeffs[j] * src[:, :, 1, :]
        dst[:, :, 1, :] += np.conj(om_coeffs[j]) * src[:, :, 2, :]
    return out


def kraus_site(rho: np.ndarray, N: int, j: int, kraus: list[np.ndarray]) -> np.ndarray:
    """Apply a single-site Kraus channel to site ``j`` (0-based bit) of rho.

    ``rho`` is ``(2**N, 2**N)``; each Kraus operator is 2x2 over the local
    basis (index 0 = ground, 1 = flipped).  Returns sum_k K_k rho K_k^dag.
    """
    hi = 1 << (N - 1 - j)
    lo = 1 << j
    r = rho.reshape(hi, 2, lo, hi, 2, lo)
    out = np.zeros_like(r)
    for k in kraus:
        out += np.einsum("ab,ubvxcy,dc->uavxdy", k, r, np.conj(k))
    return out.reshape(rho.shape)
