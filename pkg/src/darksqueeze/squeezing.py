"""Spin-squeezing criteria for dark states and for generic moment inputs.

Three standard squeezing parameters are computed (noise-over-coherence
ξ₁², metrological ξ₂², and the generalized collective-spin criterion ξ₃²)
plus the z-axis number-squeezing ratio ς² and the "equivalent" parameter
ζ₃² = max(1 − ξ₃², 0) used as the headline quantity.

For dark states ⟨J₋²⟩ = 0 and the transverse plane is isotropic, so the
generalized criterion reduces to ξ₃² = ς² / ((4/N²)⟨J²⟩ − 2/N); the fully
general matrix route (covariance γ, correlation C, Γ = (N−1)γ + C, minimal
eigenvalue) is implemented as well and cross-checked against the reduced
form in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from darksqueeze.errors import (
    DegenerateDenominatorError,
    NoCrossingError,
    NonPhysicalStateError,
)
from darksqueeze.model import CollectiveMoments, ModelParams, collective_moments

__all__ = [
    "SqueezingReport",
    "CorrelationMatrices",
    "TransverseMoments",
    "sym3_eigvals",
    "dark_state_squeezing",
    "squeezing_from_moments",
    "toth_matrices",
    "critical_K",
]


@dataclass(frozen=True)
class SqueezingReport:
    """All squeezing parameters of one state (squared values)."""

    xi1_sq: float
    xi2_sq: float
    xi3_sq: float
    varsigma_sq: float
    zeta3_sq: float


@dataclass(frozen=True)
class TransverseMoments:
    """Optional transverse second moments ⟨Jx²⟩, ⟨Jy²⟩, ⟨J₋²⟩ (complex)."""

    jx2_mean: float
    jy2_mean: float
    jminus2_mean: complex = 0.0


@dataclass(frozen=True)
class CorrelationMatrices:
    """Covariance/correlation matrices of the collective spin vector."""

    gamma: np.ndarray
    corr: np.ndarray
    toth: np.ndarray
    lambda_min: float


def sym3_eigvals(mat: np.ndarray) -> tuple[float, float, float]:
    """Eigenvalues of a real symmetric 3×3 matrix, ascending, in closed form.

    Uses the trigonometric solution of the characteristic cubic.  Roots
    within a Frobenius-scaled tolerance of 1e−12 of each other collapse to
    the common value.
    """
    m = np.asarray(mat, dtype=float)
    q = m.trace() / 3.0
    off_sq = m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2
    fro = math.sqrt(float((m * m).sum()))
    p2 = (m[0, 0] - q) ** 2 + (m[1, 1] - q) ** 2 + (m[2, 2] - q) ** 2 + 2.0 * off_sq
    if math.sqrt(p2 / 6.0) <= 1e-12 * max(fro, 1e-300):
        return (q, q, q)
    p = math.sqrt(p2 / 6.0)
    b = (m - q * np.eye(3)) / p
    r = float(np.linalg.det(b)) / 2.0
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    hi = q + 2.0 * p * math.cos(phi)
    lo = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    mid = 3.0 * q - hi - lo
    return (lo, mid, hi)


def _report(
    N: int,
    jz: float,
    jz2: float,
    j2: float,
    jxy2: float,
    jminus2_abs: float,
) -> SqueezingReport:
    var_z = jz2 - jz * jz
    varsigma = (4.0 / N**2) * (N * var_z + jz * jz)
    xi1 = (2.0 / N) * (jxy2 - jminus2_abs)
    xi2 = (N**2 / (4.0 * j2)) * xi1 if j2 > 0 else math.inf
    denom = (4.0 / N**2) * j2 - 2.0 / N
    if denom <= 0.0:
        raise DegenerateDenominatorError(
            f"(4/N^2)<J^2> - 2/N = {denom:.3e} <= 0; the ratio criterion is undefined here"
        )
    xi3 = varsigma / denom
    return SqueezingReport(
        xi1_sq=xi1,
        xi2_sq=xi2,
        xi3_sq=xi3,
        varsigma_sq=varsigma,
        zeta3_sq=max(1.0 - xi3, 0.0),
    )


def squeezing_from_moments(
    N: int,
    moments: CollectiveMoments,
    transverse: TransverseMoments | None = None,
) -> SqueezingReport:
    """Squeezing report from supplied moments (oracle or channel-evolved).

    Without explicit transverse moments the state is assumed transversely
    isotropic with ⟨J₋²⟩ = 0 (true for every dark state and preserved by
    the uniform single-atom channels), so ⟨Jx²+Jy²⟩ = ⟨J²⟩ − ⟨Jz²⟩.
    """
    if N < 2:
        raise ValueError("squeezing criteria need N >= 2")
    if transverse is None:
        jxy2 = moments.j2_mean - moments.jz2_mean
        jminus2_abs = 0.0
    else:
        jxy2 = transverse.jx2_mean + transverse.jy2_mean
        jminus2_abs = abs(transverse.jminus2_mean)
    return _report(
        N, moments.jz_mean, moments.jz2_mean, moments.j2_mean, jxy2, jminus2_abs
    )


def dark_state_squeezing(p: ModelParams) -> SqueezingReport:
    """All squeezing parameters of the dark state |d_n(θ)⟩ in closed form."""
    if p.N < 2:
        raise ValueError("squeezing criteria need N >= 2")
    return squeezing_from_moments(p.N, collective_moments(p))


def toth_matrices(
    N: int, first_moments: np.ndarray, second_moments: np.ndarray
) -> CorrelationMatrices:
    """Covariance γ, correlation C, and Γ = (N−1)γ + C with its λ_min.

    ``first_moments`` is (⟨Jx⟩, ⟨Jy⟩, ⟨Jz⟩); ``second_moments`` is the
    symmetrized matrix C_kl = ⟨J_k J_l + J_l J_k⟩/2.  The generalized
    criterion is then ξ₃² = λ_min/(⟨J²⟩ − N/2) with ⟨J²⟩ = tr C.
    """
    f = np.asarray(first_moments, dtype=float).reshape(3)
    s = np.asarray(second_moments, dtype=float).reshape(3, 3)
    asym = float(np.abs(s - s.T).max())
    scale = max(float(np.abs(s).max()), 1.0)
    if asym > 1e-10 * scale:
        raise NonPhysicalStateError(
            f"second-moment matrix is not symmetric (max asymmetry {asym:.3e})"
        )
    corr = 0.5 * (s + s.T)
    gamma = corr - np.outer(f, f)
    toth = (N - 1) * gamma + corr
    lam = sym3_eigvals(toth)[0]
    return CorrelationMatrices(gamma=gamma, corr=corr, toth=toth, lambda_min=lam)


def critical_K(N: int, n: int, theta: float, tol: float = 1e-8) -> float:
    """Smallest K > 0 at which the dark state stops being squeezed.

    ς² is K-independent, so the crossing ξ₃²(K) = 1 is the root of
    g(K) = (4/N²)⟨J²⟩(K) − 2/N − ς², located by a scan over [0, π]
    followed by bisection to width ``tol``.
    """
    p0 = ModelParams(N=N, n=n, theta=theta, K=0.0)
    m0 = collective_moments(p0)
    varsigma = (4.0 / N**2) * (
        N * (m0.jz2_mean - m0.jz_mean**2) + m0.jz_mean**2
    )

    def gap(K: float) -> float:
        m = collective_moments(ModelParams(N=N, n=n, theta=theta, K=K))
        return (4.0 / N**2) * m.j2_mean - 2.0 / N - varsigma

    if gap(0.0) <= 0.0:
        raise NoCrossingError(
            f"configuration (N={N}, n={n}, theta={theta}) is not squeezed at K=0"
        )
    grid = np.linspace(0.0, math.pi, 2001)
    lo = 0.0
    hi = None
    for K in grid[1:]:
        if gap(float(K)) <= 0.0:
            hi = float(K)
            break
        lo = float(K)
    if hi is None:
        raise NoCrossingError(
            f"(N={N}, n={n}, theta={theta}) stays squeezed on all of [0, pi]"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gap(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
