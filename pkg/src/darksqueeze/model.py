"""One dark-state configuration and its closed-form statistics.

A dark state here is the n-quantum eigenstate of the beam-splitter-type
polariton mode D†(θ) = cosθ a† − sinθ C†, where C† creates a collective
spin-wave excitation shared by N three-level atoms (ground |g⟩, occupied
|m⟩) with per-site phases e^{iKj} on a unit-spacing 1D chain.  Tracing the
photon mode out of |d_n(θ)⟩ leaves a mixture of Dicke states whose weights,
spin moments and photon statistics all admit terminating-hypergeometric
closed forms; this module computes them without ever touching the
exponentially large Hilbert space (see :mod:`darksqueeze.oracle` for the
brute-force counterpart used in tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from darksqueeze.specfun import (
    gauss_2f1_negneg_log,
    kummer_1f1_neg_log,
    log_binomial,
)

__all__ = [
    "ModelParams",
    "PhotonWeights",
    "CollectiveMoments",
    "photon_weights",
    "normalization_A",
    "collective_moments",
    "moment_closed_forms",
    "sub_poisson",
    "dark_couplings",
    "dirichlet_kernel",
]


@dataclass(frozen=True)
class ModelParams:
    """Static parameters of one dark-state configuration.

    ``theta`` is the mixing angle (tanθ = g√N/Ω for the couplings that make
    |d_n(θ)⟩ dark), restricted to [0, π).  ``K`` is the wave-vector
    difference between the quantum and classical fields, in radians per
    site on the unit-spacing chain.  ``pair_sep`` is the site separation l
    entering the two-atom phase φ = K·l.
    """

    N: int
    n: int
    theta: float
    K: float = 0.0
    pair_sep: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or isinstance(self.N, bool) or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"n must be an integer, got {self.n!r}")
        if not 0 <= self.n <= self.N:
            raise ValueError(f"n must lie in [0, N]={[0, self.N]}, got {self.n}")
        theta = float(self.theta)
        if not 0.0 <= theta < math.pi:
            raise ValueError(f"theta must lie in [0, pi), got {theta}")
        if not isinstance(self.pair_sep, int) or self.pair_sep < 1:
            raise ValueError(f"pair_sep must be a positive integer, got {self.pair_sep!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "K", float(self.K))

    @property
    def phi(self) -> float:
        """Two-atom phase φ = K·l for a pair at separation ``pair_sep``."""
        return self.K * self.pair_sep


@dataclass(frozen=True)
class PhotonWeights:
    """Photon-number distribution of the photon-traced dark state.

    ``weights[k]`` is the probability of k photons; the attached spin
    component is the (phase-rotated) Dicke state with n−k flipped atoms.
    """

    weights: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class CollectiveMoments:
    """First and second collective-spin moments plus photon moments."""

    jz_mean: float
    jz2_mean: float
    j2_mean: float
    n_mean: float
    n2fact_mean: float


def _cot2(theta: float) -> float:
    c, s = math.cos(theta), math.sin(theta)
    return (c / s) ** 2


def photon_weights(p: ModelParams) -> PhotonWeights:
    """Closed-form photon-number weights w_k, k = 0..n.

    w_k ∝ C(n,k) (N cot²θ)^k (N−n)!/(N−n+k)!; the normalizer is the
    terminating Kummer sum ₁F₁(−n; N−n+1; −N cot²θ).  θ = 0, where all the
    weight sits at k = n, is taken as the analytic limit.
    """
    n, N = p.n, p.N
    if n == 0:
        return PhotonWeights(np.ones(1))
    if p.theta == 0.0:
        w = np.zeros(n + 1)
        w[n] = 1.0
        return PhotonWeights(w)
    z = N * _cot2(p.theta)
    if z == 0.0:  # theta = pi/2 exactly: photon vacuum
        w = np.zeros(n + 1)
        w[0] = 1.0
        return PhotonWeights(w)
    log_z = math.log(z)
    logw = np.array(
        [
            log_binomial(n, k)
            + k * log_z
            + math.lgamma(N - n + 1)
            - math.lgamma(N - n + k + 1)
            for k in range(n + 1)
        ]
    )
    logw -= logw.max()
    w = np.exp(logw)
    w /= w.sum()
    return PhotonWeights(w)


def normalization_A(p: ModelParams) -> float:
    """Normalization constant A(n, N, θ) of the dark state.

    A² = (N−n)! Nⁿ / (N! sin^{2n}θ · ₁F₁(−n; N−n+1; −N cot²θ)); evaluated
    in the log domain.  By convention A = 1 for n = 0 and outside
    θ ∈ (0, π/2) (analytic limits: the θ → 0 limit is exactly 1, and at
    θ = π/2 the closed form itself is returned).
    """
    n, N = p.n, p.N
    if n == 0 or p.theta <= 0.0:
        return 1.0
    z = N * _cot2(p.theta)
    _, log_f1 = kummer_1f1_neg_log(n, N - n + 1, -z)
    log_a2 = (
        math.lgamma(N - n + 1)
        + n * math.log(N)
        - math.lgamma(N + 1)
        - 2 * n * math.log(math.sin(p.theta))
        - log_f1
    )
    return math.exp(0.5 * log_a2)


def dirichlet_kernel(N: int, K: float) -> float:
    """|Σ_{j=1}^{N} e^{iKj}|² = sin²(NK/2)/sin²(K/2), = N² at K ≡ 0 (mod 2π)."""
    s = math.sin(K / 2.0)
    if abs(s) < 1e-15:
        return float(N * N)
    return (math.sin(N * K / 2.0) / s) ** 2


def _pair_exchange_sum(p: ModelParams, w: np.ndarray) -> float:
    """Σ_k w_k (n−k)(N−n+k) / (N(N−1)) — mean same-pair exchange weight."""
    n, N = p.n, p.N
    k = np.arange(len(w))
    return float(np.sum(w * (n - k) * (N - n + k)) / (N * (N - 1)))


def collective_moments(p: ModelParams) -> CollectiveMoments:
    """All five moments from the photon-number weights.

    With m = n − k flipped atoms attached to weight w_k:
    ⟨Jz⟩ = Σ w_k (m − N/2), ⟨Jz²⟩ = Σ w_k (m − N/2)², ⟨a†a⟩ = Σ k w_k,
    ⟨a†a†aa⟩ = Σ k(k−1) w_k.  At K = 0 the spin part lives in the maximal
    angular-momentum sector, ⟨J²⟩ = (N/2)(N/2+1); at K ≠ 0 the phase
    rotation exp(iK Σ_j j σ_mm^j) mixes sectors and

        ⟨J²⟩ = ⟨Jz²⟩ + N/2 + (D_N(K) − N) · Σ_k w_k (n−k)(N−n+k)/(N(N−1))

    with the Dirichlet kernel D_N(K) of the unit-spacing chain.
    """
    n, N = p.n, p.N
    w = photon_weights(p).weights
    k = np.arange(len(w))
    m = n - k  # flipped-atom count in the branch with k photons
    jz = float(np.sum(w * (m - N / 2.0)))
    jz2 = float(np.sum(w * (m - N / 2.0) ** 2))
    n_mean = float(np.sum(w * k))
    n2fact = float(np.sum(w * k * (k - 1)))
    if N == 1 or dirichlet_kernel(N, p.K) == float(N * N):
        j2 = (N / 2.0) * (N / 2.0 + 1.0)
    else:
        d = dirichlet_kernel(N, p.K)
        j2 = jz2 + N / 2.0 + (d - N) * _pair_exchange_sum(p, w)
    return CollectiveMoments(
        jz_mean=jz, jz2_mean=jz2, j2_mean=j2, n_mean=n_mean, n2fact_mean=n2fact
    )


def _delta_jz2(n: int, N: int, z: float) -> float:
    """Deviation δJz² = ⟨Jz²⟩ − (n − N/2)² via the hypergeometric bracket.

    The textbook grouping

        δJz² = z [ 2n + z − (N+1)(n+z)/(N−n+1) · ₁F₁(−n; N−n+2)/₁F₁(−n; N−n+1) ]

    (z = N cot²θ) cancels catastrophically for large z, so the bracket is
    expanded term-by-term against the ₁F₁ series — an exact algebraic
    regrouping, not an approximation.  With t_k = C(n,k) z^k (N−n)!/(N−n+k)!
    (the unnormalized photon weights),

        δJz² = z · Σ_k t_k β_k / Σ_k t_k,
        β_k  = [ z(k−n) + n(N−2n+2k+1) ] / (N−n+k+1),

    and the signed numerator is accumulated with math.fsum.
    """
    num_terms: list[float] = []
    den_terms: list[float] = []
    t = 1.0
    for k in range(n + 1):
        beta = (z * (k - n) + n * (N - 2 * n + 2 * k + 1)) / (N - n + k + 1)
        num_terms.append(t * beta)
        den_terms.append(t)
        if k < n:
            t *= z * (n - k) / ((k + 1) * (N - n + k + 1))
            if t > 1e250:
                # rescale; the common factor cancels in the num/den ratio
                num_terms = [x / t for x in num_terms]
                den_terms = [x / t for x in den_terms]
                t = 1.0
    return z * math.fsum(num_terms) / math.fsum(den_terms)


def moment_closed_forms(p: ModelParams) -> dict[str, float]:
    """Moments via explicit hypergeometric-ratio formulas (K-independent).

    Returns ``n_mean``, ``n2fact_mean``, ``jz_mean``, ``jz2_mean`` — the
    same quantities :func:`collective_moments` obtains by summing weights,
    but through a second route (deviations from the θ = π/2 values):

        ⟨a†a⟩    = n z/(N−n+1) · ₁F₁(1−n; N−n+2; −z)/₁F₁(−n; N−n+1; −z)
        ⟨a†a†aa⟩ = n(n−1) z²/((N−n+2)(N−n+1)) · ₁F₁(2−n; N−n+3; −z)/₁F₁(−n; N−n+1; −z)
        ⟨Jz⟩     = (n − N/2) + δJz,     δJz  = −⟨a†a⟩
        ⟨Jz²⟩    = (n − N/2)² + δJz²    (see :func:`_delta_jz2`)

    with z = N cot²θ throughout.
    """
    n, N = p.n, p.N
    base = n - N / 2.0
    if n == 0:
        return {
            "n_mean": 0.0,
            "n2fact_mean": 0.0,
            "jz_mean": base,
            "jz2_mean": base * base,
        }
    if p.theta == 0.0:
        return {
            "n_mean": float(n),
            "n2fact_mean": float(n * (n - 1)),
            "jz_mean": -N / 2.0,
            "jz2_mean": (N / 2.0) ** 2,
        }
    z = N * _cot2(p.theta)
    if z == 0.0:  # theta = pi/2: no deviation from the Dicke values
        return {
            "n_mean": 0.0,
            "n2fact_mean": 0.0,
            "jz_mean": base,
            "jz2_mean": base * base,
        }
    _, lf0 = kummer_1f1_neg_log(n, N - n + 1, -z)
    _, lf1 = kummer_1f1_neg_log(n - 1, N - n + 2, -z)
    n_mean = math.exp(math.log(n) + math.log(z) - math.log(N - n + 1) + lf1 - lf0)
    if n >= 2:
        _, lf2 = kummer_1f1_neg_log(n - 2, N - n + 3, -z)
        n2fact = math.exp(
            math.log(n)
            + math.log(n - 1)
            + 2 * math.log(z)
            - math.log(N - n + 2)
            - math.log(N - n + 1)
            + lf2
            - lf0
        )
    else:
        n2fact = 0.0
    return {
        "n_mean": n_mean,
        "n2fact_mean": n2fact,
        "jz_mean": base - n_mean,
        "jz2_mean": base * base + _delta_jz2(n, N, z),
    }


def sub_poisson(p: ModelParams) -> float:
    """Sub-Poisson parameter s_p = (⟨Δn²⟩ − ⟨n⟩)/N = (⟨a†a†aa⟩ − ⟨a†a⟩²)/N."""
    m = collective_moments(p)
    return (m.n2fact_mean - m.n_mean**2) / p.N


def dark_couplings(theta: float, N: int, scale: float = 1.0) -> tuple[float, float]:
    """Couplings (g, Ω) for which |d_n(θ)⟩ is dark: tanθ = g√N/Ω.

    Parameterized as g = scale·sinθ/√N, Ω = scale·cosθ so both endpoints of
    θ ∈ [0, π) stay finite.
    """
    return scale * math.sin(theta) / math.sqrt(N), scale * math.cos(theta)
