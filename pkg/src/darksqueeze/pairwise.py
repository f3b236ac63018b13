"""Two-quasi-spin reduced state of the dark state and its concurrence.

Tracing the dark state down to two atoms at chain separation l leaves a
state that is diagonal in {|mm⟩, |mg⟩, |gm⟩, |gg⟩} except for the exchange
coherence ⟨mg|ρ|gm⟩ = w e^{−iφ}, φ = K·l.  The five bookkeeping elements
are the populations v₊ = ρ_mm, v₋ = ρ_gg, w = ρ_mg = ρ_gm and the split
coherence y = w cosφ (kept in the exchange block) and u = −i w sinφ
(moved to the mm↔gg corner).  Concurrence is evaluated on the X-shaped
matrix assembled from these five numbers:

    [[v₊, 0, 0, u*],
     [0,  w, y, 0 ],
     [0,  y, w, 0 ],
     [u,  0, 0, v₋]]

Note the corner placement of u makes this assembly a *convention*: it has
the same element magnitudes as the exact reduced state but not the same
eigenvectors, and for |u| > √(v₊v₋) it is not even positive semidefinite.
Its X-state concurrence — the quantity plotted against K throughout —
therefore differs from the (K-independent) Wootters concurrence of the
exact reduced state except at φ ≡ 0 (mod π), where the two coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from darksqueeze.errors import NonPhysicalStateError
from darksqueeze.model import ModelParams, photon_weights
from darksqueeze.specfun import kummer_1f1_neg_log

__all__ = [
    "TwoQubitState",
    "rho12",
    "element_closed_forms",
    "assemble_x_matrix",
    "concurrence_x",
    "wootters_concurrence",
]


@dataclass(frozen=True)
class TwoQubitState:
    """The five surviving elements of the two-atom reduced state."""

    v_plus: float
    v_minus: float
    w: float
    y: float
    u: complex

    def __post_init__(self) -> None:
        tr = self.v_plus + self.v_minus + 2 * self.w
        if abs(tr - 1.0) > 1e-12:
            raise NonPhysicalStateError(f"two-atom elements have trace {tr!r}, not 1")
        if min(self.v_plus, self.v_minus, self.w) < -1e-12:
            raise NonPhysicalStateError("negative population element")
        if abs(self.y) > self.w + 1e-12:
            raise NonPhysicalStateError("|y| exceeds the exchange population w")


def rho12(p: ModelParams) -> TwoQubitState:
    """Closed-form elements of the two-atom reduced state.

    Population elements are photon-weight averages of pair-counting
    ratios over the Dicke branch with m = n − k flipped atoms:

        v₊ = Σ_k w_k m(m−1)/(N(N−1)),
        v₋ = Σ_k w_k (N−m)(N−m−1)/(N(N−1)),
        w  = Σ_k w_k m(N−m)/(N(N−1)),

    equal to the θ = π/2 values plus the hypergeometric deviations of
    :func:`element_closed_forms` (summing weights is the numerically
    stable route for extreme cot²θ).
    """
    if p.N < 2:
        raise ValueError("two-atom reduction needs N >= 2")
    n, N = p.n, p.N
    wk = photon_weights(p).weights
    k = np.arange(len(wk))
    m = n - k
    denom = N * (N - 1)
    v_plus = float(np.sum(wk * m * (m - 1)) / denom)
    v_minus = float(np.sum(wk * (N - m) * (N - m - 1)) / denom)
    w_el = float(np.sum(wk * m * (N - m)) / denom)
    phi = p.phi
    return TwoQubitState(
        v_plus=v_plus,
        v_minus=v_minus,
        w=w_el,
        y=w_el * math.cos(phi),
        u=-1j * w_el * math.sin(phi),
    )


def element_closed_forms(p: ModelParams) -> dict[str, float]:
    """Population elements via the explicit deviation formulas.

    With z = N cot²θ, B = cot²θ/(N−1) and
    Λ = 1 − (N+1)/(N−n+1) · ₁F₁(−n; N−n+2; −z)/₁F₁(−n; N−n+1; −z):

        v₊ = n(n−1)/(N(N−1))       + B[ n + (N csc²θ + n − 1) Λ ]
        v₋ = (N−n)(N−n−1)/(N(N−1)) + B[ n + (z − N + n + 1) Λ ]
        w  = n(N−n)/(N(N−1))       + B[ −n − (n + z) Λ ]

    Second route to the same numbers as :func:`rho12`; used as an
    identity check (it loses precision for very large z, see rho12).
    """
    n, N = p.n, p.N
    th = p.theta
    denom = N * (N - 1)
    base = {
        "v_plus": n * (n - 1) / denom,
        "v_minus": (N - n) * (N - n - 1) / denom,
        "w": n * (N - n) / denom,
    }
    if n == 0 or th == 0.0:
        if th == 0.0 and n > 0:  # all weight at k = n: zero flipped atoms
            return {
                "v_plus": 0.0,
                "v_minus": 1.0,
                "w": 0.0,
            }
        return base
    cot2 = (math.cos(th) / math.sin(th)) ** 2
    z = N * cot2
    if z == 0.0:
        return base
    _, lf0 = kummer_1f1_neg_log(n, N - n + 1, -z)
    sg, lg0 = kummer_1f1_neg_log(n, N - n + 2, -z)
    lam = 1.0 - (N + 1) / (N - n + 1) * sg * math.exp(lg0 - lf0)
    b = cot2 / (N - 1)
    csc2 = 1.0 + cot2
    return {
        "v_plus": base["v_plus"] + b * (n + (N * csc2 + n - 1) * lam),
        "v_minus": base["v_minus"] + b * (n + (z - N + n + 1) * lam),
        "w": base["w"] + b * (-n - (n + z) * lam),
    }


def assemble_x_matrix(state: TwoQubitState) -> np.ndarray:
    """The 4×4 X-shaped matrix in the basis (|mm⟩, |mg⟩, |gm⟩, |gg⟩)."""
    u = complex(state.u)
    return np.array(
        [
            [state.v_plus, 0, 0, u.conjugate()],
            [0, state.w, state.y, 0],
            [0, state.y, state.w, 0],
            [u, 0, 0, state.v_minus],
        ],
        dtype=complex,
    )


def concurrence_x(state: TwoQubitState, phi: float | None = None) -> float:
    """Concurrence of the assembled X-matrix.

        C = 2 max{0, |y| − √(v₊v₋), |u| − w}

    which for the dark-state elements (y = w cosφ, u = −i w sinφ) is the
    familiar C = max{0, 2(w|cosφ| − √(v₊v₋))}.  When ``phi`` is given, y
    and u are re-derived from ``state.w`` and that angle; otherwise the
    stored y and u are used.
    """
    if phi is None:
        y_abs, u_abs = abs(state.y), abs(complex(state.u))
    else:
        y_abs = state.w * abs(math.cos(phi))
        u_abs = state.w * abs(math.sin(phi))
    root = math.sqrt(max(state.v_plus, 0.0) * max(state.v_minus, 0.0))
    return 2.0 * max(0.0, y_abs - root, u_abs - state.w)


_SIGMA_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)


def wootters_concurrence(rho: np.ndarray) -> float:
    """Concurrence of an arbitrary two-qubit density matrix.

    C = max{0, λ₁ − λ₂ − λ₃ − λ₄} where λ_i are the square roots, in
    descending order, of the eigenvalues of ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
    """
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {r.shape}")
    if abs(np.trace(r) - 1.0) > 1e-8:
        raise NonPhysicalStateError(f"trace {np.trace(r)!r} is not 1")
    if np.abs(r - r.conj().T).max() > 1e-8:
        raise NonPhysicalStateError("matrix is not Hermitian")
    evals = np.linalg.eigvalsh(0.5 * (r + r.conj().T))
    if evals.min() < -1e-10:
        raise NonPhysicalStateError(f"negative eigenvalue {evals.min():.3e}")
    rr = r @ _SIGMA_YY @ r.conj() @ _SIGMA_YY
    lam = np.linalg.eigvals(rr)
    lam = np.sqrt(np.clip(lam.real, 0.0, None))
    lam[::-1].sort()
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))
