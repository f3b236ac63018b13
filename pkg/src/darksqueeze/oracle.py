"""Brute-force reference implementation on the full photon⊗spin space.

Deliberately naive: states are dense complex vectors over (photon number,
spin bitmask), densities are dense matrices, channels are per-site Kraus
loops.  Everything the closed-form modules claim is cross-checked against
this module wherever it fits in memory.

Basis layout: amplitudes have shape (n+1, 2**N) flattened photon-major;
bit j of the mask holds atom j+1 (0 = |g⟩, 1 = |m⟩), so excitation
conservation (photons + flipped atoms = n) is a popcount check.  The
excited level |e⟩ exists only inside :func:`hamiltonian_residual`, which
re-embeds the state into a 3**N qutrit chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from darksqueeze import kernels
from darksqueeze.channels import ChannelKind, ChannelStrength, kraus_ops
from darksqueeze.errors import CapacityError
from darksqueeze.model import CollectiveMoments, ModelParams

__all__ = [
    "OracleState",
    "MEMORY_GUARD_AMPLITUDES",
    "TRIT_SITE_LIMIT",
    "DENSITY_SITE_LIMIT",
    "build_dark_state",
    "hamiltonian_residual",
    "expectation",
    "oracle_moments",
    "photon_marginal",
    "reduce_two_site",
    "reduce_spin_density",
    "reduce_two_site_density",
    "apply_kraus",
    "density_moments",
    "second_moment_matrix",
]

MEMORY_GUARD_AMPLITUDES = 1 << 24
TRIT_SITE_LIMIT = 12
DENSITY_SITE_LIMIT = 8


@dataclass(frozen=True)
class OracleState:
    """Dense dark-state vector with its basis bookkeeping."""

    N: int
    n_max: int
    K: float
    amplitudes: np.ndarray = field(repr=False)

    @property
    def grid(self) -> np.ndarray:
        """(n_max+1, 2**N) photon-major view of the amplitudes."""
        return self.amplitudes.reshape(self.n_max + 1, 1 << self.N)


def build_dark_state(p: ModelParams) -> OracleState:
    """|d_n(θ)⟩ by applying D† = cosθ a† − sinθ C† n times to the vacuum.

    C† = (1/√N) Σ_j e^{iKj} σ_mg^j with j = 1..N.  The result is
    normalized (the analytic normalization is cross-checked separately
    against normalization_A).
    """
    n, N = p.n, p.N
    size = (n + 1) * (1 << N)
    if size > MEMORY_GUARD_AMPLITUDES:
        raise CapacityError(
            f"state of {size} amplitudes exceeds the {MEMORY_GUARD_AMPLITUDES} guard"
        )
    cos_t, sin_t = math.cos(p.theta), math.sin(p.theta)
    coeffs = np.exp(1j * p.K * np.arange(1, N + 1)) / math.sqrt(N)
    psi = np.zeros((n + 1, 1 << N), dtype=complex)
    psi[0, 0] = 1.0
    sqrt_k = np.sqrt(np.arange(n + 1, dtype=float))
    for _ in range(n):
        new = -sin_t * kernels.apply_sigma_raise(psi, N, coeffs)
        new[1:] += cos_t * sqrt_k[1:, None] * psi[:-1]
        psi = new
    norm = float(np.linalg.norm(psi))
    if norm == 0.0:
        raise ValueError(f"dark-state construction collapsed to zero for {p}")
    psi /= norm
    return OracleState(N=N, n_max=n, K=p.K, amplitudes=psi.reshape(-1))


def hamiltonian_residual(
    state: OracleState, g: float, omega: float, K_ge: float, K_me: float
) -> float:
    """‖H|ψ⟩‖ for the three-level Raman Hamiltonian.

    H = Σ_j [ g e^{iK_ge j} a σ_eg^j + Ω e^{iK_me j} σ_em^j + h.c. ];
    the two-level state is embedded into the 3**N qutrit chain (|e⟩ = 2)
    with one spare photon slot for the a† terms.
    """
    N = state.N
    if N > TRIT_SITE_LIMIT:
        raise CapacityError(f"three-level residual check limited to N <= {TRIT_SITE_LIMIT}")
    grid = state.grid
    m_ph = state.n_max + 2
    psi3 = np.zeros((m_ph, 3**N), dtype=complex)
    masks = np.arange(1 << N)
    trit_index = np.zeros(1 << N, dtype=np.int64)
    for j in range(N):
        trit_index += ((masks >> j) & 1) * 3**j
    psi3[: state.n_max + 1, trit_index] = grid
    sites = np.arange(1, N + 1)
    g_coeffs = g * np.exp(1j * K_ge * sites)
    om_coeffs = omega * np.exp(1j * K_me * sites)
    h_psi = kernels.trit_hamiltonian_apply(psi3, N, g_coeffs, om_coeffs)
    return float(np.linalg.norm(h_psi))


def _jplus(state: OracleState) -> np.ndarray:
    ones = np.ones(state.N, dtype=complex)
    return kernels.apply_sigma_raise(state.grid, state.N, ones)


def _jminus(state: OracleState) -> np.ndarray:
    ones = np.ones(state.N, dtype=complex)
    return kernels.apply_sigma_lower(state.grid, state.N, ones)


def _jz_diag(state: OracleState) -> np.ndarray:
    return kernels.popcount_table(state.N) - state.N / 2.0


def expectation(state: OracleState, observable: str) -> float | complex:
    """Exact ⟨ψ|O|ψ⟩ for a named collective operator.

    Hermitian observables return floats; 'jminus2' and 'sp1sm2' return the
    complex expectation.  Site-resolved names use 1-based site labels.
    """
    grid = state.grid
    name = observable.lower().replace("^", "").replace("_", "")
    if name in ("adaga", "n", "nphot"):
        k = np.arange(grid.shape[0])
        return float(np.sum(k * np.sum(np.abs(grid) ** 2, axis=1)))
    if name == "n2fact":
        k = np.arange(grid.shape[0])
        return float(np.sum(k * (k - 1) * np.sum(np.abs(grid) ** 2, axis=1)))
    if name == "jz":
        return float(np.sum(_jz_diag(state) * np.sum(np.abs(grid) ** 2, axis=0)))
    if name == "jz2":
        return float(np.sum(_jz_diag(state) ** 2 * np.sum(np.abs(grid) ** 2, axis=0)))
    if name == "j2":
        up = _jplus(state)
        return float(
            np.linalg.norm(up) ** 2 + expectation(state, "jz2") + expectation(state, "jz")
        )
    if name in ("jx2", "jy2"):
        up = _jplus(state)
        dn = _jminus(state)
        jpjm = float(np.linalg.norm(dn) ** 2)
        jmjp = float(np.linalg.norm(up) ** 2)
        # <J+ J+> = <J- psi | J+ psi>
        jp2 = complex(np.vdot(dn, up))
        if name == "jx2":
            return 0.25 * (jpjm + jmjp + 2.0 * jp2.real)
        return 0.25 * (jpjm + jmjp - 2.0 * jp2.real)
    if name == "jminus2":
        up = _jplus(state)
        dn = _jminus(state)
        return complex(np.vdot(up, dn))
    if name == "sz1":
        bit0 = 2.0 * (np.arange(grid.shape[1]) & 1) - 1.0
        return float(np.sum(bit0 * np.sum(np.abs(grid) ** 2, axis=0)))
    if name == "sz1sz2":
        masks = np.arange(grid.shape[1])
        prod = (2.0 * (masks & 1) - 1.0) * (2.0 * ((masks >> 1) & 1) - 1.0)
        return float(np.sum(prod * np.sum(np.abs(grid) ** 2, axis=0)))
    if name == "sp1sm2":
        masks = np.arange(grid.shape[1])
        sel = ((masks & 1) == 0) & ((masks >> 1) & 1 == 1)
        src = masks[sel]
        return complex(np.sum(np.conj(grid[:, src - 1]) * grid[:, src]))
    raise ValueError(f"unknown observable {observable!r}")


def oracle_moments(state: OracleState) -> CollectiveMoments:
    """The five CollectiveMoments fields measured on the oracle state."""
    return CollectiveMoments(
        jz_mean=expectation(state, "jz"),
        jz2_mean=expectation(state, "jz2"),
        j2_mean=expectation(state, "j2"),
        n_mean=expectation(state, "n"),
        n2fact_mean=expectation(state, "n2fact"),
    )


def second_moment_matrix(state: OracleState) -> tuple[np.ndarray, np.ndarray]:
    """(first moments 3-vector, symmetrized 3×3 second-moment matrix).

    Built from the vectors J_α|ψ⟩: C_kl = Re⟨J_k ψ|J_l ψ⟩ (valid since the
    J_α are Hermitian and the symmetrization kills the imaginary part).
    """
    grid = state.grid
    up = _jplus(state)
    dn = _jminus(state)
    jx = 0.5 * (up + dn)
    jy = -0.5j * (up - dn)
    jz = _jz_diag(state)[None, :] * grid
    vecs = (jx, jy, jz)
    first = np.array([np.vdot(grid, v).real for v in vecs])
    second = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            second[a, b] = complex(np.vdot(vecs[a], vecs[b])).real
    return first, 0.5 * (second + second.T)


def photon_marginal(state: OracleState) -> np.ndarray:
    """Photon-number probabilities (the diagonal of the photon reduction)."""
    return np.sum(np.abs(state.grid) ** 2, axis=1)


def _pair_blocks(N: int, bit_i: int, bit_j: int) -> list[np.ndarray]:
    """Basis masks of the four local configurations (mm, mg, gm, gg)."""
    masks = np.arange(1 << N)
    rest = masks[(((masks >> bit_i) & 1) == 0) & (((masks >> bit_j) & 1) == 0)]
    blocks = []
    for a, b in ((1, 1), (1, 0), (0, 1), (0, 0)):
        blocks.append(rest + (a << bit_i) + (b << bit_j))
    return blocks


def reduce_two_site(state: OracleState, site_i: int, site_j: int) -> np.ndarray:
    """Exact 4×4 two-atom reduction in the basis (|mm⟩, |mg⟩, |gm⟩, |gg⟩).

    ``site_i`` and ``site_j`` are 1-based chain positions; the first basis
    label belongs to ``site_i``.
    """
    N = state.N
    if not (1 <= site_i <= N and 1 <= site_j <= N) or site_i == site_j:
        raise IndexError(f"need two distinct sites in 1..{N}, got {site_i}, {site_j}")
    blocks = _pair_blocks(N, site_i - 1, site_j - 1)
    grid = state.grid
    rho = np.empty((4, 4), dtype=complex)
    for r in range(4):
        for c in range(4):
            rho[r, c] = np.sum(grid[:, blocks[r]] * np.conj(grid[:, blocks[c]]))
    return rho


def reduce_spin_density(state: OracleState) -> np.ndarray:
    """Photon-traced spin density matrix (2**N × 2**N, N ≤ 8)."""
    if state.N > DENSITY_SITE_LIMIT:
        raise CapacityError(f"dense spin density limited to N <= {DENSITY_SITE_LIMIT}")
    grid = state.grid
    return np.einsum("ka,kb->ab", grid, np.conj(grid))


def reduce_two_site_density(rho: np.ndarray, N: int, site_i: int, site_j: int) -> np.ndarray:
    """4×4 reduction of a 2**N spin density, same basis as reduce_two_site."""
    if not (1 <= site_i <= N and 1 <= site_j <= N) or site_i == site_j:
        raise IndexError(f"need two distinct sites in 1..{N}, got {site_i}, {site_j}")
    blocks = _pair_blocks(N, site_i - 1, site_j - 1)
    out = np.empty((4, 4), dtype=complex)
    for r in range(4):
        for c in range(4):
            out[r, c] = np.sum(rho[blocks[r], blocks[c]])
    return out


def apply_kraus(
    rho: np.ndarray, kind: ChannelKind | str, p: ChannelStrength | float, N: int | None = None
) -> np.ndarray:
    """Per-site channel applied to every atom of a 2**N spin density."""
    dim = rho.shape[0]
    if N is None:
        N = int(dim).bit_length() - 1
    if dim != (1 << N) or rho.shape != (dim, dim):
        raise ValueError(f"density shape {rho.shape} does not match N={N}")
    if N > DENSITY_SITE_LIMIT:
        raise CapacityError(f"dense Kraus application limited to N <= {DENSITY_SITE_LIMIT}")
    ks = kraus_ops(kind, p)
    out = np.array(rho, dtype=complex)
    for j in range(N):
        out = kernels.kraus_site(out, N, j, ks)
    return out


_DENSE_OPS_CACHE: dict[int, dict[str, np.ndarray]] = {}


def _dense_ops(N: int) -> dict[str, np.ndarray]:
    """Dense collective operators on the 2**N spin space, cached per N."""
    ops = _DENSE_OPS_CACHE.get(N)
    if ops is not None:
        return ops
    dim = 1 << N
    jz_diag = kernels.popcount_table(N) - N / 2.0
    jp = np.zeros((dim, dim), dtype=complex)
    for mask in range(dim):
        for j in range(N):
            if not (mask >> j) & 1:
                jp[mask | (1 << j), mask] += 1.0
    jm = jp.conj().T
    jz = np.diag(jz_diag.astype(complex))
    j2 = jm @ jp + jz @ jz + jz
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    ops = {
        "jz": jz,
        "jz2": jz @ jz,
        "j2": j2,
        "jx2": jx @ jx,
        "jy2": jy @ jy,
        "jminus2": jm @ jm,
    }
    _DENSE_OPS_CACHE[N] = ops
    return ops


def density_moments(rho: np.ndarray, N: int) -> dict[str, float | complex]:
    """Spin moments of a 2**N density matrix (trace via elementwise sums)."""
    ops = _dense_ops(N)
    out: dict[str, float | complex] = {}
    for name, op in ops.items():
        val = complex(np.sum(rho * op.T))
        out[name] = val if name == "jminus2" else val.real
    return out
