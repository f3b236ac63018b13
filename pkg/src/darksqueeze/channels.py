"""Single-atom decoherence channels applied to dark-state quantities.

Three channels act independently and identically on every atom (never on
the photon): amplitude damping (ADC, energy loss to the ground state),
phase damping (PDC, off-diagonal decay) and depolarizing (DPC, isotropic
contraction).  All are parameterized by a strength p ∈ [0, 1], s = 1 − p.

Everything here is closed-form: the channels act on single-atom Pauli
expectations as

    ADC:  σx, σy → √s σ,   σz → s σz − p
    PDC:  σx, σy → s σ,    σz → σz
    DPC:  σx, σy, σz → s σ

and collective moments / two-atom elements evolve by summing those rules
over sites.  The matching Kraus sets (used by the brute-force oracle) are
exposed for cross-validation.

The collective-moment forms below follow from the Pauli rules above; they
are cross-checked term-by-term against per-site Kraus application on the
full density matrix in the test suite.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from darksqueeze.errors import DegenerateDenominatorError, NonPhysicalStateError
from darksqueeze.model import CollectiveMoments, ModelParams, collective_moments
from darksqueeze.pairwise import TwoQubitState, assemble_x_matrix, rho12
from darksqueeze.squeezing import SqueezingReport, squeezing_from_moments

__all__ = [
    "ChannelKind",
    "ChannelStrength",
    "kraus_ops",
    "evolve_moments",
    "evolved_squeezing",
    "evolved_rho12",
    "evolved_concurrence",
    "sudden_death",
]


class ChannelKind(enum.Enum):
    ADC = "adc"
    PDC = "pdc"
    DPC = "dpc"

    @classmethod
    def coerce(cls, value: "ChannelKind | str") -> "ChannelKind":
        if isinstance(value, cls):
            return value
        try:
            return cls[str(value).upper()]
        except KeyError:
            raise ValueError(
                f"unknown channel kind {value!r}; expected one of "
                f"{[k.name for k in cls]}"
            ) from None


@dataclass(frozen=True)
class ChannelStrength:
    """Decoherence strength p ∈ [0, 1] with its complement s = 1 − p."""

    p: float

    def __post_init__(self) -> None:
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"channel strength p must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)

    @property
    def s(self) -> float:
        return 1.0 - self.p

    @classmethod
    def coerce(cls, value: "ChannelStrength | float") -> "ChannelStrength":
        return value if isinstance(value, cls) else cls(float(value))


def kraus_ops(kind: ChannelKind | str, p: ChannelStrength | float) -> list[np.ndarray]:
    """Single-atom Kraus set over the local basis (index 0 = |g⟩, 1 = |m⟩).

    ADC: population decay m → g with probability p, coherences × √s.
    PDC: coherences × s, populations fixed.
    DPC: ρ → (1−p) ρ + p I/2.
    """
    kind = ChannelKind.coerce(kind)
    st = ChannelStrength.coerce(p)
    pv, sv = st.p, st.s
    if kind is ChannelKind.ADC:
        return [
            np.array([[1.0, 0.0], [0.0, math.sqrt(sv)]], dtype=complex),
            np.array([[0.0, math.sqrt(pv)], [0.0, 0.0]], dtype=complex),
        ]
    if kind is ChannelKind.PDC:
        return [
            math.sqrt(1.0 - pv / 2.0) * np.eye(2, dtype=complex),
            math.sqrt(pv / 2.0) * np.diag([1.0, -1.0]).astype(complex),
        ]
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.diag([1.0, -1.0]).astype(complex)
    return [
        math.sqrt(1.0 - 3.0 * pv / 4.0) * np.eye(2, dtype=complex),
        math.sqrt(pv / 4.0) * sx,
        math.sqrt(pv / 4.0) * sy,
        math.sqrt(pv / 4.0) * sz,
    ]


def evolve_moments(
    kind: ChannelKind | str,
    p: ChannelStrength | float,
    initial: CollectiveMoments,
    N: int,
) -> CollectiveMoments:
    """Channel-evolved collective moments; photon moments pass through.

    ADC:  ⟨Jz⟩   → s⟨Jz⟩₀ − Np/2
          ⟨Jz²⟩  → s²⟨Jz²⟩₀ − (N−1)sp⟨Jz⟩₀ + Nps/2 + N²p²/4
          ⟨J²⟩   → s⟨J²⟩₀ − sp⟨Jz²⟩₀ − (N−1)sp⟨Jz⟩₀ + Np(1+s)/2 + N²p²/4
    PDC:  z-moments fixed; ⟨J²⟩ → s²⟨J²⟩₀ + (1−s²)(⟨Jz²⟩₀ + N/2)
    DPC:  ⟨Jz⟩ → s⟨Jz⟩₀; ⟨Jz²⟩ → s²⟨Jz²⟩₀ + (1−s²)N/4;
          ⟨J²⟩ → s²⟨J²⟩₀ + (1−s²)·3N/4
    """
    kind = ChannelKind.coerce(kind)
    st = ChannelStrength.coerce(p)
    pv, sv = st.p, st.s
    jz0, jz20, j20 = initial.jz_mean, initial.jz2_mean, initial.j2_mean
    if kind is ChannelKind.ADC:
        jz = sv * jz0 - N * pv / 2.0
        jz2 = sv**2 * jz20 - (N - 1) * sv * pv * jz0 + N * pv * sv / 2.0 + (N * pv / 2.0) ** 2
        j2 = (
            sv * j20
            - sv * pv * jz20
            - (N - 1) * sv * pv * jz0
            + N * pv * (1.0 + sv) / 2.0
            + (N * pv / 2.0) ** 2
        )
    elif kind is ChannelKind.PDC:
        jz = jz0
        jz2 = jz20
        j2 = sv**2 * j20 + (1.0 - sv**2) * (jz20 + N / 2.0)
    else:
        jz = sv * jz0
        jz2 = sv**2 * jz20 + (1.0 - sv**2) * N / 4.0
        j2 = sv**2 * j20 + (1.0 - sv**2) * 3.0 * N / 4.0
    return CollectiveMoments(
        jz_mean=jz,
        jz2_mean=jz2,
        j2_mean=j2,
        n_mean=initial.n_mean,
        n2fact_mean=initial.n2fact_mean,
    )


def evolved_squeezing(
    kind: ChannelKind | str,
    p: ChannelStrength | float,
    params: ModelParams,
) -> SqueezingReport:
    """Squeezing report of the channel-evolved dark state (K = 0 only).

    When the reference denominator (4/N²)⟨J²(p)⟩ − 2/N falls to ≤ 1e−14
    (possible as p → 1 under PDC/DPC), squeezing is reported absent
    (ξ₃² = ∞, ζ₃² = 0) instead of dividing.
    """
    if params.K != 0.0:
        raise ValueError("channel evolution is defined for K = 0 only")
    if params.N < 2:
        raise ValueError("squeezing criteria need N >= 2")
    m = evolve_moments(kind, p, collective_moments(params), params.N)
    N = params.N
    denom = (4.0 / N**2) * m.j2_mean - 2.0 / N
    if denom <= 1e-14:
        var_z = m.jz2_mean - m.jz_mean**2
        varsigma = (4.0 / N**2) * (N * var_z + m.jz_mean**2)
        xi1 = (2.0 / N) * (m.j2_mean - m.jz2_mean)
        xi2 = (N**2 / (4.0 * m.j2_mean)) * xi1 if m.j2_mean > 0 else math.inf
        return SqueezingReport(
            xi1_sq=xi1,
            xi2_sq=xi2,
            xi3_sq=math.inf,
            varsigma_sq=varsigma,
            zeta3_sq=0.0,
        )
    return squeezing_from_moments(N, m)


def _assembly_min_eig(state: TwoQubitState) -> float:
    return float(np.linalg.eigvalsh(assemble_x_matrix(state)).min())


def evolved_rho12(
    kind: ChannelKind | str,
    p: ChannelStrength | float,
    initial: TwoQubitState,
    params: ModelParams | None = None,
) -> TwoQubitState:
    """Channel-evolved two-atom elements.

    ADC:  v₊ → s²v₊;  w → sw + spv₊;  v₋ → v₋ + 2pw + p²v₊;  y → sy;  u → su
    PDC:  populations fixed;  y → s²y;  u → s²u
    DPC:  v± → (s²+s)/2 v± + (s²−s)/2 v∓ + (1−s²)/4;
          w → s²w + (1−s²)/4;  y → s²y;  u → s²u

    (``params`` is accepted for interface symmetry; the elements alone
    determine the evolution.)  The channels are completely positive, so a
    positive-semidefinite input assembly must stay positive; violation of
    that raises, signalling misuse of the element formulas.
    """
    kind = ChannelKind.coerce(kind)
    st = ChannelStrength.coerce(p)
    pv, sv = st.p, st.s
    v_p, v_m, w, y, u = initial.v_plus, initial.v_minus, initial.w, initial.y, initial.u
    if kind is ChannelKind.ADC:
        out = TwoQubitState(
            v_plus=sv**2 * v_p,
            v_minus=v_m + 2.0 * pv * w + pv**2 * v_p,
            w=sv * w + sv * pv * v_p,
            y=sv * y,
            u=sv * u,
        )
    elif kind is ChannelKind.PDC:
        out = TwoQubitState(v_plus=v_p, v_minus=v_m, w=w, y=sv**2 * y, u=sv**2 * u)
    else:
        mix_same = (sv**2 + sv) / 2.0
        mix_swap = (sv**2 - sv) / 2.0
        offset = (1.0 - sv**2) / 4.0
        out = TwoQubitState(
            v_plus=mix_same * v_p + mix_swap * v_m + offset,
            v_minus=mix_same * v_m + mix_swap * v_p + offset,
            w=sv**2 * w + offset,
            y=sv**2 * y,
            u=sv**2 * u,
        )
    if _assembly_min_eig(initial) >= -1e-10 and _assembly_min_eig(out) < -1e-10:
        raise NonPhysicalStateError(
            "channel evolution broke positivity of the assembled state"
        )
    return out


def _signed_concurrence(state: TwoQubitState) -> float:
    root = math.sqrt(max(state.v_plus, 0.0) * max(state.v_minus, 0.0))
    return 2.0 * max(abs(state.y) - root, abs(complex(state.u)) - state.w)


def evolved_concurrence(
    kind: ChannelKind | str,
    p: ChannelStrength | float,
    params: ModelParams,
) -> float:
    """Concurrence of the channel-evolved two-atom state.

    Equals the two-branch X-state formula on the evolved elements, e.g.
    for ADC: max{0, 2(sw|cosφ| − √(v₊^A v₋^A)), 2(sw|sinφ| − w^A)}.
    """
    ev = evolved_rho12(kind, p, rho12(params), params)
    return max(0.0, _signed_concurrence(ev))


def sudden_death(
    kind: ChannelKind | str,
    params: ModelParams,
    quantity: str,
    grid_points: int = 1000,
    tol: float = 1e-8,
) -> float | None:
    """Smallest p* ∈ (0, 1] where ``quantity`` ("squeezing"/"concurrence")
    first reaches zero; None if it stays positive on all of [0, 1].

    Located by a grid scan and bisection on a signed indicator (1 − ξ₃²(p)
    for squeezing, the unclamped concurrence branch maximum otherwise).
    """
    kind = ChannelKind.coerce(kind)
    q = quantity.lower()
    if q == "squeezing":

        def signed(pv: float) -> float:
            rep = evolved_squeezing(kind, pv, params)
            return 1.0 - rep.xi3_sq

    elif q == "concurrence":
        initial = rho12(params)

        def signed(pv: float) -> float:
            return _signed_concurrence(evolved_rho12(kind, pv, initial, params))

    else:
        raise ValueError(f"unknown quantity {quantity!r}; expected squeezing|concurrence")

    if signed(0.0) <= 0.0:
        raise ValueError(f"{q} is not positive at p = 0 for {params}")
    lo = 0.0
    hi = None
    for i in range(1, grid_points + 1):
        pv = i / grid_points
        if signed(pv) <= 0.0:
            hi = pv
            break
        lo = pv
    if hi is None:
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if signed(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
