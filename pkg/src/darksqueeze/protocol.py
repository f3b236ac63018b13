"""Storage protocol: pulse schedule, adiabatic/decoherence time scales,
quasi-static squeezing/concurrence traces, and retrieval efficiency.

The write-in sequence ramps the quantum coupling g up and the classical
drive Ω down with hyperbolic-tangent profiles, sweeping the mixing angle
θ(t) = atan(g(t)√n/Ω(t)) from 0 to π/2 over a pulse of length τ.  Slower
ramps prepare better dark states but expose the atoms to dephasing for
longer — the strength grows as p(t) = 1 − e^{−γt} — and the competition
creates interior-optimal storage times.  Traces are built quasi-statically:
the ideal dark-state quantities at θ(t) are pushed through the decoherence
channel at strength p(t).  No master equation is integrated; this mirrors
how the closed-form snapshots are meant to be composed and is an
approximation by construction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from darksqueeze.channels import (
    ChannelKind,
    ChannelStrength,
    evolved_concurrence,
    evolved_squeezing,
)
from darksqueeze.errors import FlatTraceError
from darksqueeze.model import ModelParams
from darksqueeze.specfun import gauss_2f1_negneg_log, kummer_1f1_neg_log

__all__ = [
    "PulseSchedule",
    "DecayRate",
    "ProtocolTrace",
    "R_PRINTED",
    "R_EXACT_TAN",
    "rabi_pulses",
    "theta_of_t",
    "adiabatic_t1",
    "t1_variants",
    "decoherence_strength",
    "protocol_trace",
    "optimal_times",
    "refined_optimal_times",
    "retrieval_efficiency",
    "cross_correlation",
]

# Slope constant of the adiabatic-time condition: r = artanh of the pulse
# asymmetry at which theta passes pi/6.  The first value uses the
# small-angle replacement tan(pi/6) -> pi/6 (the form used throughout);
# the second keeps the exact tangent.  Both are exposed; see t1_variants.
R_PRINTED = math.atanh((6.0 - math.pi) / (6.0 + math.pi))
R_EXACT_TAN = math.atanh((1.0 - math.tan(math.pi / 6.0)) / (1.0 + math.tan(math.pi / 6.0)))


@dataclass(frozen=True)
class PulseSchedule:
    """Hyperbolic-tangent pulse pair: peak scale Ω_m, length τ, half-width a.

    Adiabatic following needs Ω_m·τ ≫ 1; below 10 the schedule is
    rejected, below 100 a warning is emitted.
    """

    omega_m: float
    tau: float
    a: float

    def __post_init__(self) -> None:
        if self.tau <= 0 or self.a <= 0 or self.omega_m <= 0:
            raise ValueError("omega_m, tau, a must all be positive")
        product = self.omega_m * self.tau
        if product < 10.0:
            raise ValueError(
                f"omega_m*tau = {product:.3g} is too small for adiabatic following (need >= 10)"
            )
        if product < 100.0:
            warnings.warn(
                f"omega_m*tau = {product:.3g} is marginal for adiabatic following",
                stacklevel=2,
            )


@dataclass(frozen=True)
class DecayRate:
    """Dephasing rate γ with its time scale t₂ = 1/γ."""

    gamma: float

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    @property
    def t2(self) -> float:
        return 1.0 / self.gamma


@dataclass(frozen=True)
class ProtocolTrace:
    """Aligned time series of one storage run."""

    times: np.ndarray = field(repr=False)
    theta_t: np.ndarray = field(repr=False)
    p_t: np.ndarray = field(repr=False)
    zeta3_t: np.ndarray = field(repr=False)
    conc_t: np.ndarray = field(repr=False)
    gamma_t: np.ndarray = field(repr=False)


def rabi_pulses(s: PulseSchedule, t: float) -> tuple[float, float]:
    """(g(t), Ω(t)) of the tanh pulse pair.

    g = Ω_m[1 − tanh(a/t + a/(t−τ))], Ω = Ω_m[1 + tanh(a/t + a/(t−τ))];
    endpoints take the analytic limits (0, 2Ω_m) and (2Ω_m, 0).
    """
    if t <= 0.0:
        return 0.0, 2.0 * s.omega_m
    if t >= s.tau:
        return 2.0 * s.omega_m, 0.0
    arg = s.a / t + s.a / (t - s.tau)
    th = math.tanh(arg)
    return s.omega_m * (1.0 - th), s.omega_m * (1.0 + th)


def theta_of_t(s: PulseSchedule, n: int, t: float) -> float:
    """Mixing angle θ(t) = atan2(g(t)·√n, Ω(t)) ∈ [0, π/2].

    n = 0 returns π/2 by convention (nothing to store; the trace then sits
    at the photon-vacuum dark state).
    """
    if n == 0:
        return math.pi / 2.0
    g, om = rabi_pulses(s, t)
    return math.atan2(g * math.sqrt(n), om)


def adiabatic_t1(s: PulseSchedule, r: float = R_PRINTED) -> float:
    """Adiabatic onset time t₁: the solution of a/t + a/(t−τ) = r.

    t₁ = (2a + τr − √(4a² + τ²r²)) / (2r).  For a ≫ τ the ramp flattens
    and t₁ → τ/2.
    """
    a, tau = s.a, s.tau
    return (2.0 * a + tau * r - math.sqrt(4.0 * a * a + tau * tau * r * r)) / (2.0 * r)


def t1_variants(s: PulseSchedule) -> dict[str, float]:
    """Both t₁ conventions: small-angle ('printed') and exact-tangent slope."""
    return {
        "printed": adiabatic_t1(s, R_PRINTED),
        "exact_tan": adiabatic_t1(s, R_EXACT_TAN),
    }


def decoherence_strength(d: DecayRate, t: float) -> ChannelStrength:
    """Accumulated decoherence p(t) = 1 − e^{−γt}."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    return ChannelStrength(-math.expm1(-d.gamma * t))


def retrieval_efficiency(N: int, n: int, theta: float, gamma_t: float) -> float:
    """Retrieval efficiency Γ of an n-excitation spin wave after dephasing.

        Γ = [n!(N−n)!/N!] · ₂F₁(n−N, −n; 1; e^{−2γt}) / ₁F₁(−n; N−n+1; −N cot²θ)

    evaluated fully in the log domain.  Γ(θ=π/2, γt=0) = 1 exactly
    (Chu–Vandermonde collapses the ₂F₁ to C(N,n)); θ ≤ 0 returns 0 by the
    vanishing-overlap convention.
    """
    if not 0 <= n <= N:
        raise ValueError(f"need 0 <= n <= N, got n={n}, N={N}")
    if gamma_t < 0:
        raise ValueError(f"gamma_t must be nonnegative, got {gamma_t}")
    if theta <= 0.0:
        return 0.0
    log_pre = math.lgamma(n + 1) + math.lgamma(N - n + 1) - math.lgamma(N + 1)
    _, log_f21 = gauss_2f1_negneg_log(N - n, n, 1.0, math.exp(-2.0 * gamma_t))
    cot = math.cos(theta) / math.sin(theta)
    z = N * cot * cot
    if z == 0.0:
        log_f11 = 0.0
    else:
        _, log_f11 = kummer_1f1_neg_log(n, N - n + 1, -z)
    value = math.exp(log_pre + log_f21 - log_f11)
    return min(max(value, 0.0), 1.0)


def cross_correlation(c_fit: float, gamma_t_value: float) -> float:
    """Cross-correlation estimate g_{S,AS} = 1 + C·Γ for fitted contrast C."""
    if c_fit < 0:
        raise ValueError(f"c_fit must be nonnegative, got {c_fit}")
    if not 0.0 <= gamma_t_value <= 1.0:
        raise ValueError(f"retrieval efficiency must lie in [0, 1], got {gamma_t_value}")
    return 1.0 + c_fit * gamma_t_value


def protocol_trace(
    params: ModelParams,
    s: PulseSchedule,
    kind: ChannelKind | str,
    d: DecayRate,
    grid: int = 2000,
) -> ProtocolTrace:
    """Quasi-static storage trace on a uniform grid over (0, τ].

    ``params.theta`` is ignored; θ follows the pulses.  At each time the
    dark-state quantities at θ(t) are evolved through the channel at
    strength p(t), and the retrieval efficiency Γ(θ(t), γt) is attached.
    """
    if params.K != 0.0:
        raise ValueError("protocol traces are defined for K = 0 only")
    if grid < 2:
        raise ValueError(f"grid must be at least 2, got {grid}")
    kind = ChannelKind.coerce(kind)
    times = s.tau * np.arange(1, grid + 1) / grid
    theta_t = np.empty(grid)
    p_t = np.empty(grid)
    zeta3_t = np.empty(grid)
    conc_t = np.empty(grid)
    gam_t = np.empty(grid)
    for i, t in enumerate(times):
        th = theta_of_t(s, params.n, float(t))
        strength = decoherence_strength(d, float(t))
        pt = ModelParams(N=params.N, n=params.n, theta=th, K=0.0, pair_sep=params.pair_sep)
        theta_t[i] = th
        p_t[i] = strength.p
        zeta3_t[i] = evolved_squeezing(kind, strength, pt).zeta3_sq
        conc_t[i] = evolved_concurrence(kind, strength, pt)
        gam_t[i] = retrieval_efficiency(params.N, params.n, th, d.gamma * float(t))
    return ProtocolTrace(
        times=times,
        theta_t=theta_t,
        p_t=p_t,
        zeta3_t=zeta3_t,
        conc_t=conc_t,
        gamma_t=gam_t,
    )


def optimal_times(trace: ProtocolTrace) -> tuple[float, float]:
    """Grid argmax times (t_s, t_c) of ζ₃²(t) and C(t), earliest on ties."""
    if len(trace.times) == 0:
        raise FlatTraceError("empty trace")
    out = []
    for values, label in ((trace.zeta3_t, "squeezing"), (trace.conc_t, "concurrence")):
        if float(np.max(values)) <= 0.0:
            raise FlatTraceError(f"{label} never becomes positive along the trace")
        out.append(float(trace.times[int(np.argmax(values))]))
    return out[0], out[1]


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximization of a unimodal f on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = f(x1)
    return 0.5 * (lo + hi)


def refined_optimal_times(
    params: ModelParams,
    s: PulseSchedule,
    kind: ChannelKind | str,
    d: DecayRate,
    grid: int = 2000,
    trace: ProtocolTrace | None = None,
) -> dict[str, float | bool]:
    """Optimal times refined by golden-section search around the grid argmax.

    Returns t_s, t_c (refined to 1e−9·τ), the adiabatic/decoherence time
    scales t1 and t2, and the ``optimal_exists`` flag t1 > t2 (the regime
    where ramping slower already costs more coherence than it gains).
    A precomputed ``trace`` (same params/schedule/channel/decay) may be
    passed to skip the grid scan.
    """
    kind = ChannelKind.coerce(kind)
    if trace is None:
        trace = protocol_trace(params, s, kind, d, grid=grid)
    else:
        grid = len(trace.times)
    t_s_grid, t_c_grid = optimal_times(trace)

    def zeta_at(t: float) -> float:
        th = theta_of_t(s, params.n, t)
        pt = ModelParams(N=params.N, n=params.n, theta=th, K=0.0, pair_sep=params.pair_sep)
        return evolved_squeezing(kind, decoherence_strength(d, t), pt).zeta3_sq

    def conc_at(t: float) -> float:
        th = theta_of_t(s, params.n, t)
        pt = ModelParams(N=params.N, n=params.n, theta=th, K=0.0, pair_sep=params.pair_sep)
        return evolved_concurrence(kind, decoherence_strength(d, t), pt)

    step = s.tau / grid
    tol = 1e-9 * s.tau
    t_s = _golden_max(zeta_at, max(t_s_grid - step, step * 1e-6), min(t_s_grid + step, s.tau), tol)
    t_c = _golden_max(conc_at, max(t_c_grid - step, step * 1e-6), min(t_c_grid + step, s.tau), tol)
    t1 = adiabatic_t1(s)
    return {
        "t_s": t_s,
        "t_c": t_c,
        "t1": t1,
        "t2": d.t2,
        "optimal_exists": t1 > d.t2,
    }
