"""Canned sweep datasets (fig2 … fig15).

Each tag reproduces one published-style curve or map as a :class:`Dataset`
with the generating parameters recorded in the metadata.  Tags accept a
restricted set of overrides; anything else is rejected so that a dataset's
metadata always describes exactly what was computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from darksqueeze.channels import (
    ChannelKind,
    evolved_concurrence,
    evolved_squeezing,
)
from darksqueeze.dataset import Dataset
from darksqueeze.errors import ConfigError, DegenerateDenominatorError
from darksqueeze.model import ModelParams, sub_poisson
from darksqueeze.pairwise import concurrence_x, rho12
from darksqueeze.protocol import (
    DecayRate,
    PulseSchedule,
    protocol_trace,
    rabi_pulses,
    refined_optimal_times,
    t1_variants,
)
from darksqueeze.squeezing import critical_K, dark_state_squeezing
from darksqueeze._version import __version__

__all__ = ["FIGURES", "figure", "figure_tags"]


def _zeta3(p: ModelParams) -> float:
    try:
        return dark_state_squeezing(p).zeta3_sq
    except DegenerateDenominatorError:
        return 0.0


def _xi3(p: ModelParams) -> float:
    try:
        return dark_state_squeezing(p).xi3_sq
    except DegenerateDenominatorError:
        return math.inf


def _conc(p: ModelParams) -> float:
    return concurrence_x(rho12(p))


def _theta_grid(points: int = 180) -> np.ndarray:
    """Uniform grid on [0, π) that lands exactly on π/2 for even counts."""
    return np.linspace(0.0, math.pi, points, endpoint=False)


def _int_override(ov: dict, key: str, default: int) -> int:
    value = ov.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise ConfigError(f"{key} must be an integer, got {value!r}")
        value = int(value)
    if value < 1:
        raise ConfigError(f"{key} must be >= 1, got {value}")
    return value


def _fig2(ov: dict) -> Dataset:
    N = _int_override(ov, "N", 20)
    thetas = [0.0, math.pi / 4, math.pi / 2]
    labels = ["theta0", "theta_pi_4", "theta_pi_2"]
    rows = []
    for n in range(N + 1):
        row: list = [n]
        for th in thetas:
            row.append(_zeta3(ModelParams(N=N, n=n, theta=th)))
        rows.append(row)
    return Dataset(
        columns=["n"] + [f"zeta3_{lab}" for lab in labels],
        rows=rows,
        metadata={"figure": "fig2", "N": N, "K": 0.0, "theta_values": thetas},
    )


def _fig3(ov: dict) -> Dataset:
    N = _int_override(ov, "N", 20)
    points = _int_override(ov, "points", 180)
    ns = [0, N // 2, N]
    rows = []
    for th in _theta_grid(points):
        row: list = [float(th)]
        for n in ns:
            row.append(_xi3(ModelParams(N=N, n=n, theta=float(th))))
        rows.append(row)
    return Dataset(
        columns=["theta"] + [f"xi3_n{n}" for n in ns],
        rows=rows,
        metadata={"figure": "fig3", "N": N, "K": 0.0, "n_values": ns},
    )


def _fig4(ov: dict) -> Dataset:
    N = _int_override(ov, "N", 20)
    points = _int_override(ov, "points", 80)
    rows = []
    for n in range(N + 1):
        for th in _theta_grid(points):
            rows.append([n, float(th), _zeta3(ModelParams(N=N, n=n, theta=float(th)))])
    return Dataset(
        columns=["n", "theta", "zeta3"],
        rows=rows,
        metadata={"figure": "fig4", "N": N, "K": 0.0},
    )


def _k_line(ov: dict, quantities: list[str], tag: str) -> Dataset:
    N = _int_override(ov, "N", 20)
    n = _int_override(ov, "n", 4)
    theta = float(ov.get("theta", math.pi / 2))
    points = _int_override(ov, "points", 401)
    ks = np.linspace(-math.pi, math.pi, points)
    rows = []
    for K in ks:
        p = ModelParams(N=N, n=n, theta=theta, K=float(K))
        row: list = [float(K)]
        for q in quantities:
            row.append({"xi3": _xi3, "zeta3": _zeta3, "conc": _conc}[q](p))
        rows.append(row)
    meta: dict = {"figure": tag, "N": N, "n": n, "theta": theta}
    return Dataset(columns=["K"] + quantities, rows=rows, metadata=meta)


def _fig5(ov: dict) -> Dataset:
    ds = _k_line(ov, ["xi3"], "fig5")
    kc = critical_K(ds.metadata["N"], ds.metadata["n"], ds.metadata["theta"])
    ds.metadata["K_c"] = float(kc)
    ds.metadata["xi3_at_K_c"] = _xi3(
        ModelParams(
            N=ds.metadata["N"], n=ds.metadata["n"], theta=ds.metadata["theta"], K=kc
        )
    )
    return ds


def _k_theta_map(ov: dict, quantity: str, tag: str) -> Dataset:
    N = _int_override(ov, "N", 20)
    n = _int_override(ov, "n", 4)
    k_points = _int_override(ov, "k_points", 161)
    theta_points = _int_override(ov, "theta_points", 80)
    fn = {"xi3": _xi3, "conc": _conc}[quantity]
    rows = []
    for K in np.linspace(-math.pi, math.pi, k_points):
        for th in _theta_grid(theta_points):
            rows.append(
                [float(K), float(th), fn(ModelParams(N=N, n=n, theta=float(th), K=float(K)))]
            )
    return Dataset(
        columns=["K", "theta", quantity],
        rows=rows,
        metadata={"figure": tag, "N": N, "n": n},
    )


def _fig6(ov: dict) -> Dataset:
    return _k_theta_map(ov, "xi3", "fig6")


def _fig7(ov: dict) -> Dataset:
    return _k_theta_map(ov, "conc", "fig7")


def _fig8(ov: dict) -> Dataset:
    return _k_line(ov, ["zeta3", "conc"], "fig8")


def _fig9(ov: dict) -> Dataset:
    N = _int_override(ov, "N", 20)
    n = _int_override(ov, "n", 4)
    points = _int_override(ov, "points", 180)
    rows = []
    for th in _theta_grid(points):
        p = ModelParams(N=N, n=n, theta=float(th))
        rows.append([float(th), _zeta3(p), sub_poisson(p)])
    return Dataset(
        columns=["theta", "zeta3", "s_p"],
        rows=rows,
        metadata={"figure": "fig9", "N": N, "n": n, "K": 0.0},
    )


def _p_sweep(
    ov: dict, kind: ChannelKind, n_default: int, thetas: list[tuple[str, float]], tag: str
) -> Dataset:
    N = _int_override(ov, "N", 20)
    n = _int_override(ov, "n", n_default)
    points = _int_override(ov, "p_points", 501)
    columns = ["p"]
    for lab, _ in thetas:
        columns += [f"zeta3_{lab}", f"conc_{lab}"]
    rows = []
    for pv in np.linspace(0.0, 1.0, points):
        row: list = [float(pv)]
        for _, th in thetas:
            params = ModelParams(N=N, n=n, theta=th)
            row.append(evolved_squeezing(kind, float(pv), params).zeta3_sq)
            row.append(evolved_concurrence(kind, float(pv), params))
        rows.append(row)
    return Dataset(
        columns=columns,
        rows=rows,
        metadata={
            "figure": tag,
            "N": N,
            "n": n,
            "channel": kind.name,
            "theta_values": [th for _, th in thetas],
        },
    )


def _fig10(ov: dict) -> Dataset:
    thetas = [
        ("theta_pi_3", math.pi / 3),
        ("theta_pi_2", math.pi / 2),
        ("theta_0p673pi", 0.673 * math.pi),
    ]
    return _p_sweep(ov, ChannelKind.ADC, 16, thetas, "fig10")


def _fig11(ov: dict) -> Dataset:
    theta = float(ov.get("theta", math.pi / 2))
    return _p_sweep(ov, ChannelKind.PDC, 16, [("theta_pi_2", theta)], "fig11")


def _fig12(ov: dict) -> Dataset:
    theta = float(ov.get("theta", math.pi / 2))
    return _p_sweep(ov, ChannelKind.DPC, 4, [("theta_pi_2", theta)], "fig12")


def _protocol_inputs(ov: dict) -> tuple[PulseSchedule, DecayRate, int]:
    tau = float(ov.get("tau", 150e-6))
    schedule = PulseSchedule(
        omega_m=float(ov.get("omega_m", 1e6)),
        tau=tau,
        a=float(ov.get("a", tau / 5.0)),
    )
    decay = DecayRate(float(ov.get("gamma", 1e3)))
    grid = _int_override(ov, "grid", 2000)
    return schedule, decay, grid


def _fig13(ov: dict) -> Dataset:
    schedule, _, _ = _protocol_inputs(ov)
    points = _int_override(ov, "points", 501)
    rows = []
    for t in np.linspace(0.0, schedule.tau, points):
        g, om = rabi_pulses(schedule, float(t))
        rows.append([float(t), g, om])
    return Dataset(
        columns=["t", "g", "omega"],
        rows=rows,
        metadata={
            "figure": "fig13",
            "omega_m": schedule.omega_m,
            "tau": schedule.tau,
            "a": schedule.a,
        },
    )


def _fig14(ov: dict) -> Dataset:
    N = _int_override(ov, "N", 20)
    n = _int_override(ov, "n", 4)
    kind = ChannelKind.coerce(ov.get("channel", "PDC"))
    schedule, decay, grid = _protocol_inputs(ov)
    params = ModelParams(N=N, n=n, theta=math.pi / 2)
    trace = protocol_trace(params, schedule, kind, decay, grid=grid)
    times = refined_optimal_times(params, schedule, kind, decay, trace=trace)
    variants = t1_variants(schedule)
    rows = [
        [float(t), float(th), float(pv), float(z), float(c), float(gm)]
        for t, th, pv, z, c, gm in zip(
            trace.times,
            trace.theta_t,
            trace.p_t,
            trace.zeta3_t,
            trace.conc_t,
            trace.gamma_t,
        )
    ]
    meta = {
        "figure": "fig14",
        "N": N,
        "n": n,
        "channel": kind.name,
        "omega_m": schedule.omega_m,
        "tau": schedule.tau,
        "a": schedule.a,
        "gamma": decay.gamma,
        "grid": grid,
    }
    meta.update(
        {
            k: (float(v) if isinstance(v, float) else v)
            for k, v in times.items()
        }
    )
    meta["t1_printed"] = variants["printed"]
    meta["t1_exact_tan"] = variants["exact_tan"]
    return Dataset(
        columns=["t", "theta", "p", "zeta3", "conc", "gamma_eff"],
        rows=rows,
        metadata=meta,
    )


def _fig15(ov: dict) -> Dataset:
    N = _int_override(ov, "N", 20)
    n = _int_override(ov, "n", 4)
    kind = ChannelKind.coerce(ov.get("channel", "PDC"))
    schedule, decay, grid = _protocol_inputs(ov)
    params = ModelParams(N=N, n=n, theta=math.pi / 2)
    trace = protocol_trace(params, schedule, kind, decay, grid=grid)
    rows = [
        [float(t), float(gm)] for t, gm in zip(trace.times, trace.gamma_t)
    ]
    best = int(np.argmax(trace.gamma_t))
    meta = {
        "figure": "fig15",
        "N": N,
        "n": n,
        "channel": kind.name,
        "omega_m": schedule.omega_m,
        "tau": schedule.tau,
        "a": schedule.a,
        "gamma": decay.gamma,
        "grid": grid,
        "t_retrieval_max": float(trace.times[best]),
        "retrieval_max": float(trace.gamma_t[best]),
    }
    return Dataset(columns=["t", "retrieval"], rows=rows, metadata=meta)


@dataclass(frozen=True)
class _FigureSpec:
    builder: Callable[[dict], Dataset]
    overridable: frozenset


_MODEL_KEYS = frozenset({"N", "n", "theta", "points"})
_K_KEYS = frozenset({"N", "n", "theta", "points"})
_MAP_KEYS = frozenset({"N", "n", "k_points", "theta_points"})
_CHANNEL_KEYS = frozenset({"N", "n", "theta", "p_points"})
_PROTOCOL_KEYS = frozenset({"N", "n", "channel", "omega_m", "tau", "a", "gamma", "grid"})

FIGURES: dict[str, _FigureSpec] = {
    "fig2": _FigureSpec(_fig2, frozenset({"N"})),
    "fig3": _FigureSpec(_fig3, frozenset({"N", "points"})),
    "fig4": _FigureSpec(_fig4, frozenset({"N", "points"})),
    "fig5": _FigureSpec(_fig5, _K_KEYS),
    "fig6": _FigureSpec(_fig6, _MAP_KEYS),
    "fig7": _FigureSpec(_fig7, _MAP_KEYS),
    "fig8": _FigureSpec(_fig8, _K_KEYS),
    "fig9": _FigureSpec(_fig9, _MODEL_KEYS),
    "fig10": _FigureSpec(_fig10, frozenset({"N", "n", "p_points"})),
    "fig11": _FigureSpec(_fig11, _CHANNEL_KEYS),
    "fig12": _FigureSpec(_fig12, _CHANNEL_KEYS),
    "fig13": _FigureSpec(_fig13, frozenset({"omega_m", "tau", "a", "points"})),
    "fig14": _FigureSpec(_fig14, _PROTOCOL_KEYS),
    "fig15": _FigureSpec(_fig15, _PROTOCOL_KEYS),
}


def figure_tags() -> list[str]:
    return sorted(FIGURES, key=lambda t: int(t.removeprefix("fig")))


def figure(tag: str, overrides: dict | None = None) -> Dataset:
    """Build the dataset behind one figure tag, with optional overrides."""
    spec = FIGURES.get(tag)
    if spec is None:
        raise ConfigError(
            f"unknown figure tag {tag!r}; available: {', '.join(figure_tags())}"
        )
    ov = dict(overrides or {})
    unknown = set(ov) - set(spec.overridable)
    if unknown:
        raise ConfigError(
            f"{tag} does not accept override(s) {sorted(unknown)}; "
            f"allowed: {sorted(spec.overridable)}"
        )
    ds = spec.builder(ov)
    ds.metadata["version"] = __version__
    return ds
