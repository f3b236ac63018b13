#!/usr/bin/env python3
"""Compare the compiled kernel extension against the pure-NumPy fallback.

The hot kernels are timed in-process by importing both implementation
modules side by side (they share one interface), with a parity column
reporting the largest output difference on identical inputs.

Inputs matter here: the compiled kernels skip zero amplitudes, and the
states this library actually produces are sparse in the computational
basis (a fixed-excitation sector populates C(N, k) of the 2**N masks),
so each kernel is timed both on a real dark-state workload and on a
dense random array of the same shape.  The dense rows are the worst
case for the extension; NumPy can win there because its strided block
operations stream whole arrays regardless of content.

The end-to-end row re-runs a small oracle workload in fresh
interpreters, because backend selection happens at import time
(``DARKSQUEEZE_PURE_PYTHON=1`` forces the fallback).

Usage::

    python benchmarks/bench_kernels.py [--repeat 7]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from darksqueeze import ModelParams, _kernels_py
from darksqueeze.channels import kraus_ops
from darksqueeze.oracle import build_dark_state, reduce_spin_density

try:
    from darksqueeze import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None


END_TO_END = """
import time
from darksqueeze import ModelParams, annihilation_residual
from darksqueeze.kernels import BACKEND
from darksqueeze.oracle import build_dark_state, oracle_moments
p = ModelParams(N=10, n=5, theta=1.1, K=0.3)
build_dark_state(p)  # warm NumPy internals
t0 = time.perf_counter()
st = build_dark_state(p)
oracle_moments(st)
annihilation_residual(p)
print(BACKEND, time.perf_counter() - t0)
"""


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def trit_embedding(N: int, n: int, theta: float, K: float) -> np.ndarray:
    """The (n+2, 3**N) two-level-in-three-level embedding the residual uses."""
    grid = build_dark_state(ModelParams(N=N, n=n, theta=theta, K=K)).grid
    psi3 = np.zeros((n + 2, 3**N), dtype=complex)
    masks = np.arange(1 << N)
    trit_index = np.zeros(1 << N, dtype=np.int64)
    for j in range(N):
        trit_index += ((masks >> j) & 1) * 3**j
    psi3[: n + 1, trit_index] = grid
    return psi3


def make_cases(rng: np.random.Generator):
    N_spin, n_spin = 16, 8
    grid = build_dark_state(ModelParams(N=N_spin, n=n_spin, theta=1.1, K=0.3)).grid
    dense = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    dense /= np.linalg.norm(dense)
    ones = np.ones(N_spin, dtype=complex)

    N_trit, n_trit = 10, 5
    psi3 = trit_embedding(N_trit, n_trit, 1.1, 0.3)
    dense3 = rng.standard_normal(psi3.shape) + 1j * rng.standard_normal(psi3.shape)
    dense3 /= np.linalg.norm(dense3)
    sites = np.arange(1, N_trit + 1)
    g_coeffs = 0.8 * np.exp(1j * 0.3 * sites)
    om_coeffs = 0.6 * np.exp(0j * sites)

    N_rho = 8
    rho = reduce_spin_density(build_dark_state(ModelParams(N=N_rho, n=4, theta=1.1)))
    kraus = [k.astype(complex) for k in kraus_ops("ADC", 0.3)]

    return [
        (
            f"apply_sigma_raise (N={N_spin} dark state)",
            lambda impl: impl.apply_sigma_raise(grid, N_spin, ones),
        ),
        (
            f"apply_sigma_raise (N={N_spin} dense)",
            lambda impl: impl.apply_sigma_raise(dense, N_spin, ones),
        ),
        (
            f"apply_sigma_lower (N={N_spin} dark state)",
            lambda impl: impl.apply_sigma_lower(grid, N_spin, ones),
        ),
        (
            f"trit_hamiltonian_apply (N={N_trit} embed)",
            lambda impl: impl.trit_hamiltonian_apply(psi3, N_trit, g_coeffs, om_coeffs),
        ),
        (
            f"trit_hamiltonian_apply (N={N_trit} dense)",
            lambda impl: impl.trit_hamiltonian_apply(dense3, N_trit, g_coeffs, om_coeffs),
        ),
        (
            f"kraus_site ADC (N={N_rho} spin density)",
            lambda impl: impl.kraus_site(rho, N_rho, 3, kraus),
        ),
        (
            "popcount_table (N=22)",
            lambda impl: impl.popcount_table(22),
        ),
    ]


def run_end_to_end(pure: bool) -> tuple[str, float]:
    env = dict(os.environ)
    env.pop("DARKSQUEEZE_PURE_PYTHON", None)
    if pure:
        env["DARKSQUEEZE_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", END_TO_END],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    ).stdout.split()
    return out[0], float(out[1])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=7, help="best-of repetitions")
    args = ap.parse_args()

    rng = np.random.default_rng(20240830)
    cases = make_cases(rng)

    header = (
        f"{'kernel':44s} {'python':>10s} {'compiled':>10s} {'speedup':>8s} {'max |diff|':>11s}"
    )
    print(header)
    print("-" * len(header))
    for name, call in cases:
        ref = call(_kernels_py)
        t_py = best_of(lambda: call(_kernels_py), args.repeat)
        if _kernels is None:
            print(f"{name:44s} {t_py * 1e3:9.2f}ms {'n/a':>10s} {'n/a':>8s} {'n/a':>11s}")
            continue
        got = call(_kernels)
        t_cy = best_of(lambda: call(_kernels), args.repeat)
        diff = float(np.abs(np.asarray(got) - np.asarray(ref)).max())
        print(
            f"{name:44s} {t_py * 1e3:9.2f}ms {t_cy * 1e3:9.2f}ms "
            f"{t_py / t_cy:7.1f}x {diff:11.2e}"
        )

    backend_py, t_py = run_end_to_end(pure=True)
    backend_auto, t_auto = run_end_to_end(pure=False)
    print("-" * len(header))
    print(
        f"{'oracle build+moments+residual (N=10,n=5)':44s} {t_py * 1e3:9.2f}ms "
        f"{t_auto * 1e3:9.2f}ms {t_py / t_auto:7.1f}x {'':>11s}"
        f"  [{backend_py} vs {backend_auto}]"
    )
    if backend_auto == backend_py:
        print("note: compiled extension not importable; both rows ran the fallback")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
