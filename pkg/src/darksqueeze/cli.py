"""Command-line front end.

Subcommands
-----------
figure TAG        reproduce one canned dataset (fig2 … fig15)
sweep             evaluate a scalar quantity over a 1- or 2-axis grid
oracle-check      run the closed-form vs brute-force suite, exit 4 on failure

Angles accept a ``pi:`` prefix (``pi:0.5`` = π/2) to avoid decimal-π drift.
Exit codes: 0 success, 2 configuration error, 3 capacity error,
4 verification failure.
"""

from __future__ import annotations

import argparse
import functools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from darksqueeze._version import __version__
from darksqueeze.channels import evolved_concurrence, evolved_squeezing
from darksqueeze.dataset import Dataset
from darksqueeze.errors import (
    CapacityError,
    ConfigError,
    DarksqueezeError,
    DegenerateDenominatorError,
)
from darksqueeze.figures import figure, figure_tags
from darksqueeze.model import ModelParams, collective_moments, sub_poisson
from darksqueeze.pairwise import concurrence_x, rho12
from darksqueeze.protocol import retrieval_efficiency
from darksqueeze.squeezing import dark_state_squeezing
from darksqueeze.verify import oracle_suite

__all__ = ["main", "evaluate_quantity", "parse_angle"]

QUANTITIES = ("zeta3", "xi1", "xi2", "xi3", "varsigma", "concurrence", "s_p", "retrieval")
AXIS_NAMES = ("N", "n", "theta", "K", "pair_sep", "p", "gamma_t")
_INT_AXES = frozenset({"N", "n", "pair_sep"})
WORKERS_ENV = "DARKSQUEEZE_WORKERS"

_PARAM_DESTS = (
    "N",
    "n",
    "theta",
    "K",
    "pair_sep",
    "channel",
    "p",
    "gamma",
    "gamma_t",
    "tau",
    "a",
    "omega_m",
    "grid",
    "points",
    "p_points",
    "k_points",
    "theta_points",
)
_COMMON_DESTS = ("out", "format", "workers")


def parse_angle(text: str | float) -> float:
    """Parse a plain float or a 'pi:x' multiple of π."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    s = str(text).strip()
    if s.lower().startswith("pi:"):
        return math.pi * float(s[3:])
    return float(s)


def _attr(report, quantity: str) -> float:
    return getattr(report, quantity + "_sq")


def _degenerate_fallback(quantity: str, params: ModelParams) -> float:
    """Squeezing quantities when the ratio denominator hits zero."""
    if quantity == "zeta3":
        return 0.0
    if quantity in ("xi2", "xi3"):
        return math.inf
    m = collective_moments(params)
    N = params.N
    var = m.jz2_mean - m.jz_mean**2
    varsigma = (4.0 / N**2) * (N * var + m.jz_mean**2)
    if quantity == "varsigma":
        return varsigma
    # xi1 under the dark-state transverse identities (⟨Jx²+Jy²⟩ = ⟨J²⟩−⟨Jz²⟩,
    # ⟨J₋²⟩ = 0)
    return (2.0 / N) * (m.j2_mean - m.jz2_mean)


def evaluate_quantity(quantity: str, assignment: dict) -> float:
    """Evaluate one exposed scalar at one parameter point."""
    if quantity not in QUANTITIES:
        raise ConfigError(
            f"unknown quantity {quantity!r}; expected one of {', '.join(QUANTITIES)}"
        )
    try:
        N = int(assignment["N"])
        n = int(assignment["n"])
    except KeyError as exc:
        raise ConfigError(f"missing required parameter {exc.args[0]!r}") from None
    theta = parse_angle(assignment.get("theta", math.pi / 2))
    K = parse_angle(assignment.get("K", 0.0))
    pair_sep = int(assignment.get("pair_sep", 1))
    if quantity == "retrieval":
        return retrieval_efficiency(N, n, theta, float(assignment.get("gamma_t", 0.0)))
    params = ModelParams(N=N, n=n, theta=theta, K=K, pair_sep=pair_sep)
    if quantity == "s_p":
        return sub_poisson(params)
    channel = assignment.get("channel")
    strength = float(assignment.get("p", 0.0))
    if quantity == "concurrence":
        if channel is not None:
            return evolved_concurrence(channel, strength, params)
        return concurrence_x(rho12(params))
    if channel is not None:
        report = evolved_squeezing(channel, strength, params)
        return _attr(report, quantity)
    try:
        report = dark_state_squeezing(params)
    except DegenerateDenominatorError:
        return _degenerate_fallback(quantity, params)
    return _attr(report, quantity)


def _eval_point(quantity: str, fixed: dict, names: tuple, values: tuple) -> float:
    assignment = dict(fixed)
    assignment.update(zip(names, values))
    return evaluate_quantity(quantity, assignment)


def _resolve_workers(cli_value: int | None) -> int:
    if cli_value is not None:
        value = cli_value
    elif os.environ.get(WORKERS_ENV):
        try:
            value = int(os.environ[WORKERS_ENV])
        except ValueError:
            raise ConfigError(
                f"{WORKERS_ENV} must be an integer, got {os.environ[WORKERS_ENV]!r}"
            ) from None
    else:
        value = os.cpu_count() or 1
    if value < 1:
        raise ConfigError(f"worker count must be >= 1, got {value}")
    return value


def _axis_values(name: str, start: str, stop: str, count: str) -> list:
    if name not in AXIS_NAMES:
        raise ConfigError(
            f"unknown axis {name!r}; expected one of {', '.join(AXIS_NAMES)}"
        )
    try:
        npts = int(count)
    except ValueError:
        raise ConfigError(f"axis {name}: count must be an integer, got {count!r}") from None
    if npts < 1:
        raise ConfigError(f"axis {name}: empty range (count={npts})")
    lo = parse_angle(start) if name in ("theta", "K") else float(start)
    hi = parse_angle(stop) if name in ("theta", "K") else float(stop)
    grid = [lo] if npts == 1 else list(np.linspace(lo, hi, npts))
    if name in _INT_AXES:
        out = []
        for v in grid:
            r = round(v)
            if abs(v - r) > 1e-9:
                raise ConfigError(
                    f"axis {name}: grid value {v} is not an integer; "
                    "choose start/stop/count that land on integers"
                )
            out.append(int(r))
        return out
    return [float(v) for v in grid]


def _run_sweep(args: argparse.Namespace) -> Dataset:
    quantity = args.quantity
    axes_spec = args.axis or []
    if len(axes_spec) == 0:
        raise ConfigError("sweep requires at least one --axis")
    if len(axes_spec) > 2:
        raise ConfigError(f"at most 2 axes are supported, got {len(axes_spec)}")
    names = []
    grids = []
    for spec in axes_spec:
        name, start, stop, count = spec
        if name in names:
            raise ConfigError(f"axis {name!r} given twice")
        names.append(name)
        grids.append(_axis_values(name, start, stop, count))
    fixed = {}
    for dest in ("N", "n", "pair_sep", "grid"):
        v = getattr(args, dest, None)
        if v is not None:
            fixed[dest] = int(v)
    for dest in ("p", "gamma_t", "tau", "a", "omega_m", "gamma"):
        v = getattr(args, dest, None)
        if v is not None:
            fixed[dest] = float(v)
    for dest in ("theta", "K"):
        v = getattr(args, dest, None)
        if v is not None:
            fixed[dest] = parse_angle(v)
    if args.channel is not None:
        fixed["channel"] = args.channel
        k_fixed = fixed.get("K", 0.0)
        if k_fixed != 0.0 or "K" in names:
            raise ConfigError("channel evolution is defined at K = 0 only")
    overlap = set(names) & set(fixed)
    if overlap:
        raise ConfigError(f"parameters {sorted(overlap)} are both fixed and swept")

    points: list[tuple] = []
    if len(grids) == 1:
        points = [(v,) for v in grids[0]]
    else:
        points = [(v0, v1) for v0 in grids[0] for v1 in grids[1]]

    worker_fn = functools.partial(_eval_point, quantity, fixed, tuple(names))
    workers = _resolve_workers(args.workers)
    if workers > 1 and len(points) >= 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(points) // (workers * 8))
            values = list(pool.map(worker_fn, points, chunksize=chunk))
    else:
        values = [worker_fn(pt) for pt in points]

    rows = [list(pt) + [val] for pt, val in zip(points, values)]
    metadata = {
        "sweep": quantity,
        "axes": [
            {"name": nm, "start": g[0], "stop": g[-1], "count": len(g)}
            for nm, g in zip(names, grids)
        ],
        "fixed": {k: fixed[k] for k in sorted(fixed)},
        "version": __version__,
    }
    return Dataset(columns=names + [quantity], rows=rows, metadata=metadata)


def _run_oracle_check(args: argparse.Namespace) -> tuple[Dataset, int]:
    n_max = args.N if args.N is not None else 6
    if n_max < 2:
        raise ConfigError(f"oracle-check needs N >= 2, got {n_max}")
    theta_points = args.theta_points if args.theta_points is not None else 5
    thetas = [k * math.pi / theta_points for k in range(theta_points)]
    p_points = args.p_points if args.p_points is not None else 5
    ps = [k / (p_points - 1) for k in range(p_points)] if p_points > 1 else [0.5]
    ds = oracle_suite(
        N_values=list(range(2, n_max + 1)),
        theta_values=thetas,
        K_values=[parse_angle(k) for k in (args.K or ["0", "0.3"])],
        channel_p_values=ps,
        include_channels=not args.no_channels,
        tol=args.tol,
    )
    ds.metadata["version"] = __version__
    failures = sum(1 for row in ds.rows if row[-1] == "FAIL")
    worst = max((row[-2] for row in ds.rows), default=0.0)
    print(
        f"oracle-check: {len(ds.rows)} checks, max deviation {worst:.3e}, "
        f"{failures} failure(s)",
        file=sys.stderr,
    )
    return ds, (4 if failures else 0)


def _emit(ds: Dataset, out: str | None, fmt: str) -> None:
    text = ds.to_csv_text() if fmt == "csv" else ds.to_json_text()
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    parser.add_argument(
        "--workers",
        type=int,
        help=f"worker processes (default: ${WORKERS_ENV} or machine parallelism)",
    )
    parser.add_argument("--config", help="JSON file with default parameter values")


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--N", type=int, help="number of atoms")
    parser.add_argument("--n", type=int, help="stored excitation number")
    parser.add_argument("--theta", help="mixing angle (accepts pi: prefix)")
    parser.add_argument("--K", help="wave-vector mismatch (accepts pi: prefix)")
    parser.add_argument("--pair-sep", dest="pair_sep", type=int, help="atom pair separation")
    parser.add_argument("--channel", choices=("ADC", "PDC", "DPC"), help="decoherence channel")
    parser.add_argument("--p", type=float, help="channel strength in [0,1]")
    parser.add_argument("--gamma", type=float, help="decay rate (1/s)")
    parser.add_argument("--gamma-t", dest="gamma_t", type=float, help="dimensionless decay γt")
    parser.add_argument("--tau", type=float, help="protocol duration (s)")
    parser.add_argument("--a", type=float, help="pulse half-width (s)")
    parser.add_argument("--omega-m", dest="omega_m", type=float, help="peak Rabi frequency (1/s)")
    parser.add_argument("--grid", type=int, help="protocol time-grid points")
    parser.add_argument("--points", type=int, help="1D grid points (figures)")
    parser.add_argument("--p-points", dest="p_points", type=int, help="channel-strength grid points")
    parser.add_argument("--k-points", dest="k_points", type=int, help="K grid points (figure maps)")
    parser.add_argument(
        "--theta-points", dest="theta_points", type=int, help="θ grid points (figure maps)"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darksqueeze",
        description="Dark-state spin squeezing and pairwise entanglement datasets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    fig = sub.add_parser("figure", help="reproduce a canned dataset")
    fig.add_argument("tag", help=f"one of: {', '.join(figure_tags())}")
    _add_params(fig)
    _add_common(fig)

    sweep = sub.add_parser("sweep", help="evaluate a quantity over a parameter grid")
    sweep.add_argument(
        "--quantity", required=True, choices=QUANTITIES, help="scalar to evaluate"
    )
    sweep.add_argument(
        "--axis",
        nargs=4,
        action="append",
        metavar=("NAME", "START", "STOP", "COUNT"),
        help="swept axis (repeatable, at most twice)",
    )
    _add_params(sweep)
    _add_common(sweep)

    oc = sub.add_parser("oracle-check", help="closed forms vs brute force")
    oc.add_argument("--N", type=int, help="largest atom number (default 6)")
    oc.add_argument(
        "--theta-points", dest="theta_points", type=int, help="θ grid points (default 5)"
    )
    oc.add_argument(
        "--K", action="append", help="K value (repeatable; accepts pi: prefix)"
    )
    oc.add_argument(
        "--p-points", dest="p_points", type=int, help="channel strength points (default 5)"
    )
    oc.add_argument("--tol", type=float, default=1e-9, help="pass/fail tolerance")
    oc.add_argument(
        "--no-channels", action="store_true", help="skip channel comparisons"
    )
    _add_common(oc)
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config file must contain a JSON object")
    allowed = {d for d in _PARAM_DESTS + _COMMON_DESTS + ("quantity", "tol") if hasattr(args, d)}
    for key, value in cfg.items():
        if key not in allowed:
            raise ConfigError(
                f"unknown config key {key!r}; allowed: {', '.join(sorted(allowed))}"
            )
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _figure_overrides(args: argparse.Namespace) -> dict:
    overrides: dict = {}
    for dest in _PARAM_DESTS:
        value = getattr(args, dest, None)
        if value is None:
            continue
        if dest in ("theta", "K"):
            value = parse_angle(value)
        overrides[dest] = value
    return overrides


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        if args.subcommand == "figure":
            ds = figure(args.tag, _figure_overrides(args))
            _emit(ds, args.out, args.format)
            return 0
        if args.subcommand == "sweep":
            ds = _run_sweep(args)
            _emit(ds, args.out, args.format)
            return 0
        ds, code = _run_oracle_check(args)
        _emit(ds, args.out, args.format)
        return code
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, DarksqueezeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
