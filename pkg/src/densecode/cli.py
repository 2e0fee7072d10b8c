"""Command-line front end.

Subcommands:
  capacity   one capacity value for a channel/state/encoding combination
  sweep      parameter-grid sweep written as CSV or JSON (optionally plotted)
  crossover  crossover correlation degree as a function of the noise parameter
  verify     numerical identity suites

Exit codes: 0 ok, 1 verification failure, 2 usage, 3 optimizer
non-convergence, 4 output I/O failure.  The environment variable
DENSECODE_THREADS (positive integer) caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import CorrelatedPauliSpec, quasi_classical_spec, reset_map
from .holevo import (
    analytic_capacity_quasi,
    capacity_nonunitary,
    capacity_unitary,
    quasi_channel_spectrum,
    transferred_info_preprocessed,
)
from .optimize import OptimizerConfig, crossover_mu, minimize_cptp, minimize_unitary
from .qmat import shannon_entropy
from .states import bell_phi_plus, werner
from . import verify as verify_mod

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_IO = 4

_PARAM_NAMES = ("p", "mu", "eta")


class UsageError(Exception):
    pass


class OutputError(Exception):
    pass


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """Axes plus fixed values; together they cover exactly {p, mu, eta}."""

    axis1: SweepAxis
    axis2: SweepAxis | None
    fixed: dict[str, float]

    def __post_init__(self):
        names = [self.axis1.name] + ([self.axis2.name] if self.axis2 else [])
        for axis in (self.axis1, self.axis2):
            if axis is None:
                continue
            if axis.name not in _PARAM_NAMES:
                raise UsageError(f"unknown axis name {axis.name!r}")
            if axis.steps < 2:
                raise UsageError(f"axis {axis.name}: steps must be >= 2")
            if not axis.start < axis.stop:
                raise UsageError(f"axis {axis.name}: start must be below stop")
        for name in self.fixed:
            if name not in _PARAM_NAMES:
                raise UsageError(f"unknown fixed parameter {name!r}")
        covered = names + list(self.fixed)
        if sorted(covered) != sorted(_PARAM_NAMES):
            raise UsageError(
                f"axes and --fix must cover p, mu, eta exactly once; got {covered}"
            )


def _parse_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise UsageError(f"axis must look like name:start:stop:steps, got {text!r}")
    name, start, stop, steps = parts
    try:
        return SweepAxis(name, float(start), float(stop), int(steps))
    except ValueError as exc:
        raise UsageError(f"bad axis {text!r}: {exc}") from None


def _parse_fix(entries: list[str] | None) -> dict[str, float]:
    fixed: dict[str, float] = {}
    for entry in entries or []:
        name, sep, value = entry.partition("=")
        if not sep:
            raise UsageError(f"--fix expects name=value, got {entry!r}")
        if name in fixed:
            raise UsageError(f"--fix {name} given twice")
        try:
            fixed[name] = float(value)
        except ValueError:
            raise UsageError(f"--fix {name}: {value!r} is not a number") from None
    return fixed


def _max_workers() -> int:
    raw = os.environ.get("DENSECODE_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"DENSECODE_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"DENSECODE_THREADS must be a positive integer, got {raw!r}")
    return n


def _map_ordered(fn, items):
    workers = min(_max_workers(), len(items)) if items else 1
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from None


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _effective_mu(channel: str, mu: float) -> float:
    return 1.0 if channel == "fully-correlated" else mu


def _build_channel(args, p: float, mu: float) -> CorrelatedPauliSpec:
    return CorrelatedPauliSpec(
        quasi_classical_spec(args.d, p), _effective_mu(args.channel, mu)
    )


def _resolve_state(args, eta: float):
    if args.d != 2:
        raise UsageError("states are two-dimensional; --d must be 2")
    if args.state == "bell":
        return bell_phi_plus(), 1.0
    return werner(eta), eta


def _point_capacity(args, p: float, mu: float, eta: float) -> tuple[float, bool]:
    """Capacity of one grid point; returns (bits, converged)."""
    mu_eff = _effective_mu(args.channel, mu)
    if args.encoding == "unitary":
        return analytic_capacity_quasi(eta, mu_eff, p), True
    if args.encoding == "preprocessed":
        return transferred_info_preprocessed(p), True
    rho, _ = _resolve_state(args, eta)
    spec = _build_channel(args, p, mu)
    cfg = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    if args.encoding == "optimize-unitary":
        res = minimize_unitary(spec, rho, cfg)
        report = capacity_unitary(spec, rho, res.encoder.operators[0])
    else:
        res = minimize_cptp(spec, rho, cfg=cfg)
        report = capacity_nonunitary(spec, rho, res.encoder)
    return report.capacity_bits, res.converged


def cmd_capacity(args) -> int:
    rho, eta = _resolve_state(args, args.eta)
    spec = _build_channel(args, args.p, args.mu)
    converged = True
    if args.encoding == "unitary":
        lowest = shannon_entropy(
            quasi_channel_spectrum(eta, _effective_mu(args.channel, args.mu), args.p, 0.0)
        )
        payload = {
            "capacity_bits": 2.0 - lowest,
            "bob_term_bits": 1.0,
            "min_entropy_bits": lowest,
            "encoding": args.encoding,
            "analytic": True,
        }
    elif args.encoding == "preprocessed":
        report = capacity_nonunitary(spec, rho, reset_map(args.d))
        payload = {
            "capacity_bits": report.capacity_bits,
            "bob_term_bits": report.bob_term_bits,
            "min_entropy_bits": report.min_entropy_bits,
            "encoding": args.encoding,
            "analytic": True,
        }
    else:
        cfg = OptimizerConfig(restarts=args.restarts, seed=args.seed)
        if args.encoding == "optimize-unitary":
            res = minimize_unitary(spec, rho, cfg)
            report = capacity_unitary(spec, rho, res.encoder.operators[0])
        else:
            res = minimize_cptp(spec, rho, cfg=cfg)
            report = capacity_nonunitary(spec, rho, res.encoder)
        converged = res.converged
        payload = {
            "capacity_bits": report.capacity_bits,
            "bob_term_bits": report.bob_term_bits,
            "min_entropy_bits": report.min_entropy_bits,
            "encoding": args.encoding,
            "analytic": False,
            "converged": converged,
        }
    print(json.dumps(payload))
    return EXIT_OK if converged else EXIT_NO_CONVERGENCE


def _sweep_points(spec: SweepSpec) -> list[dict[str, float]]:
    points = []
    for v1 in spec.axis1.values():
        if spec.axis2 is None:
            params = dict(spec.fixed)
            params[spec.axis1.name] = float(v1)
            points.append(params)
        else:
            for v2 in spec.axis2.values():
                params = dict(spec.fixed)
                params[spec.axis1.name] = float(v1)
                params[spec.axis2.name] = float(v2)
                points.append(params)
    return points


def cmd_sweep(args) -> int:
    sweep = SweepSpec(
        axis1=_parse_axis(args.axis1),
        axis2=_parse_axis(args.axis2) if args.axis2 else None,
        fixed=_parse_fix(args.fix),
    )
    if args.state == "bell":
        eta_values = [sweep.fixed.get("eta")] if "eta" in sweep.fixed else []
        if eta_values != [1.0]:
            raise UsageError("--state bell requires --fix eta=1")
    points = _sweep_points(sweep)
    results = _map_ordered(
        lambda prm: _point_capacity(args, prm["p"], prm["mu"], prm["eta"]), points
    )
    capacities = [c for c, _ in results]
    all_converged = all(ok for _, ok in results)

    axis_names = [sweep.axis1.name] + ([sweep.axis2.name] if sweep.axis2 else [])
    if args.format == "csv":
        header = ",".join(
            (["axis1", "axis2"] if sweep.axis2 else ["axis1"]) + ["capacity_bits", "encoding"]
        )
        lines = [header]
        for params, cap in zip(points, capacities):
            cells = [_fmt(params[name]) for name in axis_names]
            cells += [_fmt(cap), args.encoding]
            lines.append(",".join(cells))
        _write_text(args.out, "\n".join(lines) + "\n")
    else:
        rows = []
        for params, cap in zip(points, capacities):
            row = {"axis1": float(_fmt(params[axis_names[0]]))}
            if sweep.axis2:
                row["axis2"] = float(_fmt(params[axis_names[1]]))
            row["capacity_bits"] = float(_fmt(cap))
            row["encoding"] = args.encoding
            rows.append(row)
        _write_text(args.out, json.dumps(rows, indent=1) + "\n")

    if args.plot:
        from . import plots

        try:
            plots.render_sweep(
                args.plot,
                sweep.axis1.name,
                sweep.axis1.values(),
                np.array(capacities),
                args.encoding,
                sweep.axis2.name if sweep.axis2 else None,
                sweep.axis2.values() if sweep.axis2 else None,
            )
        except OSError as exc:
            raise OutputError(f"cannot write {args.plot}: {exc}") from None
    return EXIT_OK if all_converged else EXIT_NO_CONVERGENCE


def cmd_crossover(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    ps = np.linspace(args.p_start, args.p_stop, args.steps)
    rows = []
    for p in ps:
        p = float(p)
        if 0.0 < p < 1.0:
            mu_tilde = crossover_mu(p, tol=args.tol).mu_tilde
        else:
            mu_tilde = None
        rows.append({"p": p, "mu_tilde": mu_tilde})
    text = json.dumps(rows, indent=1) + "\n"
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from . import plots

        try:
            plots.render_crossover(args.plot, rows)
        except OSError as exc:
            raise OutputError(f"cannot write {args.plot}: {exc}") from None
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.run_all(args.grid_density, args.seed, tamper=args.tamper)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(
            f"{status} {r.name:<{width}}  max err {r.max_error:9.3e}  "
            f"tol {r.tolerance:g}  cases {r.cases}"
        )
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_VERIFY_FAIL


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--channel",
        choices=["quasi-classical", "fully-correlated"],
        default="quasi-classical",
        help="channel family; fully-correlated pins the correlation degree to 1",
    )
    sub.add_argument("--d", type=int, default=2, help="leg dimension (states need 2)")
    sub.add_argument("--p", type=float, default=0.05, help="noise parameter in [0, 1]")
    sub.add_argument("--mu", type=float, default=0.0, help="correlation degree in [0, 1]")
    sub.add_argument("--state", choices=["bell", "werner"], default="bell")
    sub.add_argument("--eta", type=float, default=1.0, help="Werner mixing parameter")
    sub.add_argument(
        "--encoding",
        choices=["unitary", "preprocessed", "optimize-unitary", "optimize-cptp"],
        default="unitary",
    )
    sub.add_argument("--seed", type=int, default=0, help="seed for optimizer restarts")
    sub.add_argument("--restarts", type=int, default=16, help="optimizer restarts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densecode",
        description="Dense coding capacity over correlated Pauli channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cap = sub.add_parser("capacity", help="single capacity value as JSON")
    _add_model_flags(p_cap)
    p_cap.set_defaults(func=cmd_capacity)

    p_sweep = sub.add_parser("sweep", help="parameter-grid sweep to CSV/JSON")
    _add_model_flags(p_sweep)
    p_sweep.add_argument("--out", required=True, help="output file path")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--axis1", required=True, help="name:start:stop:steps")
    p_sweep.add_argument("--axis2", help="optional second axis, same syntax")
    p_sweep.add_argument(
        "--fix", action="append", metavar="NAME=VALUE", help="fix a remaining parameter"
    )
    p_sweep.add_argument("--plot", help="also render the sweep to this image file")
    p_sweep.set_defaults(func=cmd_sweep)

    p_cross = sub.add_parser("crossover", help="crossover curve as JSON")
    p_cross.add_argument("--p-start", type=float, required=True, dest="p_start")
    p_cross.add_argument("--p-stop", type=float, required=True, dest="p_stop")
    p_cross.add_argument("--steps", type=int, required=True)
    p_cross.add_argument("--tol", type=float, default=1e-4)
    p_cross.add_argument("--out", help="output file (default: stdout)")
    p_cross.add_argument("--plot", help="also render the curve to this image file")
    p_cross.set_defaults(func=cmd_crossover)

    p_verify = sub.add_parser("verify", help="run the identity suites")
    p_verify.add_argument("--grid-density", type=int, default=5, dest="grid_density")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
