"""Command-line front end.

Subcommands: ``simulate``, ``density``, ``cdf``, ``velocity``, ``estimate``,
``validate``. Tables go out as CSV (17 significant digits) or JSON.

Exit status: 0 success, 1 validation failure (``validate`` only), 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import law
from .errors import DomainError
from .estimate import estimate_from_path, estimate_replicated
from .intensity import ModelParams, make_rng, sample_event_times_batch
from .process import position_at, simulate_trajectory, switch_count
from .tables import json_text, write_csv
from .validate import ConfigError, ExperimentConfig, run_experiment

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_USAGE = 2

SEED_ENV = "TELEGRAPH_SEED"
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _count(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _params(args) -> ModelParams:
    try:
        return ModelParams(args.theta, args.c)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


@contextmanager
def _sink(path: Optional[str]):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit_table(args, rows: list[dict], columns: Sequence[str], meta: dict) -> None:
    with _sink(args.output) as out:
        if args.format == "json":
            out.write(json_text({**meta, "columns": list(columns), "rows": rows}))
        else:
            write_csv(rows, columns, out)


def cmd_simulate(args) -> int:
    params = _params(args)
    seed = args.seed if args.seed is not None else _default_seed()
    fmt = args.format or ("json" if args.emit == "trajectories" else "csv")
    if args.emit == "trajectories" and fmt != "json":
        raise UsageError("--emit trajectories is written as JSON lines; use --format json")
    rng = make_rng(seed)
    with _sink(args.output) as out:
        if args.emit == "trajectories":
            for i in range(args.n):
                traj = simulate_trajectory(params, args.T, rng)
                out.write(json.dumps(traj.to_record(seed=seed, index=i)) + "\n")
            return EXIT_OK
        rows = []
        for i in range(args.n):
            traj = simulate_trajectory(params, args.T, rng)
            if args.emit == "positions":
                rows.append({"index": i, "x": position_at(traj, args.T)})
            else:
                rows.append({"index": i, "count": switch_count(traj, args.T)})
        column = "x" if args.emit == "positions" else "count"
        if fmt == "json":
            meta = {"theta": params.theta, "c": params.c, "T": args.T, "seed": seed, "emit": args.emit}
            out.write(json_text({**meta, "columns": ["index", column], "rows": rows}))
        else:
            write_csv(rows, ("index", column), out)
    return EXIT_OK


def _grid(args) -> np.ndarray:
    ct = args.c * args.t
    lo = -ct if args.xmin is None else args.xmin
    hi = ct if args.xmax is None else args.xmax
    if not hi >= lo:
        raise UsageError("--xmax must be >= --xmin")
    return np.linspace(lo, hi, args.points)


def cmd_density(args) -> int:
    params = _params(args)
    x = _grid(args)
    vals = law.density(params, args.t, x)
    rows = [{"x": float(a), "value": float(b)} for a, b in zip(x, vals)]
    meta = {"quantity": "density", "theta": params.theta, "c": params.c, "t": args.t}
    _emit_table(args, rows, ("x", "value"), meta)
    return EXIT_OK


def cmd_cdf(args) -> int:
    params = _params(args)
    x = _grid(args)
    vals = law.cdf(params, args.t, x)
    rows = [{"x": float(a), "value": float(b)} for a, b in zip(x, vals)]
    meta = {"quantity": "cdf", "theta": params.theta, "c": params.c, "t": args.t}
    _emit_table(args, rows, ("x", "value"), meta)
    return EXIT_OK


def cmd_velocity(args) -> int:
    params = _params(args)
    if not args.tmax >= args.tmin >= 0:
        raise UsageError("need 0 <= --tmin <= --tmax")
    rows = []
    for t in np.linspace(args.tmin, args.tmax, args.points):
        t = float(t)
        p_same, p_flip = law.velocity_transition(params, t)
        rows.append({"t": t, "p_same": p_same, "p_flip": p_flip,
                     "covariance": law.velocity_covariance(params, args.s, t)})
    meta = {"quantity": "velocity", "theta": params.theta, "c": params.c, "s": args.s}
    _emit_table(args, rows, ("t", "p_same", "p_flip", "covariance"), meta)
    return EXIT_OK


def read_counts(path: str) -> list[int]:
    """One nonnegative integer per line; blank lines are skipped."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read counts file {path!r}: {exc.strerror}") from None
    counts = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        item = line.strip()
        if not item:
            continue
        try:
            value = int(item)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: expected a nonnegative integer, got {item!r}") from None
        if value < 0:
            raise UsageError(f"{path}:{lineno}: switch count must be >= 0, got {value}")
        counts.append(value)
    if not counts:
        raise UsageError(f"{path}: no counts found")
    return counts


def cmd_estimate(args) -> int:
    if args.counts_file is not None:
        counts = read_counts(args.counts_file)
        source = {"counts_file": args.counts_file}
    else:
        if args.theta is None:
            raise UsageError("--from-simulation needs --theta")
        params = _params(args)
        seed = args.seed if args.seed is not None else _default_seed()
        counts = sample_event_times_batch(params, args.T, args.n, make_rng(seed)).counts.tolist()
        source = {"simulation": {"theta": params.theta, "c": params.c, "n": args.n, "seed": seed}}
    if args.single:
        if len(counts) != 1:
            raise UsageError("--single needs exactly one count")
        result = estimate_from_path(counts[0], args.T)
    else:
        result = estimate_replicated(counts, args.T, args.level)
    with _sink(args.output) as out:
        out.write(json_text({**result.to_dict(), "source": source}))
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.default:
        config = ExperimentConfig()
    else:
        try:
            payload = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {args.config!r} is not valid JSON: {exc}") from None
        try:
            config = ExperimentConfig.from_dict(payload)
        except ConfigError as exc:
            raise UsageError("config schema violations:\n  " + "\n  ".join(exc.problems)) from None
    report = run_experiment(config, workers=args.workers)
    with _sink(args.output) as out:
        out.write(report.to_json())
    if args.rows_csv:
        with _sink(args.rows_csv) as out:
            out.write(report.rows_csv())
    for c in report.criteria:
        status = {True: "PASS", False: "FAIL", None: "INFO"}[c.passed]
        print(f"{status} {c.name}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VALIDATION_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="telegraph",
        description="Telegraph process with intensity theta*tanh(theta*t): simulation, law, estimation, validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def model_flags(p, theta_required=True):
        p.add_argument("--theta", type=float, required=theta_required, default=None)
        p.add_argument("--c", type=_positive, default=1.0, help="speed (default 1)")

    def output_flags(p, formats=("csv", "json"), default="csv"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    p = sub.add_parser("simulate", help="simulate trajectories on [0, T]")
    model_flags(p)
    p.add_argument("--T", type=_positive, required=True)
    p.add_argument("--n", type=_count, default=1)
    p.add_argument("--seed", type=int, default=None, help=f"default {DEFAULT_SEED}, or ${SEED_ENV}")
    p.add_argument("--emit", choices=("trajectories", "positions", "counts"), default="positions")
    output_flags(p, default=None)
    p.set_defaults(func=cmd_simulate)

    for name, func, help_ in (("density", cmd_density, "density of X(t) on a grid"),
                              ("cdf", cmd_cdf, "distribution function of X(t) on a grid")):
        p = sub.add_parser(name, help=help_)
        model_flags(p)
        p.add_argument("--t", type=_positive, required=True)
        p.add_argument("--xmin", type=float, default=None, help="default -c*t")
        p.add_argument("--xmax", type=float, default=None, help="default c*t")
        p.add_argument("--points", type=int, default=201)
        output_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("velocity", help="velocity transition probabilities and covariance")
    model_flags(p)
    p.add_argument("--tmin", type=float, default=0.0)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--s", type=float, default=0.0, help="reference time of the covariance")
    output_flags(p)
    p.set_defaults(func=cmd_velocity)

    p = sub.add_parser("estimate", help="estimate theta from switch counts")
    p.add_argument("--T", type=_positive, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--counts-file", default=None)
    src.add_argument("--from-simulation", action="store_true")
    model_flags(p, theta_required=False)
    p.add_argument("--n", type=_count, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--single", action="store_true", help="one long path: point estimate only")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("validate", help="run the verification experiment")
    cfg = p.add_mutually_exclusive_group(required=True)
    cfg.add_argument("--config", default=None, help="ExperimentConfig JSON file")
    cfg.add_argument("--default", action="store_true", help="built-in default config")
    p.add_argument("--output", "-o", default=None, help="report JSON path (default stdout)")
    p.add_argument("--rows-csv", default=None, help="per-experiment rows CSV path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for attr in ("points",):
        if getattr(args, attr, 2) < 2:
            parser.error("--points must be >= 2")
    if getattr(args, "level", 0.5) is not None and not 0 < getattr(args, "level", 0.5) < 1:
        parser.error("--level must lie in (0, 1)")
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"telegraph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
