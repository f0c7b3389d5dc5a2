"""Command-line front end: evaluate laws on grids and run validation suites.

Table commands (``density``, ``fpt``, ``meander``, ``extrema``) emit a CSV
table plus a JSON block carrying atoms, masses and the run manifest; with
``--out BASE`` both go to ``BASE.csv``/``BASE.json``, otherwise the CSV
goes to stdout and the JSON to stderr.  ``validate`` emits a JSON report
and exits nonzero when any check fails.  Validation reports omit the
manifest timestamp so that identical invocations produce byte-identical
files.

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .core import TelegraphParams
from .extrema import ExtremumKind, extremum_joint_law
from .first_passage import fpt_law, fpt_switch_density, threshold_support
from .meander import MeanderSign, meander_law, meander_switch_density
from .position import position_law, position_switch_density
from .validation import SUITES, run_suite

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _manifest(command: str, params: dict, seed=None, timestamp: bool = True) -> dict:
    out = {
        "command": command,
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "parameters": params,
        "seed": seed,
    }
    if timestamp:
        out["timestamp"] = datetime.now(timezone.utc).isoformat()
    return out


def _emit(args, header, rows, blob):
    csv_buf = io.StringIO()
    writer = csv.writer(csv_buf)
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = json.dumps(blob, indent=2, sort_keys=True)
    if args.out:
        with open(args.out + ".csv", "w", newline="") as f:
            f.write(csv_buf.getvalue())
        with open(args.out + ".json", "w") as f:
            f.write(text + "\n")
    else:
        sys.stdout.write(csv_buf.getvalue())
        sys.stderr.write(text + "\n")
    return 0


def _add_model_flags(sub):
    sub.add_argument("--l0", type=float, required=True, help="switching rate in state 0")
    sub.add_argument("--l1", type=float, required=True, help="switching rate in state 1")
    sub.add_argument("--g0", type=float, required=True, help="velocity in state 0")
    sub.add_argument("--g1", type=float, required=True, help="velocity in state 1")


def _params(parser, args) -> TelegraphParams:
    try:
        return TelegraphParams(args.l0, args.l1, args.g0, args.g1)
    except ValueError as exc:
        parser.error(str(exc))


def _atom_dicts(law):
    return [{"location": a.location, "mass": a.mass} for a in law.atoms]


def cmd_density(parser, args) -> int:
    params = _params(parser, args)
    law = position_law(params, args.i, args.t)
    grid = np.linspace(params.gamma1 * args.t, params.gamma0 * args.t, args.grid)
    if args.n is None:
        values = law.density(grid)
        header = ["x", "density"]
    else:
        values = position_switch_density(params, args.i, args.t, grid, args.n)
        header = ["x", f"density_n{args.n}"]
    blob = {
        "manifest": _manifest("density", vars_of(args)),
        "atoms": _atom_dicts(law),
        "support": list(law.support),
        "total_mass": law.total_mass(),
    }
    return _emit(args, header, zip(grid, values), blob)


def cmd_fpt(parser, args) -> int:
    params = _params(parser, args)
    if args.y == 0:
        parser.error("threshold must be nonzero")
    law = fpt_law(params, args.i, args.y)
    spec = threshold_support(params, args.y)
    if spec.support is None:
        grid = np.zeros(0)
        values = np.zeros(0)
        mass = 0.0
    else:
        lo, hi = spec.support
        if np.isinf(hi):
            hi = args.tmax if args.tmax is not None else lo + 50.0 * max(
                1.0 / params.lambda0, 1.0 / params.lambda1, 1.0
            )
        grid = np.linspace(lo, hi, args.grid)
        if args.n is None:
            values = law.density(grid)
        else:
            values = fpt_switch_density(params, args.i, grid, args.y, args.n)
        mass = law.total_mass()
    blob = {
        "manifest": _manifest("fpt", vars_of(args)),
        "atoms": _atom_dicts(law),
        "support": None if spec.support is None else list(spec.support),
        "proper": spec.proper,
        "total_mass": mass,
        "defect": 1.0 - mass,
    }
    header = ["t", "density" if args.n is None else f"density_n{args.n}"]
    return _emit(args, header, zip(grid, values), blob)


def cmd_meander(parser, args) -> int:
    params = _params(parser, args)
    sign = MeanderSign.POSITIVE if args.sign == "positive" else MeanderSign.NEGATIVE
    law = meander_law(params, sign, args.t)
    if law.support is None:
        grid = np.zeros(0)
        values = np.zeros(0)
    else:
        grid = np.linspace(law.support[0], law.support[1], args.grid)
        if args.n is None:
            values = law.density(grid)
        else:
            values = meander_switch_density(params, sign, args.t, grid, args.n)
    blob = {
        "manifest": _manifest("meander", vars_of(args)),
        "atoms": _atom_dicts(law),
        "support": None if law.support is None else list(law.support),
        "total_mass": law.total_mass(),
    }
    header = ["x", "density" if args.n is None else f"density_n{args.n}"]
    return _emit(args, header, zip(grid, values), blob)


def cmd_extrema(parser, args) -> int:
    params = _params(parser, args)
    kind = ExtremumKind.MIN if args.kind == "min" else ExtremumKind.MAX
    law = extremum_joint_law(params, args.i, kind, args.t)
    masses = law.component_masses()
    blob = {
        "manifest": _manifest("extrema", vars_of(args)),
        "degenerate": law.degenerate,
        "component_masses": masses.as_dict(),
    }
    rows = []
    if law.degenerate:
        blob["pinned_at"] = law.pinned_at
        header = ["s", "y", "interior_density"]
    else:
        blob["marginal_atoms"] = [
            {"location": a.location, "mass": a.mass} for a in law.marginal_atoms()
        ]
        header = ["s", "y", "interior_density"]
        s_grid = np.linspace(0.0, args.t, args.sgrid + 2)[1:-1]
        if kind is ExtremumKind.MIN:
            y_lo, y_hi = params.gamma1 * args.t, 0.0
        else:
            y_lo, y_hi = 0.0, params.gamma0 * args.t
        y_grid = np.linspace(y_lo, y_hi, args.grid + 2)[1:-1]
        for s in s_grid:
            for y in y_grid:
                rows.append((s, y, law.interior_sy_marginal_density(float(s), float(y))))
    return _emit(args, header, rows, blob)


def cmd_validate(parser, args) -> int:
    kwargs = {}
    if args.suite == "mc-ks":
        kwargs.update(paths=args.paths, seed=args.seed, n_jobs=args.threads)
    elif args.suite == "kac":
        kwargs.update(kmax=args.kmax, y=args.y)
    else:
        kwargs.update(seed=args.seed)
        if args.points is not None:
            kwargs.update(points=args.points)
    report = run_suite(args.suite, **kwargs)
    blob = {
        "manifest": _manifest("validate", vars_of(args), seed=args.seed, timestamp=False),
        "report": report.as_dict(),
    }
    text = json.dumps(blob, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def vars_of(args) -> dict:
    skip = {"func", "out", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip and not k.startswith("_")}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="telegraphkit",
        description="closed-form telegraph-process laws, their validation suites "
        "and an exact Monte Carlo oracle",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("density", help="position/switch-count law on a grid")
    _add_model_flags(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--i", type=int, choices=(0, 1), default=0, help="initial state")
    p.add_argument("--grid", type=int, default=201, help="number of grid rows")
    p.add_argument("--n", type=int, default=None, help="restrict to exactly n switches")
    p.add_argument("--out", default=None, help="write BASE.csv and BASE.json")
    p.set_defaults(func=cmd_density)

    p = subs.add_parser("fpt", help="first-passage law for a threshold")
    _add_model_flags(p)
    p.add_argument("--y", type=float, required=True, help="threshold level")
    p.add_argument("--i", type=int, choices=(0, 1), default=0)
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tmax", type=float, default=None, help="grid cut for half-line supports")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fpt)

    p = subs.add_parser("meander", help="one-sided path law")
    _add_model_flags(p)
    p.add_argument("--sign", choices=("positive", "negative"), required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_meander)

    p = subs.add_parser("extrema", help="joint extremum law: masses and interior grid")
    _add_model_flags(p)
    p.add_argument("--kind", choices=("min", "max"), required=True)
    p.add_argument("--i", type=int, choices=(0, 1), default=0)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--grid", type=int, default=24, help="extremum-level grid points")
    p.add_argument("--sgrid", type=int, default=24, help="extremum-time grid points")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_extrema)

    p = subs.add_parser("validate", help="run a self-check suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--paths", type=int, default=100_000, help="mc-ks sample size")
    p.add_argument("--threads", type=int, default=1, help="mc-ks worker processes")
    p.add_argument("--kmax", type=int, default=16, help="kac largest scale (power of 2)")
    p.add_argument("--y", type=float, default=1.0, help="kac threshold level")
    p.add_argument("--points", type=int, default=None, help="random points per check")
    p.add_argument("--out", default=None, help="write the JSON report to a file")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
