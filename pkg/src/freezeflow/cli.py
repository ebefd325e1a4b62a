"""Command-line interface.

Subcommands: solve, boundary, trace, check, oracle, pinned-balls, examples.
Problems come from a JSON file (--problem) or a named builtin (--fixture).
Output is CSV ('.' decimals, '\\n' line endings, header row) or JSON
(pretty-printed, sorted keys), byte-stable for a fixed configuration and
seed.  FT_THREADS caps evaluation parallelism.

Exit codes: 0 success, 1 failed checks, 2 invalid problem or configuration,
3 domain violation, 4 runtime failure (e.g. a characteristic step failure).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Sequence

import numpy as np

from . import characteristics as chars
from . import diagnostics as diag
from . import geometry as geom
from . import oracle as orc
from . import pinned_balls as balls
from .fixtures import FIXTURES, get_fixture
from .levelset import SolutionField, sublevel_set, superlevel_set
from .problem import ProblemSpec, load_spec

EXIT_CHECK_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_RUNTIME = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _make_field(spec: ProblemSpec, tol: float) -> SolutionField:
    try:
        return SolutionField(spec, tolerance=tol)
    except ValueError as exc:
        raise CliError(f"inadmissible problem: {exc}", EXIT_BAD_CONFIG)


def _load_problem(args) -> ProblemSpec:
    if args.fixture:
        try:
            return get_fixture(args.fixture).build()
        except KeyError as exc:
            raise CliError(str(exc), EXIT_BAD_CONFIG)
    if args.problem:
        try:
            return load_spec(args.problem)
        except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
            raise CliError(f"invalid problem file: {exc}", EXIT_BAD_CONFIG)
    raise CliError("one of --fixture or --problem is required", EXIT_BAD_CONFIG)


def _parse_pair(text: str, n: int, name: str) -> List[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise CliError(f"--{name} needs {n} comma-separated values", EXIT_BAD_CONFIG)
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise CliError(f"--{name}: not numeric: {text!r}", EXIT_BAD_CONFIG)


def _write(out: Optional[str], payload: str):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".12g")
    return v


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- solve -----------------------------------------------------------------


def cmd_solve(args) -> int:
    spec = _load_problem(args)
    nx, nt = (int(v) for v in _parse_pair(args.grid, 2, "grid"))
    if args.window:
        x0, x1, t0, t1 = _parse_pair(args.window, 4, "window")
    else:
        lo, hi = spec.breakpoint_span()
        x0, x1, t0, t1 = lo, hi, 0.0, get_fixture(args.fixture).horizon if args.fixture else 1.0
    field = _make_field(spec, args.tol)
    xs = np.linspace(x0, x1, nx)
    ts = np.linspace(t0, t1, nt)
    try:
        V, W = field.eval_grid(xs, ts)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_DOMAIN)
    eps = field.zone_epsilon()
    gap = V - W
    rows = []
    for i, t in enumerate(ts):
        for j, x in enumerate(xs):
            if gap[i, j] > eps:
                zone = "liquid"
            elif i + 1 < len(ts) and gap[i + 1, j] > eps:
                zone = "boundary"
            else:
                zone = "frozen"
            v, w = V[i, j], W[i, j]
            rows.append((x, t, v, w, v + w, v - w, zone))
    if args.format == "json":
        payload = _json_text(
            [
                {"x": r[0], "t": r[1], "v": r[2], "w": r[3], "mu": r[4], "sigma": r[5], "zone": r[6]}
                for r in rows
            ]
        )
    else:
        payload = _csv_text(["x", "t", "v", "w", "mu", "sigma", "zone"], rows)
    _write(args.out, payload)
    return 0


# -- boundary ----------------------------------------------------------------


def cmd_boundary(args) -> int:
    spec = _load_problem(args)
    nx, nt = (int(v) for v in _parse_pair(args.grid, 2, "grid"))
    if not args.window:
        raise CliError("--window x0,x1,t0,t1 is required for boundary", EXIT_BAD_CONFIG)
    x0, x1, t0, t1 = _parse_pair(args.window, 4, "window")
    field = _make_field(spec, args.tol)
    try:
        bset = geom.extract_boundaries(field, (x0, x1, t0, t1), (nx, nt))
    except ValueError as exc:
        raise CliError(str(exc), EXIT_DOMAIN)
    obj = {
        "cell_size": bset.cell_size,
        "warnings": bset.warnings,
        "freezing": [{"samples": [list(p) for p in c.samples]} for c in bset.freezing],
        "thawing": [{"samples": [list(p) for p in c.samples]} for c in bset.thawing],
        "corners": [],
    }
    for i, c in enumerate(bset.corners):
        sl = geom.corner_slopes(bset, i)
        obj["corners"].append(
            {
                "x": c.x,
                "t": c.t,
                "kind": c.kind.value,
                "freezing_slope": sl.freezing_slope,
                "thawing_slope": sl.thawing_slope,
                "freezing_unbounded": sl.freezing_unbounded,
                "thawing_unbounded": sl.thawing_unbounded,
            }
        )
    _write(args.out, _json_text(obj))
    return 0


# -- trace ---------------------------------------------------------------------


def cmd_trace(args) -> int:
    spec = _load_problem(args)
    field = _make_field(spec, args.tol)
    tracer = {
        ("v", "backward"): chars.trace_backward_v,
        ("v", "forward"): chars.trace_forward_v,
        ("w", "backward"): chars.trace_backward_w,
        ("w", "forward"): chars.trace_forward_w,
    }[(args.kind, args.direction)]
    kwargs = {}
    if args.dt is not None:
        kwargs["dt"] = args.dt
    if args.direction == "forward" and args.t_end is not None:
        kwargs["t_end"] = args.t_end
    try:
        curve = tracer(field, args.x, args.t, **kwargs)
    except chars.CharacteristicStepError as exc:
        raise CliError(str(exc), EXIT_RUNTIME)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_DOMAIN)
    rows = [
        (t, x, val, zone.value)
        for (x, t), val, zone in zip(curve.samples, curve.values, curve.zones)
    ]
    payload = _csv_text(["t", "x", "value", "zone"], rows)
    _write(args.out, payload)
    if curve.termination:
        sys.stderr.write(f"termination: {curve.termination}\n")
    return 0


# -- check -----------------------------------------------------------------------


def cmd_check(args) -> int:
    spec = _load_problem(args)
    field = _make_field(spec, args.tol)
    times = None
    if args.times:
        try:
            times = [float(p) for p in args.times.split(",")]
        except ValueError:
            raise CliError(f"--times: not numeric: {args.times!r}", EXIT_BAD_CONFIG)
        if any(t < 0 for t in times):
            raise CliError("--times must be nonnegative", EXIT_BAD_CONFIG)
    reports = diag.run_default_checks(field, seed=args.seed, times=times)
    _write(args.out, _json_text([r.to_json() for r in reports]))
    return 0 if all(r.passed for r in reports) else EXIT_CHECK_FAILED


# -- oracle ------------------------------------------------------------------------


def cmd_oracle(args) -> int:
    spec = _load_problem(args)
    rng = np.random.default_rng(args.seed)
    lo, hi = spec.breakpoint_span()
    v_lo, v_hi = spec.v0.min_max_on(lo, hi)
    w_lo, w_hi = spec.w0.min_max_on(lo, hi)
    bs = rng.uniform(w_lo - 0.5, v_hi + 0.5, size=args.levels)
    ts = rng.uniform(0.0, (hi - lo) + 1.0, size=args.levels)
    results = []
    worst = 0.0
    for b, t in zip(bs, ts):
        sub = sublevel_set(spec, b, t)
        sup = superlevel_set(spec, b, t)
        ob, orr = orc.oracle_level_sets(spec, b, t)
        d = max(sub.symmetric_difference_measure(ob), sup.symmetric_difference_measure(orr))
        worst = max(worst, d)
        results.append({"b": float(b), "t": float(t), "symmetric_difference": d})
    _write(args.out, _json_text({"worst": worst, "comparisons": results}))
    return 0


# -- pinned balls ----------------------------------------------------------------------


def cmd_pinned(args) -> int:
    rng = np.random.default_rng(args.seed)
    state = balls.BallState(tuple(rng.standard_normal(args.n)), rng_seed=args.seed)
    final, snaps = balls.run(state, args.steps, np.random.default_rng(args.seed + 1), args.stride)
    rows = []
    for t, vel in snaps:
        for i, v in enumerate(vel, start=1):
            rows.append((t, i, v))
    _write(args.out, _csv_text(["t", "site", "velocity"], rows))
    return 0


# -- examples ---------------------------------------------------------------------------


def cmd_examples(args) -> int:
    if args.action == "list":
        lines = [f"{name}: {fx.description}" for name, fx in sorted(FIXTURES.items())]
        _write(args.out, "\n".join(lines) + "\n")
        return 0
    # run: evaluate each fixture's reference values where available
    failures = 0
    lines = []
    from .fixtures import wedge_v_exact, wedge_w_exact

    wedge = get_fixture("wedge")
    field = SolutionField(wedge.build(), tolerance=1e-10)
    xs = np.linspace(-4, 4, 33)
    ts = np.linspace(0, 2, 9)
    V, W = field.eval_grid(xs, ts)
    err = max(
        float(np.max(np.abs(V - wedge_v_exact(xs[None, :], ts[:, None])))),
        float(np.max(np.abs(W - wedge_w_exact(xs[None, :], ts[:, None])))),
    )
    ok = err < 1e-8
    failures += 0 if ok else 1
    lines.append(f"wedge closed form: max error {err:.2e} {'PASS' if ok else 'FAIL'}")
    for name in sorted(FIXTURES):
        fx = FIXTURES[name]
        f = SolutionField(fx.build(), tolerance=1e-9)
        x = sum(fx.build().breakpoint_span()) / 2
        v, w = f.eval_pair(x, fx.horizon / 2)
        ok = v >= w - 1e-6
        failures += 0 if ok else 1
        lines.append(f"{name}: v>=w at midpoint {'PASS' if ok else 'FAIL'}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0 if failures == 0 else EXIT_CHECK_FAILED


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freezeflow", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tol_default=1e-10):
        sp.add_argument("--fixture", help="builtin problem name")
        sp.add_argument("--problem", help="problem JSON file")
        sp.add_argument("--tol", type=float, default=tol_default)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("solve", help="evaluate v, w on a grid")
    common(sp)
    sp.add_argument("--grid", default="101,51", help="NX,NT")
    sp.add_argument("--window", help="x0,x1,t0,t1")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("boundary", help="extract freezing/thawing boundaries")
    common(sp, tol_default=1e-8)
    sp.add_argument("--grid", default="120,120", help="NX,NT")
    sp.add_argument("--window", help="x0,x1,t0,t1")
    sp.set_defaults(func=cmd_boundary, format="json")

    sp = sub.add_parser("trace", help="trace a characteristic")
    common(sp)
    sp.add_argument("--kind", choices=("v", "w"), required=True)
    sp.add_argument("--direction", choices=("backward", "forward"), required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--dt", type=float)
    sp.add_argument("--t-end", dest="t_end", type=float)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("check", help="run the diagnostic battery")
    common(sp)
    sp.add_argument("--times", help="comma-separated evaluation times")
    sp.set_defaults(func=cmd_check, format="json")

    sp = sub.add_parser("oracle", help="compare level sets against the annihilation oracle")
    common(sp)
    sp.add_argument("--levels", type=int, default=20)
    sp.set_defaults(func=cmd_oracle, format="json")

    sp = sub.add_parser("pinned-balls", help="simulate the discrete sorting dynamics")
    sp.add_argument("--n", type=int, default=50)
    sp.add_argument("--steps", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--stride", type=int, default=1000)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_pinned)

    sp = sub.add_parser("examples", help="list or run the builtin fixtures")
    sp.add_argument("action", choices=("list", "run"))
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_examples)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
