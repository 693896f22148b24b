"""Command-line front end.

    python -m fhstab weights --n 4 --delta 2
    python -m fhstab lebesgue --n 50 --d 3 --ntilde 11 --dtilde 7 --output leb.csv
    python -m fhstab theorem1 --d 4 --n 12
    python -m fhstab experiment --n 200 --d 5,10,20 --function sin20t --precision-bits 320
    python -m fhstab surface --n 60 --d 3:10 --dtilde 3:10

Exit status: 0 on success, 2 on invalid parameters, 1 on runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, fields, is_dataclass

import numpy as np

from fhstab.extended import ConfigError, ExtendedConfig, ExtendedInterpolant, extrapolate_taylor, extrapolation_coeffs
from fhstab.fh import barycentric, fh_weights
from fhstab.functions import get_function
from fhstab.grid import extend, make_equispaced
from fhstab.lebesgue import (
    extended_lebesgue_constant,
    extended_lebesgue_function,
    fh_lebesgue_constant,
    fh_lebesgue_function,
    naive_bound_function,
    theorem1_check,
)
from fhstab.precision import PrecisionPolicy, Rounding, RoundingMonitor
from fhstab.stability import ROOT_SAMPLES, ROOT_TOL, StabilityReport, detect_backward_instability, error_harness

COMMANDS = ("weights", "eval", "lebesgue", "theorem1", "instability", "experiment", "surface")
EXPERIMENT_COLUMNS = (
    "max_error", "error_over_lebesgue", "lebesgue_constant", "n", "d", "ntilde", "dtilde", "delta",
    "ytilde_policy", "eval_policy", "noise_amplitude", "seed", "eval_points", "route", "max_rounding_error",
)


def _int_list(text: str) -> list[int]:
    """``"5"``, ``"3,5,8"`` or the inclusive range ``"3:20"``."""
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, list or lo:hi range, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fhstab", description="Floater-Hormann stability diagnostics")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--d", type=_int_list, default=None, help="int, list a,b,c or range lo:hi (sweeps)")
    p.add_argument("--ntilde", type=int, default=None, help="defaults to d (or dtilde for surface)")
    p.add_argument("--dtilde", type=_int_list, default=None, help="defaults to ntilde")
    p.add_argument("--delta", type=int, default=None, help="usual FH interpolant of this degree")
    p.add_argument("--j", type=int, default=None, help="instability: single column (default: all)")
    p.add_argument("--a", type=float, default=-1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--precision-bits", type=int, default=53)
    p.add_argument("--rounding", choices=[r.value for r in Rounding], default="nearest")
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--function", default="sin20t")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    return p


# --- formatting -------------------------------------------------------------


def _num(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_num(v) for v in r])
    return buf.getvalue()


def _jsonable(obj):
    if is_dataclass(obj):
        obj = {f.name: getattr(obj, f.name) for f in fields(obj)}
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return None if not math.isfinite(v) else v
    return obj


def _json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


# --- helpers ----------------------------------------------------------------


def _single(values, name: str, default=None):
    if values is None:
        return default
    if len(values) != 1:
        raise ConfigError(f"--{name} takes a single value for this command")
    return values[0]


def _config(args) -> ExtendedConfig:
    d = _single(args.d, "d", 3)
    ntilde = args.ntilde if args.ntilde is not None else d
    dtilde = _single(args.dtilde, "dtilde", ntilde)
    return ExtendedConfig(args.n, d, ntilde, dtilde)


def _policy(args) -> PrecisionPolicy:
    return PrecisionPolicy(args.precision_bits, Rounding(args.rounding))


def _t_grid(a: float, b: float, m: int) -> np.ndarray:
    if m < 2:
        raise ConfigError("--points must be >= 2")
    t = a + np.arange(m) * ((b - a) / (m - 1))
    t[-1] = b
    return t


# --- commands ---------------------------------------------------------------


def cmd_weights(args):
    delta = args.delta if args.delta is not None else _single(args.d, "d", 3)
    w = fh_weights(args.n, delta)
    header = [f"w{i}" for i in w.indices]
    return header, [list(w.exact)], {"n": args.n, "delta": delta, "weights": list(w.exact)}


def cmd_eval(args):
    f = get_function(args.function)
    grid = make_equispaced(args.a, args.b, args.n)
    t = _t_grid(args.a, args.b, args.points or 1001)
    y = f(grid.nodes())
    if args.delta is not None:
        vals = barycentric(grid.nodes(), fh_weights(args.n, args.delta).values, y, t)
        meta = {"n": args.n, "delta": args.delta}
    else:
        cfg = _config(args)
        it = ExtendedInterpolant.build(grid, cfg)
        yt = extrapolate_taylor(grid, cfg, y, _policy(args))
        vals = barycentric(it.gridx.nodes(), it.weights.values, np.array([float(v) for v in yt]), t)
        meta = asdict(cfg)
    ref = f(t)
    err = np.abs(vals - ref)
    rows = list(zip(t, vals, ref, err))
    summary = dict(meta, function=f.name, points=int(t.size), max_error=float(err.max()))
    return ["t", "value", "reference", "abs_error"], rows, summary


def cmd_lebesgue(args):
    grid = make_equispaced(args.a, args.b, args.n)
    t = _t_grid(args.a, args.b, args.points or 2001)
    if args.delta is not None:
        w = fh_weights(args.n, args.delta)
        leb = fh_lebesgue_function(grid, w, t)
        naive = np.full(t.shape, math.nan)
        report = fh_lebesgue_constant(grid, args.delta)
    else:
        cfg = _config(args)
        it = ExtendedInterpolant.build(grid, cfg)
        emap = extrapolation_coeffs(cfg.ntilde, cfg.dtilde, cfg.d, as_float=False)
        leb = extended_lebesgue_function(cfg, emap, it.weights, it.gridx, t)
        naive = naive_bound_function(it.weights, it.gridx, t)
        report = extended_lebesgue_constant(grid, cfg)
    return ["t", "lebesgue", "naive_bound"], list(zip(t, leb, naive)), report


def cmd_theorem1(args):
    d = _single(args.d, "d", 4)
    n = args.n if args.n is not None else 2 * d + 4
    rep = theorem1_check(n, d, a=args.a, b=args.b)
    header = [f.name for f in fields(rep)]
    return header, [[getattr(rep, h) for h in header]], rep


def cmd_instability(args):
    cfg = _config(args)
    grid = make_equispaced(args.a, args.b, args.n)
    it = ExtendedInterpolant.build(grid, cfg)
    js = range(args.n + 1) if args.j is None else [args.j]
    rows = []
    for j in js:
        for lo, hi in detect_backward_instability(
            cfg, it.emap, it.weights, it.gridx, j, args.points or ROOT_SAMPLES, ROOT_TOL
        ):
            rows.append((j, lo, hi))
    off_range = any(it.weights[k] != 0 for k in it.weights.indices if not 0 <= k <= args.n)
    summary = {
        "config": asdict(cfg),
        "brackets": [{"j": j, "t_lo": lo, "t_hi": hi} for j, lo, hi in rows],
        "certified": bool(rows) and off_range,
    }
    return ["j", "t_lo", "t_hi"], rows, summary


def _report_row(rep: StabilityReport) -> list:
    cfg = rep.config
    flat = dict(asdict(rep), **{k: cfg.get(k, "") for k in ("n", "d", "ntilde", "dtilde", "delta")})
    return [flat[c] for c in EXPERIMENT_COLUMNS]


def cmd_experiment(args):
    f = get_function(args.function)
    policy = _policy(args)
    noise = (args.noise, args.seed) if args.noise else None
    points = args.points or 100_000
    reports = []
    if args.delta is not None:
        reports.append(error_harness(f, args.delta, args.n, points, noise=noise, a=args.a, b=args.b))
    else:
        dtildes = args.dtilde
        for d in args.d or [3]:
            for dt in dtildes or [None]:
                nt = args.ntilde if args.ntilde is not None else (d if dt is None else max(d, dt))
                cfg = ExtendedConfig(args.n, d, nt, nt if dt is None else dt)
                mon = RoundingMonitor() if policy.rounding is not Rounding.NEAREST else None
                reports.append(
                    error_harness(
                        f, cfg, args.n, points, ytilde_policy=policy, noise=noise, a=args.a, b=args.b, monitor=mon
                    )
                )
    return list(EXPERIMENT_COLUMNS), [_report_row(r) for r in reports], reports


def cmd_surface(args):
    grid = make_equispaced(args.a, args.b, args.n)
    rows = []
    for dt in args.dtilde or [3]:
        for d in args.d or [3]:
            cfg = ExtendedConfig(args.n, d, dt, dt)
            lam = extended_lebesgue_constant(grid, cfg, args.points or 64).constant
            rows.append((d, dt, math.log10(lam)))
    summary = [{"d": d, "dtilde": dt, "log10_lambda": v} for d, dt, v in rows]
    return ["d", "dtilde", "log10_lambda"], rows, summary


HANDLERS = {
    "weights": cmd_weights,
    "eval": cmd_eval,
    "lebesgue": cmd_lebesgue,
    "theorem1": cmd_theorem1,
    "instability": cmd_instability,
    "experiment": cmd_experiment,
    "surface": cmd_surface,
}
DEFAULT_FORMAT = {"theorem1": "json"}


def run(args) -> str:
    """Execute one command and return the rendered artifact."""
    if args.n is not None and args.n < 1:
        raise ConfigError("n >= 1 violated")
    header, rows, summary = HANDLERS[args.command](args)
    fmt = args.format or DEFAULT_FORMAT.get(args.command, "csv")
    return _csv(header, rows) if fmt == "csv" else _json(summary)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = run(args)
    except (ConfigError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"fhstab: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"fhstab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
