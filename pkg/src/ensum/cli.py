"""Command-line driver.

Subcommands ``sum``, ``integrate``, ``analyze`` and ``sweep``.  Reports are
JSON documents (``--format kv``) or flat CSV (``--format csv``).  Failures
print one JSON error record on stderr and exit with 2 (validation/usage)
or 3 (capacity).

Environment: ``ENSUM_SEED`` sets the default seed, ``ENSUM_OUTPUT_DIR``
anchors relative ``--output`` paths.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .complexity import advantage_regime, full_table, search_threshold, summing_threshold
from .errors import CapacityError, EnsumError, UsageError, ValidationError
from .integrate import IntegrandSpec, estimate_integral, evaluate_on_grid, sample_points
from .measurement import NoiseModel, required_trials, thermal_error_bound
from .oracle import load_table, read_table_file
from .pipeline import run_pipeline
from .registers import K_MAX_SPINS, N_MAX_SPINS

DEFAULT_K = 16
MAX_SWEEP_CELLS = 10_000


# -- built-in integrands ----------------------------------------------------

def _linear(a, b):
    return (lambda x: (x - a) / (b - a)), (b - a) / 2


def _quadratic(a, b):
    return (lambda x: ((x - a) / (b - a)) ** 2), (b - a) / 3


def _sine(a, b):
    return (lambda x: 0.5 * (1.0 + np.sin(x))), (b - a) / 2 + (math.cos(a) - math.cos(b)) / 2


def _constant(c):
    def make(a, b):
        return (lambda x: c + 0.0 * np.asarray(x, dtype=float)), c * (b - a)

    return make


def resolve_integrand(ident: str):
    """Return ``make(a, b) -> (g, exact_integral)`` for a built-in id."""
    table = {"linear": _linear, "quadratic": _quadratic, "sine": _sine}
    if ident in table:
        return table[ident]
    if ident.startswith("constant:"):
        try:
            c = float(ident.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad constant integrand {ident!r}") from None
        return _constant(c)
    raise UsageError(f"unknown integrand {ident!r}; choose linear, quadratic, sine or constant:<c>")


# -- argument parsing -------------------------------------------------------

def _interval(text):
    try:
        a, b = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    return a, b


def _trials(text):
    if text in ("paper", "parametric"):
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected paper, parametric or an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("trial count must be >= 1")
    return value


def _float_value(text):
    return math.inf if text.strip().lower() in ("inf", "ideal") else float(text)


def _grid(cast):
    """Comma list with optional integer ranges ``lo..hi``."""

    def parse(text):
        out = []
        for part in text.split(","):
            part = part.strip()
            if ".." in part and cast is int:
                lo, hi = (int(p) for p in part.split(".."))
                out.extend(range(lo, hi + 1))
            else:
                out.append(cast(part))
        if not out:
            raise argparse.ArgumentTypeError("empty grid")
        return out

    return parse


def _default_seed():
    env = os.environ.get("ENSUM_SEED")
    return int(env) if env else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ensum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=False):
        if grid:
            p.add_argument("--n", type=_grid(int), help="input spins, e.g. 4,6 or 4..10")
            p.add_argument("--k", type=_grid(int), default=[DEFAULT_K], help="output spins")
            p.add_argument("--snr", type=_grid(_float_value), help="signal-to-noise ratios; inf = ideal")
            p.add_argument("--alpha", type=_grid(float), default=[0.0], help="Boltzmann factors")
        else:
            p.add_argument("--n", type=int, help="input spins (default: smallest that fits)")
            p.add_argument("--k", type=int, default=DEFAULT_K, help="output spins (default 16)")
            p.add_argument("--snr", type=_float_value, help="single-trial SNR (omit for ideal readout)")
            p.add_argument("--alpha", type=float, default=0.0, help="thermal Boltzmann factor (default 0)")
        p.add_argument("--trials", type=_trials, default="parametric",
                       help="paper, parametric or an explicit count (default parametric)")
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default $ENSUM_SEED or 0)")
        p.add_argument("--output", help="report path (default stdout)")
        p.add_argument("--format", choices=("kv", "csv"), default=None)

    p = sub.add_parser("sum", help="sum a function table")
    p.add_argument("--input", required=True, help="table file: one value per line, or a .json array")
    common(p)

    p = sub.add_parser("integrate", help="integrate a built-in integrand")
    p.add_argument("--integrand", required=True, help="linear | quadratic | sine | constant:<c>")
    p.add_argument("--interval", type=_interval, default=(0.0, 1.0), help="a:b (default 0:1)")
    p.add_argument("--lipschitz", type=float, help="Lipschitz constant of the integrand")
    common(p)

    p = sub.add_parser("analyze", help="complexity table, thresholds and verdict")
    p.add_argument("--samples", type=int, help="sample count N (default 2**n)")
    p.add_argument("--n", type=int, help="input spins, N = 2**n")
    p.add_argument("--snr", type=float, required=True, help="signal-to-noise ratio")
    p.add_argument("--output", help="report path (default stdout)")
    p.add_argument("--format", choices=("kv", "csv"), default=None)

    p = sub.add_parser("sweep", help="grid over n, k, snr and alpha")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="table file")
    src.add_argument("--integrand", help="built-in integrand id")
    p.add_argument("--interval", type=_interval, default=(0.0, 1.0))
    p.add_argument("--lipschitz", type=float)
    common(p, grid=True)
    return parser


# -- report helpers ---------------------------------------------------------

def _num(x):
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError(f"non-finite value {x!r} in report")
    return x


def _noise_for(snr, trials, N, seed):
    if snr is None or math.isinf(snr):
        return None, 1
    count = required_trials(N, snr, trials) if isinstance(trials, str) else trials
    return NoiseModel(snr, seed, count), count


def _trial_options(N, snr):
    if snr is None or math.isinf(snr):
        return {"paper": required_trials(N, 1.0, "paper"), "parametric": None}
    return {"paper": required_trials(N, snr, "paper"), "parametric": required_trials(N, snr, "parametric")}


def _verdict(N, snr):
    if snr is None or math.isinf(snr) or N < 2:
        return {"verdict": None, "note": "requires a finite --snr"}
    return {k: (_num(v) if isinstance(v, float) else v) for k, v in advantage_regime(N, snr).as_dict().items()}


def _replay_argv(args) -> list[str]:
    """Canonical argv that reproduces this run (output path omitted)."""
    argv = [args.command]
    for name in ("input", "integrand", "interval", "lipschitz", "samples", "n", "k", "snr", "alpha", "trials", "seed", "format"):
        value = getattr(args, name, None)
        if value is None:
            continue
        if name == "interval":
            value = f"{value[0]!r}:{value[1]!r}"
        elif isinstance(value, list):
            value = ",".join(repr(v) if isinstance(v, float) else str(v) for v in value)
        elif isinstance(value, float):
            value = repr(value)
        argv += [f"--{name}", str(value)]
    return argv


def _config(args) -> dict:
    return {"argv": _replay_argv(args), "version": __version__}


def _run_sum_core(values, n, k, snr, trials, alpha, seed):
    f = load_table(values, n=n)
    noise, count = _noise_for(snr, trials, f.N, seed)
    run = run_pipeline(f, k, noise=noise, alpha=alpha)
    m = run.measurement
    delta = run.spec.delta
    noise_sigma = m.f_bar_sigma * f.N
    return f, run, {
        "register": {"n": run.spec.n, "k": k, "N": f.N, "N_true": f.n_true, "delta": delta},
        "sum_estimate": _num(m.sum_estimate),
        "f_bar": _num(m.f_bar),
        "mean_estimate": _num(run.mean_estimate),
        "gamma_norm": [_num(g) for g in m.gamma_norm],
        "error_budget": {
            "encoding_bound_sum": _num(f.n_true * delta),
            "noise_sigma_sum": _num(noise_sigma),
            "thermal_bound_mean": _num(run.thermal_bound),
            "thermal_bound_sum": _num(run.thermal_bound * f.N),
            "units": "absolute error on sum_estimate unless suffixed _mean",
        },
        "query_ledger": run.ledger.as_dict(),
        "trials": {"used": count, **_trial_options(f.N, snr)},
        "complexity": _verdict(f.N, snr),
    }


def cmd_sum(args) -> dict:
    values = read_table_file(args.input)
    _, _, body = _run_sum_core(values, args.n, args.k, args.snr, args.trials, args.alpha, args.seed)
    return {"command": "sum", "config": _config(args), **body}


def cmd_integrate(args) -> dict:
    make = resolve_integrand(args.integrand)
    a, b = args.interval
    g, exact = make(a, b)
    n = args.n if args.n is not None else 10
    args.n = n
    spec = IntegrandSpec(g, a, b, args.lipschitz)
    noise, count = _noise_for(args.snr, args.trials, 1 << n, args.seed)
    est = estimate_integral(spec, n, args.k, noise=noise, alpha=args.alpha)
    run = est.run
    return {
        "command": "integrate",
        "config": _config(args),
        "integrand": {"id": args.integrand, "a": a, "b": b, "lipschitz": args.lipschitz},
        "estimate": {k: (_num(v) if isinstance(v, (int, float)) else v) for k, v in est.as_dict().items()},
        "exact_integral": _num(exact),
        "observed_error": _num(abs(est.value - exact)),
        "f_bar": _num(run.f_bar),
        "gamma_norm": [_num(x) for x in run.measurement.gamma_norm],
        "query_ledger": run.ledger.as_dict(),
        "trials": {"used": count, **_trial_options(1 << n, args.snr)},
        "complexity": _verdict(1 << n, args.snr),
    }


def cmd_analyze(args) -> dict:
    if args.samples is None:
        if args.n is None:
            raise UsageError("analyze needs --samples or --n")
        args.samples = 1 << args.n
        args.n = None
    N, S = args.samples, args.snr
    if N < 2:
        raise ValidationError(f"N must be >= 2, got {N}")
    verdict = advantage_regime(N, S)
    return {
        "command": "analyze",
        "config": _config(args),
        "N": N,
        "snr": S,
        "table": [row.as_dict() for row in full_table(N)],
        "summing_threshold": _num(summing_threshold(S)),
        "search_threshold": _num(search_threshold(S)) if S > 1 else None,
        "verdict": verdict.verdict,
        "search_regime": verdict.search_regime,
        "comparison": {"N_sqrt_N": _num(verdict.lhs), "snr_squared": _num(verdict.rhs)},
        "label": "leading-term magnitudes with unit constants",
    }


SWEEP_COLUMNS = [
    "cell", "n", "k", "snr", "alpha", "seed", "trials", "N", "N_true",
    "sum_estimate", "f_bar", "exact_sum", "encoded_sum", "encoding_error", "encoding_bound",
    "total_error", "noise_sigma_sum", "thermal_bias_mean", "thermal_bound_mean",
    "overall_queries", "integral_value", "exact_integral",
]


def cmd_sweep(args) -> list[dict]:
    ns = args.n or [None]
    snrs = args.snr or [math.inf]
    cells = list(itertools.product(ns, args.k, snrs, args.alpha))
    if len(cells) > MAX_SWEEP_CELLS:
        raise CapacityError(f"sweep grid has {len(cells)} cells; the limit is {MAX_SWEEP_CELLS}")
    for n in ns:
        if n is not None and not 1 <= n <= N_MAX_SPINS:
            raise CapacityError(f"n={n} outside [1, {N_MAX_SPINS}]")
    for k in args.k:
        if not 1 <= k <= K_MAX_SPINS:
            raise CapacityError(f"k={k} outside [1, {K_MAX_SPINS}]")
    table = read_table_file(args.input) if args.input else None
    if args.integrand:
        make = resolve_integrand(args.integrand)
        a, b = args.interval
        g, exact = make(a, b)
    rows = []
    for idx, (n, k, snr, alpha) in enumerate(cells):
        seed = args.seed + idx
        width = None
        if table is not None:
            values = table
        else:
            n = n if n is not None else 10
            values = evaluate_on_grid(g, sample_points(a, b, 1 << n))
            width = b - a
        f, run, body = _run_sum_core(values, n, k, snr, args.trials, alpha, seed)
        exact_sum = math.fsum(float(v) for v in values)
        encoded_sum = math.fsum(float(c) for c in f.codes(k)) * run.spec.delta
        if alpha:
            ref = run_pipeline(load_table(values, n=f.n), k)
            thermal = run_pipeline(load_table(values, n=f.n), k, alpha=alpha)
            bias = thermal.f_bar - ref.f_bar
        else:
            bias = 0.0
        rows.append({
            "cell": idx, "n": f.n, "k": k, "snr": snr, "alpha": alpha, "seed": seed,
            "trials": body["trials"]["used"], "N": f.N, "N_true": f.n_true,
            "sum_estimate": body["sum_estimate"], "f_bar": body["f_bar"],
            "exact_sum": exact_sum, "encoded_sum": encoded_sum,
            "encoding_error": exact_sum - encoded_sum,
            "encoding_bound": body["error_budget"]["encoding_bound_sum"],
            "total_error": body["sum_estimate"] - exact_sum,
            "noise_sigma_sum": body["error_budget"]["noise_sigma_sum"],
            "thermal_bias_mean": bias,
            "thermal_bound_mean": thermal_error_bound(f.n, alpha),
            "overall_queries": run.ledger.overall_queries,
            "integral_value": None if width is None else width * body["sum_estimate"] / f.N,
            "exact_integral": None if width is None else exact,
        })
    return rows


# -- output -----------------------------------------------------------------

def _flatten(d, prefix=""):
    out = {}
    for key, value in d.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                out.update(_flatten(item, f"{name}.{i}."))
        elif isinstance(value, list):
            out[name] = " ".join(str(v) for v in value)
        else:
            out[name] = value
    return out


def _csv(rows, columns):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: ("" if row.get(c) is None else repr(row[c]) if isinstance(row[c], float) else row[c]) for c in columns})
    return buf.getvalue()


def render(report, fmt: str) -> str:
    if isinstance(report, list):
        if fmt == "kv":
            return json.dumps({"command": "sweep", "records": report}, indent=2, sort_keys=True) + "\n"
        return _csv(report, SWEEP_COLUMNS)
    if fmt == "csv":
        flat = _flatten(report)
        return _csv([flat], list(flat))
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _write(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    if not path.is_absolute() and os.environ.get("ENSUM_OUTPUT_DIR"):
        path = Path(os.environ["ENSUM_OUTPUT_DIR"]) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


COMMANDS = {"sum": cmd_sum, "integrate": cmd_integrate, "analyze": cmd_analyze, "sweep": cmd_sweep}


def error_record(exc: EnsumError) -> str:
    record = {"error": {"code": exc.code, "exit_status": exc.exit_status, "message": str(exc)}}
    return json.dumps(record, sort_keys=True)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        args.seed = _default_seed()
    if args.format is None:
        args.format = "csv" if args.command == "sweep" else "kv"
    try:
        report = COMMANDS[args.command](args)
        text = render(report, args.format)
        _write(text, args.output)
    except EnsumError as exc:
        print(error_record(exc), file=sys.stderr)
        return exc.exit_status
    return 0


if __name__ == "__main__":
    sys.exit(main())
