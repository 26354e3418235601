"""Command-line front end: ``qscissors <command> [options]``.

Every command writes one artifact (CSV by default, JSON or SVG on request)
to ``--output`` or to stdout. Floats are printed with 12 significant digits,
so identical invocations give byte-identical files.

Exit status: 0 on success, 1 on a usage error, 2 on a numeric failure.
"""
from __future__ import annotations

import argparse
import io
import json
import logging
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import NumericFailure, ZeroMean
from .pnd import (
    moments,
    pnd_closed,
    pnd_elliptic,
    pnd_from_expansion,
    pnd_gcs_closed,
    pnd_gcs_intermediate,
)
from .scissors import (
    DEFAULT_ASPECT,
    DEFAULT_THRESHOLD,
    equal_superposition_alpha,
    overlap_fidelity,
    reachability_table,
    window_for,
)
from .states import CircularStateSpec, EllipticStateSpec, fock_expansion

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2
SIG_DIGITS = 12
VERIFY_TOL = 1e-9
KINDS = {"N_plus_r": 1, "2N_plus_r": 2, "3N_plus_r": 3}



class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Result:
    """Tabular output plus the equivalent JSON document."""

    header: list[str]
    rows: list[list]
    payload: dict
    ok: bool = True
    plot: dict = field(default_factory=dict)


# -- formatting -------------------------------------------------------------

def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{SIG_DIGITS}g")
    return str(value)


def _round_floats(obj):
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(format(x, f".{SIG_DIGITS}g")) if math.isfinite(x) else None
    return obj


def render_csv(result: Result) -> str:
    lines = [",".join(result.header)]
    lines += [",".join(fmt(v) for v in row) for row in result.rows]
    return "\n".join(lines) + "\n"


def render_json(result: Result) -> str:
    return json.dumps(_round_floats(result.payload), indent=2, sort_keys=True) + "\n"


def render_svg(result: Result) -> str:
    try:
        import matplotlib
    except ImportError as exc:  # optional extra
        raise UsageError("SVG output needs matplotlib (pip install qscissors[plot])") from exc
    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "qscissors"
    import matplotlib.pyplot as plt

    spec = result.plot
    if not spec:
        raise UsageError("this command has no plot; use --format csv or json")
    x_col = result.header.index(spec["x"])
    fig, ax = plt.subplots(figsize=(6, 4))
    for name in spec["y"]:
        col = result.header.index(name)
        pts = [(r[x_col], r[col]) for r in result.rows if r[col] is not None]
        xs, ys = zip(*pts) if pts else ((), ())
        if spec.get("kind") == "bar":
            ax.bar(xs, ys, label=name)
        else:
            ax.plot(xs, ys, marker=".", label=name)
    ax.set_xlabel(spec["x"])
    ax.legend()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def write_atomic(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qscissors-")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- argument helpers ---------------------------------------------------------

def parse_grid(text: str) -> np.ndarray:
    """``lo:hi:step`` to an inclusive grid."""
    try:
        lo, hi, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}") from None
    if not (step > 0 and hi >= lo and lo >= 0):
        raise argparse.ArgumentTypeError("grid needs 0 <= lo <= hi and step > 0")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return np.round(lo + step * np.arange(count), 12)


def parse_int_range(text: str) -> list[int]:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError("range needs 1 <= lo <= hi")
    return list(range(lo, hi + 1))


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _nonneg_float(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _threshold(text):
    v = float(text)
    if not 0.5 < v < 1.0:
        raise argparse.ArgumentTypeError("threshold must lie in (0.5, 1)")
    return v


# -- commands ---------------------------------------------------------------

def cmd_pnd(args) -> Result:
    spec = CircularStateSpec(args.alpha, args.N, args.r)
    dist = pnd_closed(spec, args.n_max)
    try:
        m = moments(dist)
        stats = {"mean": m.mean, "variance": m.variance, "fano": m.fano}
    except ZeroMean:
        stats = {"mean": 0.0, "variance": 0.0, "fano": None}
    rows = [[n, p] for n, p in enumerate(dist.probs)]
    payload = {"command": "pnd", "N": args.N, "r": args.r, "alpha": args.alpha,
               "n_max": dist.n_max, "P_n": list(dist.probs), "moments": stats}
    return Result(["n", "P_n"], rows, payload, plot={"x": "n", "y": ["P_n"], "kind": "bar"})


WINDOW_HEADER = ["N", "r", "target_n", "alpha_lo", "alpha_hi", "delta_alpha"]


def _window_row(N, r, target, win):
    if win is None:
        return [N, r, target, None, None, None]
    return [N, r, target, win.alpha_lo, win.alpha_hi, win.width]


def cmd_window(args) -> Result:
    win = window_for(args.N, args.r, args.target, threshold=args.threshold,
                     alpha_max=args.alpha_max, grid_step=args.grid_step)
    rows = [] if win is None else [_window_row(args.N, args.r, args.target, win)]
    payload = {"command": "window", "N": args.N, "r": args.r, "target_n": args.target,
               "threshold": args.threshold,
               "window": None if win is None else {
                   "alpha_lo": win.alpha_lo, "alpha_hi": win.alpha_hi,
                   "delta_alpha": win.width, "peak_probability": win.peak_probability}}
    return Result(WINDOW_HEADER, rows, payload)


def cmd_table(args) -> Result:
    records = reachability_table(args.n_fock_max, args.N_max, args.r_max,
                                 threshold=args.threshold, aspect=args.aspect,
                                 elliptic=not args.no_elliptic)
    rows = [[rec.fock_n,
             ";".join(str(N) for N in rec.gcs_orders),
             ";".join(f"{N}:{r}" for N, r in rec.gpacs_combos),
             rec.elliptic_reachable] for rec in records]
    payload = {"command": "table", "n_fock_max": args.n_fock_max, "N_max": args.N_max,
               "r_max": args.r_max, "threshold": args.threshold, "aspect": args.aspect,
               "rows": [rec.to_dict() for rec in records]}
    return Result(["fock_n", "gcs_orders", "gpacs_combos", "elliptic_reachable"], rows, payload)


def cmd_equal(args) -> Result:
    rows, entries = [], []
    for S in range(args.S_max + 1):
        alpha = equal_superposition_alpha(args.N, S)
        dist = pnd_gcs_closed(CircularStateSpec(alpha, args.N))
        lo, hi = dist[S * args.N], dist[(S + 1) * args.N]
        rows.append([args.N, S, alpha, lo, hi])
        entries.append({"S": S, "alpha": alpha, "P_SN": lo, "P_S1N": hi})
    payload = {"command": "equal-superposition", "N": args.N, "entries": entries}
    return Result(["N", "S", "alpha", "P_SN", "P_S1N"], rows, payload,
                  plot={"x": "S", "y": ["alpha"]})


def cmd_fidelity(args) -> Result:
    spec = CircularStateSpec(0.0, args.N)
    values = [overlap_fidelity(spec, float(a), args.S) for a in args.alpha_grid]
    rows = [[float(a), f] for a, f in zip(args.alpha_grid, values)]
    i = int(np.argmax(values))
    payload = {"command": "fidelity-scan", "N": args.N, "S": args.S,
               "alpha": [float(a) for a in args.alpha_grid], "fidelity": values,
               "argmax_alpha": float(args.alpha_grid[i]), "max_fidelity": values[i],
               "equal_superposition_alpha": equal_superposition_alpha(args.N, args.S)}
    return Result(["alpha", "fidelity"], rows, payload, plot={"x": "alpha", "y": ["fidelity"]})


def cmd_ellipse(args) -> Result:
    if args.a < args.b:
        raise UsageError("--a (semi-major) must be >= --b (semi-minor)")
    spec = EllipticStateSpec(args.a, args.b, args.N, args.r)
    circle = CircularStateSpec(spec.equal_area_alpha, args.N, args.r)
    n_max = args.n_max
    dist = pnd_elliptic(spec, n_max)
    ref = pnd_closed(circle, dist.n_max)
    rows = [[n, p, q] for n, (p, q) in enumerate(zip(dist.probs, ref.probs))]
    payload = {"command": "ellipse", "a": args.a, "b": args.b, "N": args.N, "r": args.r,
               "equal_area_alpha": spec.equal_area_alpha,
               "P_n": list(dist.probs), "P_n_circular": list(ref.probs),
               "max_P_n": float(np.max(dist.probs)), "argmax_n": int(np.argmax(dist.probs))}
    return Result(["n", "P_n", "P_n_circular"], rows, payload,
                  plot={"x": "n", "y": ["P_n", "P_n_circular"]})


def verify_report(N_max: int, r_max: int, alphas) -> list[dict]:
    """Closed forms against the brute-force oracle over a parameter grid."""
    worst = {"closed_vs_oracle": 0.0, "intermediate_vs_closed": 0.0,
             "elliptic_degenerate_vs_closed": 0.0, "elliptic_vs_oracle": 0.0}
    for N in range(1, N_max + 1):
        for r in range(r_max + 1):
            for alpha in alphas:
                spec = CircularStateSpec(float(alpha), N, r)
                closed = pnd_closed(spec)
                oracle = pnd_from_expansion(fock_expansion(spec, closed.n_max))
                worst["closed_vs_oracle"] = max(
                    worst["closed_vs_oracle"], float(np.max(np.abs(closed.probs - oracle.probs))))
                if alpha <= 0:
                    continue
                ell = EllipticStateSpec(float(alpha), float(alpha), N, r)
                worst["elliptic_degenerate_vs_closed"] = max(
                    worst["elliptic_degenerate_vs_closed"],
                    float(np.max(np.abs(pnd_elliptic(ell, closed.n_max).probs - closed.probs))))
                if r == 0:
                    inter = pnd_gcs_intermediate(spec, closed.n_max)
                    worst["intermediate_vs_closed"] = max(
                        worst["intermediate_vs_closed"],
                        float(np.max(np.abs(inter.probs - closed.probs))))
                skew = EllipticStateSpec(float(alpha) * 1.25, float(alpha) * 0.8, N, r)
                e_closed = pnd_elliptic(skew)
                e_oracle = pnd_from_expansion(fock_expansion(skew, e_closed.n_max))
                worst["elliptic_vs_oracle"] = max(
                    worst["elliptic_vs_oracle"],
                    float(np.max(np.abs(e_closed.probs - e_oracle.probs))))
    return [{"check": k, "max_abs_diff": v, "tolerance": VERIFY_TOL, "passed": v < VERIFY_TOL}
            for k, v in worst.items()]


def cmd_verify(args) -> Result:
    report = verify_report(args.N_max, args.r_max, args.alpha_grid)
    rows = [[c["check"], c["max_abs_diff"], c["tolerance"], c["passed"]] for c in report]
    ok = all(c["passed"] for c in report)
    payload = {"command": "verify", "N_max": args.N_max, "r_max": args.r_max,
               "alpha_grid": [float(a) for a in args.alpha_grid], "checks": report, "passed": ok}
    return Result(["check", "max_abs_diff", "tolerance", "passed"], rows, payload, ok=ok)


def cmd_sweep(args) -> Result:
    mult = KINDS[args.kind]
    rows = []
    for N in args.N_range:
        target = mult * N + args.r
        win = window_for(N, args.r, target, threshold=args.threshold)
        rows.append(_window_row(N, args.r, target, win))
    payload = {"command": "sweep", "r": args.r, "kind": args.kind, "threshold": args.threshold,
               "windows": [dict(zip(WINDOW_HEADER, row)) for row in rows]}
    return Result(WINDOW_HEADER, rows, payload, plot={"x": "N", "y": ["delta_alpha"]})


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qscissors", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
        return p

    p = command("pnd", cmd_pnd, "photon-number distribution of a (photon-added) GCS")
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--r", type=_nonneg_int, default=0)
    p.add_argument("--alpha", type=_nonneg_float, required=True)
    p.add_argument("--n-max", type=_nonneg_int, default=None)

    p = command("window", cmd_window, "alpha window producing one Fock state")
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--r", type=_nonneg_int, default=0)
    p.add_argument("--target", type=_nonneg_int, required=True)
    p.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD)
    p.add_argument("--alpha-max", type=_positive_float, default=None)
    p.add_argument("--grid-step", type=_positive_float, default=0.01)

    p = command("table", cmd_table, "Fock-state reachability table")
    p.add_argument("--n-fock-max", type=_nonneg_int, default=16)
    p.add_argument("--N-max", type=_positive_int, default=16)
    p.add_argument("--r-max", type=_nonneg_int, default=10)
    p.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD)
    p.add_argument("--aspect", type=float, default=DEFAULT_ASPECT, help="ellipse a/b")
    p.add_argument("--no-elliptic", action="store_true", help="skip the elliptic sweep")

    p = command("equal-superposition", cmd_equal, "alpha for 50-50 two-Fock superpositions")
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--S-max", type=_nonneg_int, default=3)

    p = command("fidelity-scan", cmd_fidelity, "overlap with (|SN>+|(S+1)N>)/sqrt(2) over alpha")
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--S", type=_nonneg_int, default=0)
    p.add_argument("--alpha-grid", type=parse_grid, default=parse_grid("0.01:8:0.01"))

    p = command("ellipse", cmd_ellipse, "distribution of the elliptic superposition")
    p.add_argument("--a", type=_positive_float, required=True)
    p.add_argument("--b", type=_positive_float, required=True)
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--r", type=_nonneg_int, default=0)
    p.add_argument("--n-max", type=_nonneg_int, default=None)

    p = command("verify", cmd_verify, "check every closed form against the Fock-space oracle")
    p.add_argument("--N-max", type=_positive_int, default=10)
    p.add_argument("--r-max", type=_nonneg_int, default=3)
    p.add_argument("--alpha-grid", type=parse_grid, default=parse_grid("0.5:6:0.5"))

    p = command("sweep", cmd_sweep, "window width versus N for |kN + r>")
    p.add_argument("--r", type=_nonneg_int, default=0)
    p.add_argument("--kind", choices=sorted(KINDS), default="N_plus_r")
    p.add_argument("--N-range", type=parse_int_range, default=parse_int_range("1:40"))
    p.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD)
    return parser


RENDERERS = {"csv": render_csv, "json": render_json, "svg": render_svg}


def run(argv: list[str] | None = None) -> int:
    """Parse ``argv``, run the command, write the artifact; return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
        text = RENDERERS[args.format](result)
    except UsageError as exc:
        print(f"qscissors: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericFailure as exc:
        print(f"qscissors: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    write_atomic(text, args.output)
    return EXIT_OK if result.ok else EXIT_NUMERIC


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
