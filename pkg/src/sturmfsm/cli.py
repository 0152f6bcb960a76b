"""Command line front end.

Every command produces a JSON object by default; ``--format csv`` writes
its table and ``--format text`` an aligned plain-text version of it.
Exit codes: 0 success or applicable, 1 not applicable, 2 inconclusive,
64 usage error, 70 internal consistency failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import applicability as ap
from .cf import approximants, approximation_gap, parse_digits, q_of
from .errors import ConsistencyError, InsufficientDigitsError, SingularMatrixError
from .figures import COLUMNS, emit_figure_data, render_figure
from .fsm import OperatorSpec, fsm_run, parse_schedule
from .spectra import band_spectrum, g_m_set, one_sided_point_spectrum
from .transfer import monodromy_recursive
from .words import enumerate_subwords, sturmian_window

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 64, 70
VERDICT_EXIT = {"applicable": EXIT_OK, "not_applicable": EXIT_NEGATIVE,
                "inconclusive": EXIT_INCONCLUSIVE}
WORKERS_ENV = "STURMFSM_WORKERS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Result:
    """What a command hands back: a JSON payload, an optional table, an exit code."""

    def __init__(self, payload: dict, header: Sequence[str] = (), rows: Sequence[Sequence] = (),
                 code: int = EXIT_OK):
        self.payload, self.header, self.rows, self.code = payload, list(header), list(rows), code


# values ---------------------------------------------------------------------

def number(text: str):
    """Exact ``int`` or ``Fraction`` for ``"3"``, ``"1/2"``; ``float`` otherwise."""
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def number_list(text: str) -> list:
    return [number(t) for t in text.split(",") if t.strip()]


def int_range(text: str) -> range:
    """``"4:8"`` (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            return range(lo, hi + 1)
        k = int(text)
        return range(k, k + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected M or LO:HI, got {text!r}") from None


def float_pair(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.replace(",", ":").split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return lo, hi


def digits_arg(text: str):
    try:
        return parse_digits(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def schedule_arg(text: str) -> list[int]:
    try:
        return parse_schedule(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


def strict_json(x):
    # JSON has no inf/nan; an empty point set is reported as distance null
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: strict_json(v) for k, v in x.items()}
    if isinstance(x, list):
        return [strict_json(v) for v in x]
    return x


def cell(x) -> str:
    x = jsonable(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _period(args) -> list:
    if args.values is not None:
        return [args.lam * v for v in args.values]
    if args.word is not None:
        return [args.lam * int(c) for c in args.word]
    raise UsageError("give --word or --values")


def _workers(args) -> int:
    return max(1, args.workers)


# commands -------------------------------------------------------------------

def cmd_approximants(args) -> Result:
    m_max = len(args.digits) if args.m_max is None else args.m_max
    rows = []
    for a in approximants(args.digits, m_max):
        lo, hi = approximation_gap(args.digits, a.m) if a.m < len(args.digits) else (None, None)
        rows.append((a.m, a.p, a.q, a.value, lo, hi))
    header = ("m", "p", "q", "value", "gap_lower", "gap_upper")
    return Result({"digits": list(args.digits.digits),
                   "approximants": [dict(zip(header, r)) for r in rows]}, header, rows)


def cmd_word(args) -> Result:
    w = sturmian_window(args.digits, args.start, args.length, args.variant, args.shift)
    return Result({"start": w.origin, "length": len(w), "variant": args.variant,
                   "shift": args.shift, "word": w.symbols},
                  ("start", "word"), [(w.origin, w.symbols)])


def cmd_subwords(args) -> Result:
    words = enumerate_subwords(args.digits, args.length, args.variant)
    rows = [(w.symbols, w.origin) for w in words]
    return Result({"length": args.length, "count": len(words),
                   "subwords": [w.symbols for w in words]}, ("word", "first_index"), rows)


def cmd_trace(args) -> Result:
    lam = args.lam if args.exact else float(args.lam)
    E = args.energy if args.exact else float(args.energy)
    rows = []
    for m in args.m:
        M = monodromy_recursive(args.digits, lam, E, m)
        rows.append((m, q_of(args.digits, m), M.trace, M.m11, M.m12, M.m21, M.m22))
    header = ("m", "q", "trace", "m11", "m12", "m21", "m22")
    return Result({"lambda": lam, "energy": E, "traces": [dict(zip(header, r)) for r in rows]},
                  header, rows)


def cmd_bands(args) -> Result:
    values = _period(args)
    spec = band_spectrum(values)
    rows = [(i, lo, hi) for i, (lo, hi) in enumerate(spec.bands)]
    return Result({"potential": values, "bands": [list(b) for b in spec.bands],
                   "gaps": [list(g) for g in spec.gaps()]}, ("band", "lo", "hi"), rows)


def cmd_one_sided(args) -> Result:
    values = _period(args)
    pts = one_sided_point_spectrum(values)
    rows = [(p, g) for p, g in zip(pts.points, pts.in_gap)]
    return Result({"potential": values, "points": list(pts.points), "in_gap": list(pts.in_gap),
                   "dist_to_zero": pts.distance(0.0), "boundary_flags": list(pts.boundary),
                   "degenerate": pts.degenerate},
                  ("point", "in_gap"), rows)


def cmd_gm(args) -> Result:
    rows, sets = [], []
    for m in args.m:
        g = g_m_set(args.digits, args.lam, m, workers=_workers(args))
        rows.append((m, q_of(args.digits, m), g.distance(0.0), len(g.points), g.degenerate))
        sets.append({"m": m, "points": list(g.points), "dist_to_zero": g.distance(0.0),
                     "boundary_flags": list(g.boundary),
                     "degenerate": g.degenerate})
    header = ("m", "q", "dist0", "points", "degenerate")
    return Result({"lambda": args.lam, "sets": sets,
                   "distances": [dict(zip(header, r)) for r in rows]}, header, rows)


def cmd_trace_check(args) -> Result:
    m0, traces, warnings = ap.aperiodic_trace_check(args.digits, args.lam, args.m_max)
    rows = [(m, t, abs(t) > 2) for m, t in traces]
    code = EXIT_OK if m0 is not None else EXIT_NEGATIVE
    return Result({"m0": m0, "trace_values": traces, "warnings": warnings},
                  ("m", "trace", "above_two"), rows, code)


def _report_result(report: ap.ApplicabilityReport) -> Result:
    d = report.to_dict()
    rows = [(k, d[k]) for k in ("verdict", "method", "m0", "epsilon", "D", "windows",
                                "min_window_nu", "fsm_inverse_bound")]
    return Result(d, ("field", "value"), rows, VERDICT_EXIT[report.verdict])


def cmd_certify(args) -> Result:
    return _report_result(ap.check_applicability_certified(args.digits, args.lam, args.depth,
                                                           workers=_workers(args)))


def cmd_verdict(args) -> Result:
    if args.word is not None or args.values is not None:
        return _report_result(ap.periodic_fsm_applicable(_period(args), 1))
    if args.digits is None:
        raise UsageError("give --digits, --word or --values")
    return _report_result(ap.sturmian_fsm_verdict(args.digits, args.lam, args.m_max, args.depth,
                                               workers=_workers(args)))


def _operator_spec(args) -> OperatorSpec:
    if args.operator is not None:
        cfg = json.loads(Path(args.operator).read_text(encoding="utf-8"))
        lam = number(str(cfg.get("lambda", 1)))
        energy = number(str(cfg.get("energy", 0)))
        if "digits" in cfg:
            return OperatorSpec.sturmian(parse_digits(str(cfg["digits"])), lam,
                                         int(cfg.get("shift", 0)), cfg.get("variant", "plain"),
                                         energy)
        if "period" in cfg:
            period = cfg["period"]
            return OperatorSpec.periodic(period if isinstance(period, str)
                                         else [number(str(v)) for v in period], lam, energy)
        raise UsageError("--operator file needs a 'digits' or 'period' entry")
    if args.digits is not None:
        return OperatorSpec.sturmian(args.digits, args.lam, args.shift, args.variant, args.energy)
    if args.word is not None:
        return OperatorSpec.periodic(args.word, args.lam, args.energy)
    if args.values is not None:
        return OperatorSpec.periodic(args.values, args.lam, args.energy)
    raise UsageError("give --operator, --digits, --word or --values")


def cmd_solve(args) -> Result:
    spec = _operator_spec(args)
    if args.rhs is None:
        rhs = {"origin": 0, "values": [1.0]}
    else:
        rhs = json.loads(Path(args.rhs).read_text(encoding="utf-8"))
        if "origin" not in rhs or "values" not in rhs:
            raise UsageError("--rhs JSON needs 'origin' and 'values'")
    run = fsm_run(spec, rhs, args.schedule, args.tol)
    deltas = [None] + run.deltas
    rows = list(zip(run.sizes, run.residuals, deltas, run.inverse_norm_estimates))
    code = EXIT_OK if run.converged else EXIT_INCONCLUSIVE
    return Result(run.to_dict(), ("n", "residual", "delta", "inverse_norm"), rows, code)


def cmd_figure(args) -> Result:
    rows = emit_figure_data(args.digits, args.lam, args.m, args.window, workers=_workers(args))
    payload = {"lambda": args.lam, "window": list(args.window),
               "rows": [dict(zip(COLUMNS, r.as_tuple())) for r in rows]}
    if args.plot:
        render_figure(rows, args.plot, args.window)
        payload["plot"] = str(args.plot)
    return Result(payload, COLUMNS, [r.as_tuple() for r in rows])


# output ---------------------------------------------------------------------

def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(strict_json(jsonable(result.payload)), indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(result.header)
        writer.writerows([cell(x) for x in row] for row in result.rows)
        return buf.getvalue()
    table = [result.header] + [[cell(x) for x in row] for row in result.rows]
    widths = [max(len(str(r[i])) for r in table) for i in range(len(result.header))]
    for r in table:
        buf.write("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() + "\n")
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    env_workers = os.environ.get(WORKERS_ENV, "1")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--workers", type=int, default=int(env_workers) if env_workers.isdigit() else 1,
                        help=f"worker processes (default from ${WORKERS_ENV}, else 1)")

    def digits(p, required=True):
        p.add_argument("--digits", type=digits_arg, required=required,
                       help="continued fraction digits: 1,2,3 or golden:N or silver:N")

    def lam(p):
        p.add_argument("--lambda", dest="lam", type=number, default=1,
                       help="coupling; 1/2 style fractions stay exact")

    def period(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--word", help="one period as a 0/1 word, scaled by --lambda")
        g.add_argument("--values", type=number_list, help="one period as explicit values")

    parser = _Parser(prog="sturmfsm", description="Sturmian Schrödinger operators and the finite section method")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("approximants", cmd_approximants, "rational approximants p/q")
    digits(p)
    p.add_argument("--m-max", type=int)

    p = add("word", cmd_word, "window of the Sturmian word")
    digits(p)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--variant", choices=("plain", "tilde"), default="plain")
    p.add_argument("--shift", type=int, default=0, help="orbit offset k, theta = k*alpha")

    p = add("subwords", cmd_subwords, "all factors of a given length")
    digits(p)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--variant", choices=("plain", "tilde"), default="plain")

    p = add("trace", cmd_trace, "monodromy over sites 1..q_m")
    digits(p)
    lam(p)
    p.add_argument("--m", type=int_range, required=True, help="M or LO:HI")
    p.add_argument("--energy", type=number, default=0)
    p.add_argument("--exact", action="store_true", help="rational arithmetic")

    p = add("bands", cmd_bands, "band spectrum of a periodic potential")
    period(p)
    lam(p)

    p = add("one-sided", cmd_one_sided, "extra eigenvalues of the half-line compression")
    period(p)
    lam(p)

    p = add("gm", cmd_gm, "G_m point sets of the periodic approximants")
    digits(p)
    lam(p)
    p.add_argument("--m", type=int_range, required=True)

    p = add("trace-check", cmd_trace_check, "two consecutive traces above 2 at E = 0")
    digits(p)
    lam(p)
    p.add_argument("--m-max", type=int, required=True)

    p = add("certify", cmd_certify, "lower-norm certificate over all windows")
    digits(p)
    lam(p)
    p.add_argument("--depth", type=int, required=True, help="window depth D (length D+1)")

    p = add("verdict", cmd_verdict, "applicability verdict (Sturmian or periodic)")
    digits(p, required=False)
    lam(p)
    period(p)
    p.add_argument("--m-max", type=int, default=8)
    p.add_argument("--depth", type=int, default=200)

    p = add("solve", cmd_solve, "run the finite section method")
    digits(p, required=False)
    lam(p)
    period(p)
    p.add_argument("--operator", help="JSON file with lambda, energy and digits/shift/variant or period")
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--variant", choices=("plain", "tilde"), default="plain")
    p.add_argument("--energy", type=number, default=0)
    p.add_argument("--rhs", help="JSON file {origin, values}; default unit vector at 0")
    p.add_argument("--schedule", type=schedule_arg, default=parse_schedule("8:2:1024"),
                   help="n1,n2,... or START:FACTOR:STOP")
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("figure", cmd_figure, "bands and G_m points per m, optionally plotted")
    digits(p)
    lam(p)
    p.add_argument("--m", type=int_range, required=True)
    p.add_argument("--window", type=float_pair, default=(-3.0, 3.0),
                   help="energy window LO:HI (use --window=-1:1 for negative LO)")
    p.add_argument("--plot", type=Path, help="also render a PNG here")
    return parser


def parse_and_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    func: Callable[..., Result] = args.func
    try:
        result = func(args)
    except (UsageError, InsufficientDigitsError, ValueError, SingularMatrixError) as exc:
        print(f"sturmfsm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"sturmfsm {args.command}: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = render(result, args.format)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return parse_and_dispatch(argv)


if __name__ == "__main__":
    raise SystemExit(main())
