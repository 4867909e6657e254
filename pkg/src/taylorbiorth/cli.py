"""Command-line front end.

Subcommands::

    analyze     energy decomposition table (JSON or CSV)
    series      partial sums of the energy series (CSV with footer)
    derivagram  derivagram CSV and optional SVG
    sampling    sinc/Dirac-comb biorthogonality and reconstruction errors

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
The environment variable ``TB_TOL`` overrides the default quadrature
tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import biorth, derivagram, quad, sampling, series, tables
from .errors import DomainError, ParseError, QuadratureError, ValidationError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

# options whose values may legitimately start with '-'
_VALUE_OPTIONS = {"--rc", "--grid", "--signal", "--b", "--t"}


def parse_rc(text: str) -> quad.Interval:
    try:
        lo_s, hi_s = text.split(",")
        return quad.Interval(float(lo_s), float(hi_s))
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"--rc must look like lo,hi (inf/-inf allowed), got {text!r}") from None


def default_tol() -> float:
    env = os.environ.get("TB_TOL")
    if env is None:
        return quad.DEFAULT_TOL
    try:
        tol = float(env)
    except ValueError:
        raise ValidationError(f"TB_TOL must be a number, got {env!r}") from None
    if not tol > 0:
        raise ValidationError(f"TB_TOL must be positive, got {env!r}")
    return tol


def _json_number(x: float):
    return x if math.isfinite(x) else None


def _json_endpoint(x: float):
    # JSON has no infinity; infinite endpoints are written as the CLI tokens
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    rc = parse_rc(args.rc) if args.rc else None
    s = biorth.get_signal(args.signal, rc)
    if args.levels < 1:
        raise ValidationError(f"--levels must be >= 1, got {args.levels}")
    d = biorth.parseval_taylor(s, args.b, args.levels - 1, args.tol, max_order=args.max_order)
    if args.format == "json":
        payload = d.to_dict()
        payload["expression"] = str(s.expr)
        payload["rc"] = [_json_endpoint(s.rc.lo), _json_endpoint(s.rc.hi)]
        for key in ("partial_energy", "gap"):
            payload[key] = _json_number(payload[key])
        for row in payload["rows"]:
            for key in ("c", "c_dual", "DE", "E"):
                row[key] = _json_number(row[key])
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    else:
        rows = [(n, d.c[n], d.c_dual[n], d.de[n], d.cumulative[n]) for n in range(d.order + 1)]
        text = tables.table_to_string(
            ("n", "c", "c_dual", "DE", "E"), rows,
            [("quadrature_energy", d.quadrature_energy), ("gap", d.gap)],
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_series(args) -> int:
    fn = series.SERIES[args.name]
    if args.terms < 1:
        raise ValidationError(f"--terms must be >= 1, got {args.terms}")
    if args.accelerate < 1:
        raise ValidationError(f"--accelerate must be >= 1, got {args.accelerate}")
    # converg1 starts at k = 0, the others at 1
    N = args.terms - 1 if args.name == "converg1" else args.terms
    report = fn(N, args.accelerate)
    first = 0 if args.name == "converg1" else 1
    rows = [(first + i, v) for i, v in enumerate(report.partial_sums)]
    text = tables.table_to_string(
        ("N", "partial_sum"), rows,
        [("accelerated_estimate", report.accelerated_estimate), ("target", report.target)],
    )
    _emit(text, args.out)
    return EXIT_OK


def cmd_derivagram(args) -> int:
    rc = parse_rc(args.rc) if args.rc else None
    s = biorth.get_signal(args.signal, rc)
    grid = derivagram.parse_grid(args.grid)
    d = derivagram.compute(s, grid, args.levels, args.tol, max_order=args.max_order)
    derivagram.render_csv(d, args.out)
    if args.svg:
        if args.svg_mode in ("graymap", "both"):
            derivagram.render_svg(d, args.svg, "graymap")
        if args.svg_mode == "bargraph":
            derivagram.render_svg(d, args.svg, "bargraph", args.column)
        elif args.svg_mode == "both":
            p = Path(args.svg)
            derivagram.render_svg(d, p.with_name(p.stem + "-bar" + p.suffix), "bargraph", args.column)
    print(f"wrote {len(d.grid) * d.levels} cells to {args.out}", file=sys.stderr)
    return EXIT_OK


def _truncations(M: int) -> list[int]:
    out = []
    k = 1
    while k < M:
        out.append(k)
        k *= 2
    out.append(M)
    return out if M > 0 else [0]


def cmd_sampling(args) -> int:
    B = args.bandwidth
    if not (B > 0 and math.isfinite(B)):
        raise ValidationError(f"--bandwidth must be positive, got {B!r}")
    if args.truncation < 0:
        raise ValidationError(f"--truncation must be >= 0, got {args.truncation}")
    idx = list(range(-5, 6))
    matrix = [[sampling.sinc_biorth(n, m, B) for m in idx] for n in idx]
    f = sampling.sinc_test_signal(B) if args.signal == "sinc2" else sampling.two_sinc_signal(B)
    errors = sampling.reconstruction_errors(f, B, args.t, _truncations(args.truncation))
    ss = sampling.SampledSignal.from_function(f, B, args.truncation)
    value = sampling.shannon_reconstruct(ss, args.t)
    if args.format == "json":
        payload = {
            "bandwidth": B,
            "t": args.t,
            "signal": args.signal,
            "indices": idx,
            "biorthogonality": matrix,
            "reconstruction": value,
            "exact": f(args.t),
            "errors": [{"M": M, "error": e} for M, e in errors],
        }
        _emit(json.dumps(payload, indent=2, allow_nan=False) + "\n", args.out)
        return EXIT_OK
    lines = [f"biorthogonality <Sa(2 pi B t - n pi), delta(t - m/2B)>, B={B:g}, n,m in -5..5"]
    for row in matrix:
        lines.append(" ".join(f"{v:g}" for v in row))
    lines.append("")
    lines.append(f"reconstruction of {args.signal} at t={args.t:g}: {value:.17g} (exact {f(args.t):.17g})")
    lines.append("M,error")
    lines.extend(f"{M},{e:.17g}" for M, e in errors)
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="taylorbiorth",
        description="Taylor series as an impulsive-wavelet decomposition: "
                    "energies, derivagrams and sampling.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def numeric_opts(sp):
        sp.add_argument("--tol", type=float, default=None,
                        help="quadrature tolerance (default: $TB_TOL or 1e-10)")
        sp.add_argument("--max-order", type=int, default=None,
                        help="jet order ceiling (default: levels, at least 64)")

    a = sub.add_parser("analyze", help="Parseval-Taylor energy table")
    a.add_argument("--signal", default="gaussian", help="gaussian, logpulse or an expression in t")
    a.add_argument("--rc", help="region of convergence lo,hi")
    a.add_argument("--b", type=float, default=0.0, help="base point")
    a.add_argument("--levels", type=int, default=20, help="number of levels n = 0..levels-1")
    a.add_argument("--format", choices=("json", "csv"), default="csv")
    a.add_argument("--out", help="output file (default stdout)")
    numeric_opts(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("series", help="partial sums of an energy series")
    s.add_argument("--name", required=True, choices=sorted(series.SERIES))
    s.add_argument("--terms", type=int, default=100)
    s.add_argument("--accelerate", type=int, default=series.DEFAULT_DEPTH, help="Aitken depth")
    s.add_argument("--out")
    s.set_defaults(func=cmd_series)

    d = sub.add_parser("derivagram", help="derivagram CSV/SVG")
    d.add_argument("--signal", default="gaussian")
    d.add_argument("--rc")
    d.add_argument("--grid", default="0:0:1", help="lo:hi:steps")
    d.add_argument("--levels", type=int, default=10)
    d.add_argument("--out", default="derivagram.csv")
    d.add_argument("--svg", help="SVG output path")
    d.add_argument("--svg-mode", choices=("graymap", "bargraph", "both"), default="graymap")
    d.add_argument("--column", type=int, default=0, help="grid column for the bar graph")
    numeric_opts(d)
    d.set_defaults(func=cmd_derivagram)

    m = sub.add_parser("sampling", help="Shannon sampling as biorthogonal reconstruction")
    m.add_argument("--bandwidth", type=float, default=1.0)
    m.add_argument("--truncation", type=int, default=16)
    m.add_argument("--t", type=float, default=0.3)
    m.add_argument("--signal", choices=("sinc2", "two-sinc"), default="sinc2")
    m.add_argument("--format", choices=("text", "json"), default="text")
    m.add_argument("--out")
    m.set_defaults(func=cmd_sampling)
    return p


def _join_negative_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if hasattr(args, "tol") and args.tol is None:
            args.tol = default_tol()
        if getattr(args, "max_order", None) is None and hasattr(args, "levels"):
            args.max_order = max(args.levels, 64)
        return args.func(args)
    except (ValidationError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, QuadratureError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
