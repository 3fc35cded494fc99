"""Command line: ``hilbred analyze FILE | paper-examples | search``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .graded import CLAIMS
from .jobfile import InputError, parse_input
from .pipeline import AnalysisConfig, analyze_ideal, cap_hits, emit_report, new_report, violations
from .ring import DEFAULT_CHARACTERISTIC, is_prime

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _common(p: argparse.ArgumentParser):
    p.add_argument("--trials", type=int, default=None, help="random reductions per ideal")
    p.add_argument("--r-max", type=int, default=None, help="largest reduction number tried")
    p.add_argument("--deg-bound", type=int, default=None, help="integrality witness degree bound")
    p.add_argument("--json", action="store_true", help="JSON instead of a table")
    p.add_argument("--char", type=int, default=None, help="characteristic of the base field")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hilbred", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="analyze the ideals in an input file")
    a.add_argument("file")
    _common(a)
    e = sub.add_parser("paper-examples", help="reproduce the built-in examples")
    e.add_argument("--only", action="append", default=None, help="example name, e.g. 3.11")
    e.add_argument("--skip-slow", action="store_true")
    _common(e)
    s = sub.add_parser("search", help="random population check of claims")
    s.add_argument("--vars", type=int, choices=(2, 3), default=2)
    s.add_argument("--max-deg", type=int, default=6)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--claim", action="append", default=None, choices=CLAIMS)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--repro-dir", default="violations")
    _common(s)
    return ap


def _config(args) -> AnalysisConfig:
    cfg = AnalysisConfig(seed=args.seed)
    for name in ("trials", "r_max", "deg_bound"):
        v = getattr(args, name)
        if v is not None:
            if v < (0 if name == "r_max" else 1):
                raise InputError(f"--{name.replace('_', '-')} out of range", 0, 0)
            setattr(cfg, name, v)
    return cfg


def _char(args) -> int:
    p = DEFAULT_CHARACTERISTIC if args.char is None else args.char
    if not is_prime(p):
        raise InputError(f"characteristic {p} is not prime", 0, 0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = "json" if args.json else "table"
    t0 = time.perf_counter()
    try:
        cfg = _config(args)
        char = _char(args)
        if args.command == "analyze":
            try:
                text = Path(args.file).read_text(encoding="utf-8")
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INPUT
            spec = parse_input(text, default_char=char)
            report = new_report("analyze", spec.ring.characteristic, cfg)
            for d in spec.ideals:
                report["ideals"].append(
                    analyze_ideal(d.ideal, cfg, named=[J for _, J in d.reductions], name=d.name))
            code = EXIT_MISMATCH if violations(report) else (EXIT_CAP if cap_hits(report) else EXIT_OK)
        elif args.command == "paper-examples":
            from .examples_run import run_examples

            report = new_report("paper-examples", char, cfg)
            blocks, rows = run_examples(cfg, char, args.only, args.skip_slow)
            report["ideals"], report["rows"] = blocks, rows
            code = EXIT_MISMATCH if any(r["status"] == "FAIL" for r in rows) else EXIT_OK
        else:
            from .search import SearchParams, run_search

            if args.count < 0 or args.max_deg < 1:
                raise InputError("--count must be >= 0 and --max-deg >= 1", 0, 0)
            params = SearchParams(args.vars, args.max_deg, args.count, args.seed,
                                  characteristic=char)
            claims = tuple(args.claim or ("THM-3.10", "REM-3.9-GAP"))
            report = new_report("search", char, cfg)
            report["metadata"].update(vars=args.vars, max_deg=args.max_deg, count=args.count,
                                      claims=list(claims))
            blocks, summary = run_search(params, cfg, claims, args.jobs, Path(args.repro_dir))
            report["ideals"], report["summary"] = blocks, summary
            code = EXIT_MISMATCH if any(c["violations"] for c in summary.values()) else EXIT_OK
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = emit_report(report, fmt)
    if fmt == "table":
        out += f"# wall-time {time.perf_counter() - t0:.2f}s\n"
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
