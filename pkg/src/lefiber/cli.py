"""Command-line interface.

Subcommands: analyze, milnor, le-numbers, check-equisingular, corpus run.
Exit codes: 0 success, 1 mathematical or resource failure (and corpus
mismatches), 2 indeterminate verdict, 3 usage errors (bad arguments, parse
errors, malformed corpus files). With --json every outcome, including errors,
is a machine-readable object on stdout; without it errors go to stderr.

The default cache directory for corpus runs comes from LEFIBER_CACHE_DIR.
Reports omit timings unless --timings is passed, keeping fixed-seed output
byte-identical across runs.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .equisingular import (
    GenericityConfig,
    INDETERMINATE,
    betti_report,
    milnor_equisingular_check,
)
from .errors import (
    CorpusError,
    InputError,
    LefiberError,
    ParseError,
    RingError,
    SingularMatrixError,
)
from .frames import CoordinateFrame, parse_frame_rows
from .invariants import invariant_record, milnor_number, sigma_dim
from .parse import infer_variables, parse_polynomial
from .poly import PolyRing
from .report import (
    analysis_payload,
    check_payload,
    error_payload,
    le_numbers_payload,
    milnor_payload,
    render_json,
    render_text,
)
from . import corpus as corpus_mod

USAGE_ERRORS = (ParseError, InputError, RingError, SingularMatrixError,
                CorpusError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _add_poly_args(p: _Parser, frame: bool = True):
    p.add_argument("poly", help="polynomial text, e.g. '(y^2 - x^3)^2 + w^2'")
    p.add_argument("--vars", help="comma-separated variable order "
                                  "(default: order of first appearance)")
    if frame:
        p.add_argument("--frame", help="explicit frame matrix rows, "
                                       "e.g. '1,-1,0;0,1,0;0,0,1'")
    p.add_argument("--max-steps", type=int, default=None,
                   help="reduction step budget per basis computation")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings in the report")


def _add_sampling_args(p: _Parser):
    p.add_argument("--seed", type=int, default=0,
                   help="seed for generic frame sampling (default 0)")
    p.add_argument("--max-frames", type=int, default=8,
                   help="random frame budget (default 8)")


def build_parser() -> _Parser:
    parser = _Parser(prog="lefiber",
                     description="Le numbers, polar cycles, and Milnor "
                                 "equisingularity of hypersurface germs")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("analyze", help="full invariant and Betti report")
    _add_poly_args(p)
    _add_sampling_args(p)

    p = sub.add_parser("milnor", help="Milnor number of an isolated singularity")
    _add_poly_args(p, frame=False)

    p = sub.add_parser("le-numbers", help="top Le number and curve-case numbers")
    _add_poly_args(p)

    p = sub.add_parser("check-equisingular",
                       help="Milnor equisingularity verdict only")
    _add_poly_args(p, frame=False)
    _add_sampling_args(p)

    pc = sub.add_parser("corpus", help="corpus operations")
    csub = pc.add_subparsers(dest="corpus_command", required=True,
                             parser_class=_Parser)
    p = csub.add_parser("run", help="run a corpus file against expectations")
    p.add_argument("file", help="corpus JSON file")
    p.add_argument("--cache", default=os.environ.get("LEFIBER_CACHE_DIR"),
                   help="cache directory (default: LEFIBER_CACHE_DIR)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--max-frames", type=int, default=8)
    p.add_argument("--json", action="store_true", help="JSON output")
    return parser


def _parse_input(args) -> "Polynomial":
    if args.vars:
        names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        if not names:
            raise InputError("--vars must name at least one variable")
        ring = PolyRing(names)
    else:
        ring = PolyRing(infer_variables(args.poly))
    return parse_polynomial(args.poly, ring)


def _explicit_frame(args, s: int | None) -> CoordinateFrame | None:
    text = getattr(args, "frame", None)
    if not text:
        return None
    return parse_frame_rows(text, 0 if s is None else s)


def _emit(payload: dict, as_json: bool, stream=None):
    stream = stream or sys.stdout
    stream.write(render_json(payload) if as_json else render_text(payload))


def _emit_error(err: Exception, as_json: bool) -> None:
    payload = error_payload(err)
    if as_json:
        sys.stdout.write(render_json(payload))
    else:
        sys.stderr.write(render_text(payload))


def _timings(t0: float, enabled: bool) -> dict | None:
    return {"total_s": round(time.perf_counter() - t0, 3)} if enabled else None


def _cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    f = _parse_input(args)
    s = sigma_dim(f, args.max_steps)
    frame = _explicit_frame(args, s)
    config = GenericityConfig(seed=args.seed, max_frames=args.max_frames,
                              max_steps=args.max_steps)
    report = betti_report(f, config, frame)
    _emit(analysis_payload(f, report, _timings(t0, args.timings)), args.json)
    return 2 if report.verdict == INDETERMINATE else 0


def _cmd_milnor(args) -> int:
    t0 = time.perf_counter()
    f = _parse_input(args)
    mu = milnor_number(f, args.max_steps)
    _emit(milnor_payload(f, mu, _timings(t0, args.timings)), args.json)
    return 0


def _cmd_le_numbers(args) -> int:
    t0 = time.perf_counter()
    f = _parse_input(args)
    s = sigma_dim(f, args.max_steps)
    frame = _explicit_frame(args, s)
    if frame is None:
        frame = CoordinateFrame.identity(f.ring.nvars, 0 if s is None else s)
    rec = invariant_record(f, frame, args.max_steps)
    _emit(le_numbers_payload(f, rec, _timings(t0, args.timings)), args.json)
    return 0


def _cmd_check(args) -> int:
    t0 = time.perf_counter()
    f = _parse_input(args)
    config = GenericityConfig(seed=args.seed, max_frames=args.max_frames,
                              max_steps=args.max_steps)
    verdict = milnor_equisingular_check(f, config)
    _emit(check_payload(f, verdict, _timings(t0, args.timings)), args.json)
    return 2 if verdict.verdict == INDETERMINATE else 0


def _cmd_corpus_run(args) -> int:
    summary = corpus_mod.run_corpus(args.file, cache_dir=args.cache,
                                    jobs=args.jobs, max_steps=args.max_steps,
                                    max_frames=args.max_frames)
    if args.json:
        sys.stdout.write(render_json(summary))
    else:
        for res in summary["results"]:
            line = f"{res['id']}: {res['status'].upper()}"
            if res.get("mismatches"):
                details = "; ".join(
                    f"{m['key']} expected {m['expected']!r}, got {m['actual']!r}"
                    for m in res["mismatches"]
                )
                line += f" ({details})"
            if res.get("error"):
                line += f" [{res['error']['code']}] {res['error']['message']}"
            sys.stdout.write(line + "\n")
        sys.stdout.write(
            f"{summary['total']} entries: {summary['passed']} passed, "
            f"{summary['failed']} failed, {summary['errors']} errors\n"
        )
    return 0 if summary["failed"] == 0 and summary["errors"] == 0 else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "milnor":
            return _cmd_milnor(args)
        if args.command == "le-numbers":
            return _cmd_le_numbers(args)
        if args.command == "check-equisingular":
            return _cmd_check(args)
        if args.command == "corpus":
            return _cmd_corpus_run(args)
        raise InputError(f"unknown command {args.command!r}")
    except USAGE_ERRORS as exc:
        _emit_error(exc, as_json)
        return 3
    except LefiberError as exc:
        _emit_error(exc, as_json)
        return 1


if __name__ == "__main__":
    sys.exit(main())
