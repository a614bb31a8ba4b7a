"""``uxes`` command line: validate, stats, sample, enumerate, inject, roundtrip.

Exit codes: 0 success, 1 findings (validation errors, round-trip mismatch),
2 unreadable or unprocessable input. Reports go to stdout, diagnostics to
stderr. ``-`` reads stdin / writes stdout.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__, errors
from .export import realizations_to_log, write_csv
from .inject import InjectionConfig, apply_directives, inject, injection_report, parse_directives
from .realization import (
    DEFAULT_MAX_EVENTS,
    MODES,
    UNIFORM,
    enumerate_realizations,
    realization_probability,
    sample_realizations,
)
from .stats import uncertainty_stats
from .timeaxis import parse_duration, parse_timestamp
from .validate import validate_log
from .xes import dumps, parse_log, parse_string, write_log

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_INPUT = 2


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read_log(path):
    try:
        if path == "-":
            return parse_log(sys.stdin.buffer.read())
        return parse_log(path)
    except errors.XesFormatError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc.code}: {exc}") from None
    except errors.ModelError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc.code}: {exc}") from None
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc}") from None


def _epoch(args):
    if getattr(args, "epoch", None):
        try:
            return parse_timestamp(args.epoch)
        except ValueError as exc:
            raise _Fail(EXIT_INPUT, f"bad --epoch: {exc}") from None
    return None


def _emit_log(log, output):
    """Write ``log`` to ``output``; returns True when it went to stdout."""
    if output in (None, "-"):
        sys.stdout.write(dumps(log))
        return True
    write_log(log, output)
    return False


def _report(args, verb, ok, result, text_lines, stream=None):
    stream = stream or sys.stdout
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "verb": verb, "input": args.input,
               "ok": ok, "result": result}
        stream.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for line in text_lines:
            stream.write(line + "\n")


# --------------------------------------------------------------------------
# verbs

def cmd_validate(args):
    log = _read_log(args.input)
    report = validate_log(log)
    lines = [str(v) for v in report]
    lines.append(f"{len(report.errors)} violations, {len(report.warnings)} warnings")
    _report(args, "validate", report.ok, report.to_dict(), lines)
    if report.ok or args.lenient:
        return EXIT_OK
    return EXIT_FINDINGS


def cmd_stats(args):
    log = _read_log(args.input)
    s = uncertainty_stats(log).to_dict()
    lines = [f"traces: {s['n_traces']}", f"events: {s['n_events']}",
             f"certain events: {s['n_certain_events']}"]
    lines += [f"{k}: {v}" for k, v in s["counts"].items()]
    a = s["activity_set_size"]
    w = s["interval_width_days"]
    lines.append(f"activity set size: min {a['min']} max {a['max']} mean {a['mean']:.3f}")
    lines.append(f"interval width (days): n {w['count']} min {w['min']:.3f} max {w['max']:.3f} "
                 f"mean {w['mean']:.3f} median {w['median']:.3f}")
    _report(args, "stats", True, s, lines)
    return EXIT_OK


def cmd_enumerate(args):
    log = _read_log(args.input)
    epoch = _epoch(args)
    traces, lines, failed = [], [f"mode: {args.mode}"], False
    for tr in log.traces:
        entry = {"case_id": tr.case_id}
        try:
            shapes = enumerate_realizations(tr, args.max_events)
        except errors.RealizationError as exc:
            failed = True
            entry.update(count=None, realizations=[], error={"code": exc.code, "message": str(exc)})
            print(f"{tr.case_id}: {exc.code}: {exc}", file=sys.stderr)
            traces.append(entry)
            continue
        rows = []
        for shape in shapes:
            try:
                p = realization_probability(tr, shape, args.mode, epoch=epoch).value
            except errors.ModeRequired:
                p = None
            rows.append({"order": list(shape.order), "activities": list(shape.activities),
                         "probability": p})
        entry.update(count=len(rows), realizations=rows)
        traces.append(entry)
        lines.append(f"{tr.case_id}: {len(rows)} realizations")
        for r in rows:
            prob = "n/a" if r["probability"] is None else f"{r['probability']:.6g}"
            steps = ", ".join(f"{e}:{a}" for e, a in zip(r["order"], r["activities"]))
            lines.append(f"  <{steps}>  p={prob}")
    result = {"mode": args.mode, "max_events": args.max_events, "traces": traces}
    _report(args, "enumerate", not failed, result, lines)
    return EXIT_INPUT if failed else EXIT_OK


def cmd_sample(args):
    log = _read_log(args.input)
    epoch = _epoch(args)
    pairs = []
    try:
        for tr in log.traces:
            pairs.append((tr, sample_realizations(tr, args.samples, args.seed, args.mode, epoch=epoch)))
    except errors.UncertainXesError as exc:
        raise _Fail(EXIT_INPUT, f"{args.input}: {exc.code}: {exc}") from None
    fmt = args.format or ("csv" if args.output and args.output.endswith(".csv") else "xes")
    to_stdout = args.output in (None, "-")
    if fmt == "csv":
        if to_stdout:
            write_csv(pairs, sys.stdout, epoch)
        else:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                write_csv(pairs, fh, epoch)
    else:
        _emit_log(realizations_to_log(pairs, epoch, template=log), args.output)
    result = {"mode": args.mode, "seed": args.seed, "samples_per_trace": args.samples,
              "format": fmt, "output": args.output or "-",
              "traces": [{"case_id": tr.case_id, "samples": len(rs)} for tr, rs in pairs]}
    lines = [f"mode: {args.mode}",
             f"sampled {args.samples} realizations for each of {len(pairs)} traces "
             f"(seed {args.seed}) -> {args.output or 'stdout'}"]
    _report(args, "sample", True, result, lines, sys.stderr if to_stdout else None)
    return EXIT_OK


def cmd_inject(args):
    log = _read_log(args.input)
    try:
        cfg = InjectionConfig(
            p_activity=args.p_activity, k_labels=args.k_labels, p_timestamp=args.p_timestamp,
            interval_halfwidth=parse_duration(args.halfwidth), p_indeterminacy=args.p_indeterminacy,
            weak_fraction=args.weak_fraction, dirichlet_alpha=args.dirichlet_alpha,
            density_kind=args.density, seed=args.seed, epoch=_epoch(args),
        )
    except ValueError as exc:
        raise _Fail(EXIT_INPUT, f"bad injection settings: {exc}") from None
    try:
        out = inject(log, cfg)
        if args.directives:
            with open(args.directives, encoding="utf-8") as fh:
                out = apply_directives(out, parse_directives(fh.read()))
    except (errors.UncertainXesError, OSError) as exc:
        raise _Fail(EXIT_INPUT, f"{args.input}: {getattr(exc, 'code', 'Error')}: {exc}") from None
    to_stdout = _emit_log(out, args.output)
    rep = injection_report(log, out, cfg)
    d = rep.to_dict()
    lines = [f"events: {rep.n_events}"]
    for aspect, r in d["rates"].items():
        lines.append(f"{aspect}: observed {r['observed_rate']:.4f} configured {r['configured_rate']}")
    _report(args, "inject", True, d, lines, sys.stderr if to_stdout else None)
    return EXIT_OK


def cmd_roundtrip(args):
    try:
        if args.input == "-":
            data = sys.stdin.buffer.read()
            first = parse_log(data)
        else:
            first = parse_log(args.input)
        second = parse_string(dumps(first))
    except (errors.UncertainXesError, OSError) as exc:
        raise _Fail(EXIT_INPUT, f"{args.input}: {getattr(exc, 'code', 'Error')}: {exc}") from None
    ok = first == second
    _report(args, "roundtrip", ok, {"roundtrip_ok": ok},
            ["round-trip OK" if ok else "round-trip MISMATCH"])
    return EXIT_OK if ok else EXIT_FINDINGS


# --------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="uxes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("input", help="XES file (.xes or .xes.gz), or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.set_defaults(func=func)
        return p

    p = verb("validate", cmd_validate, "check model invariants")
    p.add_argument("--lenient", action="store_true", help="exit 0 even with violations")

    verb("stats", cmd_stats, "summarize uncertainty annotations")
    verb("roundtrip", cmd_roundtrip, "check parse/serialize/parse identity")

    p = verb("enumerate", cmd_enumerate, "list all realizations of each trace")
    p.add_argument("--max-events", type=int, default=DEFAULT_MAX_EVENTS)
    p.add_argument("--mode", choices=MODES, default=UNIFORM)
    p.add_argument("--epoch", help="day-axis origin (ISO timestamp)")

    p = verb("sample", cmd_sample, "draw concrete traces")
    p.add_argument("-n", "--samples", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default=UNIFORM)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("xes", "csv"))
    p.add_argument("--epoch", help="day-axis origin (ISO timestamp)")

    p = verb("inject", cmd_inject, "add synthetic uncertainty to a certain log")
    p.add_argument("-o", "--output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-activity", type=float, default=0.0)
    p.add_argument("--k-labels", type=int, default=1)
    p.add_argument("--p-timestamp", type=float, default=0.0)
    p.add_argument("--halfwidth", default="1d", help="interval half-width, e.g. 3d, 12h")
    p.add_argument("--p-indeterminacy", type=float, default=0.0)
    p.add_argument("--weak-fraction", type=float, default=0.0)
    p.add_argument("--dirichlet-alpha", type=float, default=1.0)
    p.add_argument("--density", choices=("GAUSSIAN", "UNIFORM"), default="GAUSSIAN")
    p.add_argument("--directives", help="per-event directive file, applied after injection")
    p.add_argument("--epoch", help="day-axis origin (ISO timestamp)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        print("uxes: -n must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"uxes {args.verb}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
