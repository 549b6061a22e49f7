"""Command-line front end.

Exit codes: 0 success, 2 parse or validation error, 3 precondition error,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from .codes import ArcRef, canonicalize, parse, render
from .errors import (
    CodeSyntaxError,
    EmptyComponent,
    GaussCodeError,
    GeneralizedCodeUnsupported,
    LogReplayMismatch,
    MovePreconditionFailed,
    NotConnected,
    NotRealizable,
    NotReduced,
    ProgressStalled,
    StaleReference,
    UnknownLabel,
    UnsupportedFormat,
    ValidationError,
)
from .moves import d_sequence, compose, virtualize
from .pipeline import analyze_pipeline, export_diagram, run_batch, _read_source
from .prime import make_turaev_prime

_PARSE_ERRORS = (CodeSyntaxError, ValidationError)
_PRECONDITION_ERRORS = (
    NotConnected,
    EmptyComponent,
    GeneralizedCodeUnsupported,
    NotReduced,
    MovePreconditionFailed,
    StaleReference,
    UnknownLabel,
    NotRealizable,
    UnsupportedFormat,
)
_INTERNAL_ERRORS = (ProgressStalled, LogReplayMismatch)

_FORMATS = {"gauss": "GaussText", "json": "JsonReport", "dt": "DTCode", "pd": "PDCode"}


def _arc(text: str) -> ArcRef:
    comp, _, pos = text.partition(":")
    return ArcRef(int(comp), int(pos))


def _load(source: str):
    return parse(_read_source(source))


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="turaev", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for a code (file or inline text)")
    p.add_argument("--states", action="store_true", help="include A/B state circle counts")
    p.add_argument("--carrier", action="store_true", help="include carrier genus and realizability")
    p.add_argument("input")

    p = sub.add_parser("primeify", help="rewrite until the Turaev realization is prime")
    p.add_argument("input")

    p = sub.add_parser("dseq", help="apply the twist-family construction")
    p.add_argument("--arc", type=_arc, default=ArcRef(0, 0), metavar="C:P")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("input")

    p = sub.add_parser("compose", help="connected sum of two codes")
    p.add_argument("--arc-a", type=_arc, default=ArcRef(0, 0), metavar="C:P")
    p.add_argument("--arc-b", type=_arc, default=ArcRef(0, 0), metavar="C:P")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("virtualize", help="flank a crossing with virtual crossings")
    p.add_argument("--label", type=int, required=True)
    p.add_argument("input")

    p = sub.add_parser("export", help="export to gauss, json, dt, or pd")
    p.add_argument("--format", choices=sorted(_FORMATS), required=True)
    p.add_argument("--bundle", action="store_true", help="wrap the payload in bundle JSON")
    p.add_argument("--name", default="", help="name recorded in the bundle")
    p.add_argument("input")

    p = sub.add_parser("batch", help="analyze every *.gauss file in a directory")
    p.add_argument("directory")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)

    args = ap.parse_args(argv)
    try:
        return _dispatch(args)
    except _PARSE_ERRORS as e:
        _emit_error(e)
        return 2
    except _INTERNAL_ERRORS as e:
        _emit_error(e)
        return 4
    except _PRECONDITION_ERRORS as e:
        _emit_error(e)
        return 3
    except GaussCodeError as e:
        _emit_error(e)
        return 4


def _emit_error(e: Exception) -> None:
    obj = {"error": {"kind": type(e).__name__, "message": str(e)}}
    if isinstance(e, ValidationError):
        obj["error"]["violations"] = [
            {"rule": v.rule, "subject": v.subject, "message": v.message}
            for v in e.violations
        ]
    if isinstance(e, CodeSyntaxError):
        obj["error"]["position"] = e.position
        obj["error"]["expected"] = e.expected
    print(json.dumps(obj))


def _dispatch(args) -> int:
    if args.command == "analyze":
        report = analyze_pipeline(args.input, states=args.states, carrier=args.carrier)
        print(report.to_json())
        return 0
    if args.command == "primeify":
        code = _load(args.input)
        out, log = make_turaev_prime(code)
        print(
            json.dumps(
                {
                    "input": render(code),
                    "result": render(out),
                    "canonical_result": render(canonicalize(out)),
                    "moves": [
                        {
                            "move": json.loads(r.descriptor.to_json()),
                            "before": r.before_hash,
                            "after": r.after_hash,
                        }
                        for r in log.records
                    ],
                },
                indent=2,
            )
        )
        return 0
    if args.command == "dseq":
        code = _load(args.input)
        print(render(d_sequence(code, args.arc, args.n)))
        return 0
    if args.command == "compose":
        a, b = _load(args.a), _load(args.b)
        print(render(compose(a, b, args.arc_a, args.arc_b)))
        return 0
    if args.command == "virtualize":
        print(render(virtualize(_load(args.input), args.label)))
        return 0
    if args.command == "export":
        code = _load(args.input)
        bundle = export_diagram(code, _FORMATS[args.format])
        if args.bundle:
            from .surface import surface_report
            from .errors import GaussCodeError as _GE

            genus = None
            try:
                rep = surface_report(code)
                genus = [rep.twice_genus, 2]
            except _GE:
                pass
            print(
                json.dumps(
                    {
                        "schema_version": 1,
                        "format": bundle.format,
                        "payload": bundle.payload,
                        "name": args.name or None,
                        "genus_hint": genus,
                    }
                )
            )
        else:
            print(bundle.payload)
        return 0
    if args.command == "batch":
        summary = run_batch(args.directory, args.out, jobs=args.jobs)
        print(json.dumps(summary))
        return 0
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
