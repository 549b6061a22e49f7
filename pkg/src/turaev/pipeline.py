"""Analysis pipeline, report schema, exports, and batch processing."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .codes import (
    GaussCode,
    canonicalize,
    is_connected,
    is_reduced,
    parse,
    render,
)
from .errors import GaussCodeError, UnsupportedFormat
from .notation import dt_code, pd_code
from .prime import (
    ExceptionalCase,
    HyperbolicityVerdict,
    PrimenessCertificate,
    exceptional_case,
    hyperbolicity_certificate,
    primeness_certificate,
)
from .surface import StateCount, SurfaceReport, carrier_genus, state_circles, surface_report

SCHEMA_VERSION = 1

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "schema_version",
        "canonical_code",
        "crossings",
        "components",
        "connected",
        "reduced",
        "surface",
        "states",
        "carrier",
        "primeness",
        "exceptional",
        "verdict",
    ],
    "properties": {
        "schema_version": {"const": 1},
        "canonical_code": {"type": "string"},
        "crossings": {"type": "integer", "minimum": 0},
        "components": {"type": "integer", "minimum": 0},
        "connected": {"type": "boolean"},
        "reduced": {"type": "boolean"},
        "surface": {
            "type": ["object", "null"],
            "required": ["boundary_count", "euler_characteristic", "orientable", "twice_genus"],
            "properties": {
                "boundary_count": {"type": "integer", "minimum": 0},
                "euler_characteristic": {"type": "integer"},
                "orientable": {"type": "boolean"},
                "twice_genus": {"type": "integer", "minimum": 0},
            },
        },
        "states": {
            "type": ["object", "null"],
            "required": ["a_circles", "b_circles"],
            "properties": {
                "a_circles": {"type": "integer", "minimum": 0},
                "b_circles": {"type": "integer", "minimum": 0},
            },
        },
        "carrier": {
            "type": ["object", "null"],
            "required": ["genus", "realizable"],
            "properties": {
                "genus": {"type": "integer", "minimum": 0},
                "realizable": {"type": "boolean"},
            },
        },
        "primeness": {
            "type": ["object", "null"],
            "required": ["status", "witnesses"],
            "properties": {
                "status": {"enum": ["SubcodeFree", "Obstructed"]},
                "witnesses": {"type": "array"},
            },
        },
        "exceptional": {
            "type": ["string", "null"],
            "enum": ["None", "Sphere2Braid", "ProjectivePlaneSuspect", "Unknown", None],
        },
        "verdict": {
            "type": "object",
            "required": ["verdict", "reasons"],
            "properties": {
                "verdict": {"enum": ["Certified", "NotCertified"]},
                "reasons": {"type": "array", "items": {"type": "string"}},
            },
        },
    },
}


@dataclass(frozen=True)
class TuraevReport:
    canonical_code: str
    crossings: int
    components: int
    connected: bool
    reduced: bool
    surface: SurfaceReport | None
    states: StateCount | None
    carrier: tuple[int, bool] | None
    primeness: PrimenessCertificate | None
    exceptional: ExceptionalCase | None
    verdict: HyperbolicityVerdict

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "canonical_code": self.canonical_code,
            "crossings": self.crossings,
            "components": self.components,
            "connected": self.connected,
            "reduced": self.reduced,
            "surface": None
            if self.surface is None
            else {
                "boundary_count": self.surface.boundary_count,
                "euler_characteristic": self.surface.euler_characteristic,
                "orientable": self.surface.orientable,
                "twice_genus": self.surface.twice_genus,
            },
            "states": None
            if self.states is None
            else {"a_circles": self.states.a_circles, "b_circles": self.states.b_circles},
            "carrier": None
            if self.carrier is None
            else {"genus": self.carrier[0], "realizable": self.carrier[1]},
            "primeness": None
            if self.primeness is None
            else {
                "status": self.primeness.status,
                "witnesses": [
                    {
                        "component": w.component,
                        "start": w.start,
                        "length": w.length,
                        "absorbed_components": sorted(w.absorbed_components),
                    }
                    for w in self.primeness.witnesses
                ],
            },
            "exceptional": None if self.exceptional is None else self.exceptional.value,
            "verdict": {
                "verdict": self.verdict.verdict,
                "reasons": list(self.verdict.reasons),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class ExportBundle:
    format: str  # GaussText | JsonReport | DTCode | PDCode
    payload: str


def _read_source(source: str | Path) -> str:
    p = Path(source)
    try:
        if p.is_file():
            return p.read_text()
    except OSError:
        pass
    return str(source)


def analyze_code(code: GaussCode, *, states: bool = False, carrier: bool = False) -> TuraevReport:
    """Assemble the full report for an already-parsed code."""
    connected = is_connected(code)
    reduced = is_reduced(code)
    surface = None
    try:
        surface = surface_report(code)
    except GaussCodeError:
        pass
    st = None
    if states:
        try:
            st = state_circles(code)
        except GaussCodeError:
            pass
    car = None
    if carrier:
        try:
            car = carrier_genus(code)
        except GaussCodeError:
            pass
    prim = None
    try:
        prim = primeness_certificate(code)
    except GaussCodeError:
        pass
    exc = None
    try:
        exc = exceptional_case(code)
    except GaussCodeError:
        pass
    verdict = hyperbolicity_certificate(code)
    return TuraevReport(
        canonical_code=render(canonicalize(code)),
        crossings=code.size(),
        components=len(code.components),
        connected=connected,
        reduced=reduced,
        surface=surface,
        states=st,
        carrier=car,
        primeness=prim,
        exceptional=exc,
        verdict=verdict,
    )


def analyze_pipeline(source: str | Path, *, states: bool = False, carrier: bool = False) -> TuraevReport:
    """Parse a file path or inline text and run the full analysis chain."""
    return analyze_code(parse(_read_source(source)), states=states, carrier=carrier)


def export_diagram(code: GaussCode, fmt: str) -> ExportBundle:
    """Export to one of GaussText, JsonReport, DTCode, PDCode."""
    if fmt == "GaussText":
        return ExportBundle(fmt, render(code))
    if fmt == "JsonReport":
        return ExportBundle(fmt, analyze_code(code, states=True, carrier=True).to_json())
    if fmt == "DTCode":
        return ExportBundle(fmt, dt_code(code))
    if fmt == "PDCode":
        return ExportBundle(fmt, pd_code(code))
    raise UnsupportedFormat(f"unknown export format {fmt!r}")


BATCH_COLUMNS = [
    "file",
    "crossings",
    "components",
    "connected",
    "reduced",
    "orientable",
    "twice_genus",
    "a_circles",
    "b_circles",
    "realizable",
    "subcode_free",
    "exceptional",
    "verdict",
]


def _bool(v) -> str:
    return "" if v is None else ("true" if v else "false")


def _batch_row(name: str, path: Path) -> dict[str, str]:
    row = {k: "" for k in BATCH_COLUMNS}
    row["file"] = name
    try:
        rep = analyze_pipeline(path, states=True, carrier=True)
    except GaussCodeError as e:
        row["verdict"] = f"error:{type(e).__name__}"
        return row
    row["crossings"] = str(rep.crossings)
    row["components"] = str(rep.components)
    row["connected"] = _bool(rep.connected)
    row["reduced"] = _bool(rep.reduced)
    if rep.surface is not None:
        row["orientable"] = _bool(rep.surface.orientable)
        row["twice_genus"] = str(rep.surface.twice_genus)
    if rep.states is not None:
        row["a_circles"] = str(rep.states.a_circles)
        row["b_circles"] = str(rep.states.b_circles)
    if rep.carrier is not None:
        row["realizable"] = _bool(rep.carrier[1])
    if rep.primeness is not None:
        row["subcode_free"] = _bool(rep.primeness.status == "SubcodeFree")
    if rep.exceptional is not None:
        row["exceptional"] = rep.exceptional.value
    row["verdict"] = rep.verdict.verdict
    return row


def run_batch(directory: str | Path, out_path: str | Path, jobs: int = 1) -> dict:
    """Analyze every *.gauss file; one CSV row per file, ordered by name;
    per-file failures become error rows, never aborts."""
    directory = Path(directory)
    files = sorted(directory.glob("*.gauss"), key=lambda p: p.name)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda p: _batch_row(p.name, p), files))
    else:
        rows = [_batch_row(p.name, p) for p in files]
    rows.sort(key=lambda r: r["file"])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BATCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    Path(out_path).write_text(buf.getvalue())
    errors = sum(1 for r in rows if r["verdict"].startswith("error:"))
    return {"files": len(rows), "ok": len(rows) - errors, "errors": errors}
