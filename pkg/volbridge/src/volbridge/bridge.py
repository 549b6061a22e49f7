"""Volume records, bound checks, and table generation over exported
diagrams.

Inputs are ExportBundle JSON files (``*.bundle.json``, as written by
``turaev export --bundle``) and auxiliary planar diagrams in PD text files
(``*.pd``) whose header comments may carry ``# name:`` and
``# genus_hint:`` lines.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .constants import V_OCT
from .engine import EngineRejectedInput, resolve_engine


@dataclass(frozen=True)
class VolumeRecord:
    name: str
    genus_hint: Fraction | None
    volume: float | None
    engine_status: str  # Hyperbolic | NotHyperbolic | Failed


@dataclass(frozen=True)
class BoundCheck:
    name: str
    ok: bool
    reason: str


@dataclass(frozen=True)
class Diagram:
    name: str
    format: str  # DTCode | PDCode
    payload: str
    genus_hint: Fraction | None


def _parse_genus(value) -> Fraction | None:
    if value is None:
        return None
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    if isinstance(value, str) and "/" in value:
        num, _, den = value.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(value)


def load_diagram(path: str | Path) -> Diagram:
    """Read a *.bundle.json export or a *.pd auxiliary diagram file."""
    path = Path(path)
    if path.suffix == ".json" or path.name.endswith(".bundle.json"):
        obj = json.loads(path.read_text())
        fmt = obj["format"]
        if fmt not in ("DTCode", "PDCode"):
            raise EngineRejectedInput(f"{path.name}: bundle format {fmt!r} has no geometry")
        return Diagram(
            obj.get("name") or path.stem.replace(".bundle", ""),
            fmt,
            obj["payload"],
            _parse_genus(obj.get("genus_hint")),
        )
    if path.suffix == ".pd":
        name = path.stem
        genus = None
        lines = []
        for line in path.read_text().splitlines():
            if line.startswith("#"):
                key, _, value = line.lstrip("# ").partition(":")
                if key.strip() == "name":
                    name = value.strip()
                elif key.strip() == "genus_hint":
                    genus = _parse_genus(value.strip())
            else:
                lines.append(line)
        return Diagram(name, "PDCode", "\n".join(lines).strip(), genus)
    raise EngineRejectedInput(f"unsupported diagram file {path.name!r}")


def compute_volume(source: str | Path | Diagram, engine=None) -> VolumeRecord:
    """Hand the diagram to the engine; NotHyperbolic is propagated honestly
    and engine rejections come back as Failed records."""
    diagram = source if isinstance(source, Diagram) else load_diagram(source)
    if engine is None:
        engine = resolve_engine()
    try:
        result = engine.volume(diagram.format, diagram.payload)
    except EngineRejectedInput:
        return VolumeRecord(diagram.name, diagram.genus_hint, None, "Failed")
    if result.status == "hyperbolic":
        return VolumeRecord(diagram.name, diagram.genus_hint, result.volume, "Hyperbolic")
    return VolumeRecord(diagram.name, diagram.genus_hint, None, "NotHyperbolic")


def verify_bounds(records) -> list[BoundCheck]:
    """Flag volumes below the genus lower bounds: (2g-2)*v_oct for genus
    g >= 2, and v_oct for genus-1 lifts of classical knots."""
    checks = []
    for rec in records:
        if rec.engine_status != "Hyperbolic" or rec.genus_hint is None:
            checks.append(BoundCheck(rec.name, True, "no bound applies"))
            continue
        g = rec.genus_hint
        if g >= 2:
            bound = (2 * float(g) - 2) * V_OCT
            ok = rec.volume >= bound
            checks.append(
                BoundCheck(
                    rec.name,
                    ok,
                    f"volume {rec.volume:.6f} vs (2g-2)v_oct = {bound:.6f}",
                )
            )
        elif g == 1:
            ok = rec.volume >= V_OCT
            checks.append(
                BoundCheck(rec.name, ok, f"volume {rec.volume:.6f} vs v_oct = {V_OCT:.6f}")
            )
        else:
            checks.append(BoundCheck(rec.name, True, "genus below bound range"))
    return checks


def volumes_table(directory: str | Path, engine=None) -> str:
    """CSV of name, genus_hint, volume, bound_ok over every diagram file in
    the directory; per-file failures become Failed rows."""
    directory = Path(directory)
    files = sorted(
        [*directory.glob("*.bundle.json"), *directory.glob("*.pd")], key=lambda p: p.name
    )
    if engine is None:
        engine = resolve_engine()
    records = []
    for path in files:
        try:
            records.append(compute_volume(path, engine))
        except EngineRejectedInput:
            records.append(VolumeRecord(path.stem, None, None, "Failed"))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "genus_hint", "volume", "bound_ok"])
    for rec, check in zip(records, verify_bounds(records)):
        writer.writerow(
            [
                rec.name,
                "" if rec.genus_hint is None else str(rec.genus_hint),
                "" if rec.volume is None else f"{rec.volume:.9f}",
                "true" if check.ok else "false",
            ]
        )
    return buf.getvalue()
