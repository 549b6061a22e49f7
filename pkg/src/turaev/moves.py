"""Diagram rewrites on Gauss codes: Reidemeister moves, virtualization,
connected-sum composition, and the twist-family generator, with replayable
move logs.

All moves are pure: they return a new code and never mutate the input.
Fresh crossings always take labels max+1, max+2, ... so a log replays
deterministically.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .codes import (
    OVER,
    UNDER,
    ArcRef,
    GaussCode,
    Passage,
    canonicalize,
    render,
    validate,
)
from .errors import (
    GeneralizedCodeUnsupported,
    LogReplayMismatch,
    MovePreconditionFailed,
    NotConnected,
    EmptyComponent,
    StaleReference,
    UnknownLabel,
)
from .surface import carrier_genus, flat_walks, gap_edge_index

R1_ADD = "R1Add"
R1_REMOVE = "R1Remove"
R2_ADD = "R2Add"
R2_REMOVE = "R2Remove"
R3 = "R3"
VIRTUALIZE = "Virtualize"
COMPOSE = "Compose"
DTWIST = "DTwist"

MOVE_KINDS = (R1_ADD, R1_REMOVE, R2_ADD, R2_REMOVE, R3, VIRTUALIZE, COMPOSE, DTWIST)


@dataclass(frozen=True)
class MoveDescriptor:
    """A move kind plus the parameters needed to replay it."""

    kind: str
    params: tuple[tuple[str, object], ...] = ()

    @classmethod
    def make(cls, kind: str, **params) -> "MoveDescriptor":
        return cls(kind, tuple(sorted(params.items())))

    def get(self, key: str, default=None):
        for k, v in self.params:
            if k == key:
                return v
        return default

    def arc(self, key: str) -> ArcRef:
        v = self.get(key)
        return ArcRef(int(v[0]), int(v[1]))

    def to_json(self) -> str:
        return json.dumps(
            {"kind": self.kind, "params": {k: v for k, v in self.params}},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "MoveDescriptor":
        obj = json.loads(line)
        params = {
            k: tuple(v) if isinstance(v, list) else v for k, v in obj["params"].items()
        }
        return cls.make(obj["kind"], **params)


@dataclass(frozen=True)
class MoveRecord:
    descriptor: MoveDescriptor
    before_hash: str
    after_hash: str


@dataclass(frozen=True)
class MoveLog:
    """Audit trail of rewrites; replaying it certifies the final code."""

    records: tuple[MoveRecord, ...] = ()

    def append(self, record: MoveRecord) -> "MoveLog":
        return MoveLog(self.records + (record,))

    def __len__(self) -> int:
        return len(self.records)

    def to_json_lines(self) -> str:
        return "\n".join(
            json.dumps(
                {
                    "move": json.loads(r.descriptor.to_json()),
                    "before": r.before_hash,
                    "after": r.after_hash,
                },
                sort_keys=True,
            )
            for r in self.records
        )

    @classmethod
    def from_json_lines(cls, text: str) -> "MoveLog":
        records = []
        for line in text.splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            records.append(
                MoveRecord(
                    MoveDescriptor.from_json(json.dumps(obj["move"])),
                    obj["before"],
                    obj["after"],
                )
            )
        return cls(tuple(records))


def code_hash(code: GaussCode) -> str:
    return hashlib.sha256(render(code).encode()).hexdigest()[:16]


def apply_logged(
    code: GaussCode, descriptor: MoveDescriptor, log: MoveLog
) -> tuple[GaussCode, MoveLog]:
    out = apply_move(code, descriptor)
    rec = MoveRecord(descriptor, code_hash(code), code_hash(out))
    return out, log.append(rec)


def replay(initial: GaussCode, log: MoveLog) -> GaussCode:
    """Re-run a log from the initial code, checking every recorded hash."""
    code = initial
    for i, rec in enumerate(log.records):
        if code_hash(code) != rec.before_hash:
            raise LogReplayMismatch(f"record {i}: before-hash mismatch")
        code = apply_move(code, rec.descriptor)
        if code_hash(code) != rec.after_hash:
            raise LogReplayMismatch(f"record {i}: after-hash mismatch")
    return code


# --- move implementations ----------------------------------------------------


def apply_move(code: GaussCode, m: MoveDescriptor) -> GaussCode:
    """Apply one move, returning the rewritten and re-validated code."""
    if m.kind == R1_ADD:
        out = _r1_add(code, m.arc("arc"), int(m.get("sign", 1)), m.get("letter_first", OVER))
    elif m.kind == R1_REMOVE:
        out = _r1_remove(code, int(m.get("label")))
    elif m.kind == R2_ADD:
        raw_sign = m.get("sign")
        out = _r2_add(
            code,
            m.arc("over_arc"),
            m.arc("under_arc"),
            int(raw_sign) if raw_sign is not None else None,
            m.get("parallel"),
        )
    elif m.kind == R2_REMOVE:
        out = _r2_remove(code, int(m.get("label_a")), int(m.get("label_b")))
    elif m.kind == R3:
        out = _r3(code, [m.arc(k) for k in ("arc_a", "arc_b", "arc_c")])
    elif m.kind == VIRTUALIZE:
        out = virtualize(code, int(m.get("label")))
    elif m.kind == COMPOSE:
        other = _parse_embedded(m.get("other"))
        out = compose(code, other, m.arc("arc_self"), m.arc("arc_other"))
    elif m.kind == DTWIST:
        out = _d_twist(code, m.arc("arc"), int(m.get("n")))
    else:
        raise MovePreconditionFailed(m.kind, "unknown move kind")
    report = validate(out)
    if not report.valid:
        raise MovePreconditionFailed(m.kind, f"rewrite produced an invalid code: {report.violations}")
    return out


def _parse_embedded(text: str) -> GaussCode:
    from .codes import parse

    return parse(text)


def _mutable(code: GaussCode) -> list[list[Passage]]:
    return [list(c) for c in code.components]


def _freeze(comps: list[list[Passage]]) -> GaussCode:
    t = tuple(tuple(c) for c in comps)
    strands: dict[int, list[str]] = {}
    for comp in t:
        for p in comp:
            strands.setdefault(p.label, []).append(p.strand)
    generalized = any(len(v) == 2 and v[0] == v[1] for v in strands.values())
    return GaussCode(t, generalized)


def _realizable_or_none(code: GaussCode) -> bool | None:
    try:
        return carrier_genus(code)[1]
    except (NotConnected, EmptyComponent, GeneralizedCodeUnsupported):
        return None


def _r1_add(code: GaussCode, arc: ArcRef, sign: int, letter_first: str) -> GaussCode:
    code.check_arc(arc)
    if letter_first not in (OVER, UNDER):
        raise MovePreconditionFailed(R1_ADD, f"bad letter {letter_first!r}")
    m = code.max_label() + 1
    first = Passage(m, letter_first, sign)
    second = Passage(m, UNDER if letter_first == OVER else OVER, sign)
    comps = _mutable(code)
    comps[arc.component][arc.position : arc.position] = [first, second]
    return _freeze(comps)


def _r1_remove(code: GaussCode, label: int) -> GaussCode:
    for ci, comp in enumerate(code.components):
        n = len(comp)
        for i in range(n):
            j = (i + 1) % n
            if n >= 2 and comp[i].label == label and comp[j].label == label:
                comps = _mutable(code)
                for k in sorted((i, j), reverse=True):
                    del comps[ci][k]
                return _freeze(comps)
    raise MovePreconditionFailed(R1_REMOVE, f"label {label} is not a monogon")


def _insert_two_runs(
    code: GaussCode,
    arc_a: ArcRef,
    run_a: list[Passage],
    arc_b: ArcRef,
    run_b: list[Passage],
) -> GaussCode:
    comps = _mutable(code)
    if arc_a.component == arc_b.component:
        if arc_a.position == arc_b.position:
            raise MovePreconditionFailed(R2_ADD, "the two arcs must be distinct")
        first, second = (
            ((arc_a, run_a), (arc_b, run_b))
            if arc_a.position > arc_b.position
            else ((arc_b, run_b), (arc_a, run_a))
        )
        for arc, run in (first, second):
            comps[arc.component][arc.position : arc.position] = run
    else:
        comps[arc_a.component][arc_a.position : arc_a.position] = run_a
        comps[arc_b.component][arc_b.position : arc_b.position] = run_b
    return _freeze(comps)


def _r2_add(
    code: GaussCode,
    over_arc: ArcRef,
    under_arc: ArcRef,
    sign: int | None,
    parallel: bool | None,
) -> GaussCode:
    """Push a strand across another: the over arc gains O m1, O m2 and the
    under arc U entries with opposite signs.

    The under-side entry order (and the chirality, when the sign is left
    unspecified) has multiple geometric variants; the variant keeping a
    realizable code realizable is preferred, falling back to the
    lexicographically smallest result.
    """
    code.check_arc(over_arc)
    code.check_arc(under_arc)
    m1, m2 = code.max_label() + 1, code.max_label() + 2

    def build(par: bool, s: int) -> GaussCode:
        q_run = [Passage(m1, OVER, s), Passage(m2, OVER, -s)]
        if par:
            r_run = [Passage(m1, UNDER, s), Passage(m2, UNDER, -s)]
        else:
            r_run = [Passage(m2, UNDER, -s), Passage(m1, UNDER, s)]
        return _insert_two_runs(code, over_arc, q_run, under_arc, r_run)

    if parallel is not None and sign is not None:
        return build(bool(parallel), sign)
    if sign is not None:
        combos = [(True, sign), (False, sign)]
    elif parallel is not None:
        combos = [(bool(parallel), 1), (bool(parallel), -1)]
    else:
        combos = [(True, 1), (True, -1), (False, 1), (False, -1)]
    variants = [build(par, s) for par, s in combos]
    if _realizable_or_none(code):
        for v in variants:
            if _realizable_or_none(v):
                return v
    return min(variants, key=lambda c: render(canonicalize(c)))


def _r2_remove(code: GaussCode, label_a: int, label_b: int) -> GaussCode:
    if label_a == label_b:
        raise MovePreconditionFailed(R2_REMOVE, "labels must differ")
    over_pair = under_pair = None
    for ci, comp in enumerate(code.components):
        n = len(comp)
        for i in range(n):
            j = (i + 1) % n
            if n < 2 or i == j:
                continue
            labs = {comp[i].label, comp[j].label}
            if labs != {label_a, label_b}:
                continue
            if comp[i].strand == comp[j].strand == OVER and over_pair is None:
                over_pair = (ci, i, j)
            elif comp[i].strand == comp[j].strand == UNDER and under_pair is None:
                under_pair = (ci, i, j)
    if over_pair is None or under_pair is None:
        raise MovePreconditionFailed(
            R2_REMOVE, f"labels {label_a},{label_b} do not form adjacent OO/UU pairs"
        )
    occ = code.occurrences()
    (c1, p1), (c2, p2) = occ[label_a]
    sign_a = code.components[c1][p1].sign
    (c1b, p1b), (c2b, p2b) = occ[label_b]
    sign_b = code.components[c1b][p1b].sign
    if sign_a != -sign_b:
        raise MovePreconditionFailed(R2_REMOVE, "pair signs are not opposite")
    remove: dict[int, set[int]] = {}
    for ci, i, j in (over_pair, under_pair):
        remove.setdefault(ci, set()).update((i, j))
    comps = _mutable(code)
    for ci, positions in remove.items():
        for k in sorted(positions, reverse=True):
            del comps[ci][k]
    return _freeze(comps)


def _r3(code: GaussCode, arcs: list[ArcRef]) -> GaussCode:
    """Slide a strand across the opposite crossing of a triangular face.

    Each arc is the gap inside one of the three adjacent entry pairs; the
    sliding strand must pass entirely over or entirely under, and the three
    gaps must bound a face of the carrier ribbon.
    """
    pairs = []
    for arc in arcs:
        code.check_arc(arc)
        comp = code.components[arc.component]
        n = len(comp)
        if n < 2:
            raise MovePreconditionFailed(R3, "arc in a crossingless component")
        i = (arc.position - 1) % n
        j = arc.position % n
        if i == j:
            raise MovePreconditionFailed(R3, "degenerate pair")
        pairs.append((arc.component, i, j))
    entries = [
        (code.components[ci][i], code.components[ci][j]) for ci, i, j in pairs
    ]
    labels = sorted({p.label for pair in entries for p in pair})
    if len(labels) != 3:
        raise MovePreconditionFailed(R3, "the three pairs must involve exactly 3 labels")
    strand_sets = ["".join(sorted((a.strand, b.strand))) for a, b in entries]
    if sorted(strand_sets) != ["OO", "OU", "UU"]:
        raise MovePreconditionFailed(R3, "need one O-O pair, one U-U pair, one mixed pair")
    # each pair shares exactly one label with each other pair
    label_sets = [frozenset((a.label, b.label)) for a, b in entries]
    for x in range(3):
        for y in range(x + 1, 3):
            if len(label_sets[x] & label_sets[y]) != 1:
                raise MovePreconditionFailed(R3, "pairs do not form a triangle")
    # mixed pair letters must be forced by the over/under roles
    oo = strand_sets.index("OO")
    uu = strand_sets.index("UU")
    mixed = strand_sets.index("OU")
    shared_with_oo = label_sets[mixed] & label_sets[oo]
    for p in entries[mixed]:
        if p.label in shared_with_oo and p.strand != UNDER:
            raise MovePreconditionFailed(R3, "mixed strand letters inconsistent with roles")
        if p.label not in shared_with_oo and p.strand != OVER:
            raise MovePreconditionFailed(R3, "mixed strand letters inconsistent with roles")
    edge_ids = {
        gap_edge_index(code, arc.component, arc.position) for arc in arcs
    }
    if len(edge_ids) != 3 or not any(
        len(walk) == 3 and {e for e, _ in walk} == edge_ids for walk in flat_walks(code)
    ):
        raise MovePreconditionFailed(R3, "the three arcs do not bound a triangular face")
    comps = _mutable(code)
    for ci, i, j in pairs:
        comps[ci][i], comps[ci][j] = comps[ci][j], comps[ci][i]
    return _freeze(comps)


def virtualize(code: GaussCode, label: int) -> GaussCode:
    """Flank a crossing with two virtual crossings: both signs flip, strand
    letters stay; an involution."""
    if label not in code.labels():
        raise UnknownLabel(f"label {label} not present")
    comps = [
        [Passage(p.label, p.strand, -p.sign if p.label == label else p.sign) for p in comp]
        for comp in code.components
    ]
    return _freeze(comps)


def compose(code: GaussCode, other: GaussCode, arc_self: ArcRef, arc_other: ArcRef) -> GaussCode:
    """Connected sum: splice the referenced component of ``other`` into the
    referenced arc, shifting its labels to stay fresh."""
    code.check_arc(arc_self)
    other.check_arc(arc_other)
    shift = code.max_label()
    shifted = [
        [Passage(p.label + shift, p.strand, p.sign) for p in comp]
        for comp in other.components
    ]
    spliced = shifted[arc_other.component]
    rotated = spliced[arc_other.position :] + spliced[: arc_other.position]
    comps = _mutable(code)
    host = comps[arc_self.component]
    comps[arc_self.component] = (
        host[: arc_self.position] + rotated + host[arc_self.position :]
    )
    for ci, comp in enumerate(shifted):
        if ci != arc_other.component:
            comps.append(comp)
    return _freeze(comps)


def compose_descriptor(other: GaussCode, arc_self: ArcRef, arc_other: ArcRef) -> MoveDescriptor:
    return MoveDescriptor.make(
        COMPOSE,
        other=render(other),
        arc_self=tuple(arc_self),
        arc_other=tuple(arc_other),
    )


def _d_twist(code: GaussCode, arc: ArcRef, n: int) -> GaussCode:
    """Insert n locked twists at an arc: n RI kinks plus one RII move whose
    under passes through the last kink, so the twists survive on the Turaev
    surface.

    Adds n+2 crossings, n circles to the A state, none to the B state, and
    exactly one to the Turaev genus of the base, independent of n.
    """
    if n < 1:
        raise MovePreconditionFailed(DTWIST, "n must be positive")
    code.check_arc(arc)
    base = code.max_label()
    p_lab, q_lab = base + 1, base + 2
    t_labs = [base + 2 + i for i in range(1, n + 1)]
    block: list[Passage] = [Passage(p_lab, OVER, 1), Passage(q_lab, OVER, -1)]
    for t in t_labs[:-1]:
        block.append(Passage(t, OVER, 1))
        block.append(Passage(t, UNDER, 1))
    block.append(Passage(t_labs[-1], OVER, -1))
    block.append(Passage(p_lab, UNDER, 1))
    block.append(Passage(q_lab, UNDER, -1))
    block.append(Passage(t_labs[-1], UNDER, -1))
    comps = _mutable(code)
    comps[arc.component][arc.position : arc.position] = block
    return _freeze(comps)


def d_sequence(code: GaussCode, arc: ArcRef, n: int) -> GaussCode:
    """Twist-family generator: the n-th diagram of the family over the arc."""
    return _d_twist(code, arc, n)


# --- site search -------------------------------------------------------------


def _edge_arc(code: GaussCode, edge_index: int) -> ArcRef:
    offset = 0
    for ci, comp in enumerate(code.components):
        n = len(comp)
        if edge_index < offset + n:
            return ArcRef(ci, (edge_index - offset + 1) % n)
        offset += n
    raise StaleReference(f"no edge {edge_index}")


def r2_sites(code: GaussCode) -> list[tuple[ArcRef, ArcRef]]:
    """Arc pairs lying on a common face of the carrier ribbon; an R2 move
    across such a pair keeps a realizable code realizable."""
    sites = []
    seen = set()
    for walk in flat_walks(code):
        edges = sorted({e for e, _ in walk})
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                pair = (edges[i], edges[j])
                if pair not in seen:
                    seen.add(pair)
                    sites.append((_edge_arc(code, edges[i]), _edge_arc(code, edges[j])))
    return sites


def r3_sites(code: GaussCode) -> list[tuple[ArcRef, ArcRef, ArcRef]]:
    """Arc triples bounding a triangular face where the R3 letter pattern
    holds (checked by attempting the move)."""
    sites = []
    for walk in flat_walks(code):
        if len(walk) != 3:
            continue
        edges = {e for e, _ in walk}
        if len(edges) != 3:
            continue
        arcs = tuple(_edge_arc(code, e) for e in sorted(edges))
        try:
            _r3(code, list(arcs))
        except MovePreconditionFailed:
            continue
        sites.append(arcs)
    return sites
