"""Signed (generalized) Gauss codes: parsing, validation, canonical forms,
subcode enumeration, and basic structural queries.

A code is an ordered list of components; each component is a cyclic list of
passages ``(label, strand, sign)``.  Strand letters are ``"O"``/``"U"``,
signs are ``+1``/``-1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    CodeSyntaxError,
    PairingError,
    SignMismatch,
    StaleReference,
    ValidationError,
    Violation,
)

OVER = "O"
UNDER = "U"


class Passage(NamedTuple):
    label: int
    strand: str  # "O" or "U"
    sign: int  # +1 or -1


class ArcRef(NamedTuple):
    """An arc of the diagram: the gap before entry ``position`` of a component.

    A crossingless component has the single arc ``position == 0``.
    """

    component: int
    position: int


@dataclass(frozen=True)
class GaussCode:
    """Immutable signed Gauss code; ``generalized`` is true when some label
    has two Over or two Under passages."""

    components: tuple[tuple[Passage, ...], ...] = ()
    generalized: bool = False

    @classmethod
    def from_components(cls, components: Iterable[Iterable[Passage]]) -> "GaussCode":
        comps = tuple(tuple(Passage(*p) for p in comp) for comp in components)
        code = cls(comps, _is_generalized(comps))
        report = validate(code)
        if not report.valid:
            raise _validation_error(report.violations)
        return code

    def entries(self) -> Iterator[tuple[int, int, Passage]]:
        """Yield (component index, position, passage) in traversal order."""
        for ci, comp in enumerate(self.components):
            for pos, p in enumerate(comp):
                yield ci, pos, p

    def size(self) -> int:
        """Number of crossings."""
        return sum(len(c) for c in self.components) // 2

    def total_entries(self) -> int:
        return sum(len(c) for c in self.components)

    def labels(self) -> set[int]:
        return {p.label for comp in self.components for p in comp}

    def max_label(self) -> int:
        labs = self.labels()
        return max(labs) if labs else 0

    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        """Map label -> list of (component, position), in traversal order."""
        occ: dict[int, list[tuple[int, int]]] = {}
        for ci, pos, p in self.entries():
            occ.setdefault(p.label, []).append((ci, pos))
        return occ

    def check_arc(self, arc: ArcRef) -> None:
        if not (0 <= arc.component < len(self.components)):
            raise StaleReference(f"no component {arc.component}")
        n = len(self.components[arc.component])
        limit = max(n, 1)  # a crossingless component still has one arc
        if not (0 <= arc.position < limit):
            raise StaleReference(
                f"component {arc.component} has no arc {arc.position}"
            )


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class SubcodeInterval:
    """A pair-closed proper cyclic run inside one component, together with the
    set of other components wholly absorbed with it."""

    component: int
    start: int
    length: int
    absorbed_components: frozenset[int] = frozenset()

    def run_labels(self, code: GaussCode) -> tuple[int, ...]:
        comp = code.components[self.component]
        n = len(comp)
        return tuple(comp[(self.start + k) % n].label for k in range(self.length))

    def sort_key(self):
        return (self.component, self.start, self.length, tuple(sorted(self.absorbed_components)))


def _is_generalized(components: Sequence[Sequence[Passage]]) -> bool:
    strands: dict[int, list[str]] = {}
    for comp in components:
        for p in comp:
            strands.setdefault(p.label, []).append(p.strand)
    return any(len(v) == 2 and v[0] == v[1] for v in strands.values())


def _validation_error(violations: Sequence[Violation]) -> ValidationError:
    rules = {v.rule for v in violations}
    if rules == {"pairing"}:
        return PairingError(violations)
    if rules == {"sign"}:
        return SignMismatch(violations)
    return ValidationError(violations)


def validate(code: GaussCode) -> ValidationReport:
    """Check the Gauss code invariants; valid iff no violations."""
    violations: list[Violation] = []
    occ: dict[int, list[Passage]] = {}
    for ci, comp in enumerate(code.components):
        for p in comp:
            if p.label < 1:
                violations.append(Violation("label", p.label, f"label {p.label} is not positive"))
            if p.strand not in (OVER, UNDER):
                violations.append(Violation("strand", p.label, f"bad strand {p.strand!r}"))
            if p.sign not in (1, -1):
                violations.append(Violation("sign-value", p.label, f"bad sign {p.sign!r}"))
            occ.setdefault(p.label, []).append(p)
    for label in sorted(occ):
        ps = occ[label]
        if len(ps) != 2:
            violations.append(
                Violation("pairing", label, f"label {label} occurs {len(ps)} times, expected 2")
            )
            continue
        if ps[0].sign != ps[1].sign:
            violations.append(
                Violation("sign", label, f"label {label} has mismatched signs")
            )
        if not code.generalized and ps[0].strand == ps[1].strand:
            violations.append(
                Violation(
                    "strand-pairing",
                    label,
                    f"label {label} has two {ps[0].strand} passages in a non-generalized code",
                )
            )
    return ValidationReport(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# Grammar:
#   code      := component (";" component)*        (empty input = empty code)
#   component := "0" | entry+
#   entry     := ("O"|"U") label sign
#   label     := [1-9][0-9]*
#   sign      := "+" | "-"
# Whitespace between tokens; letters case-insensitive; "#" comments to EOL.
# ---------------------------------------------------------------------------


def parse(text: str) -> GaussCode:
    """Parse Gauss code text, raising on grammar or invariant violations."""
    comps = _parse_components(text)
    generalized = _is_generalized(comps)
    code = GaussCode(tuple(tuple(c) for c in comps), generalized)
    report = validate(code)
    if not report.valid:
        raise _validation_error(report.violations)
    return code


def _parse_components(text: str) -> list[list[Passage]]:
    i, n = 0, len(text)
    comps: list[list[Passage]] = []
    current: list[Passage] | None = None
    current_zero = False

    def skip_ws(j: int) -> int:
        while j < n:
            ch = text[j]
            if ch in " \t\r\n":
                j += 1
            elif ch == "#":
                while j < n and text[j] != "\n":
                    j += 1
            else:
                break
        return j

    i = skip_ws(i)
    if i >= n:
        return []
    current = []
    while True:
        i = skip_ws(i)
        if i >= n:
            break
        ch = text[i]
        if ch == ";":
            if not current and not current_zero:
                raise CodeSyntaxError(i, "an entry or '0' before ';'")
            comps.append(current)
            current, current_zero = [], False
            i += 1
            continue
        if ch == "0":
            if current or current_zero:
                raise CodeSyntaxError(i, "';' or an entry", "0")
            current_zero = True
            i += 1
            continue
        if ch in "OoUu":
            if current_zero:
                raise CodeSyntaxError(i, "';' after '0'", ch)
            strand = OVER if ch in "Oo" else UNDER
            i += 1
            i = skip_ws(i)
            if i >= n or not text[i].isdigit() or text[i] == "0":
                raise CodeSyntaxError(i, "a label starting with 1-9", text[i : i + 1])
            j = i
            while j < n and text[j].isdigit():
                j += 1
            label = int(text[i:j])
            i = skip_ws(j)
            if i >= n or text[i] not in "+-":
                raise CodeSyntaxError(i, "'+' or '-'", text[i : i + 1])
            sign = 1 if text[i] == "+" else -1
            current.append(Passage(label, strand, sign))
            i += 1
            continue
        raise CodeSyntaxError(i, "'O', 'U', '0', or ';'", ch)
    if not current and not current_zero:
        raise CodeSyntaxError(n, "an entry or '0' after ';'")
    comps.append(current)
    return comps


def render(code: GaussCode) -> str:
    """Canonical text: 'O1+ U2+' entries, '; ' between components, '0' for a
    crossingless component, '' for the empty code."""
    parts = []
    for comp in code.components:
        if not comp:
            parts.append("0")
        else:
            parts.append(" ".join(f"{p.strand}{p.label}{'+' if p.sign > 0 else '-'}" for p in comp))
    return "; ".join(parts)


# --- canonicalization -------------------------------------------------------

def _entry_key(p: Passage, relabeled: int) -> tuple[int, int, int]:
    # Tie-break order: Over < Under, Plus < Minus, then numeric label.
    return (0 if p.strand == OVER else 1, 0 if p.sign > 0 else 1, relabeled)


def canonicalize(code: GaussCode) -> GaussCode:
    """Renumber labels 1..c by first appearance and pick component rotations
    and ordering giving the lexicographically least rendering; idempotent.

    Entries compare by (strand, sign, relabeled label); components compare as
    entry sequences, so crossingless components sort first.
    """
    comps = code.components
    k = len(comps)
    if k == 0:
        return code
    best_key = None
    best_comps: tuple[tuple[Passage, ...], ...] | None = None
    for perm in itertools.permutations(range(k)):
        rot_ranges = [range(len(comps[ci])) if comps[ci] else range(1) for ci in perm]
        for rots in itertools.product(*rot_ranges):
            labmap: dict[int, int] = {}
            new_comps = []
            key = []
            for ci, rot in zip(perm, rots):
                comp = comps[ci]
                n = len(comp)
                seq = []
                comp_key = []
                for t in range(n):
                    p = comp[(rot + t) % n]
                    r = labmap.get(p.label)
                    if r is None:
                        labmap[p.label] = r = len(labmap) + 1
                    seq.append(Passage(r, p.strand, p.sign))
                    comp_key.append(_entry_key(p, r))
                new_comps.append(tuple(seq))
                key.append(tuple(comp_key))
            key_t = tuple(key)
            if best_key is None or key_t < best_key:
                best_key = key_t
                best_comps = tuple(new_comps)
    assert best_comps is not None
    return GaussCode(best_comps, code.generalized)


# --- structural queries ------------------------------------------------------

def is_reduced(code: GaussCode) -> bool:
    """True iff no label has its two occurrences cyclically adjacent within
    one component (no monogon)."""
    for comp in code.components:
        n = len(comp)
        if n < 2:
            continue
        for j in range(n):
            if comp[j].label == comp[(j + 1) % n].label:
                return False
    return True


def connectivity(code: GaussCode) -> list[frozenset[int]]:
    """Partition component indices into classes linked by shared labels."""
    k = len(code.components)
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_comp: dict[int, int] = {}
    for ci, comp in enumerate(code.components):
        for p in comp:
            if p.label in first_comp:
                a, b = find(first_comp[p.label]), find(ci)
                if a != b:
                    parent[b] = a
            else:
                first_comp[p.label] = ci
    classes: dict[int, set[int]] = {}
    for ci in range(k):
        classes.setdefault(find(ci), set()).add(ci)
    return sorted((frozenset(v) for v in classes.values()), key=min)


def is_connected(code: GaussCode) -> bool:
    if len(code.components) <= 1:
        return True
    return len(connectivity(code)) <= 1


def subcodes(code: GaussCode) -> list[SubcodeInterval]:
    """All nontrivial proper pair-closed cyclic runs, each with every valid
    set of wholly absorbed other components; closed under complementation.

    Nontrivial means both the subcode and its complement contain at least
    two crossings, so a monogon's adjacent pair is never a witness.
    """
    comps = code.components
    k = len(comps)
    total = code.total_entries()
    occ = code.occurrences()
    # component index set of each label
    label_comps = {lab: frozenset(ci for ci, _ in pos) for lab, pos in occ.items()}
    classes = connectivity(code)
    class_of = {}
    for cls in classes:
        for ci in cls:
            class_of[ci] = cls
    raw: list[SubcodeInterval] = []
    for host in range(k):
        comp = comps[host]
        n = len(comp)
        if n < 2:
            continue
        labels = [p.label for p in comp]
        for start in range(n):
            counts: dict[int, int] = {}
            open_labels = 0
            external: set[int] = set()
            for length in range(1, n):
                lab = labels[(start + length - 1) % n]
                c = counts.get(lab, 0) + 1
                counts[lab] = c
                if c == 1:
                    open_labels += 1
                    if label_comps[lab] != frozenset((host,)):
                        external.add(lab)
                else:
                    open_labels -= 1
                    external.discard(lab)
                if open_labels == 0:
                    raw.append(SubcodeInterval(host, start, length))
                elif open_labels == len(external) and external:
                    absorbed = _absorb(external, host, comps, occ, label_comps)
                    if absorbed is not None:
                        raw.append(SubcodeInterval(host, start, length, absorbed))
    # Optional extra absorption of self-closed connectivity classes that do
    # not touch the host (only possible for disconnected codes).
    extended: list[SubcodeInterval] = list(raw)
    for sub in raw:
        host_cls = class_of[sub.component]
        free = [
            cls
            for cls in classes
            if cls is not host_cls and not (cls & sub.absorbed_components)
        ]
        for mask in range(1, 1 << len(free)):
            add: set[int] = set()
            for b, cls in enumerate(free):
                if mask >> b & 1:
                    add |= cls
            extended.append(
                SubcodeInterval(
                    sub.component,
                    sub.start,
                    sub.length,
                    sub.absorbed_components | frozenset(add),
                )
            )
    out = [
        sub
        for sub in extended
        if 4
        <= sub.length + sum(len(comps[ci]) for ci in sub.absorbed_components)
        <= total - 4
    ]
    out.sort(key=SubcodeInterval.sort_key)
    return out


def _absorb(external, host, comps, occ, label_comps):
    """Smallest set of non-host components closing the given labels, or None."""
    absorbed: set[int] = set()
    queue = set(external)
    while queue:
        lab = queue.pop()
        for ci in label_comps[lab]:
            if ci == host or ci in absorbed:
                continue
            absorbed.add(ci)
            for p in comps[ci]:
                others = label_comps[p.label]
                if others == frozenset((ci,)):
                    continue
                for cj in others:
                    if cj == host and p.label not in external:
                        return None  # leaks back into the host outside the run
                    if cj != host and cj not in absorbed:
                        queue.add(p.label)
    return frozenset(absorbed)
