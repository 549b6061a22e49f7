"""Obvious-primeness certificates, exceptional-case detection, and the
constructive rewrite making a diagram's Turaev realization prime.

A subcode-free reduced connected diagram lifts to an obviously prime fully
alternating link on its Turaev surface; the certificate operations check
exactly that, plus the known non-hyperbolic exceptions (sphere 2-braids and
the projective-plane 2-braid analogs).  Detection of the projective-plane
exceptions is deliberately conservative: inconclusive genus-1/2 codes are
flagged Unknown and never certified.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum

from .codes import (
    OVER,
    UNDER,
    GaussCode,
    Passage,
    SubcodeInterval,
    canonicalize,
    connectivity,
    is_connected,
    is_reduced,
    render,
    subcodes,
)
from .errors import (
    EmptyComponent,
    NotConnected,
    NotReduced,
    ProgressStalled,
)
from .moves import (
    MoveDescriptor,
    MoveLog,
    apply_logged,
    r2_sites,
)
from .surface import carrier_genus, surface_report


class ExceptionalCase(Enum):
    NONE = "None"
    SPHERE_2BRAID = "Sphere2Braid"
    PROJECTIVE_PLANE_SUSPECT = "ProjectivePlaneSuspect"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PrimenessCertificate:
    status: str  # "SubcodeFree" or "Obstructed"
    witnesses: tuple[SubcodeInterval, ...]


@dataclass(frozen=True)
class HyperbolicityVerdict:
    verdict: str  # "Certified" or "NotCertified"
    reasons: tuple[str, ...]

    @property
    def certified(self) -> bool:
        return self.verdict == "Certified"


def primeness_certificate(code: GaussCode) -> PrimenessCertificate:
    """SubcodeFree iff the code has no nontrivial proper pair-closed run."""
    if any(len(c) == 0 for c in code.components):
        raise EmptyComponent("primeness needs nonempty components")
    if not is_connected(code):
        raise NotConnected("primeness needs a connected code")
    if not is_reduced(code):
        raise NotReduced("primeness needs a reduced code")
    ws = tuple(subcodes(code))
    return PrimenessCertificate("SubcodeFree" if not ws else "Obstructed", ws)


def _strip_signs(code: GaussCode) -> GaussCode:
    comps = tuple(
        tuple(Passage(p.label, p.strand, 1) for p in comp) for comp in code.components
    )
    return GaussCode(comps, code.generalized)


def _shape_key(code: GaussCode) -> str:
    """Canonical key of the (word, letters) shape, ignoring signs."""
    return render(canonicalize(_strip_signs(code)))


def _flip_letters(code: GaussCode) -> GaussCode:
    comps = tuple(
        tuple(Passage(p.label, UNDER if p.strand == OVER else OVER, p.sign) for p in comp)
        for comp in code.components
    )
    return GaussCode(comps, code.generalized)


def _reverse(code: GaussCode) -> GaussCode:
    comps = tuple(tuple(reversed(comp)) for comp in code.components)
    return GaussCode(comps, code.generalized)


def _is_alternating(code: GaussCode) -> bool:
    for comp in code.components:
        n = len(comp)
        for i in range(n):
            if comp[i].strand == comp[(i + 1) % n].strand:
                return False
    return True


def is_two_braid(code: GaussCode) -> bool:
    """Realizable alternating (2,q) torus pattern: knot word 1..q 1..q, or
    the two-component analog."""
    if code.generalized or not code.components:
        return False
    c = code.size()
    if c < 2:
        return False
    if not _is_alternating(code):
        return False
    if len(code.components) == 1:
        word = [p.label for p in code.components[0]]
        n = len(word)
        if n != 2 * c or any(word[i] != word[(i + c) % n] for i in range(n)):
            return False
    elif len(code.components) == 2:
        w1 = [p.label for p in code.components[0]]
        w2 = [p.label for p in code.components[1]]
        if len(w1) != c or len(w2) != c or set(w1) != set(w2) or len(set(w1)) != c:
            return False
        if not any(
            all(w2[(i + r) % c] == w1[i] for i in range(c)) for r in range(c)
        ):
            return False
    else:
        return False
    try:
        return carrier_genus(code)[1]
    except (NotConnected, EmptyComponent):
        return False


def _two_braid_code(q: int, components: int) -> GaussCode:
    if components == 1:
        comp = [
            Passage((i % q) + 1, OVER if i % 2 == 0 else UNDER, 1) for i in range(2 * q)
        ]
        return GaussCode((tuple(comp),), False)
    c1 = tuple(Passage(i + 1, OVER if i % 2 == 0 else UNDER, 1) for i in range(q))
    c2 = tuple(Passage(i + 1, UNDER if i % 2 == 0 else OVER, 1) for i in range(q))
    return GaussCode((c1, c2), False)


@functools.lru_cache(maxsize=None)
def _pp_pattern_keys(crossings: int, components: int) -> frozenset[str]:
    """Shape keys of a 2-braid with one crossing made virtual (the known
    projective-plane Turaev pairs), closed under letter flip and reversal."""
    q = crossings + 1
    if components == 1 and q % 2 == 0:
        return frozenset()
    if components == 2 and q % 2 == 1:
        return frozenset()
    if q < 3:
        return frozenset()
    base = _two_braid_code(q, components)
    keys: set[str] = set()
    for j in range(1, q + 1):
        comps = tuple(
            tuple(p for p in comp if p.label != j) for comp in base.components
        )
        deleted = GaussCode(comps, False)
        for variant in (
            deleted,
            _flip_letters(deleted),
            _reverse(deleted),
            _flip_letters(_reverse(deleted)),
        ):
            keys.add(_shape_key(variant))
    return frozenset(keys)


def exceptional_case(code: GaussCode) -> ExceptionalCase:
    """Classify against the tg-hyperbolicity exceptions.

    Sphere2Braid for realizable alternating (2,q) patterns; genus-1/2 codes
    are ProjectivePlaneSuspect when they match the virtualized-2-braid
    pattern and Unknown otherwise (never certified either way).
    """
    if not is_connected(code):
        raise NotConnected("exceptional_case needs a connected code")
    if not is_reduced(code):
        raise NotReduced("exceptional_case needs a reduced code")
    if not code.components:
        return ExceptionalCase.NONE
    rep = surface_report(code)
    if rep.twice_genus == 1 and not rep.orientable:
        keys = _pp_pattern_keys(code.size(), len(code.components))
        if _shape_key(code) in keys:
            return ExceptionalCase.PROJECTIVE_PLANE_SUSPECT
        return ExceptionalCase.UNKNOWN
    if is_two_braid(code):
        return ExceptionalCase.SPHERE_2BRAID
    return ExceptionalCase.NONE


def hyperbolicity_certificate(code: GaussCode) -> HyperbolicityVerdict:
    """Certified iff connected, reduced, subcode-free, and no exceptional
    case; failures are reported as reasons, never errors."""
    reasons: list[str] = []
    if not code.components:
        reasons.append("empty_code")
        return HyperbolicityVerdict("NotCertified", tuple(reasons))
    if any(len(c) == 0 for c in code.components):
        reasons.append("empty_component")
        return HyperbolicityVerdict("NotCertified", tuple(reasons))
    if code.generalized:
        # generalized codes are letter patterns, not diagrams
        reasons.append("generalized_code")
        return HyperbolicityVerdict("NotCertified", tuple(reasons))
    if not is_connected(code):
        reasons.append("not_connected")
    if not is_reduced(code):
        reasons.append("not_reduced")
    if reasons:
        return HyperbolicityVerdict("NotCertified", tuple(reasons))
    if subcodes(code):
        reasons.append("obstructed")
    exc = exceptional_case(code)
    if exc is ExceptionalCase.SPHERE_2BRAID:
        reasons.append("exceptional:Sphere2Braid")
    elif exc is ExceptionalCase.PROJECTIVE_PLANE_SUSPECT:
        reasons.append("exceptional:ProjectivePlaneSuspect")
    elif exc is ExceptionalCase.UNKNOWN:
        reasons.append("unknown_projective_plane")
    if reasons:
        return HyperbolicityVerdict("NotCertified", tuple(reasons))
    return HyperbolicityVerdict("Certified", ())


# --- primeification -----------------------------------------------------------


def _monogon_label(code: GaussCode) -> int | None:
    best = None
    for comp in code.components:
        n = len(comp)
        if n < 2:
            continue
        for i in range(n):
            if comp[i].label == comp[(i + 1) % n].label:
                lab = comp[i].label
                if best is None or lab < best:
                    best = lab
    return best


def _realizable(code: GaussCode) -> bool | None:
    try:
        return carrier_genus(code)[1]
    except Exception:
        return None


def _gaps_next_to(code: GaussCode, ci: int, pos: int) -> list[int]:
    n = len(code.components[ci])
    return [pos, (pos + 1) % n]


def _destroy_one_subcode(
    code: GaussCode, witnesses: list[SubcodeInterval], log: MoveLog, want_realizable: bool
) -> tuple[GaussCode, MoveLog]:
    """One RII move of the cross-strand just outside the smallest witness
    across the cross-strand just inside, decreasing the subcode count."""
    w = witnesses[0]
    comp = code.components[w.component]
    n = len(comp)
    exit_label = comp[(w.start + w.length) % n].label
    inner_label = comp[(w.start + w.length - 1) % n].label
    occ = code.occurrences()

    def other_occurrence(label: int, not_at: tuple[int, int]) -> tuple[int, int]:
        places = occ[label]
        return places[1] if places[0] == not_at else places[0]

    q_at = other_occurrence(exit_label, (w.component, (w.start + w.length) % n))
    r_at = other_occurrence(inner_label, (w.component, (w.start + w.length - 1) % n))
    before = len(witnesses)
    candidates = []
    for qg in _gaps_next_to(code, *q_at):
        for rg in _gaps_next_to(code, *r_at):
            if (q_at[0], qg) == (r_at[0], rg):
                continue
            for par in (True, False):
                for s in (1, -1):
                    candidates.append((qg, rg, par, s))
    for qg, rg, par, s in candidates:
        m = MoveDescriptor.make(
            "R2Add",
            over_arc=(q_at[0], qg),
            under_arc=(r_at[0], rg),
            sign=s,
            parallel=par,
        )
        try:
            out, out_log = apply_logged(code, m, log)
        except Exception:
            continue
        if len(subcodes(out)) >= before:
            continue
        if want_realizable and not _realizable(out):
            continue
        return out, out_log
    raise ProgressStalled("no RII candidate decreases the subcode count")


def _poke_exceptional(
    code: GaussCode, log: MoveLog, want_realizable: bool
) -> tuple[GaussCode, MoveLog]:
    """Break a 2-braid (or projective-plane) pattern with one RII move that
    keeps the code subcode-free and reduced."""
    for over_arc, under_arc in r2_sites(code):
        m = MoveDescriptor.make(
            "R2Add", over_arc=tuple(over_arc), under_arc=tuple(under_arc)
        )
        try:
            out, out_log = apply_logged(code, m, log)
        except Exception:
            continue
        if subcodes(out) or not is_reduced(out):
            continue
        if want_realizable and not _realizable(out):
            continue
        exc = exceptional_case(out)
        if exc in (ExceptionalCase.SPHERE_2BRAID, ExceptionalCase.PROJECTIVE_PLANE_SUSPECT):
            continue
        return out, out_log
    raise ProgressStalled("no RII candidate breaks the exceptional pattern")


def make_turaev_prime(code: GaussCode) -> tuple[GaussCode, MoveLog]:
    """Rewrite the diagram by logged legal moves until it is connected,
    reduced, subcode-free, and free of 2-braid patterns, so its Turaev
    realization is prime and tg-hyperbolic; classical inputs stay classical.
    """
    log = MoveLog()
    work = code
    if not code.components:
        return code, log
    want_realizable = _realizable(code) is True or (
        not code.generalized and code.total_entries() == 0
    )
    guard = 10 * max(code.size(), 2) ** 2 + 40
    steps = 0
    while True:
        steps += 1
        if steps > guard:
            raise ProgressStalled("primeification iteration cap exceeded")
        if work.total_entries() == 0 and len(work.components) == 1:
            # trivial knot: substitute the crossing-switched trefoil diagram
            work, log = apply_logged(
                work,
                MoveDescriptor.make("R1Add", arc=(0, 0), sign=1, letter_first=OVER),
                log,
            )
            work, log = apply_logged(
                work,
                MoveDescriptor.make(
                    "R2Add", over_arc=(0, 1), under_arc=(0, 0), sign=-1, parallel=True
                ),
                log,
            )
            continue
        mono = _monogon_label(work)
        if mono is not None:
            work, log = apply_logged(
                work, MoveDescriptor.make("R1Remove", label=mono), log
            )
            continue
        classes = connectivity(work)
        if len(classes) > 1:
            a = min(classes[0])
            b = min(classes[1])
            work, log = apply_logged(
                work,
                MoveDescriptor.make("R2Add", over_arc=(a, 0), under_arc=(b, 0)),
                log,
            )
            continue
        ws = subcodes(work)
        if ws:
            work, log = _destroy_one_subcode(work, ws, log, want_realizable)
            continue
        if not work.generalized:
            exc = exceptional_case(work)
            if exc in (
                ExceptionalCase.SPHERE_2BRAID,
                ExceptionalCase.PROJECTIVE_PLANE_SUSPECT,
            ):
                work, log = _poke_exceptional(work, log, want_realizable)
                continue
        return work, log
