"""Turaev ribbon graphs and surface invariants of Gauss codes.

A code with V crossings yields a ribbon graph with one 4-valent vertex per
crossing and one band per consecutive passage pair; a band is half-twisted
exactly when its two endpoint passages carry equal strand letters.  Capping
the boundary walks gives the closed Turaev surface.  The same machinery with
all twists dropped gives the carrier surface of the underlying diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .codes import OVER, UNDER, GaussCode, Passage, is_connected
from .errors import (
    EmptyComponent,
    GeneralizedCodeUnsupported,
    NotConnected,
)

# Counterclockwise slot order at a crossing, by sign.  Slot index = 4v + offset.
# Plus:  (over-in, under-in, over-out, under-out)
# Minus: (over-in, under-out, over-out, under-in)
_SLOT_OFFSET = {
    (1, OVER, "in"): 0,
    (1, UNDER, "in"): 1,
    (1, OVER, "out"): 2,
    (1, UNDER, "out"): 3,
    (-1, OVER, "in"): 0,
    (-1, UNDER, "out"): 1,
    (-1, OVER, "out"): 2,
    (-1, UNDER, "in"): 3,
}


class SlotRecord(NamedTuple):
    component: int
    position: int
    direction: str  # "in" or "out"


@dataclass(frozen=True)
class RibbonGraph:
    """Vertices with cyclic 4-slot rotations plus per-edge twist flags."""

    vertex_count: int
    vertex_labels: tuple[int, ...]
    half_edges: tuple[tuple[SlotRecord, ...], ...]  # 4 slots per vertex, CCW
    edges: tuple[tuple[int, int, bool], ...]  # (slot a, slot b, twist)


@dataclass(frozen=True)
class SurfaceReport:
    boundary_count: int
    euler_characteristic: int
    orientable: bool
    twice_genus: int  # 2g when orientable, crosscap count otherwise


class StateCount(NamedTuple):
    a_circles: int
    b_circles: int


def _check_surface_preconditions(code: GaussCode) -> None:
    if code.generalized:
        # a generalized code is a lift's letter pattern, not a diagram: the
        # two passages of an O-O label would collide on the over slots
        raise GeneralizedCodeUnsupported("ribbon construction needs O/U paired codes")
    if any(len(c) == 0 for c in code.components):
        raise EmptyComponent("surface operations reject crossingless components")
    if not is_connected(code):
        raise NotConnected("surface operations require a connected code")


def _ribbon_arrays(code: GaussCode, twisted: bool):
    """Internal dense form: (vertex labels, alpha, per-slot twist, edges).

    ``alpha[s]`` is the slot paired with slot ``s`` across a band and
    ``slot_twist[s]`` its twist flag; ``edges`` lists (slot, slot, twist)
    in traversal order.
    """
    vlabels: list[int] = []
    vindex: dict[int, int] = {}
    for comp in code.components:
        for p in comp:
            if p.label not in vindex:
                vindex[p.label] = len(vlabels)
                vlabels.append(p.label)
    nslots = 4 * len(vlabels)
    alpha = [-1] * nslots
    slot_twist = [0] * nslots
    edges: list[tuple[int, int, bool]] = []

    def slot(p: Passage, direction: str) -> int:
        return 4 * vindex[p.label] + _SLOT_OFFSET[(p.sign, p.strand, direction)]

    for comp in code.components:
        n = len(comp)
        for i in range(n):
            p, q = comp[i], comp[(i + 1) % n]
            a, b = slot(p, "out"), slot(q, "in")
            tw = (p.strand == q.strand) if twisted else False
            alpha[a], alpha[b] = b, a
            slot_twist[a] = slot_twist[b] = 1 if tw else 0
            edges.append((a, b, tw))
    return vlabels, alpha, slot_twist, edges


def _face_count(nslots: int, alpha: list[int], slot_twist: list[int]) -> int:
    """Count boundary walks: orbits of the side-tracking successor, halved
    because each walk is traced once per direction."""
    total = 2 * nslots
    seen = bytearray(total)
    orbits = 0
    for start in range(total):
        if seen[start]:
            continue
        orbits += 1
        state = start
        while not seen[state]:
            seen[state] = 1
            s, x = state >> 1, state & 1
            s2 = alpha[s]
            x2 = x ^ slot_twist[s]
            base = s2 & ~3
            nxt = base | ((s2 + 1) & 3) if x2 == 0 else base | ((s2 - 1) & 3)
            state = nxt << 1 | x2
    return orbits // 2


def _orientable(nv: int, edges: Iterable[tuple[int, int, bool]]) -> bool:
    """Twist parity over a spanning tree: orientable iff no cycle has odd
    total twist."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for a, b, tw in edges:
        u, v = a >> 2, b >> 2
        t = 1 if tw else 0
        adj[u].append((v, t))
        adj[v].append((u, t))
    pot = [-1] * nv
    for root in range(nv):
        if pot[root] != -1:
            continue
        pot[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v, t in adj[u]:
                want = pot[u] ^ t
                if pot[v] == -1:
                    pot[v] = want
                    stack.append(v)
                elif pot[v] != want:
                    return False
    return True


def build_turaev_ribbon(code: GaussCode) -> RibbonGraph:
    """One vertex per label, one band per consecutive passage pair, twisted
    when the endpoint letters agree."""
    _check_surface_preconditions(code)
    vlabels, alpha, slot_twist, edges = _ribbon_arrays(code, twisted=True)
    slot_records: dict[int, SlotRecord] = {}
    for ci, comp in enumerate(code.components):
        for pos, p in enumerate(comp):
            v = vlabels.index(p.label)
            for direction in ("in", "out"):
                s = 4 * v + _SLOT_OFFSET[(p.sign, p.strand, direction)]
                slot_records[s] = SlotRecord(ci, pos, direction)
    half_edges = tuple(
        tuple(slot_records[4 * v + o] for o in range(4)) for v in range(len(vlabels))
    )
    return RibbonGraph(len(vlabels), tuple(vlabels), half_edges, tuple(edges))


def _edge_walks(
    edges: Iterable[tuple[int, int, bool]],
) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Boundary walks of a ribbon given as (slot, slot, twist) bands.

    Each walk is a tuple of (edge index, side) arcs, where side is recorded
    at the edge's first slot.  Every directed traversal orbit pairs with its
    reverse; one walk per pair is returned, so walks partition the 2E sides.
    """
    edges = list(edges)
    edge_of_slot: dict[int, tuple[int, int, int]] = {}
    alpha: dict[int, int] = {}
    twist: dict[int, int] = {}
    for ei, (a, b, tw) in enumerate(edges):
        t = 1 if tw else 0
        edge_of_slot[a] = (ei, 0, t)
        edge_of_slot[b] = (ei, 1, t)
        alpha[a], alpha[b] = b, a
        twist[a] = twist[b] = t

    def arc_of(state: tuple[int, int]) -> tuple[int, int]:
        # A side is carried in the travel frame; viewed from the far end the
        # same boundary arc has the complementary side, twist-adjusted.
        s, x = state
        ei, end, t = edge_of_slot[s]
        return (ei, x) if end == 0 else (ei, 1 ^ x ^ t)

    def step(state: tuple[int, int]) -> tuple[int, int]:
        s, x = state
        s2 = alpha[s]
        x2 = x ^ twist[s]
        base = s2 & ~3
        nxt = base | ((s2 + 1) & 3) if x2 == 0 else base | ((s2 - 1) & 3)
        return nxt, x2

    def reverse_of(state: tuple[int, int]) -> tuple[int, int]:
        s, x = state
        return alpha[s], 1 ^ x ^ twist[s]

    walks: list[tuple[tuple[int, int], ...]] = []
    seen: set[tuple[int, int]] = set()
    for a, b, tw in edges:
        for x in (0, 1):
            start = (a, x)
            if start in seen:
                continue
            orbit = []
            state = start
            while True:
                orbit.append(state)
                seen.add(state)
                state = step(state)
                if state == start:
                    break
            for st in orbit:
                seen.add(reverse_of(st))
            walks.append(tuple(arc_of(st) for st in orbit))
    return tuple(walks)


def trace_boundaries(rg: RibbonGraph) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Close up the 2E band sides into boundary walks; the walk count is the
    number of capping disks F."""
    return _edge_walks(rg.edges)


def flat_walks(code: GaussCode) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Boundary walks of the untwisted (carrier) ribbon, by edge index."""
    if code.generalized:
        raise GeneralizedCodeUnsupported("the carrier ribbon needs O/U paired codes")
    _, _, _, edges = _ribbon_arrays(code, twisted=False)
    return _edge_walks(edges)


def gap_edge_index(code: GaussCode, component: int, gap: int) -> int:
    """Index of the band spanning the given arc in ribbon edge order."""
    offset = sum(len(c) for c in code.components[:component])
    n = len(code.components[component])
    return offset + (gap - 1) % n


def surface_report(code: GaussCode) -> SurfaceReport:
    """Orientability, Euler characteristic, boundary count, and twice-genus
    of the capped Turaev surface."""
    if not code.components:
        return SurfaceReport(0, 2, True, 0)
    _check_surface_preconditions(code)
    vlabels, alpha, slot_twist, edges = _ribbon_arrays(code, twisted=True)
    nv = len(vlabels)
    faces = _face_count(4 * nv, alpha, slot_twist)
    euler = nv - len(edges) + faces
    orientable = _orientable(nv, edges)
    return SurfaceReport(faces, euler, orientable, 2 - euler)


def turaev_code(code: GaussCode) -> GaussCode:
    """Rewrite strand letters so each component alternates starting with Over
    at its first entry; labels and signs are untouched."""
    if any(len(c) == 0 for c in code.components):
        raise EmptyComponent("turaev_code requires nonempty components")
    comps = tuple(
        tuple(
            Passage(p.label, OVER if i % 2 == 0 else UNDER, p.sign)
            for i, p in enumerate(comp)
        )
        for comp in code.components
    )
    strands: dict[int, list[str]] = {}
    for comp in comps:
        for p in comp:
            strands.setdefault(p.label, []).append(p.strand)
    generalized = any(len(v) == 2 and v[0] == v[1] for v in strands.values())
    return GaussCode(comps, generalized)


def parity_orientable(code: GaussCode) -> bool:
    """Orientability of the Turaev surface by entry-count parity.

    A knot code is orientable iff every label's occurrences separate an even
    number of entries.  For links the same parity data becomes a 2-coloring
    of components (odd-length components are immediately nonorientable).
    """
    if any(len(c) == 0 for c in code.components):
        raise EmptyComponent("parity_orientable requires nonempty components")
    if any(len(c) % 2 for c in code.components):
        return False
    occ: dict[int, list[tuple[int, int, str]]] = {}
    for ci, comp in enumerate(code.components):
        for pos, p in enumerate(comp):
            occ.setdefault(p.label, []).append((ci, pos, p.strand))
    k = len(code.components)
    parent = list(range(k))
    parity = [0] * k  # parity relative to the class root

    def find(x: int) -> tuple[int, int]:
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        root = x
        acc = 0
        for y in reversed(path):
            acc ^= parity[y]
            parent[y] = root
            parity[y] = acc
        return root, 0 if not path else parity[path[0]]

    for label, places in occ.items():
        (c1, p1, s1), (c2, p2, s2) = places
        need = (p1 + p2 + 1 + (1 if s1 == s2 else 0)) % 2
        if c1 == c2:
            if need:
                return False
            continue
        r1, x1 = find(c1)
        r2, x2 = find(c2)
        if r1 == r2:
            if (x1 ^ x2) != need:
                return False
        else:
            parent[r2] = r1
            parity[r2] = x1 ^ x2 ^ need
    return True


def state_circles(code: GaussCode) -> StateCount:
    """Circle counts of the all-A and all-B smoothings.

    At a Plus crossing the A smoothing joins over-in to under-out and
    under-in to over-out; the B smoothing joins the two inputs and the two
    outputs.  At a Minus crossing the roles swap.
    """
    if code.generalized:
        raise GeneralizedCodeUnsupported("state circles need O/U paired codes")
    _check_surface_preconditions(code)
    ends: dict[tuple[int, int, str], int] = {}
    nid = 0
    for ci, comp in enumerate(code.components):
        for pos in range(len(comp)):
            for d in ("in", "out"):
                ends[(ci, pos, d)] = nid
                nid += 1
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, pos, p in code.entries():
        occ.setdefault(p.label, []).append((ci, pos))

    def count(state: str) -> int:
        parent = list(range(nid))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra

        for ci, comp in enumerate(code.components):
            n = len(comp)
            for pos in range(n):
                union(ends[(ci, pos, "out")], ends[(ci, (pos + 1) % n, "in")])
        for label, places in occ.items():
            (c1, p1), (c2, p2) = places
            over = (c1, p1) if code.components[c1][p1].strand == OVER else (c2, p2)
            under = (c2, p2) if over == (c1, p1) else (c1, p1)
            sign = code.components[c1][p1].sign
            directed = (state == "A") == (sign == 1)
            if directed:
                union(ends[over + ("in",)], ends[under + ("out",)])
                union(ends[under + ("in",)], ends[over + ("out",)])
            else:
                union(ends[over + ("in",)], ends[under + ("in",)])
                union(ends[over + ("out",)], ends[under + ("out",)])
        return len({find(x) for x in range(nid)})

    return StateCount(count("A"), count("B"))


def turaev_genus(code: GaussCode) -> Fraction:
    """Genus of the Turaev surface; half the crosscap count when
    nonorientable."""
    return Fraction(surface_report(code).twice_genus, 2)


def carrier_genus(code: GaussCode) -> tuple[int, bool]:
    """Genus of the closed orientable surface carrying the diagram (the
    untwisted rotation-system ribbon); realizable iff zero."""
    if code.generalized:
        raise GeneralizedCodeUnsupported("carrier genus needs O/U paired codes")
    if not code.components:
        return 0, True
    if any(len(c) == 0 for c in code.components):
        raise EmptyComponent("carrier genus rejects crossingless components")
    if not is_connected(code):
        raise NotConnected("carrier genus requires a connected code")
    vlabels, alpha, slot_twist, edges = _ribbon_arrays(code, twisted=False)
    nv = len(vlabels)
    faces = _face_count(4 * nv, alpha, slot_twist)
    euler = nv - len(edges) + faces
    genus = (2 - euler) // 2
    return genus, genus == 0
