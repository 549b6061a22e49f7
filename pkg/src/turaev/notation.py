"""DT and PD notation for realizable classical codes.

DT codes use the even-label traversal pairing with the even entry negated
when that passage goes over, minimized over starting points and directions.
PD codes read the crossings' arc quadruples counterclockwise from the
incoming under-strand, using the calibrated rotation convention.
"""

from __future__ import annotations

import itertools
import re

from .codes import OVER, UNDER, GaussCode, Passage
from .errors import NotRealizable, UnsupportedFormat
from .surface import carrier_genus


def _require_realizable(code: GaussCode) -> None:
    try:
        genus, ok = carrier_genus(code)
    except Exception as e:
        raise NotRealizable(f"carrier genus unavailable: {e}") from e
    if not ok:
        raise NotRealizable(f"carrier genus {genus} != 0")


def dt_code(code: GaussCode) -> str:
    """Dowker-Thistlethwaite sequence of a realizable classical knot code."""
    if len(code.components) != 1:
        raise UnsupportedFormat("DT codes cover knots only")
    _require_realizable(code)
    comp = code.components[0]
    n = len(comp)
    if n == 0:
        return ""
    best = None
    for rot, direction in itertools.product(range(n), (1, -1)):
        if direction == 1:
            seq = comp[rot:] + comp[:rot]
        else:
            rev = tuple(reversed(comp))
            seq = rev[rot:] + rev[:rot]
        pos: dict[int, list[int]] = {}
        for i, p in enumerate(seq):
            pos.setdefault(p.label, []).append(i + 1)
        pairs = []
        ok = True
        for lab, (i, j) in pos.items():
            if (i + j) % 2 == 0:
                ok = False
                break
            odd, even = (i, j) if i % 2 else (j, i)
            value = -even if seq[even - 1].strand == OVER else even
            pairs.append((odd, value))
        if not ok:
            continue
        pairs.sort()
        cand = tuple(v for _, v in pairs)
        key = (tuple(abs(v) for v in cand), tuple(0 if v > 0 else 1 for v in cand))
        if best is None or key < best[0]:
            best = (key, cand)
    if best is None:
        raise NotRealizable("no odd/even pairing: the code is not classical")
    return " ".join(str(v) for v in best[1])


def _arc_ids(code: GaussCode):
    """1-based arc id per gap: each component gets a contiguous block and
    arc numbers increase through every passage."""
    ids = {}
    offset = 0
    for ci, comp in enumerate(code.components):
        n = len(comp)
        for g in range(n):
            ids[(ci, g)] = offset + (g if g > 0 else n)
        offset += n
    return ids


def pd_code(code: GaussCode) -> str:
    """Planar diagram code of a realizable classical knot or link."""
    if any(len(c) == 0 for c in code.components):
        raise UnsupportedFormat("PD codes need every component to carry a crossing")
    _require_realizable(code)
    if not code.components:
        return "PD[]"
    ids = _arc_ids(code)
    occ: dict[int, list[tuple[int, int]]] = {}
    order: list[int] = []
    for ci, pos, p in code.entries():
        if p.label not in occ:
            order.append(p.label)
        occ.setdefault(p.label, []).append((ci, pos))

    def in_arc(ci: int, pos: int) -> int:
        return ids[(ci, pos)]

    def out_arc(ci: int, pos: int) -> int:
        n = len(code.components[ci])
        return ids[(ci, (pos + 1) % n)]

    xs = []
    for lab in order:
        (c1, p1), (c2, p2) = occ[lab]
        e1, e2 = code.components[c1][p1], code.components[c2][p2]
        under = (c1, p1) if e1.strand == UNDER else (c2, p2)
        over = (c2, p2) if e1.strand == UNDER else (c1, p1)
        sign = e1.sign
        if sign == 1:
            quad = (in_arc(*under), out_arc(*over), out_arc(*under), in_arc(*over))
        else:
            quad = (in_arc(*under), in_arc(*over), out_arc(*under), out_arc(*over))
        xs.append("X(%d,%d,%d,%d)" % quad)
    return "PD[" + ", ".join(xs) + "]"


_X_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text: str) -> GaussCode:
    """Rebuild a Gauss code from PD text; inverse of pd_code up to
    canonicalization."""
    quads = [tuple(int(g) for g in m.groups()) for m in _X_RE.finditer(text)]
    if not quads:
        if re.search(r"PD\s*\[\s*\]", text):
            return GaussCode()
        raise UnsupportedFormat("no PD crossings found")
    arcs = sorted({x for q in quads for x in q})
    m = len(arcs)
    if arcs != list(range(1, m + 1)) or m != 2 * len(quads):
        raise UnsupportedFormat("PD arcs must be 1..2n, each used twice")

    def choices(q):
        a, b, c, d = q
        # over-in d (sign +) or over-in b (sign -); the +1-successor read is
        # the likely one but component wraps can fake it, so keep both.
        opts = [(d, b, 1), (b, d, -1)]
        if d == b + 1 and not b == d + 1:
            opts.reverse()
        return opts

    base_succ: dict[int, int] = {}
    used: set[int] = set()
    for a, b, c, d in quads:
        if a in base_succ or c in used:
            raise UnsupportedFormat("inconsistent under-strand arcs")
        base_succ[a] = c
        used.add(c)

    def decompose(succ: dict[int, int]):
        """Cycles of succ, or None unless each is a contiguous +1 block."""
        seen: set[int] = set()
        comps: list[list[int]] = []
        for start in range(1, m + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = succ[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = succ[x]
            lo, hi = min(cyc), max(cyc)
            if sorted(cyc) != list(range(lo, hi + 1)):
                return None
            if any(
                succ[y] != (y + 1 if y < hi else lo) for y in cyc
            ):
                return None
            comps.append(cyc)
        return comps

    option_lists = [choices(q) for q in quads]
    resolutions: list[tuple[tuple[tuple[int, int, int], ...], list[list[int]]]] = []

    def search(k: int, succ: dict[int, int], vals: set[int]):
        if k == len(quads):
            comps = decompose(succ)
            if comps is not None:
                resolutions.append((tuple(picked), comps))
            return
        for opt in option_lists[k]:
            oin, oout, sign = opt
            if oin in succ or oout in vals:
                continue
            succ[oin] = oout
            vals.add(oout)
            picked.append(opt)
            search(k + 1, succ, vals)
            picked.pop()
            del succ[oin]
            vals.discard(oout)

    picked: list[tuple[int, int, int]] = []
    search(0, dict(base_succ), set(used))
    if not resolutions:
        raise UnsupportedFormat("PD arc numbering is not component-sequential")

    def build(pick, comps) -> GaussCode:
        entry_at: dict[int, tuple[int, str, int]] = {}
        for k, (q, (oin, oout, sign)) in enumerate(zip(quads, pick)):
            a, b, c, d = q
            entry_at[a] = (k + 1, UNDER, sign)
            entry_at[oin] = (k + 1, OVER, sign)
        comps = sorted(comps, key=min)
        components = []
        for cyc in comps:
            lo = min(cyc)
            i = cyc.index(lo)
            ordered = cyc[i:] + cyc[:i]
            components.append([Passage(*entry_at[x]) for x in ordered])
        return GaussCode.from_components(components)

    # PD text does not record component orientations, so short components can
    # admit several readings; pick the canonically smallest one.
    from .codes import canonicalize, render

    codes = []
    for pick, comps in resolutions:
        try:
            codes.append(build(pick, comps))
        except Exception:
            continue
    if not codes:
        raise UnsupportedFormat("PD text encodes no valid code")
    return min(codes, key=lambda c: render(canonicalize(c)))
