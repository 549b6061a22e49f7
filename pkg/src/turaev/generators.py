"""Test-corpus generators: random plane curves (guaranteed realizable codes)
and unconstrained random codes.

The plane-curve route draws closed random polygons, intersects their
segments, and reads the crossings off into a signed code; it is the
independent source of realizable inputs used to calibrate and test the
rotation conventions.  ``TURAEV_SEED`` fixes the default seeding.
"""

from __future__ import annotations

import os
import random
from typing import Callable, Sequence

from .codes import OVER, UNDER, GaussCode, Passage

_EPS = 1e-9


def default_rng(salt: int = 0) -> random.Random:
    seed = int(os.environ.get("TURAEV_SEED", "20260801"))
    return random.Random(seed + salt)


def _seg_intersection(p1, p2, p3, p4):
    """Proper interior intersection parameters (t, u) or None."""
    x1, y1 = p1
    x2, y2 = p2
    x3, y3 = p3
    x4, y4 = p4
    d = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
    if abs(d) < _EPS:
        return None
    t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / d
    u = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / d
    if _EPS < t < 1 - _EPS and _EPS < u < 1 - _EPS:
        return t, u
    if -_EPS <= t <= 1 + _EPS and -_EPS <= u <= 1 + _EPS:
        raise _Degenerate()  # touches an endpoint: resample
    return None


class _Degenerate(Exception):
    pass


def _curve_segments(points: Sequence[tuple[float, float]]):
    m = len(points)
    return [(points[i], points[(i + 1) % m]) for i in range(m)]


def plane_curve_code(
    rng: random.Random,
    curve_sizes: Sequence[int],
    over_choice: Callable[[random.Random], bool] | None = None,
) -> GaussCode | None:
    """Signed Gauss code read off random closed polygons; None on a
    degenerate configuration (caller resamples).

    Crossing signs come from the actual plane geometry, so every returned
    code is realizable by construction.
    """
    curves = [
        [(rng.random(), rng.random()) for _ in range(m)] for m in curve_sizes
    ]
    segs = []  # (curve, seg index, p, q)
    for ci, pts in enumerate(curves):
        for si, (p, q) in enumerate(_curve_segments(pts)):
            segs.append((ci, si, p, q))
    hits = []  # (point, (curve, seg, t), (curve, seg, u))
    try:
        for i in range(len(segs)):
            ci, si, p1, p2 = segs[i]
            for j in range(i + 1, len(segs)):
                cj, sj, p3, p4 = segs[j]
                if ci == cj:
                    m = len(curves[ci])
                    if sj == (si + 1) % m or si == (sj + 1) % m:
                        continue  # consecutive segments share a vertex
                r = _seg_intersection(p1, p2, p3, p4)
                if r is None:
                    continue
                t, u = r
                pt = (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
                hits.append((pt, (ci, si, t), (cj, sj, u)))
    except _Degenerate:
        return None
    for a in range(len(hits)):
        for b in range(a + 1, len(hits)):
            (xa, ya), (xb, yb) = hits[a][0], hits[b][0]
            if abs(xa - xb) < 1e-6 and abs(ya - yb) < 1e-6:
                return None  # triple point risk
    # order passages along each curve
    passages: dict[int, list] = {ci: [] for ci in range(len(curves))}
    for hid, (pt, first, second) in enumerate(hits):
        for side, (ci, si, t) in enumerate((first, second)):
            passages[ci].append((si, t, hid, side))
    for ci in passages:
        passages[ci].sort()
    # assign labels in order of first appearance; decide over/under and sign
    label_of: dict[int, int] = {}
    over_side: dict[int, int] = {}
    sign_of: dict[int, int] = {}
    nxt = 1
    comps: list[list[Passage]] = [[] for _ in curves]
    for ci in range(len(curves)):
        for si, t, hid, side in passages[ci]:
            if hid not in label_of:
                label_of[hid] = nxt
                nxt += 1
                pick = over_choice(rng) if over_choice else rng.random() < 0.5
                over_side[hid] = side if pick else 1 - side
                d1, d2 = _hit_dirs(hits[hid], curves)
                over_d, under_d = (d1, d2) if over_side[hid] == 0 else (d2, d1)
                cross = over_d[0] * under_d[1] - over_d[1] * under_d[0]
                sign_of[hid] = 1 if cross > 0 else -1
            strand = OVER if side == over_side[hid] else UNDER
            comps[ci].append(Passage(label_of[hid], strand, sign_of[hid]))
    return GaussCode.from_components(comps)


def _hit_dirs(hit, curves):
    _, (ci, si, _), (cj, sj, _) = hit
    a1, b1 = curves[ci][si], curves[ci][(si + 1) % len(curves[ci])]
    a2, b2 = curves[cj][sj], curves[cj][(sj + 1) % len(curves[cj])]
    return (b1[0] - a1[0], b1[1] - a1[1]), (b2[0] - a2[0], b2[1] - a2[1])


def random_realizable_code(
    rng: random.Random,
    *,
    curves: int = 1,
    min_crossings: int = 1,
    max_crossings: int = 8,
    require_reduced: bool = False,
    require_connected: bool = True,
    alternating: bool = False,
    max_tries: int = 2000,
) -> GaussCode:
    """Sample a realizable code satisfying the given constraints."""
    from .codes import is_reduced, is_connected

    for _ in range(max_tries):
        sizes = [rng.randint(4, 9) for _ in range(curves)]
        code = plane_curve_code(rng, sizes)
        if code is None:
            continue
        c = code.size()
        if not (min_crossings <= c <= max_crossings):
            continue
        if any(len(comp) == 0 for comp in code.components):
            continue
        if require_connected and not is_connected(code):
            continue
        if require_reduced and not is_reduced(code):
            continue
        if alternating:
            code = make_alternating(code)
        return code
    raise RuntimeError("could not sample a plane-curve code; adjust constraints")


def make_alternating(code: GaussCode) -> GaussCode:
    """Switch crossings (swap both letters, flip sign) until letters alternate
    with position parity; preserves the underlying carrier embedding."""
    flip: dict[int, bool] = {}
    for ci, comp in enumerate(code.components):
        for pos, p in enumerate(comp):
            want = OVER if pos % 2 == 0 else UNDER
            if p.label not in flip:
                flip[p.label] = p.strand != want
    comps = tuple(
        tuple(
            Passage(
                p.label,
                (UNDER if p.strand == OVER else OVER) if flip[p.label] else p.strand,
                -p.sign if flip[p.label] else p.sign,
            )
            for p in comp
        )
        for comp in code.components
    )
    return GaussCode(comps, _recheck_generalized(comps))


def _recheck_generalized(comps) -> bool:
    strands: dict[int, list[str]] = {}
    for comp in comps:
        for p in comp:
            strands.setdefault(p.label, []).append(p.strand)
    return any(len(v) == 2 and v[0] == v[1] for v in strands.values())


def random_code(
    rng: random.Random,
    crossings: int,
    components: int = 1,
    generalized: bool = False,
) -> GaussCode:
    """Uniform-ish random valid code: random interleaving, letters, signs."""
    word = [lab for lab in range(1, crossings + 1) for _ in range(2)]
    rng.shuffle(word)
    letters: dict[int, list[str]] = {}
    for lab in range(1, crossings + 1):
        if generalized and rng.random() < 0.5:
            s = OVER if rng.random() < 0.5 else UNDER
            letters[lab] = [s, s]
        else:
            pair = [OVER, UNDER]
            rng.shuffle(pair)
            letters[lab] = pair
    signs = {lab: rng.choice((1, -1)) for lab in range(1, crossings + 1)}
    seen: dict[int, int] = {}
    entries = []
    for lab in word:
        k = seen.get(lab, 0)
        seen[lab] = k + 1
        entries.append(Passage(lab, letters[lab][k], signs[lab]))
    if components <= 1 or not entries:
        comps = [entries]
    else:
        cuts = sorted(rng.sample(range(1, len(entries)), min(components - 1, len(entries) - 1)))
        comps = []
        prev = 0
        for cut in cuts + [len(entries)]:
            comps.append(entries[prev:cut])
            prev = cut
    return GaussCode.from_components(comps)
