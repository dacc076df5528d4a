"""Reidemeister moves as site-addressed rewrites.

Sites are expressed in edge labels so that a move sequence recorded on a
canonical labeling replays on any diagram with the same canonical code.

Site formats:

* ``R1-``: ``[loop_edge]``
* ``R1+``: ``[edge, sign, under_first]``
* ``R2-``: ``[over_edge, under_edge]`` (the two sides of a bigon face)
* ``R2+``: ``[e, side_e, f, side_f, e_over]``; ``side`` 0 picks the face
  left of the edge's oriented direction, 1 the face on its right
* ``R3``:  ``[edge, side]`` naming one dart of a triangular face
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .diagram import (
    Crossing,
    LinkDiagram,
    _excise,
    crossing_from_ccw,
    faces,
    normalize,
)
from .errors import RewriteError

KINDS = ("R1-", "R2-", "R3", "R1+", "R2+")


@dataclass(frozen=True)
class Move:
    kind: str
    site: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "site": list(self.site)}

    @classmethod
    def from_json(cls, data) -> "Move":
        if data["kind"] not in KINDS:
            raise RewriteError(f"unknown move kind {data['kind']!r}")
        return cls(data["kind"], tuple(int(x) for x in data["site"]))


# -- helpers -----------------------------------------------------------------

def _dart(d: LinkDiagram, e: int, side: int) -> tuple[int, int]:
    if e not in d.occurrences:
        raise RewriteError(f"edge {e} not present")
    return d.tail[e] if side == 0 else d.head[e]


def _face_index(d: LinkDiagram):
    fcs = faces(d)
    where = {}
    for i, f in enumerate(fcs):
        for _, c, k in f:
            where[(c, k)] = i
    return fcs, where


def _with_free_loops(d: LinkDiagram, kept: list[Crossing], closed: list[int]) -> LinkDiagram:
    comp_of = {e: d.component_of[e] for c in kept for e in c.slots}
    loops = list(d.free_loops) + [d.component_of[r] for r in closed]
    return normalize(LinkDiagram(tuple(kept), comp_of, tuple(sorted(loops)), d.names))


class _Fresh:
    def __init__(self, d: LinkDiagram):
        self.n = max(d.occurrences, default=0)

    def __call__(self) -> int:
        self.n += 1
        return self.n


# -- site discovery ---------------------------------------------------------

def _r1_minus_sites(d: LinkDiagram):
    out = []
    for e, occ in d.occurrences.items():
        (c1, k1), (c2, k2) = occ
        if c1 == c2 and (k1 - k2) % 4 in (1, 3):
            out.append((e,))
    return sorted(out)


def _r2_minus_sites(d: LinkDiagram, fcs=None):
    out = set()
    for f in fcs if fcs is not None else faces(d):
        if len(f) != 2:
            continue
        (e1, c1, k1), (e2, c2, k2) = f
        if c1 == c2 or e1 == e2:
            continue
        o1, o2 = d.occurrences[e1], d.occurrences[e2]
        over1 = all(k % 2 == 1 for _, k in o1)
        under1 = all(k % 2 == 0 for _, k in o1)
        over2 = all(k % 2 == 1 for _, k in o2)
        under2 = all(k % 2 == 0 for _, k in o2)
        if over1 and under2:
            out.add((e1, e2))
        elif over2 and under1:
            out.add((e2, e1))
    return sorted(out)


def _triangle(d: LinkDiagram, face):
    """Return darts (t1, t2, t3) if ``face`` is an R3-admissible triangle."""
    if len(face) != 3:
        return None
    cs = {c for _, c, _ in face}
    es = {e for e, _, _ in face}
    if len(cs) != 3 or len(es) != 3:
        return None
    # a line is over at both its triangle vertices iff its inner edge is over at both ends
    for e, _, _ in face:
        if all(k % 2 == 1 for _, k in d.occurrences[e]):
            return face
    return None


def _r3_sites(d: LinkDiagram, fcs=None):
    out = []
    for f in fcs if fcs is not None else faces(d):
        if _triangle(d, f) is None:
            continue
        e, c, k = min(f)
        side = 0 if not d.crossings[c].is_incoming(k) else 1
        out.append((e, side))
    return sorted(out)


def _r1_plus_sites(d: LinkDiagram):
    return [(e, s, u) for e in d.edges for s in (1, -1) for u in (1, 0)]


def _r2_plus_sites(d: LinkDiagram, fcs=None):
    out = []
    for f in fcs if fcs is not None else faces(d):
        darts = []
        for e, c, k in f:
            side = 0 if not d.crossings[c].is_incoming(k) else 1
            darts.append((e, side))
        for a in darts:
            for b in darts:
                if a[0] == b[0]:
                    continue
                for over in (1, 0):
                    out.append((a[0], a[1], b[0], b[1], over))
    return sorted(set(out))


def enumerate_moves(d: LinkDiagram, kinds: Iterable[str] = KINDS) -> list[Move]:
    kinds = tuple(kinds)
    fcs = faces(d) if any(k in kinds for k in ("R2-", "R3", "R2+")) else None
    out: list[Move] = []
    for kind in kinds:
        if kind == "R1-":
            sites = _r1_minus_sites(d)
        elif kind == "R2-":
            sites = _r2_minus_sites(d, fcs)
        elif kind == "R3":
            sites = _r3_sites(d, fcs)
        elif kind == "R1+":
            sites = _r1_plus_sites(d)
        elif kind == "R2+":
            sites = _r2_plus_sites(d, fcs)
        else:
            raise RewriteError(f"unknown move kind {kind!r}")
        out.extend(Move(kind, s) for s in sites)
    return out


# -- rewrites ----------------------------------------------------------------

def _apply_r1_minus(d, site):
    (e,) = site
    occ = d.occurrences.get(e)
    if not occ:
        raise RewriteError(f"edge {e} not present")
    (c1, k1), (c2, k2) = occ
    if c1 != c2 or (k1 - k2) % 4 not in (1, 3):
        raise RewriteError(f"edge {e} is not a monogon")
    kept, closed, _ = _excise(d, [c1])
    return _with_free_loops(d, kept, closed)


def _apply_r2_minus(d, site):
    eo, eu = site
    if (eo, eu) not in _r2_minus_sites(d):
        raise RewriteError(f"no removable bigon at {site}")
    cs = {c for c, _ in d.occurrences[eo]}
    kept, closed, _ = _excise(d, cs)
    return _with_free_loops(d, kept, closed)


def _apply_r1_plus(d, site):
    e, sign, under_first = site
    if e not in d.occurrences or sign not in (1, -1) or under_first not in (0, 1):
        raise RewriteError(f"bad R1+ site {site}")
    fresh = _Fresh(d)
    a, l, b = e, fresh(), fresh()
    if under_first:
        slots = (a, b, l, l) if sign > 0 else (a, l, l, b)
    else:
        slots = (l, l, b, a) if sign > 0 else (l, a, b, l)
    hc, hk = d.head[e]
    crossings = list(d.crossings)
    sl = list(crossings[hc].slots)
    sl[hk] = b
    crossings[hc] = Crossing(tuple(sl), crossings[hc].sign)
    crossings.append(Crossing(slots, sign))
    comp_of = dict(d.component_of)
    comp_of[l] = comp_of[b] = d.component_of[e]
    return normalize(LinkDiagram(tuple(crossings), comp_of, d.free_loops, d.names))


def _apply_r2_plus(d, site):
    e, side_e, f, side_f, e_over = site
    if e == f or side_e not in (0, 1) or side_f not in (0, 1) or e_over not in (0, 1):
        raise RewriteError(f"bad R2+ site {site}")
    se = _dart(d, e, side_e)
    sf = _dart(d, f, side_f)
    _, where = _face_index(d)
    if where[se] != where[sf]:
        raise RewriteError(f"edges {e} and {f} do not share that face")
    ae = d.other_end(*se)
    af = d.other_end(*sf)
    fwd_e = side_e == 0
    fwd_f = side_f == 0
    fresh = _Fresh(d)
    e_mid, e_far = fresh(), fresh()
    f_mid, f_far = fresh(), fresh()
    # e's dart runs right-to-left along the top; f's dart left-to-right along the bottom
    eR, eL = (e, e_far) if fwd_e else (e_far, e)
    fL, fR = (f, f_far) if fwd_f else (f_far, f)
    over_pair = 1 if e_over else 0
    xr = crossing_from_ccw([(fR, not fwd_f), (eR, fwd_e), (f_mid, fwd_f), (e_mid, not fwd_e)],
                           over_pair)
    xl = crossing_from_ccw([(f_mid, not fwd_f), (eL, not fwd_e), (fL, fwd_f), (e_mid, fwd_e)],
                           over_pair)
    crossings = [list(c.slots) for c in d.crossings]
    crossings[se[0]][se[1]] = eR
    crossings[ae[0]][ae[1]] = eL
    crossings[sf[0]][sf[1]] = fL
    crossings[af[0]][af[1]] = fR
    new = [Crossing(tuple(s), c.sign) for s, c in zip(crossings, d.crossings)] + [xr, xl]
    comp_of = dict(d.component_of)
    for x in (e_mid, e_far):
        comp_of[x] = d.component_of[e]
    for x in (f_mid, f_far):
        comp_of[x] = d.component_of[f]
    return normalize(LinkDiagram(tuple(new), comp_of, d.free_loops, d.names))


def _apply_r3(d, site):
    e, side = site
    start = _dart(d, e, side)
    fcs, where = _face_index(d)
    face = fcs[where[start]]
    if _triangle(d, face) is None:
        raise RewriteError(f"no R3 triangle at {site}")
    i = next(j for j, (_, c, k) in enumerate(face) if (c, k) == start)
    t1, t2, t3 = face[i:] + face[:i]
    cr = d.crossings
    (m1, p1, k1), (m2, p2, k2), (m3, p3, k3) = t1, t2, t3
    a1 = d.other_end(p1, k1)   # t1 arrives at P2
    a2 = d.other_end(p2, k2)   # t2 arrives at P3
    a3 = d.other_end(p3, k3)   # t3 arrives at P1
    o1W = cr[p1].slots[(k1 + 2) % 4]
    o1E = cr[p2].slots[(a1[1] + 2) % 4]
    o2SE = cr[p2].slots[(k2 + 2) % 4]
    o2NW = cr[p3].slots[(a2[1] + 2) % 4]
    o3NE = cr[p3].slots[(k3 + 2) % 4]
    o3SW = cr[p1].slots[(a3[1] + 2) % 4]
    s1 = not cr[p1].is_incoming(k1)
    s2 = not cr[p2].is_incoming(k2)
    s3 = not cr[p3].is_incoming(k3)
    l1_over_p2 = a1[1] % 2 == 1
    l1_over_p1 = k1 % 2 == 1
    l3_over_p3 = k3 % 2 == 1
    r12 = crossing_from_ccw([(m1, not s1), (o2NW, not s2), (o1W, s1), (m2, s2)],
                            0 if l1_over_p2 else 1)
    r13 = crossing_from_ccw([(o1E, not s1), (o3NE, s3), (m1, s1), (m3, not s3)],
                            0 if l1_over_p1 else 1)
    p3n = crossing_from_ccw([(m3, s3), (m2, not s2), (o3SW, not s3), (o2SE, s2)],
                            0 if l3_over_p3 else 1)
    kept = [c for j, c in enumerate(cr) if j not in (p1, p2, p3)]
    return normalize(LinkDiagram(tuple(kept + [r12, r13, p3n]), dict(d.component_of),
                                 d.free_loops, d.names))


_APPLY = {
    "R1-": _apply_r1_minus,
    "R1+": _apply_r1_plus,
    "R2-": _apply_r2_minus,
    "R2+": _apply_r2_plus,
    "R3": _apply_r3,
}


def apply_move(d: LinkDiagram, m: Move) -> LinkDiagram:
    fn = _APPLY.get(m.kind)
    if fn is None:
        raise RewriteError(f"unknown move kind {m.kind!r}")
    try:
        return fn(d, tuple(m.site))
    except (KeyError, ValueError, IndexError) as exc:
        if isinstance(exc, RewriteError):
            raise
        raise RewriteError(f"{m.kind} at {list(m.site)}: {exc}") from None
