"""Build PD diagrams from closed polylines in 3-space.

Coordinates are exact rationals.  Each curve is a closed polyline of
``(x, y, z)`` points; it is projected to the xy-plane, and at every
transverse crossing the strand with larger interpolated ``z`` passes over.
Degenerate projections (vertex on another segment, overlapping segments,
equal heights at a crossing) raise ``GeometricPreconditionError``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .diagram import LinkDiagram, from_pd, normalize
from .errors import GeometricPreconditionError

Point = tuple  # (x, y, z) with Fraction/int entries


def _f(p):
    return tuple(Fraction(c) for c in p)


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def project(curves: Sequence[Sequence[Point]], names: dict[int, str] | None = None,
            over: Callable[[int, int, tuple], bool] | None = None) -> LinkDiagram:
    """Project to a PD diagram.

    ``over(i, k, (x, y))``, when given, decides whether curve ``i`` passes
    over curve ``k`` at a crossing, replacing the height comparison.
    """
    pts = [[_f(p) for p in c] for c in curves]
    segs = []  # (curve, index, p, q)
    for ci, c in enumerate(pts):
        if len(c) < 3:
            raise GeometricPreconditionError(f"curve {ci} needs at least 3 vertices")
        for j in range(len(c)):
            segs.append((ci, j, c[j], c[(j + 1) % len(c)]))
    boxes = [(min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))
             for _, _, p, q in segs]
    events: dict[int, list] = {ci: [] for ci in range(len(pts))}
    crossings = []
    for i in range(len(segs)):
        ci, ji, p, q = segs[i]
        bi = boxes[i]
        for k in range(i + 1, len(segs)):
            ck, jk, r, s = segs[k]
            if ck == ci and (jk == ji + 1 or (ji == 0 and jk == len(pts[ci]) - 1)):
                continue
            bk = boxes[k]
            if bi[1] < bk[0] or bk[1] < bi[0] or bi[3] < bk[2] or bk[3] < bi[2]:
                continue
            dx1, dy1 = q[0] - p[0], q[1] - p[1]
            dx2, dy2 = s[0] - r[0], s[1] - r[1]
            den = _cross(dx1, dy1, dx2, dy2)
            wx, wy = r[0] - p[0], r[1] - p[1]
            if den == 0:
                if _cross(wx, wy, dx1, dy1) == 0:
                    raise GeometricPreconditionError(f"collinear segments near {tuple(map(float, p[:2]))}")
                continue
            t = _cross(wx, wy, dx2, dy2) / den
            u = _cross(wx, wy, dx1, dy1) / den
            if t < 0 or t > 1 or u < 0 or u > 1:
                continue
            if t in (0, 1) or u in (0, 1):
                raise GeometricPreconditionError(
                    f"crossing at a vertex near {(float(p[0] + t * dx1), float(p[1] + t * dy1))}")
            if over is not None:
                x = len(crossings)
                pt = (p[0] + t * dx1, p[1] + t * dy1)
                crossings.append(((ci, (dx1, dy1)), (ck, (dx2, dy2)), bool(over(ci, ck, pt))))
                events[ci].append((ji + t, x, 0))
                events[ck].append((jk + u, x, 1))
                continue
            za = p[2] + t * (q[2] - p[2])
            zb = r[2] + u * (s[2] - r[2])
            if za == zb:
                raise GeometricPreconditionError(
                    f"equal heights at crossing near {(float(p[0] + t * dx1), float(p[1] + t * dy1))}")
            x = len(crossings)
            crossings.append(((ci, (dx1, dy1)), (ck, (dx2, dy2)), za > zb))
            events[ci].append((ji + t, x, 0))
            events[ck].append((jk + u, x, 1))
    # edges: along each curve, edge k runs from event k to event k+1
    label = 0
    ends: dict[tuple[int, int], list] = {}  # (crossing, strand) -> [in_edge, out_edge]
    comps: dict[int, list[int]] = {}
    free = []
    cid = 0
    for ci in range(len(pts)):
        ev = sorted(events[ci])
        cid += 1
        if not ev:
            free.append(cid)
            continue
        first = label + 1
        edges = []
        for idx, (_, x, strand) in enumerate(ev):
            out_e = first + idx
            in_e = first + (idx - 1) % len(ev)
            ends[(x, strand)] = [in_e, out_e]
            edges.append(out_e)
        label += len(ev)
        comps[cid] = edges
    tuples, signs = [], []
    for x, ((_, da), (_, db), a_over) in enumerate(crossings):
        if a_over:
            do, du, so, su = da, db, 0, 1
        else:
            do, du, so, su = db, da, 1, 0
        oi, oo = ends[(x, so)]
        ui, uo = ends[(x, su)]
        sign = 1 if _cross(do[0], do[1], du[0], du[1]) > 0 else -1
        tuples.append((ui, oo, uo, oi) if sign > 0 else (ui, oi, uo, oo))
        signs.append(sign)
    for c in free:
        comps[c] = []
    return normalize(from_pd(tuples, 0, comps, names, signs), renumber_components=True)
