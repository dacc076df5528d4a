"""Oriented planar-diagram (PD) link model and its structural operations.

Slot convention: a crossing lists its four incident edges counterclockwise,
starting at the incoming under-edge.  The under-strand runs s0 -> s2.  The
crossing is positive iff the over-strand runs s3 -> s1.  Edges carry a
component id; crossingless components are kept as ``free_loops`` (a tuple
of component ids) and own no edges.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DiagramValidationError,
    GeometricPreconditionError,
    PDParseError,
)


@dataclass(frozen=True)
class Crossing:
    slots: tuple[int, int, int, int]
    sign: int

    @property
    def over_in(self) -> int:
        return 3 if self.sign > 0 else 1

    @property
    def over_out(self) -> int:
        return 1 if self.sign > 0 else 3

    def is_incoming(self, k: int) -> bool:
        return k == 0 or k == self.over_in

    def is_over(self, k: int) -> bool:
        return k % 2 == 1

    def switched(self) -> "Crossing":
        """Exchange over and under; slot order shifts by one, sign negates."""
        a, b, c, d = self.slots
        if self.sign > 0:
            return Crossing((d, a, b, c), -1)
        return Crossing((b, c, d, a), 1)

    def relabeled(self, m: Mapping[int, int]) -> "Crossing":
        return Crossing(tuple(m[e] for e in self.slots), self.sign)


def crossing_from_ccw(ends: Sequence[tuple[int, bool]], over_pair: int) -> Crossing:
    """Build a crossing from four (edge, incoming) ends in counterclockwise order.

    ``over_pair`` selects which opposite pair carries the over-strand: 0 for
    positions (0, 2), 1 for positions (1, 3).
    """
    under = (1, 3) if over_pair == 0 else (0, 2)
    over = (0, 2) if over_pair == 0 else (1, 3)
    if ends[under[0]][1] == ends[under[1]][1] or ends[over[0]][1] == ends[over[1]][1]:
        raise GeometricPreconditionError("each strand needs one incoming and one outgoing end")
    p = under[0] if ends[under[0]][1] else under[1]
    rot = [ends[(p + i) % 4] for i in range(4)]
    sign = 1 if rot[3][1] else -1
    return Crossing(tuple(e for e, _ in rot), sign)


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    component_of: Mapping[int, int]
    free_loops: tuple[int, ...] = ()
    names: Mapping[int, str] | None = field(default=None)

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (self.crossings == other.crossings
                and dict(self.component_of) == dict(other.component_of)
                and tuple(sorted(self.free_loops)) == tuple(sorted(other.free_loops)))

    __hash__ = None

    # -- derived structure -------------------------------------------------
    @cached_property
    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for ci, c in enumerate(self.crossings):
            for k, e in enumerate(c.slots):
                occ[e].append((ci, k))
        return dict(occ)

    @cached_property
    def head(self) -> dict[int, tuple[int, int]]:
        h = {}
        for ci, c in enumerate(self.crossings):
            for k, e in enumerate(c.slots):
                if c.is_incoming(k):
                    h[e] = (ci, k)
        return h

    @cached_property
    def tail(self) -> dict[int, tuple[int, int]]:
        t = {}
        for ci, c in enumerate(self.crossings):
            for k, e in enumerate(c.slots):
                if not c.is_incoming(k):
                    t[e] = (ci, k)
        return t

    @cached_property
    def edges(self) -> list[int]:
        return sorted(self.occurrences)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def component_ids(self) -> list[int]:
        return sorted(set(self.component_of.values()) | set(self.free_loops))

    @property
    def n_components(self) -> int:
        return len(self.component_ids)

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def next_edge(self, e: int) -> int:
        ci, k = self.head[e]
        return self.crossings[ci].slots[(k + 2) % 4]

    def other_end(self, ci: int, k: int) -> tuple[int, int]:
        e = self.crossings[ci].slots[k]
        a, b = self.occurrences[e]
        return b if a == (ci, k) else a

    def strand_component(self, ci: int, k: int) -> int:
        return self.component_of[self.crossings[ci].slots[k]]

    def __repr__(self):
        return (f"LinkDiagram({len(self.crossings)} crossings, "
                f"{self.n_components} components, {len(self.free_loops)} free loops)")


# -- construction --------------------------------------------------------

def unlink(n: int) -> LinkDiagram:
    return LinkDiagram((), {}, tuple(range(1, n + 1)))


def edge_cycles(d: LinkDiagram) -> list[list[int]]:
    """Directed edge cycles, each starting at its smallest edge, ordered by that edge."""
    seen: set[int] = set()
    cycles = []
    for e in d.edges:
        if e in seen:
            continue
        cyc = []
        x = e
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = d.next_edge(x)
        cycles.append(cyc)
    return cycles


def _infer_signs(tuples: Sequence[Sequence[int]],
                 orders: Sequence[Sequence[int]] | None) -> list[int]:
    """Recover crossing signs for raw PD tuples.

    With explicit component edge orders the over-strand direction is read
    off directly.  Otherwise direction is propagated from under-strands
    (s0 in, s2 out); strands that only ever pass over fall back to the
    consecutive-label convention.
    """
    n = len(tuples)
    occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for ci, t in enumerate(tuples):
        for k, e in enumerate(t):
            occ[e].append((ci, k))
    for e, o in occ.items():
        if len(o) != 2:
            raise PDParseError(f"edge {e} occurs {len(o)} times")
    signs: list[int | None] = [None] * n
    if orders:
        succ = {}
        for order in orders:
            for i, e in enumerate(order):
                succ[e] = order[(i + 1) % len(order)]
        for ci, (a, b, c, dd) in enumerate(tuples):
            if b not in succ or dd not in succ:
                continue
            if succ.get(dd) == b and succ.get(b) != dd:
                signs[ci] = 1
            elif succ.get(b) == dd and succ.get(dd) != b:
                signs[ci] = -1
            elif len({b, dd}) == 1:
                signs[ci] = 1
        if all(s is not None for s in signs):
            return signs  # type: ignore[return-value]

    # incoming[(ci,k)] = True/False once known
    incoming: dict[tuple[int, int], bool] = {}
    for ci in range(n):
        incoming[(ci, 0)] = True
        incoming[(ci, 2)] = False
    for ci, s in enumerate(signs):
        if s is not None:
            incoming[(ci, 3 if s > 0 else 1)] = True
            incoming[(ci, 1 if s > 0 else 3)] = False

    def propagate():
        changed = True
        while changed:
            changed = False
            for (ci, k), inc in list(incoming.items()):
                e = tuples[ci][k]
                a, b = occ[e]
                other = b if a == (ci, k) else a
                if other not in incoming:
                    incoming[other] = not inc
                    changed = True
                oc, ok = other
                opp = (oc, (ok + 2) % 4)
                if opp not in incoming:
                    incoming[opp] = not incoming[other]
                    changed = True

    propagate()
    for ci in range(n):
        if (ci, 1) not in incoming and (ci, 3) not in incoming:
            b, dd = tuples[ci][1], tuples[ci][3]
            d_to_b = (b - dd == 1) or (dd - b > 1)
            incoming[(ci, 3)] = d_to_b
            incoming[(ci, 1)] = not d_to_b
            propagate()
    out = []
    for ci in range(n):
        if incoming.get((ci, 1)) == incoming.get((ci, 3)):
            raise PDParseError(f"inconsistent orientation at crossing {ci}")
        out.append(1 if incoming[(ci, 3)] else -1)
    return out


def from_pd(tuples: Sequence[Sequence[int]], free_loops: int = 0,
            components: Mapping[int, Sequence[int]] | None = None,
            names: Mapping[int, str] | None = None,
            signs: Sequence[int] | None = None) -> LinkDiagram:
    """Build a normalized diagram from raw PD tuples.

    ``components`` optionally maps component id -> edges in traversal order;
    an empty edge list declares a free loop with that id.
    """
    tuples = [tuple(int(x) for x in t) for t in tuples]
    for t in tuples:
        if len(t) != 4:
            raise PDParseError(f"crossing {t} does not have four slots")
    orders = [list(v) for v in components.values() if v] if components else None
    if signs is None:
        signs = _infer_signs(tuples, orders)
    crossings = tuple(Crossing(t, s) for t, s in zip(tuples, signs))
    provisional = LinkDiagram(crossings, {e: 0 for t in tuples for e in t}, ())
    comp_of: dict[int, int] = {}
    loops: list[int] = []
    if components:
        for cid, es in components.items():
            if not es:
                loops.append(int(cid))
            for e in es:
                comp_of[int(e)] = int(cid)
        declared = len(loops)
        if declared < free_loops:
            nxt = max(list(comp_of.values()) + loops + [0]) + 1
            loops.extend(range(nxt, nxt + free_loops - declared))
        try:
            cycles = edge_cycles(LinkDiagram(crossings, comp_of or provisional.component_of, ()))
        except KeyError as exc:
            raise PDParseError(f"orientation inconsistent: {exc}") from None
        for cyc in cycles:
            if any(e not in comp_of for e in cyc):
                cid = max(list(comp_of.values()) + loops + [0]) + 1
                for e in cyc:
                    comp_of.setdefault(e, cid)
        d = LinkDiagram(crossings, comp_of, tuple(loops), names)
        return normalize(d, renumber_components=False)
    try:
        cycles = edge_cycles(provisional)
    except KeyError as exc:
        raise PDParseError(f"orientation inconsistent: {exc}") from None
    for i, cyc in enumerate(cycles, start=1):
        for e in cyc:
            comp_of[e] = i
    n = len(cycles)
    loops = list(range(n + 1, n + 1 + free_loops))
    d = LinkDiagram(crossings, comp_of, tuple(loops), names)
    return normalize(d, renumber_components=True)


def normalize(d: LinkDiagram, renumber_components: bool = False) -> LinkDiagram:
    """Relabel edges densely (order preserving) and sort crossings.

    With ``renumber_components`` components are renumbered by their minimal
    edge, free loops last.
    """
    emap = {e: i for i, e in enumerate(sorted(d.occurrences), start=1)}
    crossings = tuple(sorted((c.relabeled(emap) for c in d.crossings),
                             key=lambda c: (c.slots, c.sign)))
    comp_of = {emap[e]: d.component_of[e] for e in d.occurrences}
    loops = tuple(d.free_loops)
    names = dict(d.names) if d.names else None
    if renumber_components:
        first: dict[int, int] = {}
        for e in sorted(comp_of):
            first.setdefault(comp_of[e], e)
        order = sorted(first, key=first.get)
        order += [c for c in loops if c not in first]
        cmap = {c: i for i, c in enumerate(order, start=1)}
        comp_of = {e: cmap[c] for e, c in comp_of.items()}
        loops = tuple(cmap[c] for c in loops)
        if names:
            names = {cmap[c]: v for c, v in names.items() if c in cmap}
    return LinkDiagram(crossings, comp_of, tuple(sorted(loops)), names)


def relabel(d: LinkDiagram, edge_map: Mapping[int, int],
            comp_map: Mapping[int, int] | None = None,
            shuffle_crossings: random.Random | None = None) -> LinkDiagram:
    """Apply an explicit relabeling of edges (and optionally components)."""
    cm = comp_map or {c: c for c in d.component_ids}
    crossings = [c.relabeled(edge_map) for c in d.crossings]
    if shuffle_crossings is not None:
        shuffle_crossings.shuffle(crossings)
    comp_of = {edge_map[e]: cm[c] for e, c in d.component_of.items()}
    names = {cm[c]: v for c, v in d.names.items()} if d.names else None
    return LinkDiagram(tuple(crossings), comp_of, tuple(sorted(cm[c] for c in d.free_loops)), names)


def random_relabel(d: LinkDiagram, rng: random.Random) -> LinkDiagram:
    edges = list(d.occurrences)
    targets = rng.sample(range(1, 10 * len(edges) + 10), len(edges))
    comps = d.component_ids
    perm = comps[:]
    rng.shuffle(perm)
    return relabel(d, dict(zip(edges, targets)), dict(zip(comps, perm)), rng)


# -- validation ------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    violations: list[tuple[str, str]]
    stats: dict[str, int]


def _pieces(d: LinkDiagram) -> list[list[int]]:
    """Connected pieces of the 4-valent graph, as lists of crossing indices."""
    parent = list(range(len(d.crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, occ in d.occurrences.items():
        if len(occ) == 2:
            a, b = find(occ[0][0]), find(occ[1][0])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(len(d.crossings)):
        groups[find(i)].append(i)
    return sorted(groups.values())


def validate(d: LinkDiagram) -> ValidationReport:
    v: list[tuple[str, str]] = []
    for ci, c in enumerate(d.crossings):
        if c.sign not in (1, -1):
            v.append(("sign", f"crossing {ci}"))
        if len(c.slots) != 4:
            v.append(("arity", f"crossing {ci}"))
    for e, occ in sorted(d.occurrences.items()):
        if not isinstance(e, int) or e <= 0:
            v.append(("edge-id", f"edge {e}"))
        if len(occ) != 2:
            v.append(("edge-degree", f"edge {e} x{len(occ)}"))
    if v:
        return ValidationReport(False, v, {})
    for e, occ in d.occurrences.items():
        inc = [d.crossings[ci].is_incoming(k) for ci, k in occ]
        if sum(inc) != 1:
            v.append(("orientation", f"edge {e}"))
    for e in d.occurrences:
        if e not in d.component_of:
            v.append(("component-map", f"edge {e} unassigned"))
    for e in d.component_of:
        if e not in d.occurrences:
            v.append(("component-map", f"edge {e} absent"))
    if v:
        return ValidationReport(False, v, {})
    cyc_comp: dict[int, int] = {}
    for cyc in edge_cycles(d):
        comps = {d.component_of[e] for e in cyc}
        if len(comps) != 1:
            v.append(("component-cycle", f"cycle at edge {cyc[0]} spans {sorted(comps)}"))
            continue
        c = comps.pop()
        if c in cyc_comp:
            v.append(("component-cycle", f"component {c} has several cycles"))
        cyc_comp[c] = cyc[0]
    if len(set(d.free_loops)) != len(d.free_loops):
        v.append(("free-loop", "duplicate free-loop id"))
    for c in d.free_loops:
        if c in cyc_comp:
            v.append(("free-loop", f"component {c} has edges"))
    ids = d.component_ids
    if ids != list(range(1, len(ids) + 1)):
        v.append(("component-ids", f"ids {ids} not dense"))
    nfaces = 0
    if not v:
        fcs = faces(d)
        nfaces = len(fcs)
        face_piece: dict[int, int] = defaultdict(int)
        pieces = _pieces(d)
        where = {ci: i for i, p in enumerate(pieces) for ci in p}
        for f in fcs:
            face_piece[where[f[0][1]]] += 1
        for i, p in enumerate(pieces):
            V = len(p)
            E = 2 * V
            if V - E + face_piece[i] != 2:
                v.append(("sphericity", f"piece {i}: V-E+F={V - E + face_piece[i]}"))
    stats = {}
    if not v:
        stats = {"crossings": len(d.crossings), "components": d.n_components,
                 "writhe": d.writhe, "faces": nfaces}
    return ValidationReport(not v, v, stats)


def require_valid(d: LinkDiagram) -> None:
    rep = validate(d)
    if not rep.ok:
        raise DiagramValidationError(rep)


# -- components and sublinks ---------------------------------------------

def components(d: LinkDiagram) -> dict[int, tuple[int, ...]]:
    """Map component id -> its edge cycle (empty for free loops)."""
    require_valid(d)
    out: dict[int, tuple[int, ...]] = {}
    for cyc in edge_cycles(d):
        out[d.component_of[cyc[0]]] = tuple(cyc)
    for c in d.free_loops:
        out[c] = ()
    return dict(sorted(out.items()))


def _excise(d: LinkDiagram, remove: Iterable[int]):
    """Delete crossings, splicing each strand straight through.

    Returns (kept crossings with merged labels, closed classes) where a
    closed class is the representative edge of a loop that lost all its
    crossings.
    """
    remove = set(remove)
    parent: dict[int, int] = {e: e for e in d.occurrences}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    for ci in remove:
        s = d.crossings[ci].slots
        union(s[0], s[2])
        union(s[1], s[3])
    kept = []
    present = set()
    for ci, c in enumerate(d.crossings):
        if ci in remove:
            continue
        nc = Crossing(tuple(find(e) for e in c.slots), c.sign)
        kept.append(nc)
        present.update(nc.slots)
    closed = sorted({find(e) for e in d.occurrences} - present)
    return kept, closed, find


def sublink(d: LinkDiagram, keep: Iterable[int]) -> LinkDiagram:
    keep = set(keep)
    if not keep:
        raise ValueError("keep must be nonempty")
    unknown = keep - set(d.component_ids)
    if unknown:
        raise ValueError(f"unknown component ids {sorted(unknown)}")
    require_valid(d)
    remove = [ci for ci, c in enumerate(d.crossings)
              if any(d.component_of[e] not in keep for e in c.slots)]
    kept, closed, find = _excise(d, remove)
    comp_of = {}
    for c in kept:
        for e in c.slots:
            comp_of[e] = d.component_of[e]
    loops = [c for c in d.free_loops if c in keep]
    for rep in closed:
        cid = d.component_of[rep]
        if cid in keep:
            loops.append(cid)
    cmap = {c: i for i, c in enumerate(sorted(keep), start=1)}
    comp_of = {e: cmap[c] for e, c in comp_of.items()}
    names = {cmap[c]: v for c, v in d.names.items() if c in cmap} if d.names else None
    out = LinkDiagram(tuple(kept), comp_of, tuple(sorted(cmap[c] for c in loops)), names)
    return normalize(out)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    require_valid(d1)
    require_valid(d2)
    eoff = max(d1.edges, default=0)
    coff = d1.n_components
    cr = list(d1.crossings) + [Crossing(tuple(e + eoff for e in c.slots), c.sign)
                               for c in d2.crossings]
    comp_of = dict(d1.component_of)
    comp_of.update({e + eoff: c + coff for e, c in d2.component_of.items()})
    loops = tuple(d1.free_loops) + tuple(c + coff for c in d2.free_loops)
    names = None
    if d1.names or d2.names:
        names = dict(d1.names or {})
        names.update({c + coff: v for c, v in (d2.names or {}).items()})
    return normalize(LinkDiagram(tuple(cr), comp_of, loops, names))


def mirror(d: LinkDiagram) -> LinkDiagram:
    return LinkDiagram(tuple(c.switched() for c in d.crossings), dict(d.component_of),
                       d.free_loops, d.names)


# -- faces -----------------------------------------------------------------

def faces(d: LinkDiagram) -> list[tuple[tuple[int, int, int], ...]]:
    """Faces of the rotation system.

    Each face is a cyclic tuple of darts ``(edge, crossing, slot)``: the dart
    leaves ``crossing`` through ``slot`` along ``edge``; the face lies to the
    left of every dart.
    """
    seen: set[tuple[int, int]] = set()
    out = []
    for ci in range(len(d.crossings)):
        for k in range(4):
            if (ci, k) in seen:
                continue
            face = []
            cur = (ci, k)
            while cur not in seen:
                seen.add(cur)
                c, s = cur
                e = d.crossings[c].slots[s]
                face.append((e, c, s))
                oc, ok = d.other_end(c, s)
                cur = (oc, (ok - 1) % 4)
            out.append(tuple(face))
    return out


def dart_follows_orientation(d: LinkDiagram, ci: int, k: int) -> bool:
    return not d.crossings[ci].is_incoming(k)


# -- canonical form --------------------------------------------------------

def _piece_code(d: LinkDiagram, piece: list[int], nxt: dict[int, int]):
    piece_set = set(piece)
    edges = sorted({e for ci in piece for e in d.crossings[ci].slots})
    cyc_len: dict[int, int] = {}
    for e in edges:
        if e in cyc_len:
            continue
        cyc = [e]
        x = nxt[e]
        while x != e:
            cyc.append(x)
            x = nxt[x]
        for x in cyc:
            cyc_len[x] = len(cyc)

    def descriptor(e):
        hc, hk = d.head[e]
        tc, tk = d.tail[e]
        return (cyc_len[e], hk, d.crossings[hc].sign, tk, d.crossings[tc].sign)

    descs = {e: descriptor(e) for e in edges}
    best_desc = min(descs.values())
    best = None
    best_labels = None
    for start in edges:
        if descs[start] != best_desc:
            continue
        label: dict[int, int] = {}
        order: list[int] = []
        sizes: list[int] = []

        def walk(e0):
            x = e0
            cnt = 0
            while True:
                label[x] = len(order) + 1
                order.append(x)
                cnt += 1
                x = nxt[x]
                if x == e0:
                    break
            sizes.append(cnt)

        walk(start)
        i = 0
        while i < len(order):
            hc, hk = d.head[order[i]]
            sl = d.crossings[hc].slots
            for r in range(4):
                f = sl[(hk + r) % 4]
                if f not in label:
                    walk(f)
            i += 1
        code = (tuple(sizes), tuple(sorted(
            (tuple(label[e] for e in d.crossings[ci].slots), d.crossings[ci].sign)
            for ci in piece_set)))
        if best is None or code < best:
            best = code
            best_labels = dict(label)
    return best, best_labels


def _canonical_data(d: LinkDiagram):
    nxt = {e: d.next_edge(e) for e in d.occurrences}
    pieces = []
    for p in _pieces(d):
        code, labels = _piece_code(d, p, nxt)
        pieces.append((code, labels))
    pieces.sort(key=lambda t: t[0])
    return pieces


def _encode(pieces, n_free: int) -> bytes:
    parts = []
    for (sizes, crs), _ in pieces:
        s = ".".join(map(str, sizes))
        c = ";".join(",".join(map(str, sl)) + ("+" if sg > 0 else "-") for sl, sg in crs)
        parts.append(f"{s}|{c}")
    return ("/".join(parts) + f"#O{n_free}").encode()


def canonical(d: LinkDiagram) -> bytes:
    """Relabeling-invariant code of the oriented diagram on the sphere."""
    require_valid(d)
    return _encode(_canonical_data(d), len(d.free_loops))


def canonical_form(d: LinkDiagram) -> LinkDiagram:
    """The diagram relabeled into the labeling that realizes ``canonical(d)``."""
    require_valid(d)
    pieces = _canonical_data(d)
    emap: dict[int, int] = {}
    off = 0
    for (sizes, _), labels in pieces:
        for e, l in labels.items():
            emap[e] = l + off
        off += sum(sizes)
    cr = tuple(sorted((c.relabeled(emap) for c in d.crossings), key=lambda c: (c.slots, c.sign)))
    first: dict[int, int] = {}
    for e, l in emap.items():
        c = d.component_of[e]
        first[c] = min(first.get(c, l), l)
    order = sorted(first, key=first.get) + sorted(d.free_loops)
    cmap = {c: i for i, c in enumerate(order, start=1)}
    comp_of = {emap[e]: cmap[d.component_of[e]] for e in d.occurrences}
    names = {cmap[c]: v for c, v in d.names.items() if c in cmap} if d.names else None
    return LinkDiagram(cr, comp_of, tuple(cmap[c] for c in sorted(d.free_loops)), names)


# -- twists ----------------------------------------------------------------

def _fresh(d: LinkDiagram):
    nxt = max(d.occurrences, default=0) + 1
    while True:
        yield nxt
        nxt += 1


def common_faces(d: LinkDiagram, e1: int, e2: int):
    """Faces with a dart on ``e1`` and a dart on ``e2`` (first darts found)."""
    out = []
    for f in faces(d):
        d1 = next((x for x in f if x[0] == e1), None)
        d2 = next((x for x in f if x[0] == e2), None)
        if d1 and d2:
            out.append((f, d1, d2))
    return out


def insert_twists(d: LinkDiagram, e1: int, e2: int, k: int, face: int = 0) -> LinkDiagram:
    """Insert ``|k|`` full twists between two edges bounding a common face.

    All new crossings get sign ``sgn(k)`` when the two strands run parallel
    through the twist region (and ``-sgn(k)`` when antiparallel).  ``face``
    picks among the common faces when there are several.
    """
    require_valid(d)
    if e1 == e2:
        raise GeometricPreconditionError("twisting needs two distinct edges")
    if e1 not in d.occurrences or e2 not in d.occurrences:
        raise GeometricPreconditionError("edge not present")
    cands = common_faces(d, e1, e2)
    if not cands:
        raise GeometricPreconditionError(f"edges {e1} and {e2} share no face")
    if k == 0:
        return d
    _, (_, c1, k1), (_, c2, k2) = cands[min(face, len(cands) - 1)]
    # Frame: dart of e2 runs +x along the bottom, dart of e1 runs -x along the top.
    s2 = dart_follows_orientation(d, c2, k2)
    s1 = dart_follows_orientation(d, c1, k1)
    parallel = s1 != s2
    n = 2 * abs(k)
    target = (1 if k > 0 else -1) * (1 if parallel else -1)
    fresh = _fresh(d)
    P = [e2] + [next(fresh) for _ in range(n)]   # e2 pieces, regions 0..n (left to right)
    Q = [e1] + [next(fresh) for _ in range(n)]   # e1 pieces, regions 0..n
    end1_tail = d.other_end(c1, k1)  # where e1's dart arrives: region 0 (left)
    end2_tail = d.other_end(c2, k2)  # where e2's dart arrives: region n (right)

    def build(hand: int):
        new = []
        for j in range(1, n + 1):
            # e2 incoming from the west iff s2; e1 incoming from the east iff s1
            if j % 2 == 1:
                ne, nw, sw, se = (P[j], not s2), (Q[j - 1], not s1), (P[j - 1], s2), (Q[j], s1)
                diag_swne_is = "P"
            else:
                ne, nw, sw, se = (Q[j], s1), (P[j - 1], s2), (Q[j - 1], not s1), (P[j], not s2)
                diag_swne_is = "Q"
            ends = [ne, nw, sw, se]
            # pairs: (ne, sw) positions 0,2 ; (nw, se) positions 1,3
            over_pair = 0 if hand > 0 else 1
            new.append(crossing_from_ccw(ends, over_pair))
        return new

    new = build(1)
    if new[0].sign != target:
        new = build(-1)
    crossings = list(d.crossings)
    # rewire the four outer ends
    def set_slot(ci, k, e):
        c = crossings[ci]
        sl = list(c.slots)
        sl[k] = e
        crossings[ci] = Crossing(tuple(sl), c.sign)

    set_slot(c1, k1, Q[n])
    set_slot(*end1_tail, Q[0])
    set_slot(c2, k2, P[0])
    set_slot(*end2_tail, P[n])
    comp_of = dict(d.component_of)
    for e in P:
        comp_of[e] = d.component_of[e2]
    for e in Q:
        comp_of[e] = d.component_of[e1]
    out = LinkDiagram(tuple(crossings + new), comp_of, d.free_loops, d.names)
    out = normalize(out)
    require_valid(out)
    return out
