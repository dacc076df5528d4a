"""Linking matrix, Kauffman bracket / Jones, HOMFLY, and unlink comparison."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import (
    Crossing,
    LinkDiagram,
    canonical,
    edge_cycles,
    normalize,
    require_valid,
)
from .errors import ResourceLimitError
from .poly import A, DELTA, LaurentPoly, LaurentPoly2

DEFAULT_BRACKET_CAP = 24
DEFAULT_HOMFLY_CAP = 18


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    require_valid(d)
    n = d.n_components
    twice = [[0] * n for _ in range(n)]
    for c in d.crossings:
        i = d.component_of[c.slots[0]] - 1
        j = d.component_of[c.slots[1]] - 1
        if i != j:
            twice[i][j] += c.sign
            twice[j][i] += c.sign
    return [[x // 2 for x in row] for row in twice]


# -- Kauffman bracket -----------------------------------------------------------

def _crossing_order(d: LinkDiagram) -> list[int]:
    """Greedy order keeping the frontier of open edges small."""
    n = len(d.crossings)
    done = [False] * n
    open_edges: set[int] = set()
    order = []
    for _ in range(n):
        best, best_key = -1, None
        for ci in range(n):
            if done[ci]:
                continue
            sl = d.crossings[ci].slots
            closes = sum(1 for e in sl if e in open_edges)
            key = (-closes, ci)
            if best_key is None or key < best_key:
                best, best_key = ci, key
        done[best] = True
        order.append(best)
        for e in d.crossings[best].slots:
            if e in open_edges:
                open_edges.discard(e)
            else:
                open_edges.add(e)
        # edges with both ends in this crossing never stay open
        sl = d.crossings[best].slots
        for e in set(sl):
            if sl.count(e) == 2:
                open_edges.discard(e)
    return order


def _add_arc(mat: dict[int, int], x: int, y: int) -> int:
    """Join open ends x and y in a path matching; return loops closed."""
    if x == y:
        return 1
    if x in mat and y in mat:
        u, w = mat.pop(x), mat.pop(y)
        if u == y:
            return 1
        mat[u], mat[w] = w, u
        return 0
    if x in mat or y in mat:
        if y in mat:
            x, y = y, x
        u = mat.pop(x)
        mat[u], mat[y] = y, u
        return 0
    mat[x], mat[y] = y, x
    return 0


def kauffman_bracket(d: LinkDiagram, cap: int = DEFAULT_BRACKET_CAP) -> LaurentPoly:
    require_valid(d)
    if len(d.crossings) > cap:
        raise ResourceLimitError("kauffman bracket crossings", cap, len(d.crossings))
    # state: frozenset of matched pairs -> {exp: coeff}; loops folded in as delta powers
    states: dict[frozenset, dict[int, int]] = {frozenset(): {0: 1}}
    delta = DELTA.terms
    for ci in _crossing_order(d):
        a, b, c, dd = d.crossings[ci].slots
        nxt: dict[frozenset, dict[int, int]] = {}
        for key, poly in states.items():
            for arcs, shift in ((((a, b), (c, dd)), 1), (((a, dd), (b, c)), -1)):
                mat = {}
                for x, y in key:
                    mat[x], mat[y] = y, x
                loops = sum(_add_arc(mat, x, y) for x, y in arcs)
                nk = frozenset((x, y) for x, y in mat.items() if x < y)
                term = {e + shift: v for e, v in poly.items()}
                for _ in range(loops):
                    t2: dict[int, int] = {}
                    for e1, v1 in term.items():
                        for e2, v2 in delta.items():
                            t2[e1 + e2] = t2.get(e1 + e2, 0) + v1 * v2
                    term = t2
                acc = nxt.setdefault(nk, {})
                for e, v in term.items():
                    acc[e] = acc.get(e, 0) + v
        states = nxt
    total = LaurentPoly(states.get(frozenset(), {}))
    loops = len(d.free_loops)
    if d.crossings:
        # the state sum counted every closed loop; normalize to <O> = 1
        return _div_delta(total * DELTA ** loops)
    return DELTA ** (loops - 1)


def _div_delta(p: LaurentPoly) -> LaurentPoly:
    q = exact_div(p, DELTA)
    if q is None:
        raise ArithmeticError("bracket state sum not divisible by delta")
    return q


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly | None:
    """Exact Laurent division ``p / q``, or None when it does not divide."""
    if q.is_zero():
        raise ZeroDivisionError
    rem = p.terms
    qi = q.items()
    qlo, qlc = qi[0]
    out: dict[int, int] = {}
    while rem:
        lo = min(rem)
        c = rem[lo]
        if c % qlc:
            return None
        m = c // qlc
        shift = lo - qlo
        out[shift] = m
        for e, v in qi:
            k = e + shift
            rem[k] = rem.get(k, 0) - m * v
            if rem[k] == 0:
                del rem[k]
        if rem and min(rem) < lo:
            return None
        if len(out) > 10_000:
            return None
    return LaurentPoly(out)


def jones(d: LinkDiagram, cap: int = DEFAULT_BRACKET_CAP) -> LaurentPoly:
    """Normalized bracket (-A^3)^(-w) <d>; equals V(t) at t = A^-4."""
    br = kauffman_bracket(d, cap)
    w = d.writhe
    f = LaurentPoly.monomial(-3 * w, -1 if w % 2 else 1)
    return f * br


def unlink_jones(n: int) -> LaurentPoly:
    return DELTA ** (n - 1)


# -- HOMFLY ------------------------------------------------------------------

_MU = LaurentPoly2({(-1, -1): 1, (1, -1): -1})  # (v^-1 - v) / z


def unlink_homfly(n: int) -> LaurentPoly2:
    return _MU ** (n - 1)


def _smooth(d: LinkDiagram, ci: int) -> LinkDiagram:
    """Oriented resolution of crossing ``ci``; components are recomputed."""
    parent = {e: e for e in d.occurrences}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    a, b, c, dd = d.crossings[ci].slots
    if d.crossings[ci].sign > 0:
        union(a, b)
        union(dd, c)
    else:
        union(a, dd)
        union(b, c)
    kept = [Crossing(tuple(find(e) for e in x.slots), x.sign)
            for j, x in enumerate(d.crossings) if j != ci]
    present = {e for x in kept for e in x.slots}
    closed = {find(e) for e in d.occurrences} - present
    tmp = LinkDiagram(tuple(kept), {e: 0 for e in present}, ())
    comp_of = {}
    cycles = edge_cycles(tmp)
    for i, cyc in enumerate(cycles, start=1):
        for e in cyc:
            comp_of[e] = i
    n = len(cycles)
    loops = tuple(range(n + 1, n + 1 + len(closed) + len(d.free_loops)))
    return normalize(LinkDiagram(tuple(kept), comp_of, loops), renumber_components=True)


def _first_bad_crossing(d: LinkDiagram) -> int | None:
    seen: set[int] = set()
    comps: dict[int, list[int]] = {}
    for cyc in edge_cycles(d):
        comps[d.component_of[cyc[0]]] = cyc
    for cid in sorted(comps):
        for e in comps[cid]:
            ci, k = d.head[e]
            if ci in seen:
                continue
            seen.add(ci)
            if k == 0:
                return ci
    return None


def _switch(d: LinkDiagram, ci: int) -> LinkDiagram:
    cr = list(d.crossings)
    cr[ci] = cr[ci].switched()
    return LinkDiagram(tuple(cr), d.component_of, d.free_loops)


_V2 = LaurentPoly2({(2, 0): 1})
_VZ = LaurentPoly2({(1, 1): 1})
_VM2 = LaurentPoly2({(-2, 0): 1})
_MVZ = LaurentPoly2({(-1, 1): -1})


def _homfly_rec(d: LinkDiagram, memo: dict | None) -> LaurentPoly2:
    key = None
    if memo is not None:
        key = canonical(d)
        hit = memo.get(key)
        if hit is not None:
            return hit
    ci = _first_bad_crossing(d)
    if ci is None:
        val = unlink_homfly(d.n_components)
    elif d.crossings[ci].sign > 0:
        val = _V2 * _homfly_rec(_switch(d, ci), memo) + _VZ * _homfly_rec(_smooth(d, ci), memo)
    else:
        val = _VM2 * _homfly_rec(_switch(d, ci), memo) + _MVZ * _homfly_rec(_smooth(d, ci), memo)
    if memo is not None:
        memo[key] = val
    return val


_MEMO: dict[bytes, LaurentPoly2] = {}


def homfly(d: LinkDiagram, cap: int = DEFAULT_HOMFLY_CAP, memo: bool = True) -> LaurentPoly2:
    require_valid(d)
    if len(d.crossings) > cap:
        raise ResourceLimitError("homfly skein crossings", cap, len(d.crossings))
    return _homfly_rec(d, _MEMO if memo else None)


def specialize_homfly(p: LaurentPoly2, n_components: int) -> LaurentPoly:
    """Evaluate at v = A^-4, z = A^-2 - A^2 (z^-1 powers cleared by exact division)."""
    k = max(0, -min((zb for (_, zb) in p.terms), default=0))
    shifted = LaurentPoly2({(a, b + k): c for (a, b), c in p.terms.items()})
    z = LaurentPoly({-2: 1, 2: -1})
    num = shifted.substitute(LaurentPoly.monomial(-4), z, LaurentPoly.monomial(4))
    q = exact_div(num, z ** k) if k else num
    if q is None:
        raise ArithmeticError("specialization left a non-Laurent remainder")
    return q


def homfly_mirror(p: LaurentPoly2) -> LaurentPoly2:
    """HOMFLY of the mirror image: v -> v^-1, z -> -z (checked against the oracle)."""
    return p.map_exponents(v_sign=-1, z_sign=-1)


# -- unlink comparison ---------------------------------------------------------

@dataclass
class UnlinkProfile:
    matches_unlink: bool
    evidence: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"matches_unlink": self.matches_unlink, "evidence": self.evidence}


def unlink_profile(d: LinkDiagram, bracket_cap: int = DEFAULT_BRACKET_CAP,
                   homfly_cap: int = DEFAULT_HOMFLY_CAP) -> UnlinkProfile:
    require_valid(d)
    n = d.n_components
    ev: list[dict] = []
    lk = linking_matrix(d)
    if any(any(row) for row in lk):
        ev.append({"invariant": "linking matrix", "status": "mismatch", "value": lk})
        return UnlinkProfile(False, ev)
    ev.append({"invariant": "linking matrix", "status": "match"})
    try:
        j = jones(d, bracket_cap)
    except ResourceLimitError as exc:
        ev.append({"invariant": "jones", "status": "skipped", "reason": str(exc)})
    else:
        if j != unlink_jones(n):
            ev.append({"invariant": "jones", "status": "mismatch", "value": j.to_json()})
            return UnlinkProfile(False, ev)
        ev.append({"invariant": "jones", "status": "match"})
    try:
        h = homfly(d, homfly_cap)
    except ResourceLimitError as exc:
        ev.append({"invariant": "homfly", "status": "skipped", "reason": str(exc)})
    else:
        if h != unlink_homfly(n):
            ev.append({"invariant": "homfly", "status": "mismatch", "value": h.to_json()})
            return UnlinkProfile(False, ev)
        ev.append({"invariant": "homfly", "status": "match"})
    return UnlinkProfile(True, ev)
