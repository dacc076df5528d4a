"""Parametric link families.

Most families are drawn as thin rectilinear bands in the plane and turned
into PD codes by :func:`brunnian.projection.project`.  Over/under choices
come from explicit local rules (hooks, rings, clasps) rather than heights;
every crossing not covered by a rule is resolved by component order (and,
within one curve, by traversal order), which layers those strands and adds
no linking or knotting.

Shapes used throughout:

* *U-band*: a component shaped like a U lying on its side.  Its vertical
  "bend" sits on the left, its two "arms" run right and end in caps.
* *hook*: an arm cap wrapping around strands of another component; the
  cap's two strands pass on opposite sides (one over, one under).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .diagram import LinkDiagram, canonical, from_pd, normalize, unlink as _unlink
from .errors import CompositionError, PreconditionError
from .projection import project

Pt = tuple  # (x, y)

WIDTH = 2


# -- geometry helpers ------------------------------------------------------------

def _unit(a: Pt, b: Pt) -> Pt:
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx and dy:
        raise ValueError("band paths must be axis-aligned")
    n = abs(dx) + abs(dy)
    return (Fraction(dx, n) if dx else 0, Fraction(dy, n) if dy else 0)


def band(path: Sequence[Pt], width=WIDTH) -> list[Pt]:
    """Closed curve around an open rectilinear centerline.

    Runs along the left offset from the first vertex to the last, then back
    along the right offset.  The two ends become short caps.
    """
    h = Fraction(width) / 2
    left, right = [], []
    m = len(path)
    for i, v in enumerate(path):
        ns = []
        if i > 0:
            u = _unit(path[i - 1], v)
            ns.append((-u[1], u[0]))
        if i < m - 1:
            u = _unit(v, path[i + 1])
            ns.append((-u[1], u[0]))
        if len(ns) == 2 and ns[0] != ns[1]:
            n = (ns[0][0] + ns[1][0], ns[0][1] + ns[1][1])
        else:
            n = ns[0]
        left.append((v[0] + h * n[0], v[1] + h * n[1]))
        right.append((v[0] - h * n[0], v[1] - h * n[1]))
    return left + right[::-1]


def rect(x0, y0, x1, y1) -> list[Pt]:
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


@dataclass(frozen=True)
class Rule:
    """Over/under rule for crossings of components ``a`` and ``b`` inside ``box``.

    ``a_over(x, y)`` says whether ``a`` is on top there.  With ``a == b``
    the callback sees the earlier-enumerated segment as ``a``.
    """

    a: int
    b: int
    box: tuple
    a_over: Callable[[Fraction, Fraction], bool]

    def covers(self, i: int, k: int, x, y) -> bool:
        x0, x1, y0, y1 = self.box
        return {i, k} == {self.a, self.b} and x0 <= x <= x1 and y0 <= y <= y1


def hook(owner: int, target: int, cap: Pt, arm_y, over_below: bool, reach=5) -> Rule:
    """Cap of ``owner`` ending at ``cap`` wraps strands of ``target``.

    The cap strand below ``arm_y`` passes over iff ``over_below``.
    """
    cx, cy = cap
    return Rule(owner, target, (cx - reach, cx + 1, cy - 2, cy + 2),
                lambda x, y: (y < arm_y) == over_below)


@dataclass
class Scene:
    curves: list = field(default_factory=list)
    rules: list = field(default_factory=list)

    def add(self, pts: Sequence[Pt]) -> int:
        self.curves.append([(x, y, 0) for x, y in pts])
        return len(self.curves) - 1

    def render(self) -> LinkDiagram:
        rules = self.rules

        def over(i, k, pt):
            x, y = pt
            for r in rules:
                if r.covers(i, k, x, y):
                    v = bool(r.a_over(x, y))
                    return v if i == r.a else not v
            # same curve: the later segment goes over, so a lone curve stays ascending
            return i < k

        return project(self.curves, over=over)


# -- fixtures -----------------------------------------------------------------------

_HOPF = [(1, 3, 2, 4), (3, 1, 4, 2)]
_BORROMEAN = [(1, 5, 2, 6), (3, 8, 4, 7), (6, 10, 7, 11),
              (8, 9, 5, 12), (9, 3, 10, 2), (11, 4, 12, 1)]


def hopf() -> LinkDiagram:
    """Positive Hopf link (both crossings +1)."""
    return normalize(from_pd(_HOPF), renumber_components=True)


def borromean() -> LinkDiagram:
    return normalize(from_pd(_BORROMEAN), renumber_components=True)


# -- chains ---------------------------------------------------------------------------

_A, _B = 10, 4  # bend half-height, arm offset


def _uband_path(xb, x_next, reach=2):
    """U-band with bend at ``xb`` and caps just past ``x_next``."""
    j = x_next - 3
    return [(x_next + reach, _B), (j, _B), (j, _A), (xb, _A),
            (xb, -_A), (j, -_A), (j, -_B), (x_next + reach, -_B)]


def _hook_pair(sc: Scene, owner, target, x_next, signs, reach=2):
    cap = x_next + reach
    sc.rules.append(hook(owner, target, (cap, _B), _B, signs[0] > 0))
    sc.rules.append(hook(owner, target, (cap, -_B), -_B, signs[1] < 0))


def milnor(n: int, signs=None) -> LinkDiagram:
    """Linear chain: ring, ``n-2`` U-bands, closing loop.

    The ring encircles the first band's bend; every band's caps wrap the next
    band's bend; the last band's caps wrap one strand of the closing loop.
    ``signs`` gives per-band hook signs (default all ``(1, 1)``).
    """
    if n < 2:
        raise PreconditionError("milnor needs n >= 2")
    if n == 2:
        return hopf()
    signs = list(signs or [(1, 1)] * (n - 2))
    sc = Scene()
    ring = sc.add(rect(-3, -1, 3, 1))
    xs = [10 * i for i in range(n - 1)]
    bands = [sc.add(band(_uband_path(xs[i], xs[i + 1]))) for i in range(n - 2)]
    loop = sc.add(rect(xs[-1], -_A, xs[-1] + 8, _A))
    sc.rules.append(Rule(ring, bands[0], (-3, 3, -1, 1), lambda x, y: y > 0))
    for i, b in enumerate(bands):
        nxt = bands[i + 1] if i + 1 < len(bands) else loop
        _hook_pair(sc, b, nxt, xs[i + 1], signs[i])
    return sc.render()


def _cyclic_chain(n: int, signs) -> LinkDiagram:
    sc = Scene()
    step = 20
    for i in range(n):
        xb, xt = step * i, step * ((i + 1) % n)
        if i < n - 1:
            sc.add(band(_uband_path(xb, xt)))
        else:
            right, top = xb + step, 30
            sc.add(band([(xt + 2, _B), (xt - 4, _B), (xt - 4, top), (right, top), (right, _A),
                         (xb, _A), (xb, -_A), (right, -_A), (right, -top), (xt - 4, -top),
                         (xt - 4, -_B), (xt + 2, -_B)]))
    for i in range(n):
        _hook_pair(sc, i, (i + 1) % n, step * ((i + 1) % n), signs)
    return sc.render()


def brunn_chain(n: int) -> LinkDiagram:
    """Linear chain of left-handed zero-linking clasps, capped by a ring and a loop."""
    if n < 2:
        raise PreconditionError("brunn_chain needs n >= 2")
    if n == 2:
        return hopf()
    return milnor(n, signs=[(-1, -1)] * (n - 2))


def brunn_cycle(n: int) -> LinkDiagram:
    """Closed chain of U-bands, each wrapping the next bend with both caps."""
    if n < 2:
        raise PreconditionError("brunn_cycle needs n >= 2")
    return _cyclic_chain(n, (1, 1))


def rubberband(n: int) -> LinkDiagram:
    """Closed chain whose two caps wrap the next bend with opposite handedness."""
    if n < 2:
        raise PreconditionError("rubberband needs n >= 2")
    return _cyclic_chain(n, (1, -1))


def communi6() -> LinkDiagram:
    """Six-component linear chain with alternating clasp handedness."""
    return milnor(6, signs=[(1, 1), (-1, -1), (1, 1), (-1, -1)])


# over/under table for the four self-crossings of the clasped loop
_CLASP = {(17, 1): True, (17, 3): False, (19, 1): False, (19, 3): False}


def gen_whitehead() -> LinkDiagram:
    """Ring, U-band, and a loop whose two ends clasp each other.

    Same layout as milnor(3), except the closing loop is itself a band whose
    tips interlock, Whitehead style.
    """
    x0 = 10
    sc = Scene()
    ring = sc.add(rect(-3, -1, 3, 1))
    ub = sc.add(band(_uband_path(0, x0)))
    loop = sc.add(band([(x0 + 6, 2), (x0 + 12, 2), (x0 + 12, _A + 2), (x0, _A + 2),
                        (x0, -_A - 2), (x0 + 8, -_A - 2), (x0 + 8, 4)]))
    sc.rules.append(Rule(ring, ub, (-3, 3, -1, 1), lambda x, y: y > 0))
    _hook_pair(sc, ub, loop, x0, (1, 1))
    sc.rules.append(Rule(loop, loop, (x0 + 5, x0 + 11, 0, 4),
                         lambda x, y: _CLASP[(int(x), int(y))]))
    return sc.render()


# -- tangle tiles ---------------------------------------------------------------------

_SIDES = ("N", "E", "S", "W")


@dataclass(frozen=True)
class TanglePattern:
    """One grid tile owning a single component.

    ``ports`` counts dangling strand ends per side.  ``upper``/``lower`` are
    the grid offsets ``(dr, dc)`` of the tiles whose bends the two arm caps
    wrap (``None`` for a capped-off arm).
    """

    name: str
    ports: tuple  # ((side, count), ...)
    upper: tuple | None
    lower: tuple | None
    signs: tuple = (1, 1)

    def port_count(self, side: str) -> int:
        return dict(self.ports).get(side, 0)

    def rotated(self) -> "TanglePattern":
        """Quarter turn clockwise: N->E->S->W."""
        rot = {s: _SIDES[(i + 1) % 4] for i, s in enumerate(_SIDES)}

        def off(o):
            return None if o is None else (-o[1], o[0])

        return TanglePattern(self.name + "'", tuple((rot[s], k) for s, k in self.ports),
                             off(self.upper), off(self.lower), self.signs)


# Upper cap wraps the east neighbour's bend, lower cap the south-east one's.
BAAS_BLOCK = TanglePattern("baas", (("W", 4), ("E", 4), ("N", 2), ("S", 2)), (0, 1), (-1, 1))
CLOSED_BLOCK = TanglePattern("closed", (), None, None)

CLOSURES = ("cyclic-columns", "open")


def _neighbour(r, c, dr, dc, m, n, closure):
    rr, cc = r + dr, c + dc
    if closure == "cyclic-columns":
        return rr % m, cc % n
    if 0 <= rr < m and 0 <= cc < n:
        return rr, cc
    return None


def _check_ports(tiles, closure):
    m, n = len(tiles), len(tiles[0])
    for r in range(m):
        for c in range(n):
            t = tiles[r][c]
            for side, (dr, dc), opp in (("E", (0, 1), "W"), ("S", (-1, 0), "N")):
                k = t.port_count(side)
                nb = _neighbour(r, c, dr, dc, m, n, closure)
                if nb is None:
                    if k:
                        raise CompositionError(f"tile ({r},{c}) leaves {k} {side} ports dangling")
                    continue
                other = tiles[nb[0]][nb[1]].port_count(opp)
                if other != k:
                    raise CompositionError(
                        f"port mismatch between tile ({r},{c}) side {side} ({k}) "
                        f"and tile {nb} side {opp} ({other})")
            for side, (dr, dc), opp in (("W", (0, -1), "E"), ("N", (1, 0), "S")):
                if _neighbour(r, c, dr, dc, m, n, closure) is None and t.port_count(side):
                    raise CompositionError(f"tile ({r},{c}) leaves {t.port_count(side)} {side} ports dangling")


def compose(tiles: Sequence[Sequence[TanglePattern]], closure: str = "cyclic-columns") -> LinkDiagram:
    """Place tiles on a grid (row 0 at the bottom) and link neighbouring tiles.

    With ``cyclic-columns`` the east edge is glued to the west edge and the
    bottom row's diagonal arms reach round to the top row.
    """
    if closure not in CLOSURES:
        raise PreconditionError(f"closure must be one of {CLOSURES}")
    if not tiles or not tiles[0] or any(len(row) != len(tiles[0]) for row in tiles):
        raise CompositionError("tile grid must be a non-empty rectangle")
    _check_ports(tiles, closure)
    m, n = len(tiles), len(tiles[0])
    colw = 20 + 3 * m
    idx = lambda r, c: r * n + c  # noqa: E731
    sc = Scene()
    pending = []
    for r in range(m):
        y = 50 * r
        for c in range(n):
            t = tiles[r][c]
            k = idx(r, c)
            xb = colw * c + 3 * r
            if t.upper is None and t.lower is None:
                sc.add(band([(xb + 8, y + 6), (xb + 6, y + 6), (xb + 6, y + 14), (xb, y + 14),
                             (xb, y - 14), (xb + 6, y - 14), (xb + 6, y - 6), (xb + 8, y - 6)]))
                continue
            ur, uc = _neighbour(r, c, *t.upper, m, n, closure)
            lr, lc = _neighbour(r, c, *t.lower, m, n, closure)
            xu, yu = colw * uc + 3 * ur, 50 * ur + 6
            xl = colw * lc + 3 * lr
            yl = 50 * lr + (10 if lr < r else -10) if lr != r else y - 6
            wrap = uc <= c
            if not wrap:
                up = [(xu + 2, yu), (xu - 4, yu), (xu - 4, y + 14), (xb, y + 14)]
                jj = colw * lc - 5 - Fraction(k + 1, 2 * m * n + 1)
                lo = [(xb, y - 14), (jj, y - 14), (jj, yl), (xl + 2, yl)]
            else:
                top, bot = 50 * m + 10 + 3 * k, -40 - 3 * k
                right, left = colw * n + 5 + 3 * k, -10 - 3 * k
                up = [(xu + 2, yu), (left, yu), (left, top), (right, top), (right, y + 14), (xb, y + 14)]
                lo = [(xb, y - 14), (right + 1, y - 14), (right + 1, bot), (left - 1, bot),
                      (left - 1, yl), (xl + 2, yl)]
            sc.add(band(up + lo))
            pending.append((k, idx(ur, uc), (xu + 2, yu), t.signs[0] > 0))
            pending.append((k, idx(lr, lc), (xl + 2, yl), t.signs[1] < 0))
    for owner, target, cap, ob in pending:
        sc.rules.append(hook(owner, target, cap, cap[1], ob))
    return sc.render()


def tube(m: int, n: int) -> LinkDiagram:
    if m < 2 or n < 2:
        raise PreconditionError("tube needs m >= 2 and n >= 2")
    return compose([[BAAS_BLOCK] * n for _ in range(m)], "cyclic-columns")


def baas_block_tangle() -> TanglePattern:
    return BAAS_BLOCK


# -- registry ----------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple = ()

    def label(self) -> str:
        return self.family + ("(" + ",".join(map(str, self.params)) + ")" if self.params else "")


_RANGES = {
    "unlink": (1, lambda p: p[0] >= 1),
    "hopf": (0, None),
    "borromean": (0, None),
    "milnor": (1, lambda p: p[0] >= 2),
    "brunn_chain": (1, lambda p: p[0] >= 2),
    "brunn_cycle": (1, lambda p: p[0] >= 2),
    "rubberband": (1, lambda p: p[0] >= 2),
    "gen_whitehead": (0, None),
    "communi6": (0, None),
    "baas_block_tangle": (0, None),
    "tube": (2, lambda p: p[0] >= 2 and p[1] >= 2),
}

FAMILIES = tuple(_RANGES)


def generate(spec: FamilySpec) -> LinkDiagram:
    if spec.family not in _RANGES:
        raise PreconditionError(f"unknown family {spec.family!r}")
    arity, ok = _RANGES[spec.family]
    p = tuple(int(x) for x in spec.params)
    if len(p) != arity or (ok is not None and not ok(p)):
        raise PreconditionError(f"bad parameters {p} for {spec.family}")
    f = spec.family
    if f == "unlink":
        return _unlink(p[0])
    if f == "hopf":
        return hopf()
    if f == "borromean":
        return borromean()
    if f == "milnor":
        return milnor(p[0])
    if f == "brunn_chain":
        return brunn_chain(p[0])
    if f == "brunn_cycle":
        return brunn_cycle(p[0])
    if f == "rubberband":
        return rubberband(p[0])
    if f == "gen_whitehead":
        return gen_whitehead()
    if f == "communi6":
        return communi6()
    if f == "baas_block_tangle":
        return compose([[CLOSED_BLOCK]], "open")
    return tube(*p)


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    params: str
    components: str
    generated: bool
    facts: tuple = ()

    def to_json(self) -> dict:
        return {"family": self.family, "params": self.params, "components": self.components,
                "generated": self.generated, "facts": list(self.facts)}


def catalog() -> list[CatalogEntry]:
    return [
        CatalogEntry("unlink", "n>=1", "n", True, ("0 crossings",)),
        CatalogEntry("hopf", "", "2", True, ("2 crossings", "lk = 1")),
        CatalogEntry("borromean", "", "3", True, ("6 crossings", "zero linking matrix")),
        CatalogEntry("milnor", "n>=2", "n", True, ("milnor(2) = hopf", "8(n-2) crossings for n>=3")),
        CatalogEntry("brunn_chain", "n>=2", "n", True, ("brunn_chain(2) = hopf", "8(n-2) crossings for n>=3")),
        CatalogEntry("brunn_cycle", "n>=2", "n", True, ("8n crossings",)),
        CatalogEntry("rubberband", "n>=2", "n", True, ("8n crossings",)),
        CatalogEntry("gen_whitehead", "", "3", True, ("16 crossings",)),
        CatalogEntry("communi6", "", "6", True, ("32 crossings",)),
        CatalogEntry("baas_block_tangle", "", "1", True, ("closed-off block is an unknot",)),
        CatalogEntry("tube", "m>=2,n>=2", "m*n", True, ("zero linking matrix",)),
        CatalogEntry("carpet", "m,n,p", "(m+n)(n-m+1)p/2", False, ("not generated; formula documented",)),
    ]


def corpus() -> dict[str, LinkDiagram]:
    """Small named diagrams used by tests and the acceptance suite."""
    out = {
        "unknot-kink": from_pd([(1, 1, 2, 2)]),
        "trefoil": from_pd([(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]),
        "figure8": from_pd([(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)]),
        "5_1": from_pd([(1, 6, 2, 7), (3, 8, 4, 9), (5, 10, 6, 1), (7, 2, 8, 3), (9, 4, 10, 5)]),
        "5_2": from_pd([(1, 4, 2, 5), (3, 8, 4, 9), (5, 10, 6, 1), (9, 6, 10, 7), (7, 2, 8, 3)]),
        "6_1": from_pd([(1, 4, 2, 5), (7, 10, 8, 11), (3, 9, 4, 8), (9, 3, 10, 2),
                        (5, 12, 6, 1), (11, 6, 12, 7)]),
        "whitehead": from_pd([(6, 1, 7, 2), (10, 7, 5, 8), (4, 5, 1, 6), (2, 10, 3, 9), (8, 4, 9, 3)]),
        "torus_2_4": from_pd([(6, 1, 7, 2), (8, 3, 5, 4), (2, 5, 3, 6), (4, 7, 1, 8)]),
        "hopf": hopf(),
        "borromean": borromean(),
        "milnor3": milnor(3),
        "milnor4": milnor(4),
        "gen_whitehead": gen_whitehead(),
        "brunn_chain3": brunn_chain(3),
        "brunn_cycle2": brunn_cycle(2),
        "unlink2": _unlink(2),
    }
    return out


__all__ = [
    "hopf", "borromean", "milnor", "brunn_chain", "brunn_cycle", "rubberband", "gen_whitehead",
    "communi6", "tube", "baas_block_tangle", "FAMILIES", "CLOSURES",
    "FamilySpec", "TanglePattern", "BAAS_BLOCK", "CLOSED_BLOCK", "CatalogEntry",
    "generate", "compose", "catalog", "corpus", "band", "Scene", "Rule", "hook",
    "canonical",
]
