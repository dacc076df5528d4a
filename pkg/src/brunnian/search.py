"""Unlink certification by Reidemeister-move search.

The search alternates two phases.  Greedy phase: apply R2- and R1- removals
while any exist.  Plateau phase: breadth-first search over R3 moves and
insertions (bounded by ``max_extra_crossings`` above the current count)
until some diagram with fewer crossings appears.  Visited diagrams are
deduplicated by canonical code.  Only ``Certified`` answers carry meaning;
``Unknown`` just reports that the budget ran out.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field

from .diagram import LinkDiagram, canonical, canonical_form, require_valid
from .errors import PreconditionError, RewriteError
from .moves import Move, apply_move, enumerate_moves

REDUCING = ("R2-", "R1-")
PLATEAU = ("R2-", "R1-", "R3", "R2+", "R1+")

BUDGET_ENV = "BRUNNIAN_MAX_NODES"


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 1_000_000
    max_extra_crossings: int = 2
    max_depth: int = 64

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_extra_crossings < 0 or self.max_depth <= 0:
            raise ValueError("budget fields must be positive")

    @classmethod
    def default(cls) -> "SearchBudget":
        env = os.environ.get(BUDGET_ENV)
        return cls(max_nodes=int(env)) if env else cls()

    def to_json(self) -> dict:
        return {"max_nodes": self.max_nodes, "max_extra_crossings": self.max_extra_crossings,
                "max_depth": self.max_depth}


@dataclass
class MoveCertificate:
    initial: bytes
    moves: list[Move]
    final_free_loops: int

    def to_json(self) -> dict:
        return {"initial": self.initial.decode("ascii"),
                "moves": [m.to_json() for m in self.moves],
                "final_free_loops": self.final_free_loops}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "MoveCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["initial"].encode("ascii"),
                   [Move.from_json(m) for m in data["moves"]],
                   int(data["final_free_loops"]))


@dataclass
class Certified:
    certificate: MoveCertificate
    nodes: int = 0

    certified = True


@dataclass
class Unknown:
    reason: str
    best_crossings: int
    nodes: int = 0

    certified = False


@dataclass
class _Run:
    budget: SearchBudget
    nodes: int = 0
    trace: list[Move] = field(default_factory=list)
    best: LinkDiagram | None = None


def _greedy(d: LinkDiagram, run: _Run) -> LinkDiagram:
    while d.crossings:
        ms = enumerate_moves(d, REDUCING)
        if not ms:
            break
        run.nodes += 1
        d = apply_move(d, ms[0])
        run.trace.append(ms[0])
    return d


def _plateau(d: LinkDiagram, run: _Run):
    """BFS until a diagram with fewer crossings; returns (diagram, path) or a reason."""
    n0 = len(d.crossings)
    limit = n0 + run.budget.max_extra_crossings
    seen = {canonical(d)}
    queue = deque([(d, ())])
    depth_capped = False
    while queue:
        cur, path = queue.popleft()
        if len(path) >= run.budget.max_depth:
            depth_capped = True
            continue
        kinds = PLATEAU if len(cur.crossings) < limit else ("R2-", "R1-", "R3")
        if len(cur.crossings) + 1 == limit:
            kinds = tuple(k for k in kinds if k != "R2+")
        for m in enumerate_moves(cur, kinds):
            if run.nodes >= run.budget.max_nodes:
                return "node budget exhausted"
            run.nodes += 1
            nxt = apply_move(cur, m)
            if len(nxt.crossings) < n0:
                return nxt, path + (m,)
            code = canonical(nxt)
            if code in seen:
                continue
            seen.add(code)
            queue.append((nxt, path + (m,)))
    return "depth limit reached" if depth_capped else "search space exhausted"


def _search(d: LinkDiagram, budget: SearchBudget) -> tuple[_Run, LinkDiagram, str | None]:
    run = _Run(budget)
    cur = d
    while True:
        cur = _greedy(cur, run)
        if not cur.crossings:
            return run, cur, None
        res = _plateau(cur, run)
        if isinstance(res, str):
            return run, cur, res
        nxt, path = res
        run.trace.extend(path)
        cur = nxt


def certify_unlink(d: LinkDiagram, budget: SearchBudget | None = None):
    require_valid(d)
    budget = budget or SearchBudget.default()
    start = canonical_form(d)
    run, end, reason = _search(start, budget)
    if reason is None:
        cert = MoveCertificate(canonical(start), list(run.trace), len(end.free_loops))
        return Certified(cert, run.nodes)
    return Unknown(reason, len(end.crossings), run.nodes)


def simplify(d: LinkDiagram, budget: SearchBudget | None = None) -> tuple[LinkDiagram, list[Move]]:
    """Reduce crossings as far as the budget allows; moves apply to ``canonical_form(d)``."""
    require_valid(d)
    budget = budget or SearchBudget.default()
    start = canonical_form(d)
    run, end, _ = _search(start, budget)
    return end, list(run.trace)


def replay(start: LinkDiagram, cert: MoveCertificate) -> bool:
    require_valid(start)
    if canonical(start) != cert.initial:
        raise PreconditionError("start diagram does not match the certificate's initial code")
    d = canonical_form(start)
    for m in cert.moves:
        try:
            d = apply_move(d, m)
        except RewriteError:
            return False
    return not d.crossings and len(d.free_loops) == cert.final_free_loops
