"""Brunnian verification: sublink triviality (ST) plus nontriviality (NT).

(ST) is certified by deleting each component in turn and searching for an
unlinking move sequence.  (NT) is shown by any invariant that differs from
the unlink value.  Anything not certified either way is reported Unknown.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

from . import __version__
from .diagram import LinkDiagram, canonical, require_valid, sublink
from .errors import PreconditionError, ResourceLimitError
from .invariants import DEFAULT_BRACKET_CAP, DEFAULT_HOMFLY_CAP, unlink_profile
from .pdio import to_pd_json
from .search import SearchBudget, certify_unlink

BRUNNIAN = "BrunnianCertified"
TRIVIAL = "TrivialCertified"
UNKNOWN = "Unknown"

RECURSIVE_MAX_COMPONENTS = 12
CORPUS_VERSION = "v1"


@dataclass(frozen=True)
class Caps:
    bracket: int = DEFAULT_BRACKET_CAP
    homfly: int = DEFAULT_HOMFLY_CAP

    @classmethod
    def parse(cls, text: str) -> "Caps":
        j, h = (int(x) for x in text.split(","))
        return cls(j, h)

    def to_json(self) -> dict:
        return {"bracket": self.bracket, "homfly": self.homfly}


def corpus_hash() -> str:
    """SHA-256 over the shipped fixture files, in name order."""
    h = hashlib.sha256()
    root = resources.files("brunnian") / "corpus" / CORPUS_VERSION
    for f in sorted(root.iterdir(), key=lambda p: p.name):
        if f.name.endswith(".pd"):
            h.update(f.name.encode())
            h.update(f.read_bytes())
    return h.hexdigest()


def diagram_hash(d: LinkDiagram) -> str:
    return hashlib.sha256(canonical(d)).hexdigest()


def _status(res) -> dict:
    if res.certified:
        return {"status": "CertifiedTrivial", "nodes": res.nodes,
                "certificate": res.certificate.to_json()}
    return {"status": UNKNOWN, "nodes": res.nodes, "reason": res.reason,
            "best_crossings": res.best_crossings}


@dataclass
class STReport:
    entries: list  # [(removed component id, status dict)]

    @property
    def all_certified(self) -> bool:
        return all(s["status"] == "CertifiedTrivial" for _, s in self.entries)

    @property
    def nodes_used(self) -> int:
        return sum(s["nodes"] for _, s in self.entries)

    def to_json(self) -> dict:
        return {"nodes_used": self.nodes_used,
                "subsets": [{"removed": c, **s} for c, s in self.entries]}


@dataclass
class NTReport:
    evidence: dict | None
    checked: list

    def to_json(self) -> dict:
        return {"evidence": self.evidence, "checked": self.checked}


@dataclass
class VerificationReport:
    st: STReport
    nt: NTReport
    verdict: str
    full: dict | None = None
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"st": self.st.to_json(), "nt": self.nt.to_json(),
                "full_link": self.full, "verdict": self.verdict}


def check_st(d: LinkDiagram, budget: SearchBudget | None = None) -> STReport:
    require_valid(d)
    ids = d.component_ids
    if len(ids) < 2:
        raise PreconditionError("(ST) needs at least two components")
    budget = budget or SearchBudget.default()
    out = []
    for c in ids:
        sub = sublink(d, [k for k in ids if k != c])
        out.append((c, _status(certify_unlink(sub, budget))))
    return STReport(out)


def check_nt(d: LinkDiagram, caps: Caps | None = None) -> NTReport:
    caps = caps or Caps()
    prof = unlink_profile(d, caps.bracket, caps.homfly)
    fired = [e for e in prof.evidence if e["status"] == "mismatch"]
    return NTReport(fired[0] if fired else None, [e for e in prof.evidence if e["status"] != "mismatch"])


def verify_brunnian(d: LinkDiagram, budget: SearchBudget | None = None,
                    caps: Caps | None = None, try_trivial: bool = True) -> VerificationReport:
    """Run (ST) and (NT); if (NT) finds nothing, optionally try to unlink the whole link."""
    budget = budget or SearchBudget.default()
    t0 = time.perf_counter()
    st = check_st(d, budget)
    t1 = time.perf_counter()
    nt = check_nt(d, caps)
    t2 = time.perf_counter()
    full = None
    if nt.evidence is None and try_trivial:
        full = _status(certify_unlink(d, budget))
    if full is not None and full["status"] == "CertifiedTrivial":
        verdict = TRIVIAL
    elif st.all_certified and nt.evidence is not None:
        verdict = BRUNNIAN
    else:
        verdict = UNKNOWN
    timings = {"st": t1 - t0, "nt": t2 - t1, "total": time.perf_counter() - t0}
    return VerificationReport(st, nt, verdict, full, timings)


def verify_recursive(d: LinkDiagram, budget: SearchBudget | None = None,
                     caps: Caps | None = None,
                     max_components: int = RECURSIVE_MAX_COMPONENTS) -> dict[tuple, dict]:
    """Verdict for every nonempty component subset, smallest first.

    A subset is examined only when all its one-smaller subsets are trivial;
    otherwise it is Unknown (it contains a nontrivial or undecided part).
    """
    require_valid(d)
    ids = d.component_ids
    if len(ids) > max_components:
        raise ResourceLimitError("recursive verification components", max_components, len(ids))
    budget = budget or SearchBudget.default()
    memo: dict[bytes, dict] = {}
    out: dict[tuple, dict] = {}
    for k in range(1, len(ids) + 1):
        for sub in combinations(ids, k):
            sd = sublink(d, sub) if k < len(ids) else d
            code = canonical(sd)
            if code in memo:
                out[sub] = memo[code]
                continue
            below = [tuple(x for x in sub if x != c) for c in sub] if k > 1 else []
            if any(out[b]["verdict"] != TRIVIAL for b in below):
                res = {"verdict": UNKNOWN, "reason": "a smaller sublink is not certified trivial"}
            else:
                nt = check_nt(sd, caps) if k > 1 else NTReport(None, [])
                if nt.evidence is not None:
                    res = {"verdict": BRUNNIAN, "evidence": nt.evidence}
                else:
                    r = certify_unlink(sd, budget)
                    res = {"verdict": TRIVIAL if r.certified else UNKNOWN, **_status(r)}
            memo[code] = res
            out[sub] = res
    return out


def report_json(d: LinkDiagram, rep: VerificationReport, budget: SearchBudget,
                caps: Caps) -> dict:
    """Self-contained, deterministic report (no timings)."""
    return {
        "tool": {"name": "brunnian", "version": __version__},
        "input": {"sha256": diagram_hash(d), "crossings": d.n_crossings,
                  "components": d.n_components, "pd": to_pd_json(d)},
        "corpus_sha256": corpus_hash(),
        "budget": budget.to_json(),
        "caps": caps.to_json(),
        **rep.to_json(),
    }


def recursive_json(d: LinkDiagram, res: dict, budget: SearchBudget, caps: Caps) -> dict:
    return {
        "tool": {"name": "brunnian", "version": __version__},
        "input": {"sha256": diagram_hash(d), "crossings": d.n_crossings,
                  "components": d.n_components, "pd": to_pd_json(d)},
        "corpus_sha256": corpus_hash(),
        "budget": budget.to_json(),
        "caps": caps.to_json(),
        "subsets": [{"components": list(k), **v} for k, v in sorted(res.items(), key=lambda kv: (len(kv[0]), kv[0]))],
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)
