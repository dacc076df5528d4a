"""PD text and JSON serialization.

Text blocks are separated by blank lines::

    # comment
    X 1 5 2 4
    C 1: 1 2 3 4 5 6
    O 2

``X`` gives slots s0..s3, ``O n`` adds n free loops, ``C id: e1 e2 ...``
declares a component by its edges in traversal order (no edges means a
free loop with that id).
"""

from __future__ import annotations

import json
from typing import Any

from .diagram import LinkDiagram, components, edge_cycles, from_pd
from .errors import PDParseError


def _parse_block(lines: list[str]) -> LinkDiagram:
    xs: list[list[int]] = []
    free = 0
    comps: dict[int, list[int]] = {}
    names: dict[int, str] = {}
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, _, rest = line.partition(" ")
        try:
            if tag == "X":
                vals = [int(t) for t in rest.split()]
                if len(vals) != 4:
                    raise PDParseError(f"crossing line needs 4 edges: {raw!r}")
                xs.append(vals)
            elif tag == "O":
                free += int(rest.strip())
            elif tag == "C":
                cid, _, es = rest.partition(":")
                comps[int(cid)] = [int(t) for t in es.split()]
            elif tag == "N":
                cid, _, nm = rest.partition(":")
                names[int(cid)] = nm.strip()
            else:
                raise PDParseError(f"unknown line: {raw!r}")
        except ValueError as exc:
            if isinstance(exc, PDParseError):
                raise
            raise PDParseError(f"bad number in line {raw!r}") from None
    return from_pd(xs, free, comps or None, names or None)


def parse_pd_text(text: str) -> list[LinkDiagram]:
    blocks: list[list[str]] = [[]]
    for line in text.splitlines():
        if line.strip():
            blocks[-1].append(line)
        elif blocks[-1]:
            blocks.append([])
    out = []
    for b in blocks:
        if any(l.split("#", 1)[0].strip() for l in b):
            out.append(_parse_block(b))
    if not out:
        raise PDParseError("no diagram found")
    return out


def parse_pd_json(data: Any) -> LinkDiagram:
    if isinstance(data, str):
        data = json.loads(data)
    if "crossings" not in data:
        raise PDParseError("missing 'crossings'")
    comps = None
    if data.get("components") is not None:
        comps = {i: list(es) for i, es in enumerate(data["components"], start=1)}
        declared = sum(1 for es in comps.values() if not es)
        free = max(0, int(data.get("free_loops", 0)) - declared)
    else:
        free = int(data.get("free_loops", 0))
    names = None
    if data.get("names"):
        names = {int(k): str(v) for k, v in data["names"].items()}
    return from_pd(data["crossings"], free, comps, names, data.get("signs"))


def parse_any(text: str) -> LinkDiagram:
    """Parse a single diagram given as PD text or JSON."""
    s = text.lstrip()
    if s.startswith("{"):
        return parse_pd_json(s)
    ds = parse_pd_text(text)
    if len(ds) != 1:
        raise PDParseError(f"expected one diagram, found {len(ds)}")
    return ds[0]


def to_pd_text(d: LinkDiagram) -> str:
    lines = [f"X {' '.join(map(str, c.slots))}" for c in d.crossings]
    for cid, cyc in components(d).items():
        lines.append(f"C {cid}:" + "".join(f" {e}" for e in cyc))
    if d.names:
        for cid, nm in sorted(d.names.items()):
            lines.append(f"N {cid}: {nm}")
    return "\n".join(lines) + "\n"


def to_pd_json(d: LinkDiagram) -> dict:
    comps = components(d)
    out = {
        "crossings": [list(c.slots) for c in d.crossings],
        "free_loops": len(d.free_loops),
        "components": [list(comps[c]) for c in sorted(comps)],
    }
    if d.names:
        out["names"] = {str(k): v for k, v in sorted(d.names.items())}
    return out
