"""Acceptance criteria 1-9.

Each test records one ``criterion N: PASS|FAIL`` line; the lines are echoed
in the pytest terminal summary and printed when run as a script::

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from brunnian.diagram import canonical_form, random_relabel, sublink  # noqa: E402
from brunnian.families import FamilySpec, corpus, generate  # noqa: E402
from brunnian.invariants import (homfly, jones, kauffman_bracket, linking_matrix,  # noqa: E402
                                 specialize_homfly, unlink_jones)
from brunnian.moves import apply_move, enumerate_moves  # noqa: E402
from brunnian.pipeline import BRUNNIAN, Caps, dumps, report_json, verify_brunnian  # noqa: E402
from brunnian.search import MoveCertificate, SearchBudget, certify_unlink, replay  # noqa: E402
from oracles import bracket_states, homfly_naive  # noqa: E402

RESULTS: dict[int, list[tuple[bool, str]]] = {}
CERTS: list = []  # (start diagram, certificate) for criterion 7
REPORTS: dict[str, str] = {}
CORPUS = corpus()

COMMUNI6_REASON = ("communi6 has 32 crossings in our drawing, above the 24-crossing bracket cap; "
                   "linking is zero so no invariant fires at default caps (ledgered)")


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS.setdefault(n, []).append((ok, detail))
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")


def summary_lines() -> list[str]:
    out = []
    for n in sorted(RESULTS):
        rows = RESULTS[n]
        ok = all(r[0] for r in rows)
        bad = [d for o, d in rows if not o]
        tail = f" ({len(rows)} checks)" if ok else " failed: " + "; ".join(bad)
        out.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}{tail}")
    return out


def _collect(d, st_report):
    ids = d.component_ids
    for c, s in st_report.entries:
        if s["status"] == "CertifiedTrivial":
            CERTS.append((sublink(d, [k for k in ids if k != c]), MoveCertificate.from_json(s["certificate"])))


def _verify(label, d):
    # The whole-link unlinking attempt can only yield TrivialCertified, so it is
    # skipped here; it would spend the full node budget on communi6.
    b, c = SearchBudget.default(), Caps()
    t0 = time.perf_counter()
    rep = verify_brunnian(d, b, c, try_trivial=False)
    dt = time.perf_counter() - t0
    REPORTS[label] = dumps(report_json(d, rep, b, c))
    _collect(d, rep.st)
    return rep, dt


# -- 1 -------------------------------------------------------------------------

def test_c1_borromean_end_to_end():
    d = CORPUS["borromean"]
    rep, dt = _verify("borromean", d)
    moves = [len(s["certificate"]["moves"]) for _, s in rep.st.entries
             if s["status"] == "CertifiedTrivial"]
    ok = (rep.verdict == BRUNNIAN and len(moves) == 3 and max(moves) <= 8
          and jones(d) != unlink_jones(3) and dt < 1.0)
    record(1, ok, f"borromean {rep.verdict}, moves per sublink {moves}, {dt:.3f}s")
    assert ok


# -- 2 -------------------------------------------------------------------------

MEMBERS = ([("milnor", (n,)) for n in (2, 3, 4)] + [("brunn_chain", (n,)) for n in (2, 3, 4)]
           + [("rubberband", (n,)) for n in (2, 3)] + [("gen_whitehead", ()), ("communi6", ())])


def _member_param(f, p):
    marks = []
    if f == "communi6":
        marks.append(pytest.mark.xfail(strict=True, reason=COMMUNI6_REASON))
    return pytest.param(f, p, marks=marks, id=FamilySpec(f, p).label())


@pytest.mark.parametrize("f,p", [_member_param(f, p) for f, p in MEMBERS])
def test_c2_family_certification(f, p):
    spec = FamilySpec(f, p)
    rep, dt = _verify(spec.label(), generate(spec))
    ok = rep.verdict == BRUNNIAN and dt < 30
    note = "" if ok or f != "communi6" else " (expected: " + COMMUNI6_REASON + ")"
    record(2, ok, f"{spec.label()} {rep.verdict} in {dt:.2f}s{note}")
    assert ok


# -- 3 -------------------------------------------------------------------------

@pytest.mark.parametrize("m,n", [(2, 2), (2, 3)])
def test_c3_tube_sublinks(m, n):
    d = generate(FamilySpec("tube", (m, n)))
    gen_ok = d.n_components == m * n and not any(any(r) for r in linking_matrix(d))
    singles = all(certify_unlink(sublink(d, [c])).certified for c in d.component_ids)
    b, caps = SearchBudget.default(), Caps()
    rep = verify_brunnian(d, b, caps, try_trivial=False)
    st = rep.st
    _collect(d, st)
    REPORTS[f"tube({m},{n})"] = dumps(report_json(d, rep, b, caps))
    skipped = [e for e in rep.nt.checked if e["status"] == "skipped"]
    explicit = rep.nt.evidence is not None or (skipped and all("cap" in e["reason"] for e in skipped))
    ok = gen_ok and singles and st.all_certified and bool(explicit)
    record(3, ok, f"tube({m},{n}) ST {len(st.entries)}/{len(st.entries)} certified, "
                  f"nodes {st.nodes_used}, NT {rep.verdict}"
                  + (f" ({', '.join(e['invariant'] + ' skipped' for e in skipped)})" if skipped else ""))
    assert ok


# -- 4 -------------------------------------------------------------------------

def test_c4_invariance_under_moves():
    rng = random.Random(2024)
    names = sorted(n for n, d in CORPUS.items() if d.crossings)  # free loops have no move sites
    fails = 0
    for _ in range(200):
        d = canonical_form(CORPUS[rng.choice(names)])
        e = apply_move(d, rng.choice(enumerate_moves(d)))
        if linking_matrix(e) != linking_matrix(d):
            fails += 1
        elif max(d.n_crossings, e.n_crossings) <= 24 and jones(e) != jones(d):
            fails += 1
        elif max(d.n_crossings, e.n_crossings) <= 18 and homfly(e) != homfly(d):
            fails += 1
    record(4, fails == 0, f"200 random (diagram, move) pairs, {fails} failures")
    assert fails == 0


# -- 5 -------------------------------------------------------------------------

def test_c5_oracle_equivalence():
    br = [n for n, d in CORPUS.items() if d.n_crossings <= 12]
    hf = [n for n, d in CORPUS.items() if d.n_crossings <= 10]
    bad = [n for n in br if kauffman_bracket(CORPUS[n]).terms != bracket_states(CORPUS[n])]
    bad += [n for n in hf if homfly(CORPUS[n], memo=False).terms != homfly_naive(CORPUS[n])]
    record(5, not bad, f"bracket on {len(br)} diagrams, homfly on {len(hf)}; mismatches {bad}")
    assert not bad


# -- 6 -------------------------------------------------------------------------

def test_c6_specialization():
    first = ["unknot-kink", "hopf"]
    names = first + sorted(n for n, d in CORPUS.items() if d.n_crossings <= 18 and n not in first)
    bad = [n for n in names
           if specialize_homfly(homfly(CORPUS[n]), CORPUS[n].n_components) != jones(CORPUS[n])]
    record(6, not bad, f"{len(names)} diagrams within both caps; mismatches {bad}")
    assert not bad


# -- 7 -------------------------------------------------------------------------

def test_c7_certificate_integrity():
    rng = random.Random(7)
    bad = 0
    for start, cert in CERTS:
        copies = [start] + [random_relabel(start, rng) for _ in range(3)]
        bad += sum(not replay(x, cert) for x in copies)
    ok = bool(CERTS) and bad == 0
    record(7, ok, f"{len(CERTS)} certificates x 4 labelings, {bad} rejected")
    assert ok


# -- 8 -------------------------------------------------------------------------

SOUNDNESS_BUDGETS = [SearchBudget(10**4, 2, 64), SearchBudget(10**6, 2, 64),
                     SearchBudget(10**7, 2, 64), SearchBudget(10**7, 3, 64)]


def test_c8_soundness():
    runs, certified = 0, []
    for name in ("hopf", "borromean", "trefoil"):
        for b in SOUNDNESS_BUDGETS:
            runs += 1
            if certify_unlink(CORPUS[name], b).certified:
                certified.append(f"{name}@{b.max_nodes},{b.max_extra_crossings}")
    record(8, not certified, f"{runs} runs up to 10^7 nodes, all Unknown" if not certified
           else f"certified: {certified}")
    assert not certified


# -- 9 -------------------------------------------------------------------------

def _rerun_reports() -> dict[str, str]:
    out = {}
    b, c = SearchBudget.default(), Caps()
    for label in REPORTS:
        if label.startswith("tube("):
            m, n = (int(x) for x in label[5:-1].split(","))
            d = generate(FamilySpec("tube", (m, n)))
            out[label] = dumps(report_json(d, verify_brunnian(d, b, c, try_trivial=False), b, c))
        else:
            d = CORPUS["borromean"] if label == "borromean" else _from_label(label)
            out[label] = dumps(report_json(d, verify_brunnian(d, b, c, try_trivial=False), b, c))
    return out


def _from_label(label: str):
    name, _, rest = label.partition("(")
    params = tuple(int(x) for x in rest.rstrip(")").split(",")) if rest else ()
    return generate(FamilySpec(name, params))


def test_c9_determinism():
    if not REPORTS:
        pytest.skip("no reports collected in this session")
    again = _rerun_reports()
    diff = sorted(k for k in REPORTS if REPORTS[k] != again[k])
    record(9, not diff, f"{len(REPORTS)} JSON reports byte-identical across two runs"
           if not diff else f"differ: {diff}")
    assert not diff


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
