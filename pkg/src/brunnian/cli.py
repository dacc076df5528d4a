"""Command-line entry point: ``brunnian <subcommand> ...``.

Exit codes: 0 certified / success, 2 Unknown or replay rejected, 1 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .diagram import canonical_form
from .errors import BrunnianError
from .families import FAMILIES, FamilySpec, catalog, generate
from .invariants import homfly, jones, linking_matrix, unlink_profile
from .pdio import parse_any, to_pd_json, to_pd_text
from .pipeline import (BRUNNIAN, TRIVIAL, UNKNOWN, Caps, dumps, recursive_json,
                       report_json, verify_brunnian, verify_recursive)
from .search import MoveCertificate, SearchBudget, certify_unlink, replay, simplify

OK, UNDECIDED, BAD_INPUT = 0, 2, 1


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _budget(args) -> SearchBudget:
    b = SearchBudget.default()
    if getattr(args, "budget", None):
        b = replace(b, max_nodes=args.budget)
    return b


def _emit(args, human: str, machine) -> None:
    print(dumps(machine) if args.json else human)


def cmd_gen(args) -> int:
    d = generate(FamilySpec(args.family, tuple(args.params)))
    if args.json:
        print(json.dumps(to_pd_json(d), sort_keys=True))
    else:
        sys.stdout.write(to_pd_text(d))
    return OK


def cmd_catalog(args) -> int:
    rows = [e.to_json() for e in catalog()]
    if args.json:
        print(dumps(rows))
    else:
        for r in rows:
            flag = "" if r["generated"] else "  (not generated)"
            print(f"{r['family']:18} params={r['params']:10} components={r['components']}{flag}")
    return OK


def cmd_invariant(args) -> int:
    d = parse_any(_read(args.pd_file))
    caps = Caps.parse(args.caps) if args.caps else Caps()
    if args.which == "lk":
        v = linking_matrix(d)
        _emit(args, "\n".join(" ".join(map(str, r)) for r in v), {"linking_matrix": v})
    elif args.which == "jones":
        v = jones(d, caps.bracket)
        _emit(args, f"{v}  (variable A; t = A^-4)", {"jones": v.to_json()})
    elif args.which == "homfly":
        v = homfly(d, caps.homfly)
        _emit(args, str(v), {"homfly": v.to_json()})
    else:
        p = unlink_profile(d, caps.bracket, caps.homfly)
        lines = [f"matches unlink: {p.matches_unlink}"]
        lines += [f"  {e['invariant']}: {e['status']}" for e in p.evidence]
        _emit(args, "\n".join(lines), p.to_json())
    return OK


def cmd_simplify(args) -> int:
    d = parse_any(_read(args.pd_file))
    end, moves = simplify(d, _budget(args))
    if args.json:
        print(dumps({"diagram": to_pd_json(end), "moves": [m.to_json() for m in moves]}))
    else:
        print(f"# {d.n_crossings} -> {end.n_crossings} crossings in {len(moves)} moves")
        sys.stdout.write(to_pd_text(end))
    return OK


def cmd_certify(args) -> int:
    d = parse_any(_read(args.pd_file))
    res = certify_unlink(d, _budget(args))
    if res.certified:
        if args.cert_out:
            with open(args.cert_out, "w", encoding="utf-8") as f:
                f.write(res.certificate.dumps() + "\n")
        _emit(args, f"Certified: unlink of {d.n_components} components, "
                    f"{len(res.certificate.moves)} moves",
              {"status": "Certified", "certificate": res.certificate.to_json()})
        return OK
    _emit(args, f"Unknown: {res.reason} (best {res.best_crossings} crossings)",
          {"status": UNKNOWN, "reason": res.reason, "best_crossings": res.best_crossings})
    return UNDECIDED


def cmd_verify(args) -> int:
    d = parse_any(_read(args.pd_file))
    b = _budget(args)
    caps = Caps.parse(args.caps) if args.caps else Caps()
    if args.recursive:
        res = verify_recursive(d, b, caps)
        doc = recursive_json(d, res, b, caps)
        top = res[tuple(d.component_ids)]["verdict"]
        human = "\n".join(f"{','.join(map(str, k))}: {v['verdict']}" for k, v in
                          sorted(res.items(), key=lambda kv: (len(kv[0]), kv[0])))
    else:
        rep = verify_brunnian(d, b, caps, try_trivial=not args.no_full)
        doc = report_json(d, rep, b, caps)
        top = rep.verdict
        lines = [f"verdict: {top}"]
        for c, s in rep.st.entries:
            lines.append(f"  without component {c}: {s['status']}")
        ev = rep.nt.evidence
        lines.append(f"  nontriviality: {ev['invariant'] if ev else 'no invariant fired'}")
        for e in rep.nt.checked:
            if e["status"] == "skipped":
                lines.append(f"  skipped {e['invariant']}: {e['reason']}")
        human = "\n".join(lines)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(dumps(doc) + "\n")
    _emit(args, human, doc)
    want = {"any": (BRUNNIAN, TRIVIAL), "brunnian": (BRUNNIAN,), "trivial": (TRIVIAL,)}[args.expect]
    return OK if top in want else UNDECIDED


def cmd_replay(args) -> int:
    d = parse_any(_read(args.pd_file))
    cert = MoveCertificate.from_json(_read(args.cert_file))
    ok = replay(canonical_form(d), cert)
    print("true" if ok else "false")
    return OK if ok else UNDECIDED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brunnian", description="Brunnian link toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    def pd(sp):
        sp.add_argument("pd_file", nargs="?", default="-", help="PD text or JSON ('-' for stdin)")

    def js(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    g = sub.add_parser("gen", help="emit a family member as PD")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("params", nargs="*", type=int)
    js(g)
    g.set_defaults(fn=cmd_gen)

    c = sub.add_parser("catalog", help="list families")
    js(c)
    c.set_defaults(fn=cmd_catalog)

    i = sub.add_parser("invariant", help="compute an invariant")
    pd(i)
    i.add_argument("--which", choices=("lk", "jones", "homfly", "profile"), default="profile")
    i.add_argument("--caps", help="bracket,homfly crossing caps")
    js(i)
    i.set_defaults(fn=cmd_invariant)

    s = sub.add_parser("simplify", help="reduce crossings by move search")
    pd(s)
    s.add_argument("--budget", type=int)
    js(s)
    s.set_defaults(fn=cmd_simplify)

    u = sub.add_parser("certify-unlink", help="search for an unlinking certificate")
    pd(u)
    u.add_argument("--budget", type=int)
    u.add_argument("--cert-out", help="write the certificate here")
    js(u)
    u.set_defaults(fn=cmd_certify)

    v = sub.add_parser("verify", help="check the Brunnian property")
    pd(v)
    v.add_argument("--recursive", action="store_true")
    v.add_argument("--budget", type=int)
    v.add_argument("--caps", help="bracket,homfly crossing caps")
    v.add_argument("--expect", choices=("any", "brunnian", "trivial"), default="any")
    v.add_argument("--no-full", action="store_true", help="skip unlinking the whole link")
    v.add_argument("--report", help="also write the JSON report here")
    js(v)
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("replay", help="replay a certificate")
    r.add_argument("pd_file")
    r.add_argument("cert_file")
    r.set_defaults(fn=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (BrunnianError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
