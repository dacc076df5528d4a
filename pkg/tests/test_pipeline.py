import json

import pytest

from brunnian.cli import main
from brunnian.diagram import unlink
from brunnian.errors import PreconditionError, ResourceLimitError
from brunnian.families import FamilySpec, generate
from brunnian.pdio import to_pd_text
from brunnian.pipeline import (BRUNNIAN, TRIVIAL, UNKNOWN, Caps, check_nt, check_st, dumps,
                               recursive_json, report_json, verify_brunnian, verify_recursive)
from brunnian.search import SearchBudget
from conftest import CORPUS


def test_nt_hopf_by_linking():
    assert check_nt(CORPUS["hopf"]).evidence["invariant"] == "linking matrix"


def test_nt_borromean_by_jones():
    assert check_nt(CORPUS["borromean"]).evidence["invariant"] == "jones"


def test_nt_tube_skips_above_caps():
    nt = check_nt(generate(FamilySpec("tube", (2, 2))))
    assert nt.evidence is None
    assert {e["invariant"] for e in nt.checked if e["status"] == "skipped"} == {"jones", "homfly"}


def test_st_needs_two_components():
    with pytest.raises(PreconditionError):
        check_st(CORPUS["trefoil"])


@pytest.mark.parametrize("name", ["hopf", "borromean", "milnor3", "milnor4", "gen_whitehead",
                                  "brunn_chain3", "brunn_cycle2"])
def test_brunnian_verdicts(name):
    rep = verify_brunnian(CORPUS[name])
    assert rep.verdict == BRUNNIAN
    assert rep.full is None


def test_unlink_is_trivial():
    rep = verify_brunnian(unlink(4))
    assert rep.verdict == TRIVIAL and rep.nt.evidence is None


def test_whitehead_is_brunnian():
    assert verify_brunnian(CORPUS["whitehead"]).verdict == BRUNNIAN


def test_split_hopf_not_brunnian():
    from brunnian.diagram import disjoint_union
    rep = verify_brunnian(disjoint_union(CORPUS["hopf"], unlink(1)), SearchBudget(20000, 2, 64))
    assert not rep.st.all_certified
    assert rep.verdict == UNKNOWN


def test_no_full_leaves_unlink_unknown():
    assert verify_brunnian(unlink(3), try_trivial=False).verdict == UNKNOWN


def test_raised_caps_certify_communi6():
    d = generate(FamilySpec("communi6", ()))
    assert check_nt(d).evidence is None
    assert check_nt(d, Caps(40, 18)).evidence["invariant"] == "jones"


def test_recursive_borromean():
    res = verify_recursive(CORPUS["borromean"])
    assert all(v["verdict"] == TRIVIAL for k, v in res.items() if len(k) < 3)
    assert res[(1, 2, 3)]["verdict"] == BRUNNIAN


def test_recursive_milnor4():
    res = verify_recursive(CORPUS["milnor4"])
    assert res[(1, 2, 3, 4)]["verdict"] == BRUNNIAN
    assert sum(v["verdict"] == TRIVIAL for v in res.values()) == 14


def test_recursive_unknown_propagates():
    # a Hopf pair inside a 3-component link makes the top level Unknown
    from brunnian.diagram import disjoint_union
    res = verify_recursive(disjoint_union(CORPUS["hopf"], unlink(1)))
    assert res[(1, 2)]["verdict"] == BRUNNIAN
    assert res[(1, 2, 3)]["verdict"] == UNKNOWN


def test_recursive_component_cap():
    with pytest.raises(ResourceLimitError):
        verify_recursive(unlink(4), max_components=3)


def test_reports_are_deterministic():
    d = CORPUS["borromean"]
    b, c = SearchBudget.default(), Caps()
    a1 = dumps(report_json(d, verify_brunnian(d, b, c), b, c))
    a2 = dumps(report_json(d, verify_brunnian(d, b, c), b, c))
    assert a1 == a2 and "timings" not in a1
    r1 = dumps(recursive_json(d, verify_recursive(d, b, c), b, c))
    assert r1 == dumps(recursive_json(d, verify_recursive(d, b, c), b, c))


def test_caps_parse():
    assert Caps.parse("40,18") == Caps(40, 18)
    with pytest.raises(ValueError):
        Caps.parse("40")


# -- CLI --------------------------------------------------------------------

@pytest.fixture
def pd_file(tmp_path):
    def write(name, d):
        p = tmp_path / f"{name}.pd"
        p.write_text(to_pd_text(d))
        return str(p)
    return write


def test_cli_verify_exit_codes(pd_file, capsys):
    assert main(["verify", pd_file("b", CORPUS["borromean"])]) == 0
    cyc = pd_file("c", generate(FamilySpec("brunn_cycle", (4,))))
    assert main(["verify", "--no-full", cyc]) == 2
    assert main(["verify", "--expect", "trivial", pd_file("b", CORPUS["borromean"])]) == 2
    assert main(["verify", "--expect", "trivial", pd_file("u", unlink(2))]) == 0
    assert "BrunnianCertified" in capsys.readouterr().out


def test_cli_bad_input(tmp_path, capsys):
    p = tmp_path / "bad.pd"
    p.write_text("X 1 2 3 4\n")
    assert main(["verify", str(p)]) == 1
    assert main(["verify", str(tmp_path / "missing.pd")]) == 1
    assert main(["gen", "milnor", "1"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_certify_and_replay(pd_file, tmp_path, capsys):
    from brunnian.diagram import sublink
    src = pd_file("s", sublink(CORPUS["milnor3"], [1, 2]))
    cert = tmp_path / "c.json"
    assert main(["certify-unlink", src, "--cert-out", str(cert)]) == 0
    assert main(["replay", src, str(cert)]) == 0
    doc = json.loads(cert.read_text())
    doc["moves"] = doc["moves"][:-1]
    cert.write_text(json.dumps(doc))
    assert main(["replay", src, str(cert)]) == 2
    assert capsys.readouterr().out.strip().endswith("false")
    assert main(["certify-unlink", pd_file("t", CORPUS["trefoil"]), "--budget", "500"]) == 2


def test_cli_gen_roundtrip(capsys):
    assert main(["gen", "milnor", "3", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out


def test_cli_invariant_and_catalog(pd_file, capsys):
    src = pd_file("h", CORPUS["hopf"])
    assert main(["invariant", src, "--which", "lk", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["linking_matrix"] == [[0, 1], [1, 0]]
    assert main(["invariant", src, "--which", "jones"]) == 0
    assert main(["catalog", "--json"]) == 0
    assert "carpet" in capsys.readouterr().out


def test_cli_report_file(pd_file, tmp_path):
    src = pd_file("b", CORPUS["borromean"])
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    main(["verify", src, "--report", str(r1), "--json"])
    main(["verify", src, "--report", str(r2), "--json"])
    assert r1.read_bytes() == r2.read_bytes()
    assert json.loads(r1.read_text())["verdict"] == BRUNNIAN
