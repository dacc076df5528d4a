from importlib import resources

import pytest

from brunnian.diagram import canonical, sublink, validate
from brunnian.errors import CompositionError, PreconditionError
from brunnian.families import (BAAS_BLOCK, CLOSED_BLOCK, FAMILIES, FamilySpec, catalog, compose,
                               corpus, generate, milnor, tube)
from brunnian.invariants import jones, linking_matrix, unlink_jones
from brunnian.pdio import parse_any
from brunnian.search import SearchBudget, certify_unlink
from conftest import CORPUS

SMALL = [("milnor", (3,)), ("milnor", (4,)), ("brunn_chain", (3,)), ("brunn_chain", (4,)),
         ("brunn_cycle", (2,)), ("rubberband", (2,)), ("gen_whitehead", ()), ("borromean", ())]
FIXTURES = {"borromean": ("borromean", ()), "communi6": ("communi6", ()),
            "gen_whitehead": ("gen_whitehead", ()), "hopf": ("hopf", ()),
            "milnor3": ("milnor", (3,)), "rubberband2": ("rubberband", (2,))}
CROSSINGS = {("milnor", (5,)): 24, ("brunn_chain", (2,)): 2, ("brunn_cycle", (3,)): 24,
             ("rubberband", (3,)): 24, ("communi6", ()): 32, ("gen_whitehead", ()): 16,
             ("tube", (2, 2)): 70}


def _gen(f, p):
    return generate(FamilySpec(f, p))


@pytest.mark.parametrize("f,p", SMALL + [("tube", (2, 2)), ("communi6", ()), ("milnor", (6,))])
def test_components_and_zero_linking(f, p):
    d = _gen(f, p)
    assert validate(d).ok
    expect = {"tube": lambda: p[0] * p[1], "gen_whitehead": lambda: 3, "borromean": lambda: 3,
              "communi6": lambda: 6}.get(f, lambda: p[0])()
    assert d.n_components == expect
    assert not any(any(r) for r in linking_matrix(d))


@pytest.mark.parametrize("key,n", sorted(CROSSINGS.items()))
def test_crossing_counts(key, n):
    assert _gen(*key).n_crossings == n


@pytest.mark.parametrize("f,p", SMALL)
def test_each_component_unknotted(f, p):
    d = _gen(f, p)
    for c in d.component_ids:
        assert certify_unlink(sublink(d, [c]), SearchBudget(20000, 2, 64)).certified


@pytest.mark.parametrize("f,p", SMALL)
def test_deleting_any_component_unlinks(f, p):
    d = _gen(f, p)
    for c in d.component_ids:
        rest = sublink(d, [k for k in d.component_ids if k != c])
        assert certify_unlink(rest).certified, c


@pytest.mark.parametrize("f,p", SMALL)
def test_whole_link_nontrivial(f, p):
    d = _gen(f, p)
    assert jones(d) != unlink_jones(d.n_components)


def test_milnor2_is_hopf():
    assert canonical(milnor(2)) == canonical(CORPUS["hopf"])
    assert canonical(_gen("brunn_chain", (2,))) == canonical(CORPUS["hopf"])


def test_generation_deterministic():
    assert canonical(_gen("tube", (2, 2))) == canonical(_gen("tube", (2, 2)))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_files_match_generators(name):
    text = (resources.files("brunnian") / "corpus" / "v1" / f"{name}.pd").read_text()
    assert canonical(parse_any(text)) == canonical(_gen(*FIXTURES[name]))


@pytest.mark.parametrize("name", ["trefoil", "figure8"])
def test_knot_fixtures_match_corpus(name):
    text = (resources.files("brunnian") / "corpus" / "v1" / f"{name}.pd").read_text()
    assert canonical(parse_any(text)) == canonical(corpus()[name])


@pytest.mark.parametrize("f,p", [("milnor", (1,)), ("tube", (1, 3)), ("tube", (2,)),
                                 ("nope", ()), ("hopf", (2,))])
def test_bad_parameters(f, p):
    with pytest.raises(PreconditionError):
        _gen(f, p)


def test_compose_two_by_two_is_tube():
    assert canonical(compose([[BAAS_BLOCK] * 2] * 2)) == canonical(tube(2, 2))


def test_compose_rejects_rotated_tile():
    grid = [[BAAS_BLOCK, BAAS_BLOCK.rotated()], [BAAS_BLOCK, BAAS_BLOCK]]
    with pytest.raises(CompositionError, match=r"tile \(0,0\)"):
        compose(grid)


def test_compose_rejects_dangling_ports():
    with pytest.raises(CompositionError, match="dangling"):
        compose([[BAAS_BLOCK] * 2] * 2, "open")


def test_compose_rejects_ragged_grid():
    with pytest.raises(CompositionError):
        compose([[BAAS_BLOCK, BAAS_BLOCK], [BAAS_BLOCK]])
    with pytest.raises(PreconditionError):
        compose([[CLOSED_BLOCK]], "spiral")


def test_rotation_cycles():
    t = BAAS_BLOCK
    assert t.rotated().rotated().rotated().rotated().ports == t.ports
    assert t.rotated().port_count("N") == t.port_count("W")


def test_closed_block_is_unknot():
    d = _gen("baas_block_tangle", ())
    assert d.n_components == 1 and d.n_crossings == 0


def test_catalog_covers_families():
    names = {e.family for e in catalog()}
    assert set(FAMILIES) <= names
    carpet = next(e for e in catalog() if e.family == "carpet")
    assert not carpet.generated and carpet.components == "(m+n)(n-m+1)p/2"
