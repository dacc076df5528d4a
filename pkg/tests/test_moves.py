import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brunnian.diagram import canonical, canonical_form, validate
from brunnian.errors import PreconditionError, RewriteError
from brunnian.invariants import homfly, jones, linking_matrix
from brunnian.moves import Move, apply_move, enumerate_moves
from brunnian.search import MoveCertificate, SearchBudget, certify_unlink, replay
from conftest import CORPUS

SMALL = sorted(n for n, d in CORPUS.items() if d.n_crossings <= 8)
INVERSE = {"R1+": "R1-", "R2+": "R2-", "R3": "R3"}


def _undo_exists(d, after, kind):
    target = canonical(d)
    return any(canonical(apply_move(after, m)) == target
               for m in enumerate_moves(after, [INVERSE[kind]]))


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("kind", ["R1+", "R2+", "R3"])
def test_every_move_has_an_inverse(name, kind):
    d = canonical_form(CORPUS[name])
    moves = enumerate_moves(d, [kind])
    random.Random(kind + name).shuffle(moves)
    for m in moves[:12]:
        after = apply_move(d, m)
        assert validate(after).ok
        assert _undo_exists(d, after, kind), m


@pytest.mark.parametrize("name", SMALL)
def test_minus_moves_drop_crossings(name):
    d = canonical_form(CORPUS[name])
    for m in enumerate_moves(d, ["R1-", "R2-"]):
        drop = 1 if m.kind == "R1-" else 2
        assert apply_move(d, m).n_crossings == d.n_crossings - drop


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_random_moves_keep_invariants(name, seed):
    rng = random.Random(seed)
    d = canonical_form(CORPUS[name])
    j, lk, comps = jones(d), linking_matrix(d), d.n_components
    h = homfly(d) if d.n_crossings <= 6 else None
    for _ in range(4):
        ms = enumerate_moves(d)
        if not ms:
            break
        d = apply_move(d, rng.choice(ms))
        if d.n_crossings > 14:
            break
    assert d.n_components == comps
    assert linking_matrix(d) == lk
    assert jones(d) == j
    if h is not None and d.n_crossings <= 12:
        assert homfly(d) == h


def test_bad_site_raises():
    d = canonical_form(CORPUS["trefoil"])
    with pytest.raises(RewriteError):
        apply_move(d, Move("R1-", (999,)))
    with pytest.raises(RewriteError):
        Move.from_json({"kind": "R4", "site": []})


def _tangled_unknot():
    d = canonical_form(CORPUS["unknot-kink"])
    rng = random.Random(7)
    for _ in range(3):
        d = apply_move(d, rng.choice(enumerate_moves(d, ["R1+", "R2+"])))
    return d


def test_certificate_replays():
    d = _tangled_unknot()
    res = certify_unlink(d, SearchBudget(50000, 2, 64))
    assert res.certified
    cert = MoveCertificate.from_json(json.loads(res.certificate.dumps()))
    assert replay(d, cert)


def test_truncated_certificate_rejected():
    d = _tangled_unknot()
    cert = certify_unlink(d, SearchBudget(50000, 2, 64)).certificate
    assert cert.moves
    short = MoveCertificate(cert.initial, cert.moves[:-1], cert.final_free_loops)
    assert not replay(d, short)


def test_replay_wrong_start():
    cert = certify_unlink(_tangled_unknot()).certificate
    with pytest.raises(PreconditionError):
        replay(CORPUS["trefoil"], cert)


@pytest.mark.parametrize("name", ["trefoil", "figure8", "hopf", "borromean", "whitehead"])
def test_nontrivial_never_certified(name):
    res = certify_unlink(CORPUS[name], SearchBudget(20000, 2, 64))
    assert not res.certified and res.reason


def test_budget_exhaustion_reports_unknown():
    res = certify_unlink(CORPUS["figure8"], SearchBudget(5, 2, 64))
    assert not res.certified
    assert res.nodes <= 50
