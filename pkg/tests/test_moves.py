import random

import pytest

from conftest import HOPF, TREFOIL
from tribracket.counting import count_backtrack
from tribracket.diagram import MoveError, isomorphic, parse_diagram
from tribracket.moves import (LEFT, RIGHT, Move, add_bigon, add_kink, apply_move, bigon_sites,
                              candidate_moves, check_allowed, item_region, kink_sites,
                              random_move, remove_bigon, remove_kink, triangle_kind)
from tribracket.selftest import invariance_structures, move_trials


def test_kink_then_remove_is_identity():
    d = parse_diagram(TREFOIL)
    for e in d.edges:
        for side in (LEFT, RIGHT):
            for sign in (1, -1):
                k = add_kink(d, ("edge", e), side, sign)
                assert len(k) == 4
                assert any(isomorphic(remove_kink(k, x), d) for x in kink_sites(k))


def test_kink_on_free_loop():
    d = parse_diagram("O[]")
    k = add_kink(d, ("loop", 0), LEFT, 1)
    assert k.loops == 0 and len(k) == 1
    assert len(k.regions) == 3


def test_bigon_then_remove_is_identity():
    d = parse_diagram(TREFOIL)
    items = [("edge", e, s) for e in d.edges for s in (LEFT, RIGHT)]
    tried = 0
    for a in items:
        for b in items:
            if a[1] == b[1] or item_region(d, a) != item_region(d, b):
                continue
            big = add_bigon(d, a, b, over=1)
            assert len(big) == 5
            assert any(isomorphic(remove_bigon(big, r), d) for r in bigon_sites(big))
            tried += 1
    assert tried > 0


def test_bigon_between_free_loops():
    d = parse_diagram("O[] O[]")
    big = add_bigon(d, ("loop", 0, RIGHT), ("loop", 1, RIGHT), over=1)
    assert len(big.components) == 2 and len(big) == 2


def test_triangle_slides_are_reversible():
    rng = random.Random(1)
    slides = 0
    for preset in ("classical", "virtual", "welded"):
        for _ in range(40):
            d = parse_diagram(rng.choice(["O[] O[] O[]", HOPF + " O[]"]))
            for _ in range(4):
                m = random_move(d, preset, rng, kinds=["II"])
                if m:
                    d = apply_move(d, m, preset)
            for m in candidate_moves(d, preset)["III"]:
                d2 = apply_move(d, m, preset)
                back = [r.id for r in d2.regions if len(r.corners) == 3
                        and triangle_kind(d2, r.id) != "forbidden"]
                assert any(isomorphic(apply_move(d2, Move("III", r)), d) for r in back)
                slides += 1
    assert slides >= 50


def test_preset_rules():
    d = parse_diagram(HOPF)
    with pytest.raises(MoveError):
        check_allowed(d, Move("I", ("edge", d.edges[0]), sign=None), "classical")
    check_allowed(d, Move("I", ("edge", d.edges[0]), sign=None), "virtual")
    with pytest.raises(MoveError):
        check_allowed(d, Move("II", (("edge", 1, LEFT), ("edge", 2, LEFT)), over=None),
                      "multicomponent")
    with pytest.raises(MoveError):
        check_allowed(d, Move("III", 0), "nonsense")


def test_alternating_triangle_is_forbidden():
    d = parse_diagram(TREFOIL)
    inner = [r.id for r in d.regions if len(r.corners) == 3]
    assert inner
    assert all(triangle_kind(d, r) == "forbidden" for r in inner)
    with pytest.raises(MoveError):
        apply_move(d, Move("III", inner[0]))


def test_counts_survive_moves_for_each_preset():
    for preset, mt in invariance_structures():
        done, failures = move_trials(mt, preset, trials=30, seed=11)
        assert done >= 30
        assert not failures, (preset, failures[:1])


def test_nonuniform_convention_is_caught():
    caught = 0
    for preset, mt in invariance_structures():
        _, failures = move_trials(mt, preset, trials=60, seed=5, flip="negative")
        caught += len(failures)
    assert caught > 0


def test_random_move_none_when_nothing_applies():
    d = parse_diagram("O[]")
    rng = random.Random(0)
    assert random_move(d, "classical", rng, kinds=["III"]) is None


def test_move_count_example(alex512):
    d = parse_diagram(HOPF)
    before = count_backtrack(d, alex512, "classical").value
    d2 = apply_move(d, Move("I", ("edge", 1), sign=-1, side=LEFT), "classical")
    assert count_backtrack(d2, alex512, "classical").value == before == 25
