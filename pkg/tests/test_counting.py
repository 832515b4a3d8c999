import itertools
import random

import pytest

from conftest import HOPF, TREFOIL
from tribracket.counting import (CONVENTIONS, CapExceeded, build_constraints, count,
                                 count_backtrack, count_linear, count_oracle, solution_count)
from tribracket.diagram import parse_diagram
from tribracket.io import builtin_diagram, builtin_diagrams
from tribracket.moveset import MoveSetError, MultiTribracket, builtin_moveset
from tribracket.tensor import AlexanderParams, ParameterError, alexander_params, gen_alexander

# coefficient rows of the two Hopf equations over Z_5, columns x1..x4, right side moved left
HOPF_ROWS = {(3, 1, 4, 2), (3, 2, 4, 1)}


def constraint_row(con, n=5, x=1, y=2):
    a, b, c, d = con.regions
    bx, cy = (y, x) if con.swap else (x, y)
    row = [0] * 4
    row[a] -= x * y
    row[b] += bx
    row[c] += cy
    row[d] -= 1
    return tuple(v % n for v in row)


def test_hopf_constraints_match_equations_up_to_relabeling(alex512):
    d = parse_diagram(HOPF)
    cons = build_constraints(d, alex512, "classical")
    assert len(cons) == 2
    rows = [constraint_row(c) for c in cons]
    matches = [p for p in itertools.permutations(range(4))
               if {tuple(r[p[i]] for i in range(4)) for r in rows} == HOPF_ROWS]
    assert matches


def test_unlink_has_no_constraints(alex512):
    assert build_constraints(parse_diagram("O[] O[]"), alex512, "classical") == []


def test_virtual_example_constraints(virtual3):
    d = builtin_diagram("virtual_example")
    cons = build_constraints(d, virtual3, "virtual")
    assert len(cons) == 4
    assert sum(c.type == "V" for c in cons) == 2
    assert {c.label for c in cons if c.type == "V"} == {"1"}


def test_constraint_regions_are_crossing_corners(mc3):
    for d in builtin_diagrams():
        if d.is_virtual:
            continue
        for con in build_constraints(d, mc3, "multicomponent"):
            corners = {d.region_at(con.crossing, i) for i in range(4)}
            assert set(con.regions) <= corners


def test_hopf_and_unlink_counts(alex512):
    p = AlexanderParams(5, 1, 2)
    for text, want in ((HOPF, 25), ("O[] O[]", 125)):
        d = parse_diagram(text)
        assert count_backtrack(d, alex512, "classical").value == want
        assert count_oracle(d, alex512, "classical").value == want
        assert count_linear(d, p).value == want


def test_virtual_counts(virtual3):
    assert count_backtrack(builtin_diagram("virtual_example"), virtual3, "virtual").value == 0
    assert count_oracle(builtin_diagram("virtual_example"), virtual3, "virtual").value == 0
    assert count_backtrack(parse_diagram("O[] O[]"), virtual3, "virtual").value == 27


def test_unknot_gives_n_squared():
    for n in (2, 3, 5, 7):
        p = AlexanderParams(n, 1, 1)
        mt = MultiTribracket.for_preset("classical", {"0": gen_alexander(p)})
        d = parse_diagram("O[]")
        assert count_oracle(d, mt, "classical").value == n * n
        assert count_linear(d, p).value == n * n


def test_oracle_matches_backtrack_on_trefoil(two_a):
    d = parse_diagram(TREFOIL)
    assert count_oracle(d, two_a, "classical").value == count_backtrack(d, two_a, "classical").value


def test_linear_matches_backtrack_l4a1():
    p = AlexanderParams(5, 1, 2)
    mt = MultiTribracket.for_preset("classical", {"0": gen_alexander(p)})
    d = builtin_diagram("L4a1")
    assert count_linear(d, p).value == count_backtrack(d, mt, "classical").value


def test_linear_composite_moduli():
    for n in (4, 6, 8, 9):
        for p in alexander_params(n):
            mt = MultiTribracket.for_preset("classical", {"0": gen_alexander(p)})
            for name in ("L2a1", "trefoil", "figure8", "L4a1"):
                d = builtin_diagram(name)
                assert count_linear(d, p).value == count_backtrack(d, mt, "classical").value


def test_solution_count_against_brute_force():
    rng = random.Random(7)
    for n in (2, 4, 6, 9):
        for _ in range(25):
            cols = rng.randint(1, 4)
            rows = [[rng.randrange(n) for _ in range(cols)] for _ in range(rng.randint(0, 3))]
            brute = sum(1 for v in itertools.product(range(n), repeat=cols)
                        if all(sum(r * x for r, x in zip(row, v)) % n == 0 for row in rows))
            assert solution_count(rows, cols, n) == brute, (n, rows)


def test_split_union_divides_by_n(alex512):
    hopf = parse_diagram(HOPF)
    tre = parse_diagram("X[11,15,12,14] X[13,11,14,16] X[15,13,16,12]")
    both = parse_diagram(HOPF + " X[11,15,12,14] X[13,11,14,16] X[15,13,16,12]")
    n = 5
    a = count_backtrack(hopf, alex512, "classical").value
    b = count_backtrack(tre, alex512, "classical").value
    assert count_backtrack(both, alex512, "classical").value * n == a * b
    for c in range(1, 5):
        d = parse_diagram(" ".join(["O[]"] * c))
        assert count_backtrack(d, alex512, "classical").value == n ** (c + 1)


def test_cap_exceeded(alex512):
    with pytest.raises(CapExceeded):
        count_oracle(builtin_diagram("L7a1"), alex512, "classical", cap=1000)


def test_unbound_type_is_an_error():
    t = gen_alexander(AlexanderParams(3, 1, 1))
    mt = MultiTribracket({"0": t}, builtin_moveset("classical"), {"CP": ("0", False)})
    with pytest.raises(MoveSetError):
        build_constraints(parse_diagram("X[4,1,3,2]- X[2,3,1,4]-"), mt, "classical")


def test_linear_rejects_non_alexander(two_a, mc3):
    with pytest.raises(ParameterError):
        count_linear(parse_diagram(HOPF), AlexanderParams(3, 1, 1), mt=two_a)
    # the dispatcher finds parameters when they exist and refuses otherwise
    assert count(parse_diagram(HOPF), two_a, "classical", "linear").value == \
        count_backtrack(parse_diagram(HOPF), two_a, "classical").value
    with pytest.raises(ParameterError):
        count(parse_diagram(HOPF), mc3, "multicomponent", "linear")


def test_count_provenance(alex512):
    res = count(parse_diagram(HOPF), alex512, "classical", "backtrack")
    rec = res.to_dict()
    assert rec["count"] == 25 and rec["solver"] == "backtrack"
    assert rec["diagram"] == parse_diagram(HOPF).digest()
    assert rec["tribracket"] == alex512.digest()
    with pytest.raises(ValueError):
        count(parse_diagram(HOPF), alex512, "classical", "magic")


def test_all_conventions_build():
    mt = MultiTribracket.for_preset("classical", {"0": gen_alexander(AlexanderParams(5, 1, 2))})
    for conv in CONVENTIONS:
        assert len(build_constraints(parse_diagram(HOPF), mt, "classical", convention=conv)) == 2
    with pytest.raises(ValueError):
        build_constraints(parse_diagram(HOPF), mt, "classical", convention="nope")
