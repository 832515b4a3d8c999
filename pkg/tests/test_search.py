import itertools

import pytest

from conftest import MC3_OP0, TWO_A, TWO_B
from tribracket.io import load_example
from tribracket.search import (SearchError, SearchSpec, count_structures, enumerate_structures,
                               search_companion)
from tribracket.tensor import AlexanderParams, Tensor3, gen_alexander, is_tribracket


def tables(spec, **kw):
    return [mt.ops["0"].matrices() for mt in enumerate_structures(spec, **kw)]


def test_n1_single_structure():
    for preset in ("classical", "multicomponent", "virtual", "welded"):
        assert len(list(enumerate_structures(SearchSpec(1, preset)))) == 1


def test_n2_matches_brute_force_and_literals():
    brute = [Tensor3(2, bits).matrices() for bits in itertools.product(range(2), repeat=8)
             if is_tribracket(Tensor3(2, bits))]
    got = tables(SearchSpec(2))
    assert got == [TWO_A, TWO_B]
    assert got == brute


def test_pruning_off_gives_same_set():
    assert tables(SearchSpec(2, prune=False)) == tables(SearchSpec(2))


def test_n3_regression_count():
    total, _ = count_structures(SearchSpec(3))
    assert total == 12


def test_parallel_split_is_deterministic():
    assert tables(SearchSpec(3), jobs=2) == tables(SearchSpec(3))


def test_companion_contains_printed_operation():
    mc = load_example("multicomponent_3")
    found = [mt.ops["1"] for mt in search_companion(mc.ops["0"], "multicomponent")]
    assert mc.ops["1"] in found
    assert mc.ops["0"] in found  # the collapsed pair always completes


def test_welded_companion_contains_printed_operation():
    w = load_example("welded_5")
    found = [mt.ops["1"] for mt in search_companion(w.ops["0"], "welded")]
    assert w.ops["1"] in found


def test_guard_and_errors():
    with pytest.raises(SearchError):
        SearchSpec(6)
    with pytest.raises(SearchError):
        SearchSpec(4, "multicomponent")
    assert SearchSpec(4, "multicomponent", force=True).free == ["0", "1"]
    assert SearchSpec(5).free == ["0"]
    with pytest.raises(SearchError):
        SearchSpec(0)
    bad = Tensor3(3, (0,) * 27)
    with pytest.raises(SearchError):
        SearchSpec(3, "multicomponent", fixed={"0": bad})
    with pytest.raises(SearchError):
        SearchSpec(2, "multicomponent", fixed={"0": Tensor3.from_matrices(MC3_OP0)})
    with pytest.raises(SearchError):
        list(search_companion(gen_alexander(AlexanderParams(3, 1, 1)), "classical"))


def test_results_sorted_lexicographically():
    got = [mt.ops["0"].table for mt in enumerate_structures(SearchSpec(3))]
    assert got == sorted(got)
