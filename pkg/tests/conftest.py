"""Shared literal tensors, typed in by hand so tests do not trust bundled files."""

import pytest

from tribracket.io import load_example
from tribracket.moveset import MultiTribracket
from tribracket.tensor import AlexanderParams, Tensor3, gen_alexander

TWO_A = [[[1, 2], [2, 1]], [[2, 1], [1, 2]]]
TWO_B = [[[2, 1], [1, 2]], [[1, 2], [2, 1]]]

MC3_OP0 = [[[1, 2, 3], [3, 1, 2], [2, 3, 1]],
           [[2, 3, 1], [1, 2, 3], [3, 1, 2]],
           [[3, 1, 2], [2, 3, 1], [1, 2, 3]]]
MC3_OP1 = [[[1, 3, 2], [3, 2, 1], [2, 1, 3]],
           [[3, 2, 1], [2, 1, 3], [1, 3, 2]],
           [[2, 1, 3], [1, 3, 2], [3, 2, 1]]]

TABLE3_OP0 = [[[1, 3, 2], [2, 1, 3], [3, 2, 1]],
              [[2, 1, 3], [3, 2, 1], [1, 3, 2]],
              [[3, 2, 1], [1, 3, 2], [2, 1, 3]]]
# the three printed matrices of the companion operation, in display order
TABLE3_OP1 = [[[2, 1, 3], [1, 3, 2], [3, 2, 1]],
              [[1, 3, 2], [3, 2, 1], [2, 1, 3]],
              [[3, 2, 1], [2, 1, 3], [1, 3, 2]]]

# virtual pair as printed (vertical notation)
VIRTUAL_OP0 = MC3_OP0
VIRTUAL_OP1 = [[[2, 3, 1], [1, 2, 3], [3, 1, 2]],
               [[3, 1, 2], [2, 3, 1], [1, 2, 3]],
               [[1, 2, 3], [3, 1, 2], [2, 3, 1]]]

FOUR_OP0_FIRST = [[2, 3, 4, 1], [3, 4, 1, 2], [4, 1, 2, 3], [1, 2, 3, 4]]
WELDED_OP0_FIRST = [[4, 1, 2, 5, 3], [1, 2, 3, 4, 5], [2, 3, 5, 1, 4],
                    [5, 4, 1, 3, 2], [3, 5, 4, 2, 1]]

HOPF = "X[4,1,3,2] X[2,3,1,4]"
TREFOIL = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"


@pytest.fixture
def alex512():
    return MultiTribracket.for_preset("classical",
                                      {"0": gen_alexander(AlexanderParams(5, 1, 2))})


@pytest.fixture
def two_a():
    return MultiTribracket.for_preset("classical", {"0": Tensor3.from_matrices(TWO_A)})


@pytest.fixture
def mc3():
    return MultiTribracket.for_preset("multicomponent", load_example("multicomponent_3").ops)


@pytest.fixture
def virtual3():
    return MultiTribracket.for_preset("virtual", load_example("virtual_3").ops)


@pytest.fixture
def welded5():
    return MultiTribracket.for_preset("welded", load_example("welded_5").ops)


# criterion number -> (ok, detail), filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
