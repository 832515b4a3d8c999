import itertools

import pytest

from conftest import MC3_OP0, TWO_A, TWO_B
from tribracket.tensor import (AlexanderParams, AxiomError, ParameterError, StructureError,
                               Tensor3, VerticalTensor3, alexander_params, check_invertibility,
                               check_r3_identity, check_vertical_r3, cyclic_group, gen_alexander,
                               gen_dehn, is_tribracket, small_groups, symmetric_group_s3,
                               to_horizontal, to_vertical)


def test_two_element_tensors_pass_both_axioms():
    for mats in (TWO_A, TWO_B):
        t = Tensor3.from_matrices(mats)
        assert check_invertibility(t).ok
        assert check_r3_identity(t).ok
        assert is_tribracket(t)


def test_constant_tensor_fails_invertibility():
    t = Tensor3(2, (0,) * 8)
    rep = check_invertibility(t)
    assert not rep.ok
    # every line in every direction is constant
    assert len(rep.violations) == 3 * 4


def test_alexander_5_1_2_is_latin_by_brute_force():
    t = gen_alexander(AlexanderParams(5, 1, 2))
    for x, y in itertools.product(range(5), repeat=2):
        for line in ([t(x, y, z) for z in range(5)], [t(x, z, y) for z in range(5)],
                     [t(z, x, y) for z in range(5)]):
            assert sorted(line) == list(range(5))
    assert check_invertibility(t).ok


def test_alexander_formula_entries():
    # [a,b,c] = b + 2c - 2a = 3a + b + 2c over Z_5 (1-based storage shifts by one)
    t = gen_alexander(AlexanderParams(5, 1, 2))
    for a, b, c in itertools.product(range(5), repeat=3):
        assert t(a, b, c) == (3 * a + b + 2 * c) % 5
    assert t.matrices()[0][0][0] == 1


def test_dehn_z3_passes_identity():
    assert check_r3_identity(gen_dehn(cyclic_group(3))).ok


def test_dehn_z2_is_first_two_element_tensor():
    assert gen_dehn(cyclic_group(2)).matrices() == TWO_A


def test_swapping_two_entries_breaks_identity():
    t = Tensor3.from_matrices(MC3_OP0)
    table = list(t.table)
    table[0], table[1] = table[1], table[0]
    bad = Tensor3(3, tuple(table))
    rep = check_r3_identity(bad)
    assert not rep.ok and rep.violations
    assert not is_tribracket(bad)


def test_singleton_is_tribracket():
    assert is_tribracket(Tensor3(1, (0,)))


def test_structural_errors_are_distinct():
    with pytest.raises(StructureError):
        Tensor3(2, (0,) * 7)
    with pytest.raises(StructureError):
        Tensor3.from_matrices([[[1, 3], [2, 1]], [[2, 1], [1, 2]]])
    with pytest.raises(StructureError):
        Tensor3.from_matrices([[[1, 2]], [[2, 1]]])
    with pytest.raises(StructureError):
        check_invertibility("not a tensor")
    assert not issubclass(StructureError, AxiomError)


def test_alexander_rejects_non_units():
    with pytest.raises(ParameterError):
        AlexanderParams(4, 2, 1)
    with pytest.raises(ParameterError):
        AlexanderParams(6, 1, 3)
    with pytest.raises(ParameterError):
        AlexanderParams(1, 0, 0)


def test_generators_give_tribrackets():
    for g in small_groups(6):
        assert is_tribracket(gen_dehn(g)), g.name
    for n in range(2, 8):
        for p in alexander_params(n):
            assert is_tribracket(gen_alexander(p)), p


def test_s3_dehn_is_not_alexander_shaped_but_valid():
    t = gen_dehn(symmetric_group_s3())
    assert t.n == 6 and is_tribracket(t)


def test_vertical_round_trip_and_identity():
    for n in range(2, 6):
        for p in alexander_params(n):
            t = gen_alexander(p)
            v = to_vertical(t)
            assert isinstance(v, VerticalTensor3)
            assert to_horizontal(v) == t
            for a, b, c in itertools.product(range(n), repeat=3):
                assert t(a, b, v(a, b, c)) == c
            assert check_vertical_r3(v).ok


def test_to_vertical_refuses_non_invertible():
    with pytest.raises(AxiomError):
        to_vertical(Tensor3(2, (0,) * 8))


def test_swapped_exchanges_last_arguments():
    t = gen_alexander(AlexanderParams(5, 1, 2))
    s = t.swapped()
    assert all(s(a, b, c) == t(a, c, b) for a, b, c in itertools.product(range(5), repeat=3))
    assert s.swapped() == t
