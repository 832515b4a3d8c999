import json

import pytest

from conftest import (FOUR_OP0_FIRST, MC3_OP0, MC3_OP1, TABLE3_OP0, TABLE3_OP1, TWO_A, TWO_B,
                      VIRTUAL_OP0, VIRTUAL_OP1, WELDED_OP0_FIRST)
from tribracket.io import (FormatError, TensorFile, builtin_diagram, builtin_diagrams,
                           example_names, load_example, loads_tensor, read_tensor, single,
                           write_tensor)
from tribracket.tensor import Tensor3, VerticalTensor3, to_horizontal


def test_bundled_examples_match_literals():
    assert load_example("two_element_a").ops["0"].matrices() == TWO_A
    assert load_example("two_element_b").ops["0"].matrices() == TWO_B
    mc = load_example("multicomponent_3")
    assert mc.ops["0"].matrices() == MC3_OP0 and mc.ops["1"].matrices() == MC3_OP1
    tb = load_example("multicomponent_3_table")
    assert tb.ops["0"].matrices() == TABLE3_OP0 and tb.ops["1"].matrices() == TABLE3_OP1
    assert load_example("multicomponent_4").ops["0"].matrices()[0] == FOUR_OP0_FIRST
    assert load_example("welded_5").ops["0"].matrices()[0] == WELDED_OP0_FIRST


def test_vertical_notation_is_converted_on_load():
    tf = load_example("virtual_3")
    assert tf.notation == "vertical"
    for label, mats in (("0", VIRTUAL_OP0), ("1", VIRTUAL_OP1)):
        v = Tensor3.from_matrices(mats)
        assert tf.ops[label] == to_horizontal(VerticalTensor3(v.n, v.table))
    again = loads_tensor(tf.dumps())
    assert again.ops == tf.ops
    assert json.loads(tf.dumps())["ops"]["1"] == VIRTUAL_OP1


def test_round_trip_every_example(tmp_path):
    for name in example_names():
        tf = load_example(name)
        path = tmp_path / f"{name}.json"
        write_tensor(tf, path)
        back = read_tensor(path)
        assert back.ops == tf.ops and back.binding == tf.binding and back.extra == tf.extra


def test_format_errors():
    with pytest.raises(FormatError):
        loads_tensor("{not json")
    with pytest.raises(FormatError):
        loads_tensor('{"n": 2}')
    with pytest.raises(FormatError):
        loads_tensor('{"n": 3, "ops": {"0": [[[1, 2], [2, 1]], [[2, 1], [1, 2]]]}}')
    with pytest.raises(FormatError):
        loads_tensor('{"n": 2, "ops": {"0": [[[1, 5], [2, 1]], [[2, 1], [1, 2]]]}}')
    with pytest.raises(FormatError):
        loads_tensor('{"n": 2, "notation": "diagonal", "ops": {"0": [[[1, 2], [2, 1]], [[2, 1], [1, 2]]]}}')
    with pytest.raises(FormatError):
        load_example("no_such_tensor")


def test_single_and_binding_serialization():
    t = Tensor3.from_matrices(TWO_A)
    tf = single(t, "x")
    assert loads_tensor(tf.dumps()).ops == {"0": t}
    tf2 = TensorFile(2, {"0": t}, binding={"CP": ("0", False), "CN": ("0", True)})
    assert loads_tensor(tf2.dumps()).binding == tf2.binding


def test_bundled_links_present():
    names = [d.name for d in builtin_diagrams()]
    table = ["L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1", "L7a1",
             "L7a2", "L7a3", "L7a4", "L7a5", "L7a6", "L7a7", "L7n1", "L7n2"]
    assert all(name in names for name in table)
    assert len(builtin_diagram("L7n2").crossings) == 7
    with pytest.raises(FormatError):
        builtin_diagram("L9a99")
