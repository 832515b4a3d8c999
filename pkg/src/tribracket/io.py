"""Reading and writing the tensor file format.

A tensor file is a JSON document::

    {"n": 2, "ops": {"0": [[[1, 2], [2, 1]], [[2, 1], [1, 2]]]}}

``ops`` maps operation labels to ``n`` row-major ``n x n`` matrices, matrix
``i`` giving ``[i, j, k]`` at row ``j`` column ``k``, 1-based.  A lone
tribracket uses the label ``"0"``.  Optional keys: ``name``, ``preset``,
``binding`` (type -> [label, swap]), ``note`` and ``notation``.  With
``"notation": "vertical"`` the matrices give ``<i, j, k>``; they are converted
to horizontal operations on load and back again on save.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .tensor import (AxiomError, StructureError, Tensor3, TribracketError, VerticalTensor3,
                     to_horizontal, to_vertical)


class FormatError(TribracketError):
    """Input file could not be parsed."""


@dataclass
class TensorFile:
    n: int
    ops: dict
    name: str = ""
    preset: str | None = None
    binding: dict | None = None
    extra: dict = field(default_factory=dict)
    notation: str = "horizontal"

    def to_dict(self) -> dict:
        d = {}
        if self.name:
            d["name"] = self.name
        d["n"] = self.n
        if self.preset:
            d["preset"] = self.preset
        if self.binding:
            d["binding"] = {k: [lab, swap] for k, (lab, swap) in self.binding.items()}
        if self.notation == "vertical":
            d["notation"] = "vertical"
            d["ops"] = {k: to_vertical(self.ops[k]).matrices() for k in self.ops}
        else:
            d["ops"] = {k: self.ops[k].matrices() for k in self.ops}
        d.update(self.extra)
        return d

    def dumps(self) -> str:
        return dumps_tensor_dict(self.to_dict())


def dumps_tensor_dict(d: dict) -> str:
    """JSON with one matrix row per line, so files stay readable."""
    lines = ["{"]
    items = list(d.items())
    for idx, (key, value) in enumerate(items):
        comma = "," if idx < len(items) - 1 else ""
        if key == "ops":
            lines.append('  "ops": {')
            labels = list(value)
            for li, label in enumerate(labels):
                lines.append(f"    {json.dumps(label)}: [")
                mats = value[label]
                for mi, m in enumerate(mats):
                    rows = ",\n".join("        " + json.dumps(r) for r in m)
                    tail = "," if mi < len(mats) - 1 else ""
                    lines.append("      [\n" + rows + "\n      ]" + tail)
                lines.append("    ]" + ("," if li < len(labels) - 1 else ""))
            lines.append("  }" + comma)
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_tensor_dict(d: dict) -> TensorFile:
    if not isinstance(d, dict) or "ops" not in d or "n" not in d:
        raise FormatError("tensor document needs 'n' and 'ops'")
    n = d["n"]
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(d["ops"], dict) or not d["ops"]:
        raise FormatError("'ops' must be a nonempty mapping")
    ops = {}
    for label, mats in d["ops"].items():
        try:
            t = Tensor3.from_matrices(mats)
        except (StructureError, TypeError) as exc:
            raise FormatError(f"operation {label!r}: {exc}") from exc
        if t.n != n:
            raise FormatError(f"operation {label!r} has size {t.n}, expected {n}")
        ops[str(label)] = t
    notation = d.get("notation", "horizontal")
    if notation == "vertical":
        try:
            ops = {k: to_horizontal(VerticalTensor3(t.n, t.table)) for k, t in ops.items()}
        except AxiomError as exc:
            raise FormatError(f"vertical operation is not invertible: {exc}") from exc
    elif notation != "horizontal":
        raise FormatError(f"unknown notation {notation!r}")
    binding = None
    if "binding" in d:
        binding = {k: (str(v[0]), bool(v[1])) for k, v in d["binding"].items()}
    known = {"n", "ops", "name", "preset", "binding", "notation"}
    extra = {k: v for k, v in d.items() if k not in known}
    return TensorFile(n, ops, d.get("name", ""), d.get("preset"), binding, extra, notation)


def loads_tensor(text: str) -> TensorFile:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return parse_tensor_dict(d)


def read_tensor(path) -> TensorFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(str(exc)) from exc
    return loads_tensor(text)


def write_tensor(tf: TensorFile, path) -> None:
    Path(path).write_text(tf.dumps())


def single(t: Tensor3, name: str = "") -> TensorFile:
    return TensorFile(t.n, {"0": t}, name)


# --- bundled data ------------------------------------------------------------


def data_path(*parts) -> Path:
    return Path(__file__).parent.joinpath("data", *parts)


def example_names() -> list:
    return sorted(p.stem for p in data_path("tensors").glob("*.json"))


def load_example(name: str) -> TensorFile:
    path = data_path("tensors", f"{name}.json")
    if not path.exists():
        raise FormatError(f"no bundled tensor named {name!r}; have {', '.join(example_names())}")
    return read_tensor(path)


def builtin_diagrams() -> list:
    from .diagram import read_diagrams

    return read_diagrams(data_path("links.jsonl"))


def builtin_diagram(name: str):
    for d in builtin_diagrams():
        if d.name == name:
            return d
    raise FormatError(f"no bundled diagram named {name!r}")


def expected_tables() -> dict:
    """Printed invariant tables keyed by bundled tensor name."""
    import json

    return json.loads(data_path("tables.json").read_text())
