"""Typed crossing sets, typed Reidemeister move sets and multi-tribrackets.

A move set lists obligations such as ``II'[CP,CN]`` or ``III[V,CP,V]``.  Each
obligation is an exhaustive condition on the operations bound to its types;
:func:`check_obligation` verifies it and lists counterexamples.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Mapping

from .tensor import AxiomReport, Tensor3, TribracketError, line_violations

KINDS = ("I", "I'", "II", "II'", "II''", "III", "III'")
ARITY = {"I": 1, "I'": 1, "II": 2, "II'": 2, "II''": 2, "III": 3, "III'": 3}


class MoveSetError(TribracketError):
    """Bad move set definition or an unbound crossing type."""


@dataclass(frozen=True)
class MoveObligation:
    kind: str
    types: tuple

    def __post_init__(self):
        if self.kind not in ARITY:
            raise MoveSetError(f"unknown move kind {self.kind!r}")
        object.__setattr__(self, "types", tuple(self.types))
        if len(self.types) != ARITY[self.kind]:
            raise MoveSetError(
                f"{self.kind} takes {ARITY[self.kind]} type(s), got {len(self.types)}")

    def __str__(self):
        return f"{self.kind}[{','.join(self.types)}]"

    @classmethod
    def parse(cls, text: str) -> "MoveObligation":
        m = re.fullmatch(r"\s*(I{1,3}'{0,2})\s*\[\s*([^\]]*)\]\s*", text)
        if not m:
            raise MoveSetError(f"cannot parse move {text!r}")
        return cls(m.group(1), tuple(s.strip() for s in m.group(2).split(",") if s.strip()))


@dataclass(frozen=True)
class MoveSet:
    name: str
    types: tuple
    obligations: tuple

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(self.types))
        object.__setattr__(self, "obligations", tuple(self.obligations))
        for ob in self.obligations:
            for t in ob.types:
                if t not in self.types:
                    raise MoveSetError(f"{ob} uses type {t!r} not in {self.types}")

    def __contains__(self, ob):
        return ob in self.obligations

    def to_dict(self) -> dict:
        return {"name": self.name, "types": list(self.types),
                "obligations": [str(ob) for ob in self.obligations]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "MoveSet":
        try:
            obs = []
            for item in d["obligations"]:
                if isinstance(item, str):
                    obs.append(MoveObligation.parse(item))
                else:
                    obs.append(MoveObligation(item["kind"], tuple(item["types"])))
            return cls(d.get("name", "custom"), tuple(d["types"]), tuple(obs))
        except (KeyError, TypeError) as exc:
            raise MoveSetError(f"malformed move set: {exc}") from exc


def load_moveset(path) -> MoveSet:
    with open(path) as fh:
        return MoveSet.from_dict(json.load(fh))


def _obs(spec: str):
    return tuple(MoveObligation.parse(s) for s in spec.split(";") if s.strip())


_PRESETS = {
    "classical": (
        ("CP", "CN"),
        "I[CP]; I[CN]; I'[CP]; I'[CN]; II[CP,CN]; II[CN,CP]; II'[CP,CN]; II'[CN,CP];"
        "III[CP,CP,CP]",
    ),
    "multicomponent": (
        ("SP", "SN", "MP", "MN"),
        "I[SP]; I[SN]; I'[SP]; I'[SN];"
        "II[SP,SN]; II[SN,SP]; II'[SP,SN]; II'[SN,SP];"
        "II[MP,MN]; II[MN,MP]; II'[MP,MN]; II'[MN,MP];"
        "III[SP,SP,SP]; III[SP,MP,MP]; III[MP,SP,MP]; III[MP,MP,SP]; III[MP,MP,MP]",
    ),
    "virtual": (
        ("CP", "CN", "V"),
        "I[CP]; I[CN]; I[V]; I'[CP]; I'[CN]; I'[V];"
        "II[CP,CN]; II[CN,CP]; II[V,V]; II'[CP,CN]; II'[CN,CP]; II'[V,V];"
        "III[CP,CP,CP]; III[V,CP,V]; III[V,V,V]",
    ),
    "welded": (
        ("CP", "CN", "V"),
        "I[CP]; I[CN]; I[V]; I'[CP]; I'[CN]; I'[V];"
        "II[CP,CN]; II[CN,CP]; II[V,V]; II'[CP,CN]; II'[CN,CP]; II'[V,V];"
        "III[CP,CP,CP]; III[CP,CP,V]; III[V,CP,V]; III[V,V,V]",
    ),
}

PRESETS = tuple(_PRESETS)

# crossing type -> (operation label, swap last two arguments)
DEFAULT_BINDINGS = {
    "classical": {"CP": ("0", False), "CN": ("0", True)},
    "multicomponent": {"SP": ("0", False), "SN": ("0", True),
                       "MP": ("1", False), "MN": ("1", True)},
    "virtual": {"CP": ("0", False), "CN": ("0", True), "V": ("1", False)},
    "welded": {"CP": ("0", False), "CN": ("0", True), "V": ("1", False)},
}


def builtin_moveset(name: str) -> MoveSet:
    try:
        types, spec = _PRESETS[name]
    except KeyError:
        raise MoveSetError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return MoveSet(name, types, _obs(spec))


@dataclass
class MultiTribracket:
    """Operations indexed by label, plus the type -> operation binding of a move set."""

    ops: dict
    moveset: MoveSet
    binding: dict
    _resolved: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        sizes = {t.n for t in self.ops.values()}
        if len(sizes) != 1:
            raise MoveSetError(f"operations disagree on carrier size: {sorted(sizes)}")
        for ty, (label, _swap) in self.binding.items():
            if label not in self.ops:
                raise MoveSetError(f"type {ty} bound to missing operation {label!r}")

    @property
    def n(self) -> int:
        return next(iter(self.ops.values())).n

    @classmethod
    def for_preset(cls, preset: str, ops: Mapping[str, Tensor3], binding=None):
        """Bind ``ops`` with the preset's default binding.

        A single-operation family used with a two-operation preset binds the
        sole operation everywhere (the collapsed pair).
        """
        ms = builtin_moveset(preset)
        binding = dict(binding or DEFAULT_BINDINGS[preset])
        ops = dict(ops)
        if "1" not in ops and any(label == "1" for label, _ in binding.values()):
            ops["1"] = ops["0"]
        return cls(ops, ms, binding)

    def op(self, crossing_type: str) -> Tensor3:
        """The resolved operation at a crossing type (argument swap applied)."""
        if crossing_type not in self._resolved:
            try:
                label, swap = self.binding[crossing_type]
            except KeyError:
                raise MoveSetError(f"crossing type {crossing_type!r} is not bound") from None
            t = self.ops[label]
            self._resolved[crossing_type] = t.swapped() if swap else t
        return self._resolved[crossing_type]

    def digest(self) -> str:
        parts = [f"{k}:{self.ops[k].digest()}" for k in sorted(self.ops)]
        return "+".join(parts)


def _check_I(x, n):
    # [a,b,b]_x = c always defines c; kept for completeness of the move list
    return [(a + 1, b + 1) for a in range(n) for b in range(n) if not 0 <= x(a, b, b) < n]


def _check_I_prime(x, n):
    bad = []
    for a in range(n):
        hits = [0] * n
        for c in range(n):
            hits[x(c, a, a)] += 1
        bad.extend((a + 1, b + 1) for b in range(n) if hits[b] != 1)
    return bad


def _check_II(x, y, n):
    # forall a,b,d exists! c: [a,b,c]_x = [a,c,b]_y = d
    bad = []
    for a, b in itertools.product(range(n), repeat=2):
        hits = [0] * n
        for c in range(n):
            d = x(a, b, c)
            if y(a, c, b) == d:
                hits[d] += 1
        bad.extend((a + 1, b + 1, d + 1) for d in range(n) if hits[d] != 1)
    return bad


def _check_II_prime(x, y, n):
    # forall a,b,c exists! d: [a,b,c]_x = [a,c,b]_y = d
    return [(a + 1, b + 1, c + 1) for a, b, c in itertools.product(range(n), repeat=3)
            if x(a, b, c) != y(a, c, b)]


def _check_II_double(x, y, n):
    # forall b,c,d exists! a: [a,b,c]_x = [a,c,b]_y = d
    bad = []
    for b, c in itertools.product(range(n), repeat=2):
        hits = [0] * n
        for a in range(n):
            d = x(a, b, c)
            if y(a, c, b) == d:
                hits[d] += 1
        bad.extend((b + 1, c + 1, d + 1) for d in range(n) if hits[d] != 1)
    return bad


def _check_III(x, y, z, n):
    bad = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        abc, abd, acd = x(a, b, c), y(a, b, d), z(a, c, d)
        if not z(b, abc, abd) == y(c, abc, acd) == x(d, abd, acd):
            bad.append((a + 1, b + 1, c + 1, d + 1))
    return bad


def _check_III_prime(x, y, z, n):
    bad = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        abc, adb, acd = x(a, b, c), z(a, d, b), y(a, c, d)
        if not y(b, abc, adb) == z(c, abc, acd) == x(d, adb, acd):
            bad.append((a + 1, b + 1, c + 1, d + 1))
    return bad


_CHECKS = {
    "I": _check_I, "I'": _check_I_prime,
    "II": _check_II, "II'": _check_II_prime, "II''": _check_II_double,
    "III": _check_III, "III'": _check_III_prime,
}


def check_obligation(mt: MultiTribracket, ob: MoveObligation) -> AxiomReport:
    ops = [mt.op(t) for t in ob.types]
    return AxiomReport(str(ob), _CHECKS[ob.kind](*ops, mt.n))


def check_multitribracket(mt: MultiTribracket) -> AxiomReport:
    """Invertibility of every operation plus every obligation of the move set."""
    report = AxiomReport(f"{mt.moveset.name} multi-tribracket")
    for label in sorted(mt.ops):
        t = mt.ops[label]
        report.children.append(AxiomReport(f"invertibility[{label}]", line_violations(t, t.n)))
    for ob in mt.moveset.obligations:
        report.children.append(check_obligation(mt, ob))
    return report
