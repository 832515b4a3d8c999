"""Counting-invariant tables over a list of links, with orientation search."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .counting import count_backtrack
from .diagram import TypedDiagram, reverse_components
from .moveset import MultiTribracket


@dataclass
class LinkResult:
    name: str
    counts: list  # (reversed component indices, count) for each orientation tried
    value: int | None
    orientation: tuple
    expected: list | None = None
    error: str | None = None

    @property
    def match(self) -> bool | None:
        if self.expected is None or self.value is None:
            return None
        return self.value in self.expected

    def to_dict(self) -> dict:
        d = {"link": self.name, "count": self.value, "reversed": list(self.orientation),
             "orientation_counts": sorted({c for _, c in self.counts})}
        if self.expected is not None:
            d["expected"] = self.expected
            d["match"] = self.match
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class TableReport:
    results: list
    tribracket: str
    preset: str
    meta: dict = field(default_factory=dict)

    @property
    def rows(self) -> list:
        groups = {}
        for r in self.results:
            if r.value is not None:
                groups.setdefault(r.value, []).append(r.name)
        return sorted(groups.items())

    @property
    def mismatches(self) -> list:
        return [r for r in self.results if r.match is False]

    def render(self) -> str:
        lines = [f"Phi  | links   ({self.preset}, tribracket {self.tribracket})", "-----+------"]
        for value, names in self.rows:
            lines.append(f"{value:>4} | {', '.join(names)}")
        errors = [r for r in self.results if r.error]
        for r in errors:
            lines.append(f"error  {r.name}: {r.error}")
        if any(r.expected is not None for r in self.results):
            bad = self.mismatches
            lines.append(f"matches printed table: {len(self.results) - len(bad) - len(errors)}"
                         f"/{len(self.results)}")
            for r in bad:
                got = sorted({c for _, c in r.counts})
                lines.append(f"  {r.name}: printed {r.expected}, computed {got}")
        return "\n".join(lines)

    def records(self) -> list:
        base = {"tribracket": self.tribracket, "preset": self.preset, **self.meta}
        return [{**base, **r.to_dict()} for r in self.results]


def orientations(d: TypedDiagram, policy: str = "all") -> list:
    """Subsets of components to reverse: all of them, or just the given orientation."""
    if policy == "as-is":
        return [()]
    k = len(d.components)
    subsets = []
    for size in range(k + 1):
        subsets.extend(itertools.combinations(range(k), size))
    return subsets


def link_result(d: TypedDiagram, mt: MultiTribracket, preset: str, policy="all",
                expected=None, **kw) -> LinkResult:
    try:
        counts = []
        for sub in orientations(d, policy):
            dd = reverse_components(d, sub) if sub else d
            counts.append((sub, count_backtrack(dd, mt, preset, **kw).value))
    except Exception as exc:  # reported inline, the table goes on
        return LinkResult(d.name, [], None, (), expected, f"{type(exc).__name__}: {exc}")
    chosen = counts[0]
    if expected:
        chosen = next((c for c in counts if c[1] in expected), counts[0])
    return LinkResult(d.name, counts, chosen[1], chosen[0], expected)


def _job(args):
    d, mt, preset, policy, expected = args
    return link_result(d, mt, preset, policy, expected)


def compute_table(links, mt: MultiTribracket, preset: str, expected: dict | None = None,
                  policy: str = "all", jobs: int = 1) -> TableReport:
    """``expected`` maps link name -> list of acceptable printed values."""
    expected = expected or {}
    args = [(d, mt, preset, policy, expected.get(d.name)) for d in links]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_job, args))
    else:
        results = [_job(a) for a in args]
    results.sort(key=lambda r: _name_key(r.name))
    return TableReport(results, mt.digest(), preset, {"orientation_policy": policy})


def _name_key(name: str):
    import re

    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def expected_values(table: dict) -> dict:
    """Turn ``{"rows": {value: [links]}}`` or ``{"values": {link: [v]}}`` into link -> values."""
    out = {}
    for value, names in table.get("rows", {}).items():
        for name in names:
            out.setdefault(name, []).append(int(value))
    for name, values in table.get("values", {}).items():
        out.setdefault(name, []).extend(values)
    return out
