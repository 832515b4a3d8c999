"""Built-in consistency checks run by ``tribracket selftest``.

Each check returns a :class:`CheckResult`; :func:`run_selftest` runs them all.
The corner-convention check is the important one: it replays random
Reidemeister moves and requires the count to stay put under the default
convention while a non-uniform variant is caught changing it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .counting import DEFAULT_CONVENTION, count_backtrack, count_linear, count_oracle
from .diagram import parse_diagram
from .io import builtin_diagrams, load_example
from .moves import apply_move, random_move
from .moveset import MultiTribracket, check_multitribracket
from .tensor import AlexanderParams, gen_alexander


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


HOPF = "X[4,1,3,2] X[2,3,1,4]"
SEEDS = ("X[4,1,3,2] X[2,3,1,4]", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", "O[] O[]", "O[]")


def invariance_structures() -> list:
    """(preset, multi-tribracket) pairs used for move-invariance trials."""
    out = [("classical", MultiTribracket.for_preset("classical",
                                                  {"0": gen_alexander(AlexanderParams(5, 1, 2))})),
           ("classical", MultiTribracket.for_preset("classical", load_example("two_element_a").ops))]
    for preset, name in (("multicomponent", "multicomponent_3"), ("virtual", "virtual_3"),
                         ("welded", "welded_5")):
        out.append((preset, MultiTribracket.for_preset(preset, load_example(name).ops)))
    return out


def move_trials(mt, preset, trials=100, seed=0, steps=4, max_crossings=9, **kw):
    """Random walks of typed moves; returns (trials run, list of failures)."""
    rng = random.Random(seed)
    seeds = [parse_diagram(s) for s in SEEDS]
    failures = []
    done = 0
    while done < trials:
        d = rng.choice(seeds)
        before = count_backtrack(d, mt, preset, **kw).value
        for _ in range(steps):
            if len(d) > max_crossings:
                break
            move = random_move(d, preset, rng)
            if move is None:
                break
            d2 = apply_move(d, move, preset)
            after = count_backtrack(d2, mt, preset, **kw).value
            done += 1
            if after != before:
                failures.append((d, move, before, after))
                break
            d = d2
            if done >= trials:
                break
    return done, failures


def check_hopf() -> CheckResult:
    mt = MultiTribracket.for_preset("classical", {"0": gen_alexander(AlexanderParams(5, 1, 2))})
    p = AlexanderParams(5, 1, 2)
    got = {}
    for name, text, want in (("Hopf", HOPF, 25), ("2-unlink", "O[] O[]", 125)):
        d = parse_diagram(text)
        vals = {count_backtrack(d, mt, "classical").value,
                count_oracle(d, mt, "classical").value,
                count_linear(d, p, "classical", mt=mt).value}
        got[name] = (vals, want)
    ok = all(vals == {want} for vals, want in got.values())
    detail = ", ".join(f"{k}={sorted(v)}" for k, (v, _) in got.items())
    return CheckResult("Hopf link 25 and 2-unlink 125, three solvers", ok, detail)


def check_structures() -> CheckResult:
    bad = [preset for preset, mt in invariance_structures() if not check_multitribracket(mt).ok]
    return CheckResult("bundled structures pass their move sets", not bad,
                       f"failing: {bad}" if bad else "")


def check_oracle(links=None) -> CheckResult:
    links = builtin_diagrams() if links is None else links
    small = [d for d in links if len(d) <= 4]
    if not small:
        return CheckResult("oracle equivalence", False, "missing data: no bundled link diagrams")
    bad = []
    pairs = 0
    for preset, mt in invariance_structures():
        if mt.n > 3:
            continue
        for d in small:
            if d.is_virtual and preset not in ("virtual", "welded"):
                continue
            pairs += 1
            if count_backtrack(d, mt, preset).value != count_oracle(d, mt, preset).value:
                bad.append(f"{d.name}/{preset}")
    return CheckResult("oracle equivalence", not bad, f"{pairs} pairs" + (f", failing {bad}" if bad else ""))


def check_links(links=None) -> CheckResult:
    links = builtin_diagrams() if links is None else links
    n = sum(1 for d in links if d.name.startswith("L"))
    if n == 0:
        return CheckResult("bundled link table", False, "missing data: link table is empty")
    return CheckResult("bundled link table", True, f"{n} links")


def check_invariance(trials=100, convention=DEFAULT_CONVENTION, flip=None) -> CheckResult:
    bad = []
    total = 0
    for i, (preset, mt) in enumerate(invariance_structures()):
        done, fails = move_trials(mt, preset, trials, seed=i, convention=convention, flip=flip)
        total += done
        bad += [f"{preset}: {m}" for _, m, _, _ in fails]
    label = "move invariance" + ("" if flip is None else f" (flip={flip})")
    return CheckResult(label, not bad, f"{total} moves" + (f", {len(bad)} changed the count" if bad else ""))


def check_convention_pin(trials=100) -> CheckResult:
    """A non-uniform b/c exchange must be caught by the invariance trials."""
    broken = check_invariance(trials, flip="negative")
    return CheckResult("non-uniform corner convention is detected", not broken.ok, broken.detail)


def run_selftest(trials=100, links=None, flip=None) -> list:
    """All checks; ``flip`` sabotages the invariance check to show it can fail."""
    return [check_hopf(), check_structures(), check_links(links), check_oracle(links),
            check_invariance(trials, flip=flip), check_convention_pin(trials)]
