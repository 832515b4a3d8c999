"""Exhaustive search for (multi-)tribrackets on a small carrier.

Entries of the unknown operations are filled one at a time in (label, i, j,
k) lexicographic order, trying values in increasing order, so results come
out sorted by their concatenated tables.  Two kinds of pruning apply:

* Latin lines: a value may not repeat along any axis-line of its tensor.
* Obligation instances: every instance of every move obligation (one
  quadruple for III, one (a, b) group for II, ...) is evaluated as soon as
  all entries it reads are known.  An instance that hits an unknown entry is
  parked on a watch list for that entry and retried when it gets a value.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .moveset import (DEFAULT_BINDINGS, MoveObligation, MultiTribracket, TribracketError,
                      builtin_moveset, check_multitribracket)
from .tensor import Tensor3, is_tribracket


class SearchError(TribracketError):
    """Search spec is inconsistent or exceeds the feasibility guard."""


# free entries allowed without ``force``: one full 5-element tensor
GUARD_ENTRIES = 125


@dataclass
class SearchSpec:
    n: int
    preset: str = "classical"
    binding: dict | None = None
    fixed: dict = field(default_factory=dict)
    prune: bool = True
    force: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise SearchError("n must be positive")
        self.moveset = builtin_moveset(self.preset)
        self.binding = dict(self.binding or DEFAULT_BINDINGS[self.preset])
        for label, t in self.fixed.items():
            if t.n != self.n:
                raise SearchError(f"fixed operation {label!r} has size {t.n}, not {self.n}")
            if not is_tribracket(t):
                raise SearchError(f"fixed operation {label!r} is not a tribracket")
        labels = sorted({label for label, _ in self.binding.values()})
        self.labels = labels
        self.free = [lab for lab in labels if lab not in self.fixed]
        if not self.force and len(self.free) * self.n ** 3 > GUARD_ENTRIES:
            raise SearchError(
                f"{len(self.free)} free operation(s) of size {self.n} exceed the search guard; "
                "fix an operation or pass force=True")


class _Missing(Exception):
    def __init__(self, key):
        self.key = key


class _State:
    def __init__(self, spec: SearchSpec):
        self.spec = spec
        n = spec.n
        self.n = n
        self.tables = {}
        for label in spec.labels:
            if label in spec.fixed:
                self.tables[label] = list(spec.fixed[label].table)
            else:
                self.tables[label] = [None] * n ** 3
        self.resolve = {ty: spec.binding[ty] for ty in spec.moveset.types}
        self.instances = list(_instances(spec.moveset.obligations, n))
        self.watch = {}

    def lookup(self, ty, a, b, c):
        label, swap = self.resolve[ty]
        if swap:
            b, c = c, b
        idx = (a * self.n + b) * self.n + c
        v = self.tables[label][idx]
        if v is None:
            raise _Missing((label, idx))
        return v

    def evaluate(self, inst, parked):
        """True/False, parking the instance if it reads an unknown entry."""
        try:
            return inst[0](self, *inst[1:])
        except _Missing as m:
            self.watch.setdefault(m.key, []).append(inst)
            parked.append(m.key)
            return True


# --- obligation instances -----------------------------------------------------------


def _ev_line_I_prime(st, x, a):
    seen = {st.lookup(x, c, a, a) for c in range(st.n)}
    return len(seen) == st.n


def _ev_II(st, x, y, a, b):
    hits = [0] * st.n
    for c in range(st.n):
        d = st.lookup(x, a, b, c)
        if st.lookup(y, a, c, b) == d:
            hits[d] += 1
    return all(h == 1 for h in hits)


def _ev_II_prime(st, x, y, a, b, c):
    return st.lookup(x, a, b, c) == st.lookup(y, a, c, b)


def _ev_II_double(st, x, y, b, c):
    hits = [0] * st.n
    for a in range(st.n):
        d = st.lookup(x, a, b, c)
        if st.lookup(y, a, c, b) == d:
            hits[d] += 1
    return all(h == 1 for h in hits)


def _ev_III(st, x, y, z, a, b, c, d):
    abc, abd, acd = st.lookup(x, a, b, c), st.lookup(y, a, b, d), st.lookup(z, a, c, d)
    v = st.lookup(z, b, abc, abd)
    return st.lookup(y, c, abc, acd) == v and st.lookup(x, d, abd, acd) == v


def _ev_III_prime(st, x, y, z, a, b, c, d):
    abc, adb, acd = st.lookup(x, a, b, c), st.lookup(z, a, d, b), st.lookup(y, a, c, d)
    v = st.lookup(y, b, abc, adb)
    return st.lookup(z, c, abc, acd) == v and st.lookup(x, d, adb, acd) == v


def _instances(obligations, n):
    r = range(n)
    for ob in obligations:
        t = ob.types
        if ob.kind == "I":
            continue  # [a,b,b]_x = c defines c; nothing to check
        if ob.kind == "I'":
            yield from ((_ev_line_I_prime, t[0], a) for a in r)
        elif ob.kind == "II":
            yield from ((_ev_II, *t, a, b) for a in r for b in r)
        elif ob.kind == "II'":
            yield from ((_ev_II_prime, *t, a, b, c) for a in r for b in r for c in r)
        elif ob.kind == "II''":
            yield from ((_ev_II_double, *t, b, c) for b in r for c in r)
        elif ob.kind == "III":
            yield from ((_ev_III, *t, *q) for q in itertools.product(r, repeat=4))
        elif ob.kind == "III'":
            yield from ((_ev_III_prime, *t, *q) for q in itertools.product(r, repeat=4))


# --- the search -------------------------------------------------------------------


def _search(spec: SearchSpec, prefix=()):
    """Yield dicts label -> flat 0-based table for every solution extending ``prefix``."""
    st = _State(spec)
    n = st.n
    order = [(label, idx) for label in spec.free for idx in range(n ** 3)]
    # Latin line bookkeeping: used values per (label, axis, line)
    used = {}

    def lines(idx):
        a, rem = divmod(idx, n * n)
        b, c = divmod(rem, n)
        return ((0, b, c), (1, a, c), (2, a, b))

    def place(label, idx, v):
        keys = [(label,) + ln for ln in lines(idx)]
        if any(v in used.get(k, ()) for k in keys):
            return None
        for k in keys:
            used.setdefault(k, set()).add(v)
        st.tables[label][idx] = v
        return keys

    def unplace(label, idx, v, keys):
        for k in keys:
            used[k].discard(v)
        st.tables[label][idx] = None

    def consistent(key):
        """Re-run instances parked on ``key``; returns (ok, undo list)."""
        pending = st.watch.pop(key, [])
        parked = []
        ok = True
        done = 0
        for inst in pending:
            done += 1
            if not st.evaluate(inst, parked):
                ok = False
                break
        return ok, pending, done, parked

    def restore(key, pending, parked):
        for k in reversed(parked):
            st.watch[k].pop()
            if not st.watch[k]:
                del st.watch[k]
        if pending:
            st.watch[key] = pending

    if spec.prune:
        parked0 = []
        for inst in st.instances:
            if not st.evaluate(inst, parked0):
                return

    def complete_ok():
        for inst in st.instances:
            try:
                if not inst[0](st, *inst[1:]):
                    return False
            except _Missing:  # pragma: no cover - all entries are set here
                return False
        return True

    def rec(pos):
        if pos == len(order):
            if spec.prune or complete_ok():
                yield {lab: list(st.tables[lab]) for lab in spec.free}
            return
        label, idx = order[pos]
        values = range(n)
        if pos < len(prefix):
            values = (prefix[pos],)
        for v in values:
            if spec.prune:
                keys = place(label, idx, v)
                if keys is None:
                    continue
                ok, pending, done, parked = consistent((label, idx))
                if ok:
                    yield from rec(pos + 1)
                restore((label, idx), pending, parked)
                unplace(label, idx, v, keys)
            else:
                st.tables[label][idx] = v
                yield from rec(pos + 1)
                st.tables[label][idx] = None

    yield from rec(0)


def _to_mt(spec: SearchSpec, sol) -> MultiTribracket:
    ops = {}
    for label in spec.labels:
        if label in spec.fixed:
            ops[label] = spec.fixed[label]
        else:
            ops[label] = Tensor3(spec.n, tuple(sol[label]))
    return MultiTribracket(ops, spec.moveset, dict(spec.binding))


def _worker(args):
    spec, prefix = args
    return list(_search(spec, prefix))


def enumerate_structures(spec: SearchSpec, jobs: int = 1):
    """Yield every multi-tribracket matching ``spec``, in lexicographic order.

    Each result is re-verified with :func:`check_multitribracket` before it
    is emitted.
    """
    if not spec.free:
        mt = _to_mt(spec, {})
        if check_multitribracket(mt).ok:
            yield mt
        return
    if jobs > 1 and spec.n > 1:
        prefixes = [(v,) for v in range(spec.n)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_worker, [(spec, p) for p in prefixes])
            sols = [s for chunk in chunks for s in chunk]
    else:
        sols = _search(spec)
    for sol in sols:
        mt = _to_mt(spec, sol)
        if not check_multitribracket(mt).ok:
            raise AssertionError("search emitted a structure that fails verification")
        yield mt


def search_companion(fixed: Tensor3, preset: str = "multicomponent", **kw):
    """All operations "1" completing ``fixed`` (as operation "0") for ``preset``."""
    if preset == "classical":
        raise SearchError("the classical preset has a single operation")
    spec = SearchSpec(fixed.n, preset, fixed={"0": fixed}, **kw)
    yield from enumerate_structures(spec)


def count_structures(spec: SearchSpec, jobs: int = 1):
    t0 = time.perf_counter()
    total = sum(1 for _ in enumerate_structures(spec, jobs))
    return total, time.perf_counter() - t0
