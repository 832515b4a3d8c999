"""Region colorings of typed diagrams and the counting invariant.

At every crossing the four corner regions are read off by role (see
:meth:`TypedDiagram.corner_roles`) and the crossing posts one constraint
``[a, b, c]_type = d``.  Which roles fill ``a, b, c, d`` is the corner
convention; the default was pinned by move-invariance experiments and the
alternatives stay available so the self-test can show they break.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

from .diagram import TypedDiagram, classify_crossings
from .moveset import MultiTribracket, MoveSetError
from .tensor import AlexanderParams, ParameterError, Tensor3, TribracketError, gen_alexander


class CapExceeded(TribracketError):
    """Brute-force enumeration would exceed the configured cap."""


# role names for the (a, b, c, d) slots of [a, b, c] = d
CONVENTIONS = {
    "left-source-sink": ("left", "source", "sink", "right"),
    "left-sink-source": ("left", "sink", "source", "right"),
    "source-left-right": ("source", "left", "right", "sink"),
    "source-right-left": ("source", "right", "left", "sink"),
}
DEFAULT_CONVENTION = "left-source-sink"


@dataclass(frozen=True)
class ColoringConstraint:
    crossing: int
    regions: tuple  # (a, b, c, d)
    type: str
    label: str
    swap: bool
    op: Tensor3 = field(repr=False, compare=False, default=None)

    def holds(self, colors) -> bool:
        a, b, c, d = (colors[r] for r in self.regions)
        return self.op(a, b, c) == d


@dataclass(frozen=True)
class ColoringCount:
    value: int
    solver: str
    diagram: str
    tribracket: str
    elapsed: float = 0.0

    def __int__(self):
        return self.value

    def to_dict(self) -> dict:
        return {"count": self.value, "solver": self.solver, "diagram": self.diagram,
                "tribracket": self.tribracket, "elapsed": round(self.elapsed, 6)}


def build_constraints(d: TypedDiagram, mt: MultiTribracket, preset: str,
                      convention: str = DEFAULT_CONVENTION, flip=None) -> list:
    """One constraint per crossing.

    ``flip`` exchanges the b/c roles at some crossings: a set of crossing
    indices, or ``"negative"`` for every negative crossing.  It only exists
    to demonstrate that a non-uniform convention breaks invariance.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    roles = CONVENTIONS[convention]
    out = []
    for info in classify_crossings(d, preset):
        try:
            label, swap = mt.binding[info.type]
        except KeyError:
            raise MoveSetError(f"crossing type {info.type!r} is not bound") from None
        corner = d.corner_roles(info.index)
        a, b, c, r = (corner[k] for k in roles)
        if flip == "negative" and info.sign is not None and info.sign < 0 or (
                flip and flip != "negative" and info.index in flip):
            b, c = c, b
        out.append(ColoringConstraint(info.index, (a, b, c, r), info.type, label, swap,
                                      mt.op(info.type)))
    return out


def _free_regions(d: TypedDiagram, constraints) -> int:
    used = {r for con in constraints for r in con.regions}
    return len(d.regions) - len(used)


def count_oracle(d: TypedDiagram, mt: MultiTribracket, preset: str, cap: int = 10**7,
                 constraints=None, **kw) -> ColoringCount:
    """Enumerate every assignment of colors to regions."""
    t0 = time.perf_counter()
    cons = constraints if constraints is not None else build_constraints(d, mt, preset, **kw)
    n = mt.n
    nreg = len(d.regions)
    if n ** nreg > cap:
        raise CapExceeded(f"{n}^{nreg} assignments exceeds cap {cap}")
    total = 0
    for colors in itertools.product(range(n), repeat=nreg):
        if all(con.holds(colors) for con in cons):
            total += 1
    return ColoringCount(total, "oracle", d.digest(), mt.digest(), time.perf_counter() - t0)


def count_backtrack(d: TypedDiagram, mt: MultiTribracket, preset: str,
                    constraints=None, **kw) -> ColoringCount:
    """Backtracking with forcing: a constraint with one open region fixes it."""
    t0 = time.perf_counter()
    cons = constraints if constraints is not None else build_constraints(d, mt, preset, **kw)
    value = _solve(cons, len(d.regions), mt.n)
    return ColoringCount(value, "backtrack", d.digest(), mt.digest(), time.perf_counter() - t0)


def _solve(cons, nreg: int, n: int) -> int:
    used = sorted({r for con in cons for r in con.regions})
    free = nreg - len(used)
    if not cons:
        return n ** nreg
    by_region = {r: [] for r in used}
    for i, con in enumerate(cons):
        for r in set(con.regions):
            by_region[r].append(i)
    colors = [None] * nreg

    def candidates(con):
        """Values for the single open region of ``con`` (or None if more are open)."""
        regs = con.regions
        open_ = {r for r in regs if colors[r] is None}
        if len(open_) != 1:
            return None, None
        r = open_.pop()
        vals = []
        for v in range(n):
            colors[r] = v
            if con.holds(colors):
                vals.append(v)
        colors[r] = None
        return r, vals

    def propagate(start, trail):
        queue = list(by_region[start])
        while queue:
            con = cons[queue.pop()]
            if all(colors[r] is not None for r in con.regions):
                if not con.holds(colors):
                    return False
                continue
            r, vals = candidates(con)
            if r is None:
                continue
            if not vals:
                return False
            if len(vals) == 1:
                colors[r] = vals[0]
                trail.append(r)
                queue.extend(by_region[r])
        return True

    def pick():
        best, score = None, -1
        for r in used:
            if colors[r] is not None:
                continue
            s = sum(sum(colors[q] is not None for q in cons[i].regions) for i in by_region[r])
            if s > score:
                best, score = r, s
        return best

    def search() -> int:
        r = pick()
        if r is None:
            return 1
        total = 0
        for v in range(n):
            colors[r] = v
            trail = [r]
            if propagate(r, trail):
                total += search()
            for q in trail:
                colors[q] = None
        return total

    return search() * n ** free


# --- linear path for Alexander tribrackets --------------------------------------------


def _alexander_of(t: Tensor3, p: AlexanderParams) -> bool:
    return t == gen_alexander(p)


def count_linear(d: TypedDiagram, params: AlexanderParams, preset: str = "classical",
                 mt: MultiTribracket | None = None, convention: str = DEFAULT_CONVENTION,
                 flip=None) -> ColoringCount:
    """Count solutions of the linear system over Z_n for an Alexander tribracket.

    If ``mt`` is given, every one of its operations must be the Alexander
    tensor for ``params``.
    """
    t0 = time.perf_counter()
    tensor = gen_alexander(params)
    if mt is None:
        mt = MultiTribracket.for_preset(preset, {"0": tensor})
        if "1" in mt.ops:
            mt.ops["1"] = tensor
    else:
        for label, op in mt.ops.items():
            if not _alexander_of(op, params):
                raise ParameterError(f"operation {label!r} is not Alexander({params.n},{params.x},{params.y})")
    cons = build_constraints(d, mt, preset, convention=convention, flip=flip)
    n, x, y = params.n, params.x, params.y
    rows = []
    for con in cons:
        a, b, c, r = con.regions
        bx, cy = (y, x) if con.swap else (x, y)
        row = [0] * len(d.regions)
        row[a] -= x * y
        row[b] += bx
        row[c] += cy
        row[r] -= 1
        rows.append([v % n for v in row])
    value = solution_count(rows, len(d.regions), n)
    return ColoringCount(value, "linear", d.digest(), mt.digest(), time.perf_counter() - t0)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def solution_count(rows, ncols: int, n: int) -> int:
    """Number of x in Z_n^ncols with rows . x = 0 (mod n)."""
    if _is_prime(n):
        rank = _rank_mod_prime([r[:] for r in rows], ncols, n)
        return n ** (ncols - rank)
    diag = _diagonalize([r[:] for r in rows], ncols, n)
    total = n ** (ncols - len(diag))
    for g in diag:
        total *= math.gcd(g, n)
    return total


def _rank_mod_prime(m, ncols, p) -> int:
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[rank])]
        rank += 1
    return rank


def _diagonalize(m, ncols, n) -> list:
    """Reduce to diagonal form over Z_n with row and column operations.

    Returns the diagonal entries placed (one per pivot step, possibly zero).
    """
    rows = len(m)
    diag = []
    t = 0
    while t < min(rows, ncols):
        # bring some nonzero entry of the remaining block to (t, t)
        spot = next(((i, j) for i in range(t, rows) for j in range(t, ncols) if m[i][j] % n),
                    None)
        if spot is None:
            break
        i, j = spot
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            # Euclid down the column
            while any(m[i][t] for i in range(t + 1, rows)):
                k = min((i for i in range(t, rows) if m[i][t]), key=lambda i: m[i][t])
                m[t], m[k] = m[k], m[t]
                for i in range(t + 1, rows):
                    q = m[i][t] // m[t][t]
                    if q:
                        m[i] = [(v - q * w) % n for v, w in zip(m[i], m[t])]
            # Euclid along the row
            if not any(m[t][j] for j in range(t + 1, ncols)):
                break
            k = min((j for j in range(t, ncols) if m[t][j]), key=lambda j: m[t][j])
            for row in m:
                row[t], row[k] = row[k], row[t]
            for j in range(t + 1, ncols):
                q = m[t][j] // m[t][t]
                if q:
                    for row in m:
                        row[j] = (row[j] - q * row[t]) % n
        diag.append(m[t][t])
        t += 1
    return diag


SOLVERS = ("backtrack", "oracle", "linear")


def count(d: TypedDiagram, mt: MultiTribracket, preset: str, solver: str = "backtrack",
          params: AlexanderParams | None = None, cap: int = 10**7, **kw) -> ColoringCount:
    if solver == "backtrack":
        return count_backtrack(d, mt, preset, **kw)
    if solver == "oracle":
        return count_oracle(d, mt, preset, cap=cap, **kw)
    if solver == "linear":
        if params is None:
            params = alexander_params_of(mt)
        return count_linear(d, params, preset, mt=mt, **kw)
    raise ValueError(f"unknown solver {solver!r}")


def alexander_params_of(mt: MultiTribracket) -> AlexanderParams:
    """Find Alexander parameters matching every operation of ``mt``."""
    n = mt.n
    if n >= 2:
        for x in range(1, n):
            for y in range(1, n):
                if math.gcd(x, n) != 1 or math.gcd(y, n) != 1:
                    continue
                p = AlexanderParams(n, x, y)
                t = gen_alexander(p)
                if all(op == t for op in mt.ops.values()):
                    return p
    raise ParameterError("operations are not a single Alexander tribracket")
