"""Finite ternary operations stored as operation 3-tensors.

A :class:`Tensor3` on ``{1..n}`` is kept as a flat tuple of 0-based values,
``table[(i*n + j)*n + k] = [i, j, k] - 1``.  Everything that leaves the
library (files, reports, ``matrices()``) is 1-based so it reads like the
printed matrices: matrix ``i``, row ``j``, column ``k`` holds ``[i, j, k]``.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Sequence


class TribracketError(Exception):
    """Base class for errors raised by this package."""


class StructureError(TribracketError):
    """A table is malformed: wrong size or an entry outside ``{1..n}``."""


class AxiomError(TribracketError):
    """A well-formed table fails an axiom an operation needs."""


class ParameterError(TribracketError):
    """Invalid generator parameters."""


@dataclass(frozen=True)
class Tensor3:
    n: int
    table: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise StructureError(f"carrier size must be a positive integer, got {self.n!r}")
        table = tuple(self.table)
        if len(table) != self.n ** 3:
            raise StructureError(f"expected {self.n ** 3} entries, got {len(table)}")
        for pos, v in enumerate(table):
            if not isinstance(v, int) or not 0 <= v < self.n:
                i, rest = divmod(pos, self.n * self.n)
                j, k = divmod(rest, self.n)
                raise StructureError(
                    f"entry ({i + 1},{j + 1},{k + 1}) = {_show(v)} is outside 1..{self.n}")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_matrices(cls, matrices: Sequence[Sequence[Sequence[int]]]):
        """Build from ``n`` 1-based ``n x n`` matrices."""
        n = len(matrices)
        flat = []
        for i, m in enumerate(matrices):
            if len(m) != n or any(len(row) != n for row in m):
                raise StructureError(f"matrix {i + 1} is not {n}x{n}")
            for row in m:
                for v in row:
                    if isinstance(v, bool) or not isinstance(v, int):
                        raise StructureError(f"non-integer entry {v!r} in matrix {i + 1}")
                    flat.append(v - 1)
        if n == 0:
            raise StructureError("empty tensor")
        return cls(n, tuple(flat))

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int, int], int]):
        """Materialize a 0-based operation ``f(a, b, c)``."""
        return cls(n, tuple(f(i, j, k) for i in range(n) for j in range(n) for k in range(n)))

    def __getitem__(self, abc):
        a, b, c = abc
        return self.table[(a * self.n + b) * self.n + c]

    def __call__(self, a: int, b: int, c: int) -> int:
        return self.table[(a * self.n + b) * self.n + c]

    def matrices(self) -> list:
        n = self.n
        return [[[self.table[(i * n + j) * n + k] + 1 for k in range(n)]
                 for j in range(n)] for i in range(n)]

    def swapped(self) -> "Tensor3":
        """The operation with its last two arguments exchanged."""
        return Tensor3.from_function(self.n, lambda a, b, c: self(a, c, b))

    def digest(self) -> str:
        body = f"{self.n}:" + ",".join(map(str, self.table))
        return hashlib.sha256(body.encode()).hexdigest()[:12]

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, matrices={self.matrices()})"


class VerticalTensor3(Tensor3):
    """Same storage as :class:`Tensor3`; entry ``(i, j, k)`` means ``<i, j, k>``."""


def _show(v):
    return v + 1 if isinstance(v, int) else v


@dataclass
class AxiomReport:
    """Outcome of an exhaustive axiom check.

    ``violations`` holds every counterexample found, with carrier elements
    written 1-based.
    """

    name: str
    violations: list = field(default_factory=list)
    children: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and all(c.ok for c in self.children)

    def __bool__(self):
        return self.ok

    def failing(self) -> list:
        out = [self] if self.violations else []
        for c in self.children:
            out.extend(c.failing())
        return out

    def to_dict(self) -> dict:
        d = {"name": self.name, "ok": self.ok, "violations": [list(v) for v in self.violations]}
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    def render(self, limit: int = 10) -> str:
        lines = []
        self._render(lines, 0, limit)
        return "\n".join(lines)

    def _render(self, lines, depth, limit):
        pad = "  " * depth
        status = "ok" if self.ok else "FAIL"
        extra = f" ({len(self.violations)} violations)" if self.violations else ""
        lines.append(f"{pad}{self.name}: {status}{extra}")
        for v in self.violations[:limit]:
            lines.append(f"{pad}  {v}")
        if len(self.violations) > limit:
            lines.append(f"{pad}  ... {len(self.violations) - limit} more")
        for c in self.children:
            c._render(lines, depth + 1, limit)


AXES = ("alpha", "beta", "gamma")


def line_violations(op: Callable[[int, int, int], int], n: int) -> list:
    """Every (axis, x, y) whose line through the cube is not a permutation."""
    bad = []
    full = set(range(n))
    for x in range(n):
        for y in range(n):
            if {op(x, y, z) for z in range(n)} != full:
                bad.append(("alpha", x + 1, y + 1))
            if {op(x, z, y) for z in range(n)} != full:
                bad.append(("beta", x + 1, y + 1))
            if {op(z, x, y) for z in range(n)} != full:
                bad.append(("gamma", x + 1, y + 1))
    return bad


def check_invertibility(t: Tensor3) -> AxiomReport:
    """Latin-cube check: z -> [x,y,z], [x,z,y], [z,x,y] are all bijections."""
    _require_tensor(t)
    return AxiomReport("invertibility", line_violations(t, t.n))


def check_r3_identity(t: Tensor3) -> AxiomReport:
    """Exhaustive check of [c,[a,b,c],[a,c,d]] = [b,[a,b,c],[a,b,d]] = [d,[a,b,d],[a,c,d]]."""
    _require_tensor(t)
    n = t.n
    bad = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        abc, abd, acd = t(a, b, c), t(a, b, d), t(a, c, d)
        lhs = t(c, abc, acd)
        mid = t(b, abc, abd)
        rhs = t(d, abd, acd)
        if not lhs == mid == rhs:
            bad.append((a + 1, b + 1, c + 1, d + 1))
    return AxiomReport("r3-identity", bad)


def is_tribracket(t: Tensor3) -> bool:
    # the identity check is n^4, skip it when the cheap test already fails
    return check_invertibility(t).ok and check_r3_identity(t).ok


def _require_tensor(t):
    if not isinstance(t, Tensor3):
        raise StructureError(f"expected a Tensor3, got {type(t).__name__}")


def _invert_alpha(t: Tensor3, cls):
    n = t.n
    out = [0] * n ** 3
    for a in range(n):
        for b in range(n):
            seen = [None] * n
            for c in range(n):
                v = t(a, b, c)
                if seen[v] is not None:
                    raise AxiomError(
                        f"z -> op({a + 1},{b + 1},z) is not a bijection; cannot invert")
                seen[v] = c
            for v, c in enumerate(seen):
                out[(a * n + b) * n + v] = c
    return cls(n, tuple(out))


def to_vertical(t: Tensor3) -> VerticalTensor3:
    """The companion operation with ``[a, b, <a, b, c>] = c``."""
    return _invert_alpha(t, VerticalTensor3)


def to_horizontal(v: VerticalTensor3) -> Tensor3:
    """Inverse of :func:`to_vertical`: ``<a, b, [a, b, c]> = c``."""
    return _invert_alpha(v, Tensor3)


def check_vertical_r3(v: Tensor3) -> AxiomReport:
    """Identity (ii) for vertical tribrackets, checked over all quadruples."""
    n = v.n
    bad = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        abc = v(a, b, c)
        bcd = v(b, c, d)
        first = v(a, b, bcd) == v(a, abc, v(abc, c, d))
        second = v(abc, c, d) == v(v(a, b, bcd), bcd, d)
        if not (first and second):
            bad.append((a + 1, b + 1, c + 1, d + 1))
    return AxiomReport("vertical-r3-identity", bad)


# --- groups and generators -------------------------------------------------


@dataclass(frozen=True)
class GroupTable:
    """A finite group as a 0-based multiplication table."""

    mul: tuple
    identity: int
    inverse: tuple
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.mul)

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]], name: str = "", one_based: bool = False):
        shift = 1 if one_based else 0
        mul = tuple(tuple(v - shift for v in row) for row in rows)
        m = len(mul)
        if m == 0 or any(len(r) != m for r in mul):
            raise ParameterError("group table must be square and nonempty")
        if any(not 0 <= v < m for r in mul for v in r):
            raise ParameterError("group table entry out of range")
        ident = next((e for e in range(m)
                      if all(mul[e][x] == x and mul[x][e] == x for x in range(m))), None)
        if ident is None:
            raise ParameterError("group table has no identity")
        inv = []
        for x in range(m):
            y = next((y for y in range(m) if mul[x][y] == ident and mul[y][x] == ident), None)
            if y is None:
                raise ParameterError(f"element {x + shift} has no inverse")
            inv.append(y)
        for x, y, z in itertools.product(range(m), repeat=3):
            if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                raise ParameterError(f"not associative at ({x + shift},{y + shift},{z + shift})")
        return cls(mul, ident, tuple(inv), name)


def cyclic_group(m: int) -> GroupTable:
    return GroupTable.from_table([[(x + y) % m for y in range(m)] for x in range(m)], f"Z{m}")


def product_group(g: GroupTable, h: GroupTable) -> GroupTable:
    elems = [(x, y) for x in range(g.order) for y in range(h.order)]
    index = {e: i for i, e in enumerate(elems)}
    rows = [[index[(g.mul[x1][x2], h.mul[y1][y2])] for (x2, y2) in elems] for (x1, y1) in elems]
    return GroupTable.from_table(rows, f"{g.name}x{h.name}")


def symmetric_group_s3() -> GroupTable:
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    rows = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    return GroupTable.from_table(rows, "S3")


def small_groups(max_order: int = 6) -> list:
    """One table per isomorphism class of groups of order <= 6 (max 6)."""
    groups = [cyclic_group(m) for m in range(1, min(max_order, 6) + 1)]
    if max_order >= 4:
        groups.append(product_group(cyclic_group(2), cyclic_group(2)))
    if max_order >= 6:
        groups.append(symmetric_group_s3())
    return groups


def gen_dehn(g: GroupTable) -> Tensor3:
    """Dehn tribracket ``[x, y, z] = y x^-1 z``."""
    if not isinstance(g, GroupTable):
        raise ParameterError("gen_dehn needs a GroupTable")
    mul, inv = g.mul, g.inverse
    return Tensor3.from_function(g.order, lambda x, y, z: mul[mul[y][inv[x]]][z])


@dataclass(frozen=True)
class AlexanderParams:
    """``[a, b, c] = x b + y c - x y a`` over ``Z_n`` with units ``x``, ``y``."""

    n: int
    x: int
    y: int

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"modulus must be >= 2, got {self.n}")
        for label, v in (("x", self.x), ("y", self.y)):
            if gcd(v % self.n, self.n) != 1:
                raise ParameterError(f"{label}={v} is not a unit mod {self.n}")

    def __call__(self, a: int, b: int, c: int) -> int:
        n, x, y = self.n, self.x, self.y
        return (x * b + y * c - x * y * a) % n


def gen_alexander(p: AlexanderParams) -> Tensor3:
    if not isinstance(p, AlexanderParams):
        raise ParameterError("gen_alexander needs AlexanderParams")
    return Tensor3.from_function(p.n, p)


def alexander_params(n: int) -> Iterable[AlexanderParams]:
    """All valid parameter pairs for modulus ``n``."""
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    for x in units:
        for y in units:
            yield AlexanderParams(n, x, y)
