"""Reidemeister moves on typed diagrams.

Moves act on the rotation system directly, so every result is re-validated
(including the planarity check for all-classical diagrams).  Sites:

* ``Move("I", ("edge", e))`` or ``("loop", k)``: add a kink on an edge or a
  free loop.  ``side`` says on which side of the strand the kink's loop
  lies; ``sign`` is +1/-1 for a classical crossing and None for virtual.
* ``Move("II", (item1, item2))``: push the first strand across the second
  inside a region they both bound.  An item is ``("edge", e, side)`` with
  side "left"/"right" of the edge's direction, or ``("loop", k, side)``
  (free loops run counterclockwise, so "left" is the inside).  ``over``
  names the strand (1 or 2) that passes over, or None for virtual.
* ``Move("III", region_id)``: slide a strand across a triangular region.
* ``Move("I-", x)`` / ``Move("II-", region_id)``: remove a kink / a bigon.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import Crossing, DiagramError, MoveError, TypedDiagram

LEFT, RIGHT = "left", "right"


@dataclass(frozen=True)
class Move:
    kind: str
    site: object
    sign: int | None = 1
    side: str = RIGHT
    over: int | None = 1

    def __str__(self):
        extra = ""
        if self.kind == "I":
            extra = f" side={self.side} " + ("virtual" if self.sign is None else f"sign={self.sign:+d}")
        elif self.kind == "II":
            extra = " virtual" if self.over is None else f" over={self.over}"
        return f"R{self.kind} at {self.site}{extra}"


def _fresh(d: TypedDiagram):
    labels = [e for e in d.edges if isinstance(e, int)]
    nxt = max(labels, default=0) + 1
    while True:
        yield nxt
        nxt += 1


def _build(d, crossings, loops, check=None) -> TypedDiagram:
    try:
        return TypedDiagram(crossings, loops, d.name, check_planar=check)
    except DiagramError as exc:
        raise MoveError(f"move produced an invalid diagram: {exc}") from exc


def _make_crossing(rays, under, virtual, tag=None) -> Crossing:
    """Crossing from counterclockwise rays ``(edge, incoming, strand)``.

    Slot 0 goes to the incoming ray of strand ``under`` (for virtual
    crossings that is just the designated strand).
    """
    start = next(i for i, (_e, inc, s) in enumerate(rays) if inc and s == under)
    rays = rays[start:] + rays[:start]
    second = next(i for i, (_e, inc, _s) in enumerate(rays) if inc and i != 0)
    if second not in (1, 3):
        raise MoveError("incoming strands are not adjacent")
    return Crossing(tuple(e for e, _i, _s in rays), virtual, second, tag)


def _replace_slot(crossings, x, s, e):
    c = crossings[x]
    edges = list(c.edges)
    edges[s] = e
    crossings[x] = Crossing(tuple(edges), c.virtual, c.second_in, c.tag)


# --- RI -----------------------------------------------------------------------------


def add_kink(d: TypedDiagram, site, side=RIGHT, sign=1) -> TypedDiagram:
    fresh = _fresh(d)
    crossings = list(d.crossings)
    loops = d.loops
    kind = site[0]
    if kind == "edge":
        e = site[1]
        if e not in d.edge_ends:
            raise MoveError(f"no edge {e!r}")
        head = d.edge_ends[e][1]
        ea, lo, eb = e, next(fresh), next(fresh)
        _replace_slot(crossings, head[0], head[1], eb)
    elif kind == "loop":
        if not 0 <= site[1] < d.loops:
            raise MoveError(f"no free loop {site[1]}")
        loops -= 1
        ea = eb = next(fresh)
        lo = next(fresh)
    else:
        raise MoveError(f"bad RI site {site!r}")
    # counterclockwise rays p, q, r, s: p/q incoming, r/s outgoing
    if side == RIGHT:
        rays = [(ea, True, 1), (lo, True, 2), (lo, False, 1), (eb, False, 2)]
    elif side == LEFT:
        rays = [(lo, True, 2), (ea, True, 1), (eb, False, 2), (lo, False, 1)]
    else:
        raise MoveError(f"side must be left or right, got {side!r}")
    if sign is None:
        k = _make_crossing(rays, 1, True)
    else:
        # positive: the strand entering at q is under; negative: at p
        under = rays[1][2] if sign > 0 else rays[0][2]
        k = _make_crossing(rays, under, False)
        if k.sign != sign:
            raise MoveError("internal: kink sign mismatch")
    crossings.append(k)
    return _build(d, crossings, loops)


# --- RII ----------------------------------------------------------------------------


def item_region(d: TypedDiagram, item) -> int:
    kind, ref, side = item
    if kind == "edge":
        (x, s), _ = d.edge_ends[ref]
        return d.region_at(x, s) if side == LEFT else d.region_at(x, (s - 1) % 4)
    if kind == "loop":
        if side == LEFT:
            return next(r.id for r in d.regions if r.loop == ref)
        return d.outer_region
    raise MoveError(f"bad item {item!r}")


def add_bigon(d: TypedDiagram, item1, item2, over=1) -> TypedDiagram:
    if item1[:2] == item2[:2]:
        raise MoveError("RII needs two different strands segments")
    for it in (item1, item2):
        if it[0] == "edge" and it[1] not in d.edge_ends:
            raise MoveError(f"no edge {it[1]!r}")
        if it[0] == "loop" and not 0 <= it[1] < d.loops:
            raise MoveError(f"no free loop {it[1]}")
        if it[2] not in (LEFT, RIGHT):
            raise MoveError(f"bad side in {it!r}")
    if item_region(d, item1) != item_region(d, item2):
        raise MoveError("the two segments do not bound a common region")
    fresh = _fresh(d)
    crossings = list(d.crossings)
    loops = d.loops

    def split(item):
        kind, ref, side = item
        nonlocal loops
        if kind == "edge":
            head = d.edge_ends[ref][1]
            a, m, b = ref, next(fresh), next(fresh)
            _replace_slot(crossings, head[0], head[1], b)
        else:
            loops -= 1
            a = b = next(fresh)
            m = next(fresh)
        # "rightward" in the local picture where strand 1 is above the region
        return a, m, b, side

    a1, m1, b1, side1 = split(item1)
    a2, m2, b2, side2 = split(item2)
    r1 = side1 == RIGHT
    r2 = side2 == LEFT
    # X rays ccw: E, NW, W, SE ; Y rays ccw: E, NE, W, SW
    if r1:
        x_nw, x_se, y_sw, y_ne = (a1, True), (m1, False), (m1, True), (b1, False)
    else:
        y_ne, y_sw, x_se, x_nw = (a1, True), (m1, False), (m1, True), (b1, False)
    if r2:
        x_w, x_e, y_w, y_e = (a2, True), (m2, False), (m2, True), (b2, False)
    else:
        y_e, y_w, x_e, x_w = (a2, True), (m2, False), (m2, True), (b2, False)
    xr = [x_e + (2,), x_nw + (1,), x_w + (2,), x_se + (1,)]
    yr = [y_e + (2,), y_ne + (1,), y_w + (2,), y_sw + (1,)]
    if over is None:
        cx, cy = _make_crossing(xr, 1, True), _make_crossing(yr, 1, True)
    else:
        under = 2 if over == 1 else 1
        cx, cy = _make_crossing(xr, under, False), _make_crossing(yr, under, False)
    crossings += [cx, cy]
    return _build(d, crossings, loops)


# --- RIII ---------------------------------------------------------------------------


def triangle(d: TypedDiagram, region_id: int):
    """Corners ``(x, i)`` of a triangular region with three distinct crossings."""
    regs = d.regions
    if not 0 <= region_id < len(regs):
        raise MoveError(f"no region {region_id}")
    corners = regs[region_id].corners
    if len(corners) != 3 or len({x for x, _ in corners}) != 3:
        raise MoveError(f"region {region_id} is not a triangle with three crossings")
    # reorder along the face walk
    walk = [corners[0]]
    while len(walk) < 3:
        walk.append(d.next_corner(walk[-1]))
    if set(walk) != set(corners):
        raise MoveError(f"region {region_id} is not a single face")
    return walk


def triangle_kind(d: TypedDiagram, region_id: int) -> str:
    """'classical', 'virtual', 'mixed1' (one classical), 'welded' or 'forbidden'."""
    walk = triangle(d, region_id)
    virt = [d.crossings[x].virtual for x, _ in walk]
    # strand k is the triangle edge from walk[k] to walk[k+1]
    over = {}  # crossing position -> strand on top
    for k, (x, i) in enumerate(walk):
        if virt[k]:
            continue
        into, out = (k - 1) % 3, k  # strands at slots i and i+1
        over[k] = into if i % 2 == 1 else out
    nclass = 3 - sum(virt)
    if nclass == 0:
        return "virtual"
    if nclass == 1:
        return "mixed1"
    if nclass == 2:
        k1, k2 = over
        common = ({(k1 - 1) % 3, k1} & {(k2 - 1) % 3, k2}).pop()
        return "welded" if over[k1] == common and over[k2] == common else "forbidden"
    tops = [list(over.values()).count(s) for s in range(3)]
    return "classical" if sorted(tops) == [0, 1, 2] else "forbidden"


def slide_triangle(d: TypedDiagram, region_id: int) -> TypedDiagram:
    walk = triangle(d, region_id)
    crossings = list(d.crossings)
    fresh = _fresh(d)
    assign = {}
    for k in range(3):
        (x, i), (y, j) = walk[k], walk[(k + 1) % 3]
        sx_tri, sy_tri = (i + 1) % 4, j
        sx_out, sy_out = (sx_tri + 2) % 4, (sy_tri + 2) % 4
        ox, oy = d.crossings[x].edges[sx_out], d.crossings[y].edges[sy_out]
        t = next(fresh)
        assign[(x, sx_out)] = t
        assign[(y, sy_out)] = t
        assign[(x, sx_tri)] = oy
        assign[(y, sy_tri)] = ox
    for (x, s), e in assign.items():
        _replace_slot(crossings, x, s, e)
    return _build(d, crossings, d.loops)


# --- inverse moves ------------------------------------------------------------------


def _splice(d: TypedDiagram, remove) -> TypedDiagram:
    """Delete crossings, joining the edges each strand passes through."""
    parent = {e: e for e in d.edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for x in remove:
        c = d.crossings[x]
        for s in (0, 1):
            parent[find(c.edges[s])] = find(c.edges[s + 2])
    keep = [c for x, c in enumerate(d.crossings) if x not in remove]
    crossings = [Crossing(tuple(find(e) for e in c.edges), c.virtual, c.second_in, c.tag)
                 for c in keep]
    present = {e for c in crossings for e in c.edges}
    classes = {find(e) for e in d.edges}
    return _build(d, crossings, d.loops + len(classes - present))


def kink_sites(d: TypedDiagram) -> list:
    out = []
    for x, c in enumerate(d.crossings):
        for s in range(4):
            if d.partner[(x, s)] == (x, (s + 1) % 4):
                out.append(x)
                break
    return out


def remove_kink(d: TypedDiagram, x: int) -> TypedDiagram:
    if x not in kink_sites(d):
        raise MoveError(f"crossing {x} is not a kink")
    return _splice(d, {x})


def bigon_sites(d: TypedDiagram, virtual_ok=True) -> list:
    out = []
    for r in d.regions:
        if len(r.corners) != 2:
            continue
        (x, i), (y, j) = r.corners
        if x == y:
            continue
        cx, cy = d.crossings[x], d.crossings[y]
        if cx.virtual and cy.virtual and virtual_ok:
            out.append(r.id)
        elif not cx.virtual and not cy.virtual:
            # the edge leaving x at slot i+1 arrives at y at slot j; same strand on top
            # at both ends means slot parities match
            if (i + 1) % 2 == j % 2:
                out.append(r.id)
    return out


def remove_bigon(d: TypedDiagram, region_id: int) -> TypedDiagram:
    if region_id not in bigon_sites(d):
        raise MoveError(f"region {region_id} is not a removable bigon")
    (x, _), (y, _) = d.regions[region_id].corners
    return _splice(d, {x, y})


# --- dispatch -----------------------------------------------------------------------

_CLASSICAL_ONLY = ("classical", "multicomponent")
_TRIANGLES = {
    "classical": {"classical"},
    "multicomponent": {"classical"},
    "virtual": {"classical", "virtual", "mixed1"},
    "welded": {"classical", "virtual", "mixed1", "welded"},
}


def check_allowed(d: TypedDiagram, move: Move, preset: str) -> None:
    """Raise MoveError if ``move`` is not a move of ``preset``'s theory."""
    if preset not in _TRIANGLES:
        raise MoveError(f"no move rules for preset {preset!r}")
    if move.kind == "I" and move.sign is None and preset in _CLASSICAL_ONLY:
        raise MoveError(f"virtual kinks are not moves of the {preset} theory")
    if move.kind == "II" and move.over is None and preset in _CLASSICAL_ONLY:
        raise MoveError(f"virtual RII is not a move of the {preset} theory")
    if move.kind == "III":
        kind = triangle_kind(d, move.site)
        if kind not in _TRIANGLES[preset]:
            raise MoveError(f"{kind} triangle is not an RIII move of the {preset} theory")
    if move.kind == "II-":
        (x, _), (y, _) = d.regions[move.site].corners
        if d.crossings[x].virtual and preset in _CLASSICAL_ONLY:
            raise MoveError("virtual bigon in a classical theory")


def apply_move(d: TypedDiagram, move: Move, preset: str | None = None) -> TypedDiagram:
    if preset is not None:
        check_allowed(d, move, preset)
    if move.kind == "I":
        return add_kink(d, move.site, move.side, move.sign)
    if move.kind == "II":
        return add_bigon(d, move.site[0], move.site[1], move.over)
    if move.kind == "III":
        if triangle_kind(d, move.site) == "forbidden":
            raise MoveError("over/under pattern of this triangle does not allow RIII")
        return slide_triangle(d, move.site)
    if move.kind == "I-":
        return remove_kink(d, move.site)
    if move.kind == "II-":
        return remove_bigon(d, move.site)
    raise MoveError(f"unknown move kind {move.kind!r}")


def candidate_moves(d: TypedDiagram, preset: str) -> dict:
    """All legal moves of each kind for ``preset``."""
    virtual_ok = preset not in _CLASSICAL_ONLY
    signs = [1, -1] + ([None] if virtual_ok else [])
    overs = [1, 2] + ([None] if virtual_ok else [])
    ri_sites = [("edge", e) for e in d.edges] + [("loop", k) for k in range(d.loops)]
    out = {"I": [Move("I", s, sign, side) for s in ri_sites for side in (LEFT, RIGHT)
                 for sign in signs]}
    items = [("edge", e, side) for e in d.edges for side in (LEFT, RIGHT)]
    items += [("loop", k, side) for k in range(d.loops) for side in (LEFT, RIGHT)]
    by_region = {}
    for it in items:
        by_region.setdefault(item_region(d, it), []).append(it)
    out["II"] = [Move("II", (a, b), over=o) for group in by_region.values()
                 for a in group for b in group if a[:2] != b[:2] for o in overs]
    tri = []
    for r in d.regions:
        try:
            if triangle_kind(d, r.id) in _TRIANGLES[preset]:
                tri.append(Move("III", r.id))
        except MoveError:
            pass
    out["III"] = tri
    out["I-"] = [Move("I-", x) for x in kink_sites(d)
                 if virtual_ok or not d.crossings[x].virtual]
    out["II-"] = [Move("II-", r) for r in bigon_sites(d, virtual_ok)]
    return out


def random_move(d: TypedDiagram, preset: str, rng: random.Random, kinds=None) -> Move | None:
    cands = candidate_moves(d, preset)
    kinds = [k for k in (kinds or cands) if cands.get(k)]
    if not kinds:
        return None
    return rng.choice(cands[rng.choice(kinds)])
