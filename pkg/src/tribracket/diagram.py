"""Explicitly typed oriented link diagrams in extended PD notation.

Grammar (whitespace, commas or semicolons separate entries; an optional
``PD[...]`` wrapper is ignored)::

    X[a,b,c,d]        classical crossing, edges counterclockwise from the
                      incoming under-strand
    Xv[a,b,c,d]       virtual crossing, counterclockwise from a designated
                      incoming strand
    ...+  / ...-      optional suffix: the second incoming strand sits at
                      slot 4 (+) or slot 2 (-); for classical crossings this
                      is the crossing sign
    ...@TYPE          optional explicit crossing type tag
    O[]               a free loop (crossingless unknotted component)

Orientation comes from the incoming slot 1 of every crossing, then the sign
suffix, then edge numbering (labels increase along each component).

Internally every crossing knows which two of its slots are incoming: slot 0
and ``second_in`` (1 or 3).  Corner ``i`` of a crossing is the angular
sector between slot ``i`` and slot ``i + 1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path

from .tensor import TribracketError


class DiagramError(TribracketError):
    """Malformed or inconsistent diagram."""


class MoveError(DiagramError):
    """A move site does not satisfy the move's preconditions."""


@dataclass(frozen=True)
class Crossing:
    edges: tuple
    virtual: bool = False
    second_in: int = 3
    tag: str | None = None

    @property
    def sign(self) -> int | None:
        if self.virtual:
            return None
        return 1 if self.second_in == 3 else -1

    @property
    def incoming(self) -> tuple:
        return (0, self.second_in)

    def is_incoming(self, slot: int) -> bool:
        return slot == 0 or slot == self.second_in

    @property
    def first_in(self) -> int:
        """Incoming slot whose counterclockwise successor is the other incoming slot."""
        return 3 if self.second_in == 3 else 0


@dataclass(frozen=True)
class Region:
    id: int
    corners: tuple  # (crossing, corner) pairs
    loop: int | None = None  # free-loop interior

    @property
    def size(self) -> int:
        return len(self.corners)


@dataclass(frozen=True)
class CrossingInfo:
    index: int
    sign: int | None
    components: tuple  # (component of slot-0 strand, component of the other strand)
    type: str

    @property
    def virtual(self) -> bool:
        return self.sign is None

    @property
    def single_component(self) -> bool:
        return self.components[0] == self.components[1]


class TypedDiagram:
    """An oriented diagram: crossings with rotation data plus free loops.

    Instances are treated as immutable; derived data is cached.
    """

    def __init__(self, crossings, loops: int = 0, name: str = "", check_planar=None):
        self.crossings = tuple(crossings)
        self.loops = int(loops)
        self.name = name
        if self.loops < 0:
            raise DiagramError("negative loop count")
        self._validate()
        if check_planar is None:
            check_planar = not any(c.virtual for c in self.crossings)
        if check_planar:
            self._check_euler()

    # --- structure -----------------------------------------------------------

    def _validate(self):
        seen = {}
        for x, c in enumerate(self.crossings):
            if len(c.edges) != 4:
                raise DiagramError(f"crossing {x} does not have four edges")
            if c.second_in not in (1, 3):
                raise DiagramError(f"crossing {x}: second incoming slot must be 1 or 3")
            for s, e in enumerate(c.edges):
                seen.setdefault(e, []).append((x, s))
        for e, where in seen.items():
            if len(where) != 2:
                raise DiagramError(f"edge {e} appears {len(where)} times, expected 2")
            ins = [self.crossings[x].is_incoming(s) for x, s in where]
            if sorted(ins) != [False, True]:
                raise DiagramError(f"edge {e} is not incoming at exactly one end")
        self._slots = seen

    @cached_property
    def partner(self) -> dict:
        """(crossing, slot) -> the other (crossing, slot) carrying the same edge."""
        out = {}
        for e, (p, q) in self._slots.items():
            out[p] = q
            out[q] = p
        return out

    @cached_property
    def edge_ends(self) -> dict:
        """edge -> (tail slot, head slot); the tail is where the edge leaves."""
        out = {}
        for e, (p, q) in self._slots.items():
            if self.crossings[q[0]].is_incoming(q[1]):
                out[e] = (p, q)
            else:
                out[e] = (q, p)
        return out

    @property
    def edges(self) -> list:
        return sorted(self._slots, key=_edge_key)

    def next_edge(self, e):
        x, s = self.edge_ends[e][1]
        return self.crossings[x].edges[(s + 2) % 4]

    @cached_property
    def components(self) -> list:
        """Edge lists in orientation order, one per component with crossings."""
        comps = []
        done = set()
        for e in self.edges:
            if e in done:
                continue
            comp = []
            cur = e
            while cur not in done:
                done.add(cur)
                comp.append(cur)
                cur = self.next_edge(cur)
            comps.append(comp)
        return comps

    @cached_property
    def edge_component(self) -> dict:
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    @property
    def n_components(self) -> int:
        return len(self.components) + self.loops

    def strand_components(self, x: int) -> tuple:
        """(component through slots 0/2, component through slots 1/3)."""
        c = self.crossings[x]
        return (self.edge_component[c.edges[0]], self.edge_component[c.edges[1]])

    @cached_property
    def graph_components(self) -> list:
        """Crossing index lists of the connected pieces of the 4-valent graph."""
        parent = list(range(len(self.crossings)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for (x, _), (y, _) in self.partner.items():
            parent[find(x)] = find(y)
        groups = {}
        for x in range(len(self.crossings)):
            groups.setdefault(find(x), []).append(x)
        return sorted(groups.values())

    # --- faces and regions -----------------------------------------------------

    def next_corner(self, corner):
        x, i = corner
        return self.partner[(x, (i + 1) % 4)]

    @cached_property
    def faces(self) -> list:
        seen = set()
        faces = []
        for x in range(len(self.crossings)):
            for i in range(4):
                if (x, i) in seen:
                    continue
                face = []
                cur = (x, i)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    cur = self.next_corner(cur)
                faces.append(tuple(face))
        return faces

    def _check_euler(self):
        face_of = {}
        for f, face in enumerate(self.faces):
            for corner in face:
                face_of[corner] = f
        for group in self.graph_components:
            v = len(group)
            nfaces = len({face_of[(x, i)] for x in group for i in range(4)})
            if v - 2 * v + nfaces != 2:
                raise DiagramError(
                    f"rotation system is not planar (V-E+F = {nfaces - v} on crossings {group})")

    @cached_property
    def _region_data(self):
        faces = self.faces
        face_of = {}
        for f, face in enumerate(faces):
            for corner in face:
                face_of[corner] = f
        # one face per graph component is its outer face; all of those merge
        outer = []
        for group in self.graph_components:
            cand = sorted({face_of[(x, i)] for x in group for i in range(4)},
                          key=lambda f: (-len(faces[f]), min(faces[f])))
            outer.append(cand[0])
        merged = set(outer)
        regions = []
        region_of_face = {}
        outer_corners = tuple(c for f in sorted(merged) for c in faces[f])
        if merged or not self.crossings:
            regions.append(Region(0, outer_corners))
            for f in merged:
                region_of_face[f] = 0
        for f, face in enumerate(faces):
            if f in merged:
                continue
            region_of_face[f] = len(regions)
            regions.append(Region(len(regions), face))
        for k in range(self.loops):
            regions.append(Region(len(regions), (), loop=k))
        corner_region = {corner: region_of_face[f] for corner, f in face_of.items()}
        return regions, corner_region, face_of

    @property
    def regions(self) -> list:
        return self._region_data[0]

    def region_at(self, x: int, corner: int) -> int:
        return self._region_data[1][(x, corner)]

    @property
    def outer_region(self) -> int:
        return 0

    # --- orientation-aware corner roles ---------------------------------------

    def corner_roles(self, x: int) -> dict:
        """Regions around crossing ``x`` by role.

        ``left``/``right`` lie to the left/right of both strands, ``source``
        between the two incoming strands, ``sink`` between the outgoing ones.
        """
        p = self.crossings[x].first_in
        r = self.region_at
        return {
            "source": r(x, p),
            "right": r(x, (p + 1) % 4),
            "sink": r(x, (p + 2) % 4),
            "left": r(x, (p + 3) % 4),
        }

    # --- misc ------------------------------------------------------------------

    @property
    def is_virtual(self) -> bool:
        return any(c.virtual for c in self.crossings)

    def __len__(self):
        return len(self.crossings)

    def __eq__(self, other):
        if not isinstance(other, TypedDiagram):
            return NotImplemented
        return self.crossings == other.crossings and self.loops == other.loops

    def __hash__(self):
        return hash((self.crossings, self.loops))

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"<TypedDiagram {label}{serialize_diagram(self)}>"

    def digest(self) -> str:
        import hashlib

        return hashlib.sha256(canonical_code(self).encode()).hexdigest()[:12]

    def renamed(self, name: str) -> "TypedDiagram":
        d = TypedDiagram(self.crossings, self.loops, name, check_planar=False)
        return d


def _edge_key(e):
    return (0, e, "") if isinstance(e, int) else (1, 0, str(e))


# --- parsing ---------------------------------------------------------------------

_ENTRY = re.compile(
    r"(?P<kind>Xv|X|O)\[(?P<body>[^\]]*)\](?P<sign>[+-])?(?:@(?P<tag>[A-Za-z0-9_']+))?")


def _tokenize(text: str):
    text = text.strip()
    m = re.fullmatch(r"PD\[(.*)\]", text, re.S)
    if m:
        text = m.group(1)
    pos = 0
    out = []
    for m in _ENTRY.finditer(text):
        gap = text[pos:m.start()]
        if gap.strip(" \t\n,;"):
            raise DiagramError(f"cannot parse {gap.strip()!r}")
        out.append(m)
        pos = m.end()
    if text[pos:].strip(" \t\n,;"):
        raise DiagramError(f"cannot parse {text[pos:].strip()!r}")
    return out


def parse_diagram(text: str, name: str = "", loops: int = 0) -> TypedDiagram:
    """Parse extended PD text into a validated :class:`TypedDiagram`."""
    raw = []
    for m in _tokenize(text):
        kind = m.group("kind")
        body = m.group("body").strip()
        if kind == "O":
            if body:
                raise DiagramError("O[] takes no edges")
            loops += 1
            continue
        try:
            edges = tuple(int(s) for s in body.split(","))
        except ValueError:
            raise DiagramError(f"non-integer edge label in {m.group(0)!r}") from None
        if len(edges) != 4:
            raise DiagramError(f"{m.group(0)!r} must list four edges")
        sign = {"+": 3, "-": 1, None: None}[m.group("sign")]
        raw.append((edges, kind == "Xv", sign, m.group("tag")))
    return _orient(raw, loops, name)


def _orient(raw, loops, name):
    slots = {}
    for x, (edges, _v, _s, _t) in enumerate(raw):
        for s, e in enumerate(edges):
            slots.setdefault(e, []).append((x, s))
    for e, where in slots.items():
        if len(where) != 2:
            raise DiagramError(f"edge {e} appears {len(where)} times, expected 2")
    partner = {}
    for e, (p, q) in slots.items():
        partner[p] = q
        partner[q] = p

    # trace each component as a cyclic walk over (arrival slot) pairs
    visited = set()
    walks = []
    for x in range(len(raw)):
        for s in range(4):
            if (x, s) in visited:
                continue
            walk = []  # (crossing, arrival slot, edge arrived on)
            cur = (x, s)
            while cur not in visited:
                y, t = cur
                out = (y, (t + 2) % 4)
                visited.add(cur)
                visited.add(out)
                walk.append((y, t, raw[y][0][t]))
                cur = partner[out]
            walks.append(walk)

    second_in = [None] * len(raw)
    for walk in walks:
        votes = set()
        for y, t, _e in walk:
            if t in (0, 2):
                votes.add(t == 0)
        if len(votes) > 1:
            raise DiagramError("slot-1 edges disagree about orientation along a component")
        if not votes:
            for y, t, _e in walk:
                s = raw[y][2]
                if s is not None:
                    votes.add(t == s)
            if len(votes) > 1:
                raise DiagramError("sign suffixes disagree about orientation along a component")
        if not votes:
            votes.add(_numbering_forward(walk))
        forward = votes.pop()
        for y, t, _e in walk:
            if t in (1, 3):
                arrival = t if forward else (t + 2) % 4
                if second_in[y] is not None and second_in[y] != arrival:
                    raise DiagramError(f"crossing {y}: inconsistent orientation")
                second_in[y] = arrival
    crossings = []
    for x, (edges, virtual, sign, tag) in enumerate(raw):
        if sign is not None and sign != second_in[x]:
            raise DiagramError(f"crossing {x + 1}: sign suffix contradicts orientation")
        crossings.append(Crossing(edges, virtual, second_in[x], tag))
    return TypedDiagram(crossings, loops, name)


def _numbering_forward(walk) -> bool:
    labels = [e for _y, _t, e in walk]
    if not all(isinstance(e, int) for e in labels):
        raise DiagramError("cannot infer orientation from non-numeric labels")
    if len(labels) == 1:
        return True
    lo, hi = min(labels), max(labels)

    def step_ok(a, b):
        return b == a + 1 or (a == hi and b == lo)

    fwd = all(step_ok(labels[i], labels[(i + 1) % len(labels)]) for i in range(len(labels)))
    back = all(step_ok(labels[(i + 1) % len(labels)], labels[i]) for i in range(len(labels)))
    if fwd == back:
        raise DiagramError(
            f"orientation of component with edges {sorted(labels)} is ambiguous; add a sign suffix")
    # the walk lists edges on arrival, i.e. in traversal order
    return fwd


# --- serialization ---------------------------------------------------------------


def relabeled(d: TypedDiagram) -> TypedDiagram:
    """Relabel edges 1..E so numbering increases along each component."""
    mapping = {}
    nxt = 1
    for x in range(len(d.crossings)):
        for s in (0, 1):
            e = d.crossings[x].edges[s]
            if e in mapping:
                continue
            comp = d.components[d.edge_component[e]]
            # start each component at the edge leaving its first crossing
            start = min(comp, key=lambda f: (d.edge_ends[f][0][0], d.edge_ends[f][0][1]))
            i0 = comp.index(start)
            for f in comp[i0:] + comp[:i0]:
                mapping[f] = nxt
                nxt += 1
    crossings = [replace(c, edges=tuple(mapping[e] for e in c.edges)) for c in d.crossings]
    return TypedDiagram(crossings, d.loops, d.name, check_planar=False)


def _needs_suffix(d: TypedDiagram, x: int) -> bool:
    comp = d.strand_components(x)[1]
    for y, c in enumerate(d.crossings):
        if d.strand_components(y)[0] == comp:
            return False
    return True


def crossing_text(d: TypedDiagram, x: int, force_suffix=False) -> str:
    c = d.crossings[x]
    head = "Xv" if c.virtual else "X"
    s = f"{head}[{','.join(str(e) for e in c.edges)}]"
    if force_suffix or _needs_suffix(d, x):
        s += "+" if c.second_in == 3 else "-"
    if c.tag:
        s += f"@{c.tag}"
    return s


def serialize_diagram(d: TypedDiagram) -> str:
    parts = [crossing_text(d, x) for x in range(len(d.crossings))]
    parts += ["O[]"] * d.loops
    return " ".join(parts) if parts else ""


def diagram_record(d: TypedDiagram) -> dict:
    return {"name": d.name,
            "crossings": [crossing_text(d, x) for x in range(len(d.crossings))],
            "loops": d.loops}


def diagram_from_record(rec: dict) -> TypedDiagram:
    try:
        text = " ".join(rec["crossings"])
        return parse_diagram(text, rec.get("name", ""), int(rec.get("loops", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"malformed diagram record: {exc}") from exc


def read_diagrams(path) -> list:
    """Read a diagram file: one JSON record per line, ``#`` lines are comments."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"{path}:{lineno}: {exc}") from exc
        out.append(diagram_from_record(rec))
    return out


def write_diagrams(diagrams, path, header: str = "") -> None:
    lines = [f"# {h}" if h else "#" for h in header.splitlines()] if header else []
    lines += [json.dumps(diagram_record(d)) for d in diagrams]
    Path(path).write_text("\n".join(lines) + "\n")


# --- canonical form --------------------------------------------------------------


def canonical_code(d: TypedDiagram) -> str:
    """A string equal for diagrams that differ only by edge and crossing relabeling."""
    pieces = []
    for group in d.graph_components:
        best = None
        for x in group:
            for s in d.crossings[x].incoming:
                code = _code_from(d, d.crossings[x].edges[s])
                if best is None or code < best:
                    best = code
        pieces.append(best)
    pieces.sort()
    return "|".join(pieces) + f"|loops={d.loops}"


def _code_from(d: TypedDiagram, start) -> str:
    labels = {}
    queue = [start]
    while queue:
        e0 = queue.pop(0)
        if e0 in labels:
            continue
        comp = d.components[d.edge_component[e0]]
        i0 = comp.index(e0)
        for f in comp[i0:] + comp[:i0]:
            labels[f] = len(labels)
            x, s = d.edge_ends[f][1]
            c = d.crossings[x]
            for t in c.incoming:
                g = c.edges[t]
                if g not in labels:
                    queue.append(g)
    rows = []
    for c in d.crossings:
        if c.edges[0] not in labels:
            continue
        rows.append((tuple(labels[e] for e in c.edges), c.virtual, c.second_in, c.tag or ""))
    rows.sort()
    return repr(rows)


def isomorphic(d1: TypedDiagram, d2: TypedDiagram) -> bool:
    return canonical_code(d1) == canonical_code(d2)


# --- classification --------------------------------------------------------------


def classify_crossings(d: TypedDiagram, preset: str) -> list:
    out = []
    for x, c in enumerate(d.crossings):
        comps = d.strand_components(x)
        sign = c.sign
        if c.tag:
            ty = c.tag
        elif c.virtual:
            if preset not in ("virtual", "welded"):
                raise DiagramError(f"crossing {x + 1} is virtual but preset {preset!r} is not")
            ty = "V"
        elif preset in ("classical", "virtual", "welded"):
            ty = "CP" if sign > 0 else "CN"
        elif preset == "multicomponent":
            ty = ("S" if comps[0] == comps[1] else "M") + ("P" if sign > 0 else "N")
        else:
            raise DiagramError(f"no automatic crossing types for preset {preset!r}")
        out.append(CrossingInfo(x, sign, comps, ty))
    return out


def reverse_components(d: TypedDiagram, which) -> TypedDiagram:
    """Reverse the orientation of the listed components (indices into ``components``)."""
    flip = {e for i in which for e in d.components[i]}
    crossings = []
    for x, c in enumerate(d.crossings):
        a = c.edges[0] in flip  # slot 0/2 strand
        b = c.edges[1] in flip  # slot 1/3 strand
        edges = list(c.edges)
        second = c.second_in
        if a:
            # the slot-0 strand now enters at slot 2: rotate by two
            edges = edges[2:] + edges[:2]
            second = (second + 2) % 4
        if b:
            second = 4 - second  # 1 <-> 3
        crossings.append(Crossing(tuple(edges), c.virtual, second, c.tag))
    return TypedDiagram(crossings, d.loops, d.name, check_planar=False)


def mirror(d: TypedDiagram) -> TypedDiagram:
    """Reflect the plane: rotation order is reversed (classical signs flip)."""
    crossings = []
    for c in d.crossings:
        e = c.edges
        # reversed cyclic order keeping slot 0 first: (0, 3, 2, 1)
        edges = (e[0], e[3], e[2], e[1])
        crossings.append(Crossing(edges, c.virtual, 4 - c.second_in, c.tag))
    return TypedDiagram(crossings, d.loops, d.name, check_planar=False)


def crossing_change(d: TypedDiagram, x: int) -> TypedDiagram:
    """Swap over and under at classical crossing ``x``."""
    c = d.crossings[x]
    if c.virtual:
        raise DiagramError("cannot change a virtual crossing")
    p = c.second_in
    edges = c.edges[p:] + c.edges[:p]
    second = (4 - p) % 4
    crossings = list(d.crossings)
    crossings[x] = Crossing(edges, False, second, c.tag)
    return TypedDiagram(crossings, d.loops, d.name, check_planar=False)
