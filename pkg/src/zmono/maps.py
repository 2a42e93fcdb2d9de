"""Flag (gem) encoding of maps on closed surfaces.

A map is a set of flags with three fixed-point-free involutions ``s0``, ``s1``
and ``s2``.  Flag ``f`` can be read as a triple (vertex, edge, face); ``s0``
changes the vertex, ``s1`` the edge and ``s2`` the face.  Vertices, edges and
faces are the orbits of ``<s1, s2>``, ``<s0, s2>`` and ``<s0, s1>``.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence


class MapError(ValueError):
    def __init__(self, message: str, flag: int | None = None):
        super().__init__(message)
        self.flag = flag


class NotInvolution(MapError):
    pass


class FixedPointFlag(MapError):
    pass


class EdgeNotQuadrilateral(MapError):
    pass


class Disconnected(MapError):
    pass


class SSViolated(MapError):
    pass


@dataclass(frozen=True)
class Cells:
    """Orbits of one cell dimension, numbered by their smallest flag."""

    orbits: tuple[tuple[int, ...], ...]
    index: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.orbits)

    def of(self, flag: int) -> int:
        return self.index[flag]

    def size(self, cell: int) -> int:
        return len(self.orbits[cell]) // 2


def _orbits(n: int, gens: Sequence[Sequence[int]]) -> Cells:
    label = [-1] * n
    orbits: list[tuple[int, ...]] = []
    for start in range(n):
        if label[start] >= 0:
            continue
        oid = len(orbits)
        label[start] = oid
        members = [start]
        stack = [start]
        while stack:
            f = stack.pop()
            for g in gens:
                h = g[f]
                if label[h] < 0:
                    label[h] = oid
                    members.append(h)
                    stack.append(h)
        orbits.append(tuple(sorted(members)))
    return Cells(tuple(orbits), tuple(label))


@dataclass(frozen=True)
class FlagMap:
    s0: tuple[int, ...]
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    marks: Mapping[str, int] = field(default_factory=dict, compare=False)

    @property
    def flag_count(self) -> int:
        return len(self.s0)

    def __len__(self) -> int:
        return len(self.s0)

    @cached_property
    def vertices(self) -> Cells:
        return _orbits(len(self), (self.s1, self.s2))

    @cached_property
    def edges(self) -> Cells:
        return _orbits(len(self), (self.s0, self.s2))

    @cached_property
    def faces(self) -> Cells:
        return _orbits(len(self), (self.s0, self.s1))

    def with_marks(self, marks: Mapping[str, int]) -> FlagMap:
        return FlagMap(self.s0, self.s1, self.s2, dict(marks))

    def edge_ends(self, edge: int) -> tuple[int, int]:
        f = self.edges.orbits[edge][0]
        return self.vertices.of(f), self.vertices.of(self.s0[f])

    def is_loop(self, edge: int) -> bool:
        a, b = self.edge_ends(edge)
        return a == b

    def edge_faces(self, edge: int) -> tuple[int, int]:
        f = self.edges.orbits[edge][0]
        return self.faces.of(f), self.faces.of(self.s2[f])


def validate_flagmap(
    flags: int,
    s0: Sequence[int],
    s1: Sequence[int],
    s2: Sequence[int],
    marks: Mapping[str, int] | None = None,
) -> FlagMap:
    """Check every structural invariant and return the frozen map."""
    if flags <= 0:
        raise MapError("flag count must be positive")
    perms = []
    for name, s in (("s0", s0), ("s1", s1), ("s2", s2)):
        if len(s) != flags:
            raise MapError(f"{name} has length {len(s)}, expected {flags}")
        for f, g in enumerate(s):
            if not isinstance(g, int) or not 0 <= g < flags:
                raise MapError(f"{name}[{f}] = {g!r} out of range", f)
        perms.append(tuple(s))
    for name, s in zip(("s0", "s1", "s2"), perms):
        for f in range(flags):
            if s[s[f]] != f:
                raise NotInvolution(f"{name} is not an involution at flag {f}", f)
    for name, s in zip(("s0", "s1", "s2"), perms):
        for f in range(flags):
            if s[f] == f:
                raise FixedPointFlag(f"{name} fixes flag {f}", f)
    a, _, c = perms
    for f in range(flags):
        if a[c[f]] != c[a[f]] or a[c[f]] == f:
            raise EdgeNotQuadrilateral(f"s0 and s2 do not form a 4-flag edge at flag {f}", f)
    seen = [False] * flags
    seen[0] = True
    stack = [0]
    while stack:
        f = stack.pop()
        for s in perms:
            g = s[f]
            if not seen[g]:
                seen[g] = True
                stack.append(g)
    if not all(seen):
        first = seen.index(False)
        raise Disconnected(f"flag {first} is not reachable from flag 0", first)
    marks = dict(marks or {})
    for name, f in marks.items():
        if not isinstance(f, int) or not 0 <= f < flags:
            raise MapError(f"mark {name!r} points at invalid flag {f!r}")
    return FlagMap(perms[0], perms[1], perms[2], marks)


@dataclass(frozen=True)
class CellSummary:
    vertices: int
    edges: int
    faces: int
    face_sizes: tuple[int, ...]
    vertex_degrees: tuple[int, ...]


def cells(m: FlagMap) -> CellSummary:
    return CellSummary(
        len(m.vertices),
        len(m.edges),
        len(m.faces),
        tuple(m.faces.size(i) for i in range(len(m.faces))),
        tuple(m.vertices.size(i) for i in range(len(m.vertices))),
    )


def euler_characteristic(m: FlagMap) -> int:
    return len(m.vertices) - len(m.edges) + len(m.faces)


def orientation_classes(m: FlagMap) -> list[int] | None:
    """2-colour the flags so each involution swaps colours; None if impossible."""
    color = [-1] * len(m)
    color[0] = 0
    stack = [0]
    while stack:
        f = stack.pop()
        for s in (m.s0, m.s1, m.s2):
            g = s[f]
            if color[g] < 0:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                return None
    return color


def is_orientable(m: FlagMap) -> bool:
    return orientation_classes(m) is not None


def orientability(m: FlagMap) -> str:
    return "orientable" if is_orientable(m) else "non-orientable"


def dual(m: FlagMap) -> FlagMap:
    return FlagMap(m.s2, m.s1, m.s0, dict(m.marks))


# --- simplicity -----------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A simplicity defect.

    ``kind`` is ``A`` (loop), ``B`` (parallel edges), ``C`` (edge lying on a
    single face) or ``D`` (two faces sharing at least two edges).  ``cells``
    holds vertex ids for A/B and face ids for C/D.
    """

    kind: str
    edges: tuple[int, ...]
    cells: tuple[int, ...]


def loop_edges(m: FlagMap) -> list[int]:
    return [e for e in range(len(m.edges)) if m.is_loop(e)]


def parallel_classes(m: FlagMap) -> list[tuple[int, ...]]:
    groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e in range(len(m.edges)):
        a, b = m.edge_ends(e)
        if a != b:
            groups[(min(a, b), max(a, b))].append(e)
    return [tuple(g) for _, g in sorted(groups.items()) if len(g) > 1]


def _witnesses(m: FlagMap, dual_side: bool) -> list[Witness]:
    target = dual(m) if dual_side else m
    kinds = ("C", "D") if dual_side else ("A", "B")
    out = []
    for e in loop_edges(target):
        out.append(Witness(kinds[0], (e,), (target.edge_ends(e)[0],)))
    for group in parallel_classes(target):
        out.append(Witness(kinds[1], group, target.edge_ends(group[0])))
    return out


@dataclass(frozen=True)
class SimplicityReport:
    holds: bool
    witnesses: tuple[Witness, ...]

    def __bool__(self) -> bool:
        return self.holds


def is_simple(m: FlagMap) -> SimplicityReport:
    w = _witnesses(m, False)
    return SimplicityReport(not w, tuple(w))


def satisfies_ss(m: FlagMap) -> SimplicityReport:
    """Both the map and its dual are simple graphs.

    Edge ids are shared by a map and its dual, and a dual vertex is a face of
    the map, so C/D witnesses name faces of ``m`` directly.
    """
    w = _witnesses(m, False) + _witnesses(m, True)
    return SimplicityReport(not w, tuple(w))


def require_ss(m: FlagMap) -> None:
    report = satisfies_ss(m)
    if not report:
        w = report.witnesses[0]
        raise SSViolated(f"map is not SS: {w.kind} at edges {list(w.edges)}")


# --- zigzags ---------------------------------------------------------------


def zigzag_step(m: FlagMap, f: int) -> int:
    """Advance a traversal state by one edge.

    State ``(u, e, f)`` means: walk along ``e`` leaving ``u`` and turn inside
    ``f`` at the far end.  The next state sits on the other face of the new
    edge, which gives the left/right alternation of a Petrie walk.
    """
    return m.s2[m.s1[m.s0[f]]]


def reverse_state(m: FlagMap, f: int) -> int:
    return m.s0[m.s2[f]]


@dataclass(frozen=True)
class Zigzag:
    states: tuple[int, ...]
    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.states)


def _zigzag_from(m: FlagMap, states: Sequence[int]) -> Zigzag:
    return Zigzag(
        tuple(states),
        tuple(m.edges.of(f) for f in states),
        tuple(m.vertices.of(f) for f in states),
    )


def zigzag_orbits(m: FlagMap) -> list[tuple[int, ...]]:
    """All directed zigzags as state cycles, each starting at its least flag."""
    seen = [False] * len(m)
    out = []
    for start in range(len(m)):
        if seen[start]:
            continue
        cyc = []
        f = start
        while not seen[f]:
            seen[f] = True
            cyc.append(f)
            f = zigzag_step(m, f)
        out.append(tuple(cyc))
    return out


def trace_zigzags(m: FlagMap, check: bool = True) -> list[tuple[Zigzag, Zigzag]]:
    """Return every zigzag paired with its reversal.

    The first member of each pair is the one whose least flag is smaller.
    """
    if check:
        require_ss(m)
    orbit_of = [0] * len(m)
    orbits = zigzag_orbits(m)
    for i, cyc in enumerate(orbits):
        for f in cyc:
            orbit_of[f] = i
    pairs = []
    done = set()
    for i, cyc in enumerate(orbits):
        if i in done:
            continue
        j = orbit_of[reverse_state(m, cyc[0])]
        if j == i and check:
            raise SSViolated(f"zigzag through flag {cyc[0]} is self-reversed")
        done.update((i, j))
        back = orbits[j]
        # present the reversal as the same walk read backwards
        start = reverse_state(m, cyc[0])
        k = back.index(start)
        rev = back[k:] + back[:k]
        pairs.append((_zigzag_from(m, cyc), _zigzag_from(m, rev)))
    return pairs


# --- isomorphism -----------------------------------------------------------


def _signature(m: FlagMap) -> tuple:
    c = cells(m)
    return (len(m), sorted(c.face_sizes), sorted(c.vertex_degrees))


def find_isomorphism(m1: FlagMap, m2: FlagMap) -> list[int] | None:
    """Flag bijection commuting with s0, s1, s2, or None."""
    if _signature(m1) != _signature(m2):
        return None
    n = len(m1)
    gens = ((m1.s0, m2.s0), (m1.s1, m2.s1), (m1.s2, m2.s2))
    for target in range(n):
        phi = [-1] * n
        used = [False] * n
        phi[0] = target
        used[target] = True
        queue = deque([0])
        ok = True
        while queue and ok:
            f = queue.popleft()
            for a, b in gens:
                g, h = a[f], b[phi[f]]
                if phi[g] < 0:
                    if used[h]:
                        ok = False
                        break
                    phi[g] = h
                    used[h] = True
                    queue.append(g)
                elif phi[g] != h:
                    ok = False
                    break
        if ok:
            return phi
    return None


def is_isomorphic(m1: FlagMap, m2: FlagMap) -> bool:
    return find_isomorphism(m1, m2) is not None


# --- construction from faces ------------------------------------------------


def map_from_faces(faces: Sequence[Sequence[Hashable]], mark_vertices: bool = True) -> FlagMap:
    """Build a map from face boundary cycles of a simple polyhedral surface.

    Each face is a cyclic vertex list.  Every edge must lie on exactly two
    face sides.  Face orientations need not be coherent, so non-orientable
    surfaces are fine.  With ``mark_vertices`` each vertex ``x`` gets a mark
    ``v<x>`` pointing at one of its flags.
    """
    s0: list[int] = []
    s1: list[int] = []
    at: dict[tuple[frozenset, Hashable], list[int]] = defaultdict(list)
    first_flag: dict[Hashable, int] = {}
    for cyc in faces:
        n = len(cyc)
        if n < 2:
            raise MapError("a face needs at least two sides")
        base = len(s0)
        s0.extend([0] * (2 * n))
        s1.extend([0] * (2 * n))
        for i in range(n):
            u, v = cyc[i], cyc[(i + 1) % n]
            a, b = base + 2 * i, base + 2 * i + 1
            s0[a], s0[b] = b, a
            nxt = base + 2 * ((i + 1) % n)
            s1[b], s1[nxt] = nxt, b
            key = frozenset((u, v))
            at[(key, u)].append(a)
            at[(key, v)].append(b)
            first_flag.setdefault(u, a)
    s2 = [0] * len(s0)
    for (key, x), fl in at.items():
        if len(fl) != 2:
            raise MapError(f"edge {sorted(key, key=str)} at {x!r} lies on {len(fl)} face sides")
        s2[fl[0]], s2[fl[1]] = fl[1], fl[0]
    marks = {f"v{x}": f for x, f in first_flag.items()} if mark_vertices else {}
    return validate_flagmap(len(s0), s0, s1, s2, marks)


def cube_map() -> FlagMap:
    """Q3 with bottom face 1234, top face 5678 and vertical edges i, i+4."""
    faces = [
        (1, 4, 3, 2),
        (5, 6, 7, 8),
        (1, 2, 6, 5),
        (2, 3, 7, 6),
        (3, 4, 8, 7),
        (4, 1, 5, 8),
    ]
    return map_from_faces(faces)


def bipyramid_map(n: int) -> FlagMap:
    """BP_n: equator 1..n, apexes n+1 (top) and n+2 (bottom)."""
    if n < 3:
        raise ValueError("bipyramid needs n >= 3")
    top, bottom = n + 1, n + 2
    faces = []
    for i in range(1, n + 1):
        j = i % n + 1
        faces.append((i, j, top))
        faces.append((j, i, bottom))
    return map_from_faces(faces)


def tetrahedron_map() -> FlagMap:
    return map_from_faces([(1, 2, 3), (1, 4, 2), (2, 4, 3), (3, 4, 1)])


def octahedron_map() -> FlagMap:
    # 1/6 are poles, 2..5 the equator
    faces = []
    eq = [2, 3, 4, 5]
    for i in range(4):
        a, b = eq[i], eq[(i + 1) % 4]
        faces.append((1, a, b))
        faces.append((6, b, a))
    return map_from_faces(faces)


def k7_torus_map() -> FlagMap:
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 2) % 7, (i + 3) % 7))
    return map_from_faces(faces)


def k6_projective_map() -> FlagMap:
    faces = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
    ]
    return map_from_faces(faces)


def disjoint_union(m1: FlagMap, m2: FlagMap) -> tuple[int, list[int], list[int], list[int]]:
    """Raw concatenated arrays (flags, s0, s1, s2); not a valid map."""
    n = len(m1)
    arrs = []
    for a, b in ((m1.s0, m2.s0), (m1.s1, m2.s1), (m1.s2, m2.s2)):
        arrs.append(list(a) + [x + n for x in b])
    return (n + len(m2), *arrs)


# --- rotation systems ---------------------------------------------------------


class RotationSystem:
    """Mutable rotation system of a map on an orientable surface.

    Darts ``2e`` and ``2e + 1`` are the two ends of edge ``e``.  ``nxt[d]`` is
    the next dart counter-clockwise around the tail of ``d``.  A flag is a
    dart plus a side: side 0 is the sector between ``d`` and ``nxt[d]``.
    """

    def __init__(self) -> None:
        self.nxt: dict[int, int] = {}
        self.prv: dict[int, int] = {}
        self._next_edge = 0

    @staticmethod
    def opp(d: int) -> int:
        return d ^ 1

    def new_edge(self) -> tuple[int, int]:
        e = self._next_edge
        self._next_edge += 1
        return 2 * e, 2 * e + 1

    def set_cycle(self, darts: Sequence[int]) -> None:
        n = len(darts)
        for i, d in enumerate(darts):
            self.nxt[d] = darts[(i + 1) % n]
            self.prv[darts[(i + 1) % n]] = d

    def darts(self) -> list[int]:
        return sorted(self.nxt)

    def edge_ids(self) -> list[int]:
        return sorted({d >> 1 for d in self.nxt})

    def around(self, d: int) -> list[int]:
        out = [d]
        x = self.nxt[d]
        while x != d:
            out.append(x)
            x = self.nxt[x]
        return out

    def vertex_cycles(self) -> list[list[int]]:
        seen = set()
        out = []
        for d in self.darts():
            if d in seen:
                continue
            cyc = self.around(d)
            seen.update(cyc)
            out.append(cyc)
        return out

    def face_step(self, d: int) -> int:
        return self.prv[self.opp(d)]

    def face_of(self, d: int) -> list[int]:
        """Darts whose side-0 sector lies in the same face as that of ``d``."""
        out = [d]
        x = self.face_step(d)
        while x != d:
            out.append(x)
            x = self.face_step(x)
        return out

    def face_cycles(self) -> list[list[int]]:
        seen = set()
        out = []
        for d in self.darts():
            if d in seen:
                continue
            cyc = self.face_of(d)
            seen.update(cyc)
            out.append(cyc)
        return out

    def same_vertex(self, a: int, b: int) -> bool:
        return b in self.around(a)

    def replace(self, d: int, new: Sequence[int]) -> None:
        """Put ``new`` (listed counter-clockwise) into the slot held by ``d``."""
        if not new:
            raise ValueError("replacement must be non-empty")
        p, n = self.prv[d], self.nxt[d]
        alone = n == d
        del self.nxt[d], self.prv[d]
        chain = list(new)
        for a, b in zip(chain, chain[1:]):
            self.nxt[a] = b
            self.prv[b] = a
        if alone:
            self.nxt[chain[-1]] = chain[0]
            self.prv[chain[0]] = chain[-1]
        else:
            self.nxt[p] = chain[0]
            self.prv[chain[0]] = p
            self.nxt[chain[-1]] = n
            self.prv[n] = chain[-1]

    def insert_after(self, d: int, new: Sequence[int]) -> None:
        n = self.nxt[d]
        chain = [d, *new, n] if n != d else [d, *new, d]
        for a, b in zip(chain, chain[1:]):
            self.nxt[a] = b
            self.prv[b] = a

    def _unlink(self, d: int) -> None:
        p, n = self.prv.pop(d), self.nxt.pop(d)
        if n != d:
            if p == d:
                raise AssertionError("corrupt rotation")
            self.nxt[p] = n
            self.prv[n] = p

    def remove_edge(self, e: int) -> None:
        self._unlink(2 * e)
        self._unlink(2 * e + 1)

    def smooth(self, d: int) -> int:
        """Erase the degree-2 vertex at the tail of ``d``; returns the new edge."""
        other = self.nxt[d]
        if self.nxt[other] != d or other == d:
            raise ValueError("tail of dart is not a degree-2 vertex")
        a, b = self.opp(d), self.opp(other)
        if a == other:
            raise ValueError("cannot smooth an isolated loop")
        x, y = self.new_edge()
        self.replace(a, [x])
        self.replace(b, [y])
        del self.nxt[d], self.prv[d], self.nxt[other], self.prv[other]
        return x >> 1

    def to_flagmap(self, marks: Mapping[str, tuple[int, int]] | None = None) -> tuple[FlagMap, dict[tuple[int, int], int]]:
        """Encode as flags; returns the map and the (dart, side) -> flag table."""
        order = self.darts()
        idx = {d: i for i, d in enumerate(order)}
        n = 2 * len(order)
        s0 = [0] * n
        s1 = [0] * n
        s2 = [0] * n

        def flag(d: int, side: int) -> int:
            return 2 * idx[d] + side

        for d in order:
            o = self.opp(d)
            for side in (0, 1):
                s2[flag(d, side)] = flag(d, 1 - side)
                s0[flag(d, side)] = flag(o, 1 - side)
            s1[flag(d, 0)] = flag(self.nxt[d], 1)
            s1[flag(self.nxt[d], 1)] = flag(d, 0)
        table = {(d, side): flag(d, side) for d in order for side in (0, 1)}
        out_marks = {}
        for name, key in (marks or {}).items():
            if key in table:
                out_marks[name] = table[key]
        return validate_flagmap(n, s0, s1, s2, out_marks), table

    @classmethod
    def from_flagmap(cls, m: FlagMap) -> tuple[RotationSystem, dict[int, tuple[int, int]]]:
        """Decode an orientable map; flag 0 becomes a side-0 flag."""
        color = orientation_classes(m)
        if color is None:
            raise MapError("rotation systems need an orientable map")
        rs = cls()
        dart_of: dict[int, int] = {}
        for a in range(len(m)):
            if color[a] != 0 or a in dart_of:
                continue
            x, y = rs.new_edge()
            dart_of[a] = x
            dart_of[m.s2[m.s0[a]]] = y
        for a, d in dart_of.items():
            nd = dart_of[m.s2[m.s1[a]]]
            rs.nxt[d] = nd
            rs.prv[nd] = d
        table = {}
        for a, d in dart_of.items():
            table[a] = (d, 0)
            table[m.s2[a]] = (d, 1)
        return rs, table


def carry_marks(m: FlagMap) -> tuple[RotationSystem, dict[str, tuple[int, int]]]:
    """Rotation system of ``m`` plus its marks expressed as (dart, side)."""
    rs, table = RotationSystem.from_flagmap(m)
    return rs, {name: table[f] for name, f in m.marks.items()}


# --- serialization -------------------------------------------------------------


def map_to_dict(m: FlagMap) -> dict:
    return {
        "flags": len(m),
        "s0": list(m.s0),
        "s1": list(m.s1),
        "s2": list(m.s2),
        "marks": {k: m.marks[k] for k in sorted(m.marks)},
    }


def dumps_map(m: FlagMap) -> str:
    return json.dumps(map_to_dict(m), sort_keys=True, separators=(",", ":")) + "\n"


def map_from_dict(obj: Mapping) -> FlagMap:
    try:
        flags = obj["flags"]
        arrays = [obj[k] for k in ("s0", "s1", "s2")]
    except (KeyError, TypeError) as exc:
        raise MapError(f"missing map field: {exc}") from None
    if not isinstance(flags, int) or not all(isinstance(a, list) for a in arrays):
        raise MapError("flags must be an integer and s0/s1/s2 arrays")
    marks = obj.get("marks") or {}
    if not isinstance(marks, dict):
        raise MapError("marks must be an object")
    return validate_flagmap(flags, *arrays, marks=marks)


def loads_map(text: str) -> FlagMap:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapError(f"not JSON: {exc}") from None
    return map_from_dict(obj)


def save_map(m: FlagMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_map(m))


def load_map(path) -> FlagMap:
    with open(path, encoding="utf-8") as fh:
        return loads_map(fh.read())


def vertex_labels(m: FlagMap) -> dict[int, str]:
    """Vertex id -> label taken from ``v<label>`` marks, when present."""
    out = {}
    for name, f in sorted(m.marks.items()):
        if name.startswith("v") and len(name) > 1:
            out.setdefault(m.vertices.of(f), name[1:])
    return out


def relabel(m: FlagMap, perm: Sequence[int]) -> FlagMap:
    """Apply the flag renaming ``f -> perm[f]``."""
    n = len(m)
    inv = [0] * n
    for f, g in enumerate(perm):
        inv[g] = f
    arrays = []
    for s in (m.s0, m.s1, m.s2):
        arrays.append([perm[s[inv[g]]] for g in range(n)])
    marks = {k: perm[f] for k, f in m.marks.items()}
    return validate_flagmap(n, *arrays, marks=marks)


def iter_corners(m: FlagMap) -> Iterable[tuple[int, int]]:
    """Ordered edge pairs consecutive at some face corner."""
    for f in range(len(m)):
        yield m.edges.of(f), m.edges.of(m.s1[f])
