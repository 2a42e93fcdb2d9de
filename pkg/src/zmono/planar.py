"""Sphere realization of a signed permutation.

From sigma we build a perfect matching on the 2k points l_i, r_i of an inner
circle.  Straight chords realize the matching.  Arcs S_i join r_i to l_{i+1}
around an outer cycle p_1..p_k, and a_{i,i+1} are the spoke crossings.  The
result is a 4-regular plane map G.  Its chess colouring gives the radial map
R_b, whose outer face F carries sigma as z-monodromy once the repair pass has
made the map simple.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Mapping, Sequence

from .maps import FlagMap, MapError, RotationSystem, euler_characteristic, validate_flagmap
from .monodromy import Candidate, CandidateError, FaceFrame, check_candidate, face_frame_from_flag, monodromy_map, symbols

Point = tuple[Fraction, Fraction]


class InternalDegeneracy(MapError):
    pass


class NotFourRegular(MapError):
    pass


class DualNotBipartite(MapError):
    pass


class VerificationMismatch(MapError):
    pass


# --- matching and curves ------------------------------------------------------------


@dataclass(frozen=True)
class ChordMatching:
    k: int
    pairs: tuple[tuple[str, str], ...]

    def partner(self) -> dict[str, str]:
        out = {}
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return out


def boundary_order(k: int) -> tuple[str, ...]:
    """Clockwise labels on the inner circle: r1, lk, r2, l1, ..., rk, l(k-1)."""
    out = []
    for m in range(k):
        out.append(f"r{m + 1}")
        out.append(f"l{m if m else k}")
    return tuple(out)


def _label_key(label: str) -> tuple[int, int]:
    return int(label[1:]), 0 if label[0] == "l" else 1


def matching_from_sigma(sigma: Candidate) -> ChordMatching:
    check_candidate(sigma)
    partner: dict[str, str] = {}
    for i in symbols(sigma.k):
        j = sigma(i)
        if i > 0 and j > 0:
            a, b = f"l{i}", f"r{j}"
        elif i < 0 and j < 0:
            a, b = f"r{-i}", f"l{-j}"
        elif i > 0:
            a, b = f"l{i}", f"l{-j}"
        else:
            a, b = f"r{-i}", f"r{j}"
        for x, y in ((a, b), (b, a)):
            if partner.setdefault(x, y) != y:
                raise InternalDegeneracy(f"{x} matched twice")
    pairs = sorted({tuple(sorted((a, b), key=_label_key)) for a, b in partner.items()}, key=lambda p: _label_key(p[0]))
    return ChordMatching(sigma.k, tuple(pairs))


@dataclass(frozen=True)
class CurveSystem:
    """Closed curves as cyclic label lists.

    Consecutive labels ``x[2t] -> x[2t+1]`` run along an arc S_i, and
    ``x[2t+1] -> x[2t+2]`` along a chord.
    """

    curves: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.curves)


def closed_curves(matching: ChordMatching) -> CurveSystem:
    k = matching.k
    partner = matching.partner()
    arc = {}
    for i in range(1, k + 1):
        r, l = f"r{i}", f"l{i % k + 1}"
        arc[r], arc[l] = l, r
    seen: set[str] = set()
    curves = []
    for start in sorted(partner, key=_label_key):
        if start in seen:
            continue
        cur = []
        x = start
        while x not in seen:
            y = arc[x]
            cur += [x, y]
            seen.update((x, y))
            x = partner[y]
        curves.append(tuple(cur))
    return CurveSystem(tuple(curves))


# --- exact geometry -------------------------------------------------------------------


def _rat(x: float, den: int = 10**6) -> Fraction:
    return Fraction(round(x * den), den)


def circle_point(t: Fraction, radius: Fraction) -> Point:
    """Rational point on a circle from the tangent of the half angle."""
    d = 1 + t * t
    return radius * (1 - t * t) / d, radius * 2 * t / d


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _position_angles(k: int, seed: int, attempt: int) -> list[float]:
    step = math.pi / k
    angles = [math.pi - (q + 0.5) * step for q in range(2 * k)]
    if seed or attempt:
        rng = random.Random(f"positions:{seed}:{attempt}")
        angles = [a + rng.uniform(-0.3, 0.3) * step for a in angles]
    return angles


def position_points(k: int, radius: Fraction, seed: int = 0, attempt: int = 0) -> list[Point]:
    pts = []
    for theta in _position_angles(k, seed, attempt):
        t = Fraction(math.tan(theta / 2)).limit_denominator(4096)
        pts.append(circle_point(t, radius))
    return pts


@dataclass(frozen=True)
class Arrangement:
    k: int
    order: tuple[str, ...]
    points: tuple[Point, ...]
    chords: tuple[tuple[int, int], ...]
    crossings: tuple[tuple[int, int], ...]
    along: tuple[tuple[int, ...], ...]


def _interleaved(a: tuple[int, int], b: tuple[int, int]) -> bool:
    lo, hi = sorted(a)
    inside = [lo < x < hi for x in b]
    return inside[0] != inside[1]


def _segment_hit(p1: Point, p2: Point, q1: Point, q2: Point) -> tuple[str, Fraction | None]:
    d1, d2 = _sign(_cross(p1, p2, q1)), _sign(_cross(p1, p2, q2))
    d3, d4 = _sign(_cross(q1, q2, p1)), _sign(_cross(q1, q2, p2))
    if d1 * d2 < 0 and d3 * d4 < 0:
        den = (p2[0] - p1[0]) * (q2[1] - q1[1]) - (p2[1] - p1[1]) * (q2[0] - q1[0])
        num = (q1[0] - p1[0]) * (q2[1] - q1[1]) - (q1[1] - p1[1]) * (q2[0] - q1[0])
        return "cross", num / den
    if 0 in (d1, d2, d3, d4):
        def on(a, b, c):
            return _cross(a, b, c) == 0 and min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
        if on(p1, p2, q1) or on(p1, p2, q2) or on(q1, q2, p1) or on(q1, q2, p2):
            return "touch", None
    return "none", None


def _lerp(a: Point, b: Point, t: Fraction) -> Point:
    return a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t


def arrange_chords(matching: ChordMatching, seed: int = 0, max_attempts: int = 50) -> Arrangement:
    """Straight chords between exact points of the unit circle."""
    k = matching.k
    order = boundary_order(k)
    pos = {lab: q for q, lab in enumerate(order)}
    chords = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in matching.pairs))
    for attempt in range(max_attempts):
        pts = position_points(k, Fraction(1), seed, attempt)
        hits: dict[int, list[tuple[Fraction, int]]] = {i: [] for i in range(len(chords))}
        crossings = []
        seen_points: set[Point] = set()
        ok = True
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                a, b = chords[i], chords[j]
                kind, t = _segment_hit(pts[a[0]], pts[a[1]], pts[b[0]], pts[b[1]])
                if kind == "touch":
                    ok = False
                if kind != "cross":
                    continue
                x = _lerp(pts[a[0]], pts[a[1]], t)
                if x in seen_points:
                    ok = False
                seen_points.add(x)
                crossings.append((i, j))
                hits[i].append((t, j))
                s = _segment_hit(pts[b[0]], pts[b[1]], pts[a[0]], pts[a[1]])[1]
                hits[j].append((s, i))
        if ok:
            along = tuple(tuple(j for _, j in sorted(hits[i])) for i in range(len(chords)))
            return Arrangement(k, order, tuple(pts), chords, tuple(crossings), along)
    raise InternalDegeneracy("could not find a generic chord placement")


# --- straight-line plane graphs ----------------------------------------------------------


def _angle_cmp(u: Point, v: Point) -> int:
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -_sign(c)


@dataclass
class PlaneGraph:
    """Straight-line drawing with its rotation system."""

    coords: dict[str, Point]
    edges: list[tuple[str, str]]
    rs: RotationSystem
    tail: dict[int, str]


def plane_graph(coords: Mapping[str, Point], segments: Sequence[tuple[str, str]]) -> PlaneGraph:
    """Planarize straight segments exactly; raises on any non-generic contact."""
    coords = dict(coords)
    cuts: list[list[tuple[Fraction, str]]] = [[] for _ in segments]
    used = set(coords.values())
    if len(used) != len(coords):
        raise InternalDegeneracy("two nodes share a position")
    n_cross = 0
    for i, (a, b) in enumerate(segments):
        for j in range(i + 1, len(segments)):
            c, d = segments[j]
            shared = {a, b} & {c, d}
            pa, pb, pc, pd = coords[a], coords[b], coords[c], coords[d]
            if shared:
                if len(shared) == 2:
                    raise InternalDegeneracy(f"segment {a}-{b} repeated")
                s = shared.pop()
                other_i = b if s == a else a
                other_j = d if s == c else c
                if _cross(coords[s], coords[other_i], coords[other_j]) == 0:
                    # collinear neighbours are fine only when they point apart
                    u = (coords[other_i][0] - coords[s][0], coords[other_i][1] - coords[s][1])
                    v = (coords[other_j][0] - coords[s][0], coords[other_j][1] - coords[s][1])
                    if u[0] * v[0] + u[1] * v[1] > 0:
                        raise InternalDegeneracy(f"segments {a}-{b} and {c}-{d} overlap")
                continue
            kind, t = _segment_hit(pa, pb, pc, pd)
            if kind == "touch":
                raise InternalDegeneracy(f"segments {a}-{b} and {c}-{d} touch")
            if kind == "cross":
                x = _lerp(pa, pb, t)
                if x in used:
                    raise InternalDegeneracy(f"triple point at crossing of {a}-{b} and {c}-{d}")
                used.add(x)
                name = f"x{n_cross}"
                n_cross += 1
                coords[name] = x
                cuts[i].append((t, name))
                s = _segment_hit(pc, pd, pa, pb)[1]
                cuts[j].append((s, name))
    edges = []
    for (a, b), cut in zip(segments, cuts):
        chain = [a] + [name for _, name in sorted(cut)] + [b]
        edges.extend(zip(chain, chain[1:]))
    rs = RotationSystem()
    tail: dict[int, str] = {}
    at: dict[str, list[int]] = {}
    for u, v in edges:
        x, y = rs.new_edge()
        tail[x], tail[y] = u, v
        at.setdefault(u, []).append(x)
        at.setdefault(v, []).append(y)
    for node, darts in at.items():
        p = coords[node]

        def direction(dd: int) -> Point:
            q = coords[tail[dd ^ 1]]
            return q[0] - p[0], q[1] - p[1]

        darts.sort(key=cmp_to_key(lambda u, v: _angle_cmp(direction(u), direction(v))))
        rs.set_cycle(darts)
    return PlaneGraph(coords, edges, rs, tail)


# --- the construction ---------------------------------------------------------------------


R_OUTER = 8
R_SPOKE = 2


def a_name(m: int, k: int) -> str:
    n = m % k + 1
    return f"a{m}{n}" if k < 10 else f"a{m}_{n}"


@dataclass
class Drawing:
    k: int
    coords: dict[str, Point]
    segments: list[tuple[str, str, str]]  # (u, v, role)
    faces: list[tuple[str, list[Point]]]  # (colour, polygon) for bounded faces
    labels: dict[str, str]  # node -> printed label


def _draw(k: int, matching: ChordMatching, twisted: frozenset[int], seed: int, attempt: int):
    order = boundary_order(k)
    pos = {lab: q for q, lab in enumerate(order)}
    tw = list(range(2 * k))
    for j in twisted:
        q1, q2 = 2 * j - 1, (2 * j) % (2 * k)
        tw[q1], tw[q2] = q2, q1
    coords: dict[str, Point] = {}
    step = math.pi / k
    for j in range(1, k + 1):
        th = math.pi - 2 * j * step
        coords[f"p{j}"] = (_rat(R_OUTER * math.cos(th)), _rat(R_OUTER * math.sin(th)))
        th = math.pi - (2 * j + 1) * step
        coords[a_name(j, k)] = (_rat(R_SPOKE * math.cos(th)), _rat(R_SPOKE * math.sin(th)))
    outer = position_points(k, Fraction(1), seed, attempt)
    inner = position_points(k, Fraction(1, 2), seed, attempt)
    for q in range(2 * k):
        coords[f"o{q}"] = outer[q]
        coords[f"i{q}"] = inner[q]
    segs: list[tuple[str, str, str]] = []
    for j in range(1, k + 1):
        segs.append((f"p{j}", f"p{j % k + 1}", "outer"))
    for m in range(1, k + 1):
        a = a_name(m, k)
        segs.append((f"p{m}", a, "spoke"))
        segs.append((f"p{m % k + 1}", a, "spoke"))
        segs.append((a, f"o{(2 * m) % (2 * k)}", "spoke"))
        segs.append((a, f"o{(2 * m + 1) % (2 * k)}", "spoke"))
    for q in range(2 * k):
        segs.append((f"o{q}", f"i{tw[q]}", "link"))
    for x, y in matching.pairs:
        segs.append((f"i{tw[pos[x]]}", f"i{tw[pos[y]]}", "chord"))
    return coords, segs


def _w_faces(pg: PlaneGraph, k: int) -> list[int]:
    """Face index of the sector below each p_j, between its two spokes."""
    rs = pg.rs
    face_id: dict[int, int] = {}
    for idx, cyc in enumerate(rs.face_cycles()):
        for d in cyc:
            face_id[d] = idx
    out = []
    for j in range(1, k + 1):
        darts = [d for d in rs.nxt if pg.tail[d] == f"p{j}"]
        heads = {pg.tail[d ^ 1]: d for d in darts}
        d1 = heads[a_name(j, k)]
        d2 = heads[a_name((j - 2) % k + 1, k)]
        if rs.nxt[d1] == d2:
            out.append(face_id[d1])
        elif rs.nxt[d2] == d1:
            out.append(face_id[d2])
        else:
            raise InternalDegeneracy(f"spokes at p{j} are not adjacent")
    return out


@dataclass
class MarkedQuadMap:
    """4-regular plane map with construction marks and a chess colouring.

    ``coloring[face]`` is 0 for colour b and 1 for colour w.
    """

    k: int
    map: FlagMap
    coloring: tuple[int, ...]
    crossings: int
    twisted: tuple[int, ...]
    drawing: Drawing | None = None
    extra: dict = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return len(self.map.vertices)


def _build(k: int, matching: ChordMatching, twisted: frozenset[int], seed: int, max_attempts: int = 50):
    last = None
    for attempt in range(max_attempts):
        coords, segs = _draw(k, matching, twisted, seed, attempt)
        try:
            pg = plane_graph(coords, [(u, v) for u, v, _ in segs])
        except InternalDegeneracy as exc:
            last = exc
            continue
        return pg, segs
    raise InternalDegeneracy(f"no generic placement after {max_attempts} attempts: {last}")


def _colour_faces(rs: RotationSystem, seed_dart: int) -> dict[int, int]:
    """Chess colouring of a rotation system keyed by dart (side 0 sector)."""
    face_of: dict[int, int] = {}
    faces = rs.face_cycles()
    for idx, cyc in enumerate(faces):
        for d in cyc:
            face_of[d] = idx
    color = {face_of[seed_dart]: 0}
    stack = [face_of[seed_dart]]
    while stack:
        f = stack.pop()
        for d in faces[f]:
            # the sector on the other side of d belongs to prv[d]
            h = face_of[rs.prv[d]]
            if h not in color:
                color[h] = 1 - color[f]
                stack.append(h)
            elif color[h] == color[f]:
                raise DualNotBipartite("faces do not 2-colour")
    return {d: color[face_of[d]] for d in face_of}


def assemble_quad_map(sigma: Candidate, seed: int = 0, twist: bool = True) -> MarkedQuadMap:
    """Build G for sigma.

    When straight chords leave two of the regions under p_i, p_j in one face,
    all but one of them get a local twist: the two curve ends under p_j swap
    places once just inside the circle.  The matching of boundary points is
    unchanged; only the drawing differs.
    """
    k = sigma.k
    if k < 3:
        raise CandidateError(f"a face needs at least 3 sides, got k={k}")
    matching = matching_from_sigma(sigma)
    twisted: frozenset[int] = frozenset()
    while True:
        pg, segs = _build(k, matching, twisted, seed)
        if not twist:
            break
        wf = _w_faces(pg, k)
        groups: dict[int, list[int]] = {}
        for j, f in enumerate(wf, start=1):
            groups.setdefault(f, []).append(j)
        extra = {j for g in groups.values() for j in g[1:]}
        if not extra:
            break
        twisted = twisted | extra
    rs = pg.rs
    tail = dict(pg.tail)
    n_cross = sum(1 for name in pg.coords if name.startswith("x"))

    # colours on the drawing, before smoothing, for the picture
    dart_color = _colour_faces(rs, _triangle_dart(rs, tail, 1, k))
    drawing = Drawing(
        k,
        dict(pg.coords),
        segs,
        _face_polygons(rs, tail, pg.coords, dart_color),
        _labels(k, twisted),
    )

    for node in sorted(n for n in pg.coords if n[0] in "oi"):
        d = next(x for x in rs.nxt if tail[x] == node)
        ta, tb = tail[d ^ 1], tail[rs.nxt[d] ^ 1]
        e = rs.smooth(d)
        tail[2 * e], tail[2 * e + 1] = ta, tb
    tail = {d: tail[d] for d in rs.nxt}
    for cyc in rs.vertex_cycles():
        if len(cyc) != 4:
            raise NotFourRegular(f"vertex {tail[cyc[0]]} has degree {len(cyc)}")

    marks: dict[str, tuple[int, int]] = {}
    for j in range(1, k + 1):
        # p_j on the outer edge towards p_{j-1}, inside the triangle T_{j-1,j}
        prev = f"p{(j - 2) % k + 1}"
        d = next(x for x in rs.nxt if tail[x] == f"p{j}" and tail[x ^ 1] == prev)
        side = 0 if _dart_face_has(rs, tail, d, 0, a_name((j - 2) % k + 1, k)) else 1
        marks[f"p{j}"] = (d, side)
        if j == 1:
            marks["face_F"] = (d, 1 - side)
    g, table = rs.to_flagmap(marks)
    if euler_characteristic(g) != 2:
        raise InternalDegeneracy("assembled map is not a sphere")
    b_face = g.faces.of(g.marks["p2"])
    coloring = chess_coloring(g, b_face)
    for j in range(1, k + 1):
        if coloring[g.faces.of(g.marks[f"p{j}"])] != 0:
            raise InternalDegeneracy(f"triangle at p{j} is not colour b")
    if coloring[g.faces.of(g.marks["face_F"])] != 1:
        raise InternalDegeneracy("outer face is not colour w")
    g_marks = dict(g.marks)
    for m_ in range(1, k + 1):
        name = a_name(m_, k)
        d = next(x for x in rs.nxt if tail[x] == name)
        vertex = g.vertices.orbits[g.vertices.of(table[(d, 0)])]
        g_marks[name] = min(f for f in vertex if coloring[g.faces.of(f)] == 0)
    g = g.with_marks(g_marks)
    return MarkedQuadMap(k, g, coloring, n_cross, tuple(sorted(twisted)), drawing)


def _dart_face_has(rs: RotationSystem, tail: Mapping[int, str], d: int, side: int, node: str) -> bool:
    start = d if side == 0 else rs.prv[d]
    return any(tail[x] == node for x in rs.face_of(start))


def _triangle_dart(rs: RotationSystem, tail: Mapping[int, str], j: int, k: int) -> int:
    """A dart whose side-0 sector lies in the triangle p_j, a_{j,j+1}, p_{j+1}."""
    a = a_name(j, k)
    for d in sorted(rs.nxt):
        if tail[d] == f"p{j}" and tail[d ^ 1] == a:
            for start in (d, rs.prv[d]):
                if {tail[x] for x in rs.face_of(start)} == {f"p{j}", a, f"p{j % k + 1}"}:
                    return start
    raise InternalDegeneracy("triangle face not found")


def _face_polygons(rs, tail, coords, dart_color) -> list[tuple[str, list[Point]]]:
    out = []
    for cyc in rs.face_cycles():
        pts = [coords[tail[d]] for d in cyc]
        area = sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(pts, pts[1:] + pts[:1]))
        if area == 0:
            continue
        colour = "b" if dart_color[cyc[0]] == 0 else "w"
        out.append((colour, pts, area))
    # the unbounded face is the one with the most negative or largest-magnitude area
    if out:
        worst = max(range(len(out)), key=lambda i: abs(out[i][2]))
        out.pop(worst)
    return [(c, p) for c, p, _ in out]


def _labels(k: int, twisted: frozenset[int]) -> dict[str, str]:
    out = {f"p{j}": f"p{j}" for j in range(1, k + 1)}
    for m in range(1, k + 1):
        out[a_name(m, k)] = a_name(m, k)
    for q, lab in enumerate(boundary_order(k)):
        out[f"o{q}"] = lab
    return out


# --- medial, chess colouring, radial maps -------------------------------------------------------------


def medial(m: FlagMap) -> FlagMap:
    """Medial map.  Flag ``2f`` lies in a vertex-face, ``2f + 1`` in a face-face."""
    n = len(m)
    s0 = [0] * (2 * n)
    s1 = [0] * (2 * n)
    s2 = [0] * (2 * n)
    for f in range(n):
        s0[2 * f] = 2 * m.s1[f]
        s0[2 * f + 1] = 2 * m.s1[f] + 1
        s1[2 * f] = 2 * m.s2[f]
        s1[2 * f + 1] = 2 * m.s0[f] + 1
        s2[2 * f] = 2 * f + 1
        s2[2 * f + 1] = 2 * f
    marks = {name: 2 * f for name, f in m.marks.items()}
    return validate_flagmap(2 * n, s0, s1, s2, marks)


def medial_coloring(m: FlagMap) -> tuple[int, ...]:
    """Colour b (0) on the vertex-faces of ``medial(m)``."""
    g = medial(m)
    return tuple(g.faces.orbits[i][0] % 2 for i in range(len(g.faces)))


def chess_coloring(g: FlagMap, b_face: int = 0) -> tuple[int, ...]:
    degrees = {g.vertices.size(v) for v in range(len(g.vertices))}
    if degrees != {4}:
        raise NotFourRegular(f"vertex degrees {sorted(degrees)}")
    color = [-1] * len(g.faces)
    color[b_face] = 0
    stack = [b_face]
    while stack:
        f = stack.pop()
        for x in g.faces.orbits[f]:
            h = g.faces.of(g.s2[x])
            if color[h] < 0:
                color[h] = 1 - color[f]
                stack.append(h)
            elif color[h] == color[f]:
                raise DualNotBipartite(f"faces {f} and {h} are adjacent with one colour")
    if min(color) < 0:
        raise DualNotBipartite("face graph is disconnected")
    return tuple(color)


def extract_radial(g: FlagMap, coloring: Sequence[int], color: int = 0) -> tuple[FlagMap, dict[int, int]]:
    """Radial map on the faces of one colour.

    Its vertices are the faces of that colour, its edges the vertices of
    ``g`` and its faces the faces of the other colour.  Returns the map and
    the flag renumbering from ``g``.
    """
    keep = [f for f in range(len(g)) if coloring[g.faces.of(f)] == color]
    idx = {f: i for i, f in enumerate(keep)}
    s0 = [idx[g.s2[g.s1[g.s2[f]]]] for f in keep]
    s1 = [idx[g.s0[f]] for f in keep]
    s2 = [idx[g.s1[f]] for f in keep]
    marks = {name: idx[f] for name, f in g.marks.items() if f in idx}
    return validate_flagmap(len(keep), s0, s1, s2, marks), idx


def central_circuits(g: FlagMap) -> list[tuple[int, ...]]:
    """Straight-ahead walks of a 4-regular map as vertex sequences, one per circuit.

    Each circuit is four flag orbits of the straight-ahead step (two
    directions, two sides); only the first one found is reported.
    """
    seen = [False] * len(g)

    def walk(start: int) -> list[int]:
        seq = []
        f = start
        while not seen[f]:
            seen[f] = True
            seq.append(f)
            f = g.s1[g.s2[g.s1[g.s0[f]]]]
        return seq

    out = []
    for start in range(len(g)):
        if seen[start]:
            continue
        seq = walk(start)
        for other in (g.s2[start], g.s0[start], g.s0[g.s2[start]]):
            walk(other)
        out.append(tuple(g.vertices.of(f) for f in seq))
    return out


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Least rotation of a cyclic sequence or of its reversal."""
    cands = []
    for s in (list(seq), list(reversed(seq))):
        for i in range(len(s)):
            cands.append(tuple(s[i:] + s[:i]))
    return min(cands)


# --- full sphere pipeline ----------------------------------------------------------------


@dataclass
class PlanarRealization:
    sigma: Candidate
    quad: MarkedQuadMap
    radial: FlagMap
    map: FlagMap
    frame: FaceFrame
    trace: list[dict]
    monodromy: Candidate


def radial_with_frame(quad: MarkedQuadMap) -> tuple[FlagMap, FaceFrame]:
    gamma, _ = extract_radial(quad.map, quad.coloring, 0)
    marks = dict(gamma.marks)
    marks["e1"] = marks["p1"]
    marks["face_F"] = marks["p1"]
    gamma = gamma.with_marks(marks)
    return gamma, face_frame_from_flag(gamma, marks["e1"])


def realize_planar(sigma: Candidate, seed: int = 0, trace_sink=None) -> PlanarRealization:
    """Realize sigma as the z-monodromy of the outer face of a sphere map."""
    from .simplify import repair

    check_candidate(sigma)
    quad = assemble_quad_map(sigma, seed)
    gamma0, frame0 = radial_with_frame(quad)
    if Candidate.from_mapping(sigma.k, monodromy_map(gamma0, frame0)) != sigma:
        raise VerificationMismatch("monodromy of the unrepaired radial map differs from sigma")
    fixed, trace = repair(gamma0, protected="e1", trace_sink=trace_sink)
    frame = face_frame_from_flag(fixed, fixed.marks["e1"])
    from .monodromy import z_monodromy

    got = z_monodromy(frame)
    if got != sigma:
        raise VerificationMismatch(f"realized {got} instead of {sigma}")
    return PlanarRealization(sigma, quad, gamma0, fixed, frame, trace, got)
