"""Move a sphere realization onto another closed surface.

A five-vertex gadget with a triangular face T is attached inside one corner
of the sphere map; its zigzags stay away from the protected face.  The
triangle is then cut out and glued to a triangle of a base map of the
target surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .maps import (
    FlagMap,
    MapError,
    RotationSystem,
    euler_characteristic,
    is_orientable,
    k6_projective_map,
    k7_torus_map,
    satisfies_ss,
    validate_flagmap,
    zigzag_orbits,
)
from .monodromy import Candidate, FaceFrame, face_frame_from_flag, monodromy_map, z_monodromy
from .planar import (
    MarkedQuadMap,
    PlanarRealization,
    VerificationMismatch,
    medial,
    medial_coloring,
    radial_with_frame,
    realize_planar,
)
from .simplify import splice


class NoEligibleEdge(MapError):
    pass


class FaceNotTriangular(MapError):
    pass


class CompositionSSFailure(MapError):
    pass


class SurfaceSpecError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    """``sphere``, ``genus:g`` (orientable) or ``cross:h`` (non-orientable)."""

    kind: str
    n: int = 0

    @classmethod
    def parse(cls, text: str) -> SurfaceSpec:
        text = text.strip()
        if text == "sphere":
            return cls("sphere")
        m = re.fullmatch(r"(genus|cross):(\d+)", text)
        if not m or int(m.group(2)) < 1:
            raise SurfaceSpecError(f"bad surface {text!r}; use sphere, genus:g or cross:h with g, h >= 1")
        return cls(m.group(1), int(m.group(2)))

    @property
    def euler(self) -> int:
        if self.kind == "sphere":
            return 2
        return 2 - 2 * self.n if self.kind == "genus" else 2 - self.n

    @property
    def orientable(self) -> bool:
        return self.kind != "cross"

    def __str__(self) -> str:
        return "sphere" if self.kind == "sphere" else f"{self.kind}:{self.n}"


# --- augmentation ------------------------------------------------------------------

# Gadget attached at host vertex v (slot "v", inserted after one dart).
# T is the triangle x2, x5, x3.
RING_GADGET = {
    "v": ["x4", "x2", "x3", "x6"],
    "x2": ["x3", "v", "x5"],
    "x3": ["v", "x2", "x5"],
    "x5": ["x3", "x2", "x4", "x6"],
    "x4": ["x6", "x5", "v"],
    "x6": ["v", "x5", "x4"],
}


@dataclass
class Augmentation:
    map: FlagMap
    corner: int
    triangle: tuple[int, ...]
    ring_zigzags: list


def _protected_edges(m: FlagMap, mark: str) -> set[int]:
    face = m.faces.orbits[m.faces.of(m.marks[mark])]
    return {m.edges.of(f) for f in face}


def _triangle_isolated(m: FlagMap, tri_edges: set[int], f_edges: set[int]) -> tuple[bool, list]:
    through_t = []
    for z in zigzag_orbits(m):
        edges = {m.edges.of(f) for f in z}
        if edges & f_edges and edges & tri_edges:
            return False, []
        if edges & tri_edges:
            through_t.append(z)
    return True, through_t


def augment_radial(gamma: FlagMap, protected: str = "e1", corner: int | None = None) -> Augmentation:
    """Attach the ring gadget in a corner of ``gamma`` that is not in the protected face.

    Corners are tried in dart order (or just ``corner`` if given).  The
    first one whose result is SS (when ``gamma`` is), keeps the protected
    monodromy and has T untouched by the zigzags of the protected face wins.  The result marks
    one flag of T as ``face_T``.
    """
    before = monodromy_map(gamma, face_frame_from_flag(gamma, gamma.marks[protected]))
    need_ss = bool(satisfies_ss(gamma))
    rs0, table = RotationSystem.from_flagmap(gamma)
    marks = {name: table[f] for name, f in gamma.marks.items()}
    d, side = marks[protected]
    # the side-1 sector of d is the side-0 sector of prv(d)
    f_face = set(rs0.face_of(d if side == 0 else rs0.prv[d]))
    options = [corner] if corner is not None else [d for d in rs0.darts() if d not in f_face]
    for y in options:
        if y in f_face:
            raise NoEligibleEdge(f"corner {y} lies in the protected face")
        rs, _ = RotationSystem.from_flagmap(gamma)
        darts = splice(rs, RING_GADGET, {"v": (y, "after")})
        out, new_table = rs.to_flagmap(marks)
        tri_dart = darts[("x2", "x5")]
        tri = rs.face_of(tri_dart)
        tails = sorted({name for (name, _), d in darts.items() if d in tri})
        if len(tri) != 3 or tails != ["x2", "x3", "x5"]:
            raise MapError("ring gadget triangle is malformed")
        t_flag = new_table[(tri_dart, 0)]
        out = out.with_marks({**out.marks, "face_T": t_flag})
        if need_ss and not satisfies_ss(out):
            continue
        if monodromy_map(out, face_frame_from_flag(out, out.marks[protected])) != before:
            continue
        t_edges = {out.edges.of(f) for f in out.faces.orbits[out.faces.of(t_flag)]}
        ok, ring = _triangle_isolated(out, t_edges, _protected_edges(out, protected))
        if ok:
            return Augmentation(out, y, tuple(sorted(t_edges)), ring)
    raise NoEligibleEdge("no corner admits the ring gadget")


def borromean_augment(quad: MarkedQuadMap, corner: int | None = None) -> MarkedQuadMap:
    """Quad-map view of the augmentation: G' is the medial map of the augmented R_b."""
    gamma, _ = radial_with_frame(quad)
    aug = augment_radial(gamma, corner=corner)
    g2 = medial(aug.map)
    return MarkedQuadMap(
        k=quad.k,
        map=g2,
        coloring=medial_coloring(aug.map),
        crossings=quad.crossings,
        twisted=quad.twisted,
        drawing=None,
        extra={"radial": aug.map, "corner": aug.corner},
    )


# --- connected sum -------------------------------------------------------------------------


def _face_walk(m: FlagMap, start: int) -> list[int]:
    out = [start]
    f = start
    for i in range(1, 6):
        f = m.s0[f] if i % 2 else m.s1[f]
        out.append(f)
    return out


def _triangle_flags(m: FlagMap, flag: int) -> list[int]:
    face = m.faces.orbits[m.faces.of(flag)]
    if len(face) != 6:
        raise FaceNotTriangular(f"face of flag {flag} has {len(face) // 2} sides")
    walk = _face_walk(m, flag)
    if sorted(walk) != sorted(face):
        raise FaceNotTriangular("face walk does not close after three sides")
    return walk


def connected_sum(m1: FlagMap, t1: int, m2: FlagMap, t2: int, gluing: int | None = None) -> FlagMap:
    """Cut out the triangles containing flags ``t1``/``t2`` and glue the boundaries.

    ``gluing`` in 0..5 picks the vertex correspondence (start flag of the
    second triangle's walk).  By default the first gluing whose result is
    orientable (when both inputs are) and SS is used; if none is SS the
    first orientation-compatible one is returned.
    """
    w1 = _triangle_flags(m1, t1)
    starts = [f for f in m2.faces.orbits[m2.faces.of(t2)]]
    _triangle_flags(m2, t2)
    if gluing is not None:
        return _glue(m1, w1, m2, _face_walk(m2, sorted(starts)[gluing]))
    want_orientable = is_orientable(m1) and is_orientable(m2)
    fallback = None
    for start in sorted(starts):
        out = _glue(m1, w1, m2, _face_walk(m2, start))
        if want_orientable and not is_orientable(out):
            continue
        if fallback is None:
            fallback = out
        if satisfies_ss(out):
            return out
    return fallback


def _glue(m1: FlagMap, w1: list[int], m2: FlagMap, w2: list[int]) -> FlagMap:
    n1 = len(m1)
    drop1, drop2 = set(w1), set(w2)
    keep = [(1, f) for f in range(n1) if f not in drop1] + [(2, f) for f in range(len(m2)) if f not in drop2]
    idx = {key: i for i, key in enumerate(keep)}
    maps = {1: m1, 2: m2}
    bridge = {}
    for a, b in zip(w1, w2):
        bridge[(1, m1.s2[a])] = (2, m2.s2[b])
        bridge[(2, m2.s2[b])] = (1, m1.s2[a])
    s0, s1, s2 = [], [], []
    for side, f in keep:
        m = maps[side]
        s0.append(idx[(side, m.s0[f])])
        s1.append(idx[(side, m.s1[f])])
        s2.append(idx[bridge.get((side, f), (side, m.s2[f]))])
    marks = {}
    for side in (2, 1):
        for name, f in maps[side].marks.items():
            if (side, f) in idx:
                marks[name] = idx[(side, f)]
    return validate_flagmap(len(keep), s0, s1, s2, marks)


def _mark_triangle(m: FlagMap, name: str = "T", skip: set[int] = frozenset()) -> FlagMap:
    for face in range(len(m.faces)):
        orbit = m.faces.orbits[face]
        if len(orbit) == 6 and not skip.intersection(orbit):
            return m.with_marks({**m.marks, name: orbit[0]})
    raise FaceNotTriangular("map has no free triangular face")


def base_map(spec: SurfaceSpec) -> FlagMap:
    """SS map of the target surface with one triangle marked ``T``."""
    if spec.kind == "sphere":
        raise SurfaceSpecError("the sphere needs no base map")
    unit = k7_torus_map() if spec.kind == "genus" else k6_projective_map()
    unit = unit.with_marks({})
    out = _mark_triangle(unit)
    for _ in range(spec.n - 1):
        piece = _mark_triangle(unit)
        out = connected_sum(out, out.marks["T"], piece, piece.marks["T"])
        out = out.with_marks({})
        if not satisfies_ss(out):
            raise CompositionSSFailure("connected sum of base pieces is not SS")
        out = _mark_triangle(out)
    if euler_characteristic(out) != spec.euler or is_orientable(out) != spec.orientable:
        raise CompositionSSFailure(f"base map for {spec} has the wrong topology")
    return out


# --- pipeline -------------------------------------------------------------------------------


@dataclass
class SurfaceRealization:
    sigma: Candidate
    spec: SurfaceSpec
    map: FlagMap
    frame: FaceFrame
    monodromy: Candidate
    planar: PlanarRealization
    augmentation: Augmentation | None = None
    base: FlagMap | None = None
    extra: dict = field(default_factory=dict)


def realize_on_surface(sigma: Candidate, spec: SurfaceSpec | str, seed: int = 0, trace_sink=None) -> SurfaceRealization:
    if isinstance(spec, str):
        spec = SurfaceSpec.parse(spec)
    planar = realize_planar(sigma, seed, trace_sink=trace_sink)
    if spec.kind == "sphere":
        return SurfaceRealization(sigma, spec, planar.map, planar.frame, planar.monodromy, planar)
    aug = augment_radial(planar.map)
    base = base_map(spec)
    glued = connected_sum(aug.map, aug.map.marks["face_T"], base, base.marks["T"])
    glued = glued.with_marks({k: v for k, v in glued.marks.items() if k != "T"})
    if not satisfies_ss(glued):
        raise CompositionSSFailure("glued map is not SS")
    if euler_characteristic(glued) != spec.euler or is_orientable(glued) != spec.orientable:
        raise VerificationMismatch(f"glued map is not on {spec}")
    frame = face_frame_from_flag(glued, glued.marks["e1"])
    got = z_monodromy(frame)
    if got != sigma:
        raise VerificationMismatch(f"realized {got} instead of {sigma} on {spec}")
    return SurfaceRealization(sigma, spec, glued, frame, got, planar, aug, base)
