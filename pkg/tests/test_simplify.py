from __future__ import annotations

import json

import pytest

from builders import cube_with_double_edge, from_rotations, triangle_with_face_loop, triangle_with_pendant
from zmono.maps import (
    RotationSystem,
    cube_map,
    dual,
    euler_characteristic,
    loop_edges,
    parallel_classes,
    satisfies_ss,
    trace_zigzags,
)
from zmono.monodromy import face_frame_from_flag, monodromy_map
from zmono.simplify import (
    EDGE_GADGET,
    LOOP_GADGET,
    EdgeOnProtectedFace,
    NotAFaceLoop,
    expand_edge,
    find_violations,
    remove_loop_face,
    repair,
    trace_lines,
    violation_measure,
)


def _counts(m):
    return len(m.vertices), len(m.edges), len(m.faces)


def _with_vertex_marks(m):
    marks = dict(m.marks)
    for v in range(len(m.vertices)):
        marks[f"v{v}"] = m.vertices.orbits[v][0]
    return m.with_marks(marks)


def _named_zigzags(m):
    """Zigzags as cyclic sequences of vertex mark names; None for unnamed vertices."""
    names = {}
    for name, f in m.marks.items():
        if name.startswith("v"):
            names[m.vertices.of(f)] = name
    out = set()
    for z, _ in trace_zigzags(m, check=False):
        seq = [names.get(v) for v in z.vertices]
        if None in seq:
            continue
        options = [tuple(s[i:] + s[:i]) for s in (seq, seq[::-1]) for i in range(len(s))]
        out.add(min(options))
    return out


def _untouched_zigzags(m, edge):
    names = {m.vertices.of(f): name for name, f in m.marks.items() if name.startswith("v")}
    out = set()
    for z, _ in trace_zigzags(m, check=False):
        if edge in z.edges:
            continue
        seq = [names[v] for v in z.vertices]
        out.add(min(tuple(s[i:] + s[:i]) for s in (seq, seq[::-1]) for i in range(len(s))))
    return out


def cube_with_face_loop():
    """Q3 with a loop bounding a new face, drawn in a corner of a side face; e1 on the bottom."""
    cube = cube_map()
    rs, table = RotationSystem.from_flagmap(cube)
    bottom = set(cube.faces.orbits[0])
    d = next(x for x in rs.darts() if all(table[f] != (x, 0) for f in bottom))
    x, y = rs.new_edge()
    rs.insert_after(d, [x, y])
    m, new_table = rs.to_flagmap({"e1": table[min(bottom)]})
    return m, m.edges.of(new_table[(x, 0)])


def flower():
    """A loop at a with a triangle inside and a triangle outside; sphere."""
    return from_rotations({
        "a": [("l", 0), ("ab", 0), ("ca", 1), ("l", 1), ("ad", 0), ("ea", 1)],
        "b": [("bc", 0), ("ab", 1)],
        "c": [("ca", 0), ("bc", 1)],
        "d": [("de", 0), ("ad", 1)],
        "e": [("ea", 0), ("de", 1)],
    })


def test_gadgets_are_consistent():
    for gadget in (EDGE_GADGET, LOOP_GADGET):
        halves = [(x, y) for x, nbrs in gadget.items() for y in nbrs]
        assert sorted(halves) == sorted((y, x) for x, y in halves)
    assert sum(len(v) for v in EDGE_GADGET.values()) == 24
    assert sum(len(v) for v in LOOP_GADGET.values()) == 18


def test_cube_has_no_violations():
    assert find_violations(cube_map()) == []


def test_two_faces_sharing_two_edges():
    m, _ = cube_with_double_edge()
    kinds = {(v.kind, v.side) for v in find_violations(dual(m))}
    assert kinds == {("D", "primal"), ("B", "dual")}


def test_degree_one_vertex_gives_c():
    assert "C" in {v.kind for v in find_violations(triangle_with_pendant()) if v.side == "primal"}


def test_violation_list_empty_iff_ss():
    for m in (cube_map(), triangle_with_face_loop(), flower(), cube_with_double_edge()[0]):
        assert (find_violations(m) == []) == bool(satisfies_ss(m))


def test_remove_loop_face():
    m, loop = cube_with_face_loop()
    m = _with_vertex_marks(m)
    before = monodromy_map(m, face_frame_from_flag(m, m.marks["e1"]))
    out = remove_loop_face(m, loop)
    v, e, f = _counts(m)
    assert _counts(out) == (v, e - 1, f - 1)
    assert euler_characteristic(out) == euler_characteristic(m)
    assert satisfies_ss(out)
    assert monodromy_map(out, face_frame_from_flag(out, out.marks["e1"])) == before
    assert _untouched_zigzags(m, loop) <= _named_zigzags(out)


def test_remove_loop_face_small():
    m = triangle_with_face_loop()
    loop = loop_edges(m)[0]
    out = remove_loop_face(m, loop)
    # a bare triangle: the loop is gone, the two faces still share three edges
    assert _counts(out) == (3, 3, 2)
    assert not loop_edges(out)
    assert {w.kind for w in satisfies_ss(out).witnesses} == {"D"}


def test_remove_loop_face_rejects_other_edges():
    m = flower()
    with pytest.raises(NotAFaceLoop):
        remove_loop_face(m, loop_edges(m)[0])
    with pytest.raises(NotAFaceLoop):
        remove_loop_face(cube_map(), 0)


def test_expand_parallel_edge():
    m, extra = cube_with_double_edge()
    m = _with_vertex_marks(m)
    protected = set(m.faces.orbits[m.faces.of(m.marks["e1"])])
    before = monodromy_map(m, face_frame_from_flag(m, m.marks["e1"]))
    out = expand_edge(m, extra, protected)
    v, e, f = _counts(m)
    assert _counts(out) == (v + 5, e + 11, f + 6)
    assert euler_characteristic(out) == 2
    assert parallel_classes(m) and not parallel_classes(out)
    assert satisfies_ss(out)
    assert monodromy_map(out, face_frame_from_flag(out, out.marks["e1"])) == before


def test_expansion_is_local():
    m, extra = cube_with_double_edge()
    m = _with_vertex_marks(m)
    out = expand_edge(m, extra)
    kept = _untouched_zigzags(m, extra)
    assert kept and kept <= _named_zigzags(out)


def test_expand_refuses_protected_edge():
    m, extra = cube_with_double_edge()
    protected = set(m.faces.orbits[m.faces.of(m.marks["e1"])])
    on_face = m.edges.of(m.marks["e1"])
    with pytest.raises(EdgeOnProtectedFace):
        expand_edge(m, on_face, protected)


def test_expand_loop():
    m = flower()
    loop = loop_edges(m)[0]
    assert euler_characteristic(m) == 2
    out = expand_edge(m, loop)
    v, e, f = _counts(m)
    assert _counts(out) == (v + 4, e + 8, f + 4)
    assert euler_characteristic(out) == 2
    assert not loop_edges(out)
    assert violation_measure(out) < violation_measure(m)


def test_repair_double_edge():
    m, _ = cube_with_double_edge()
    records = []
    out, trace = repair(m, trace_sink=records.append)
    assert satisfies_ss(out)
    assert trace == records and len(trace) == 1
    assert trace[0]["kind"] == "B" and trace[0]["monodromy_ok"]
    assert set(trace[0]) == {"step", "kind", "site", "V", "E", "F", "monodromy_ok"}


def test_repair_face_loop():
    m, _ = cube_with_face_loop()
    out, trace = repair(m)
    assert satisfies_ss(out)
    assert [r["kind"] for r in trace] == ["A1"]


def test_repair_fixpoint():
    m = cube_map()
    m = m.with_marks({"e1": 0})
    out, trace = repair(m)
    assert trace == [] and out is m


def test_trace_lines_are_json():
    m, _ = cube_with_double_edge()
    _, trace = repair(m)
    lines = trace_lines(trace).splitlines()
    assert [json.loads(x) for x in lines] == trace
