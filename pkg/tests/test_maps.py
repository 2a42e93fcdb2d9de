from __future__ import annotations

import json

import pytest

from builders import digon_sphere, loop_sphere, triangle_with_pendant
from oracles import FaceWalker
from zmono.maps import (
    Disconnected,
    EdgeNotQuadrilateral,
    FixedPointFlag,
    NotInvolution,
    RotationSystem,
    SSViolated,
    bipyramid_map,
    cells,
    cube_map,
    disjoint_union,
    dual,
    dumps_map,
    euler_characteristic,
    find_isomorphism,
    is_isomorphic,
    is_orientable,
    k6_projective_map,
    k7_torus_map,
    loads_map,
    map_from_faces,
    octahedron_map,
    relabel,
    satisfies_ss,
    tetrahedron_map,
    trace_zigzags,
    validate_flagmap,
    vertex_labels,
)

CUBE_FACES = [(1, 4, 3, 2), (5, 6, 7, 8), (1, 2, 6, 5), (2, 3, 7, 6), (3, 4, 8, 7), (4, 1, 5, 8)]


def _canon(seq):
    seq = list(seq)
    options = []
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            options.append(tuple(s[i:] + s[:i]))
    return min(options)


def _labelled_zigzags(m):
    names = vertex_labels(m)
    return [[int(names[v]) for v in z.vertices] for z, _ in trace_zigzags(m)]


def test_validate_rejects_bad_involutions():
    with pytest.raises(NotInvolution):
        validate_flagmap(4, [1, 0, 3, 2], [1, 2, 3, 0], [2, 3, 0, 1])
    with pytest.raises(FixedPointFlag):
        validate_flagmap(4, [0, 1, 3, 2], [1, 0, 3, 2], [2, 3, 0, 1])


def test_validate_requires_quadrilateral_edges():
    # s0 and s2 are fine involutions but do not commute
    s0 = [1, 0, 3, 2, 5, 4, 7, 6]
    s2 = [2, 4, 0, 6, 1, 7, 3, 5]
    with pytest.raises(EdgeNotQuadrilateral):
        validate_flagmap(8, s0, [7, 2, 1, 4, 3, 6, 5, 0], s2)


def test_validate_requires_connected():
    n, s0, s1, s2 = disjoint_union(tetrahedron_map(), tetrahedron_map())
    with pytest.raises(Disconnected):
        validate_flagmap(n, s0, s1, s2)


def test_cube_cells():
    m = cube_map()
    c = cells(m)
    assert (c.vertices, c.edges, c.faces) == (8, 12, 6)
    assert euler_characteristic(m) == 2
    assert is_orientable(m)
    assert satisfies_ss(m)


def test_platonic_duality():
    assert is_isomorphic(dual(cube_map()), octahedron_map())
    assert is_isomorphic(dual(tetrahedron_map()), tetrahedron_map())
    assert not is_isomorphic(cube_map(), octahedron_map())


def test_isomorphism_survives_relabelling():
    m = bipyramid_map(5)
    perm = list(range(len(m)))[::-1]
    other = relabel(m, perm)
    iso = find_isomorphism(m, other)
    assert iso is not None
    for f in range(len(m)):
        assert iso[m.s1[f]] == other.s1[iso[f]]


def test_cube_zigzags_match_naive_walker():
    ours = sorted(_canon(z) for z in _labelled_zigzags(cube_map()))
    naive = sorted(_canon(z) for z in FaceWalker(CUBE_FACES).zigzags())
    assert ours == naive
    assert _canon([1, 2, 3, 7, 8, 5]) in ours


@pytest.mark.parametrize("n,count,length", [(3, 1, 18), (4, 4, 6), (5, 1, 30), (6, 2, 18)])
def test_bipyramid_zigzags(n, count, length):
    pairs = trace_zigzags(bipyramid_map(n))
    assert len(pairs) == count
    assert {len(z) for z, _ in pairs} == {length}


def test_zigzag_reversal_is_the_same_walk_backwards():
    for z, back in trace_zigzags(cube_map()):
        assert _canon(z.edges) == _canon(back.edges)
        assert sorted(z.edges) == sorted(back.edges)


def test_each_edge_is_used_twice_by_zigzags():
    m = k7_torus_map()
    uses = [0] * len(m.edges)
    for z, _ in trace_zigzags(m):
        for e in z.edges:
            uses[e] += 1
    assert set(uses) == {2}


def test_zigzags_refuse_non_ss_maps():
    with pytest.raises(SSViolated):
        trace_zigzags(digon_sphere())
    assert trace_zigzags(digon_sphere(), check=False)


def test_base_triangulations():
    t = k7_torus_map()
    assert (len(t.vertices), len(t.edges), len(t.faces)) == (7, 21, 14)
    assert euler_characteristic(t) == 0 and is_orientable(t) and satisfies_ss(t)
    p = k6_projective_map()
    assert (len(p.vertices), len(p.edges), len(p.faces)) == (6, 15, 10)
    assert euler_characteristic(p) == 1 and not is_orientable(p) and satisfies_ss(p)
    # the dual of K6 on the projective plane is the Petersen graph: 3-regular on 10 vertices
    d = dual(p)
    assert cells(d).vertex_degrees == (3,) * 10


def test_witness_kinds():
    assert {w.kind for w in satisfies_ss(digon_sphere()).witnesses} == {"B", "D"}
    assert {w.kind for w in satisfies_ss(loop_sphere()).witnesses} == {"A"}
    assert {w.kind for w in satisfies_ss(dual(loop_sphere())).witnesses} == {"C"}
    assert "C" in {w.kind for w in satisfies_ss(triangle_with_pendant()).witnesses}


def test_rotation_round_trip():
    m = cube_map()
    rs, table = RotationSystem.from_flagmap(m)
    back, _ = rs.to_flagmap({name: table[f] for name, f in m.marks.items()})
    assert is_isomorphic(m, back)
    assert len(rs.face_cycles()) == 6 and len(rs.vertex_cycles()) == 8


def test_rotation_needs_orientable():
    with pytest.raises(Exception):
        RotationSystem.from_flagmap(k6_projective_map())


def test_json_round_trip_is_identity():
    m = k7_torus_map()
    text = dumps_map(m)
    again = loads_map(text)
    assert (again.s0, again.s1, again.s2, again.marks) == (m.s0, m.s1, m.s2, m.marks)
    assert dumps_map(again) == text
    assert set(json.loads(text)) == {"flags", "s0", "s1", "s2", "marks"}


def test_faces_builder_rejects_bad_edges():
    with pytest.raises(Exception):
        map_from_faces([(1, 2, 3), (1, 2, 4)])
