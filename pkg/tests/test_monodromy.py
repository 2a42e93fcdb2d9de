from __future__ import annotations

import itertools

import pytest

from oracles import FaceWalker, brute_force_candidates, double_factorial_odd, orbit_partition, signed
from zmono.maps import bipyramid_map, cube_map, tetrahedron_map
from zmono.monodromy import (
    Candidate,
    CycleSyntaxError,
    EdgeNotOnFace,
    M1Violation,
    M2Violation,
    RepeatedSymbol,
    SymbolOutOfRange,
    check_candidate,
    check_monodromy_laws,
    classify_candidates,
    count_candidates,
    enumerate_candidates,
    face_frame,
    face_frame_from_flag,
    identity,
    is_valid,
    parse_candidate,
    reflection_relabel,
    relabel_candidate,
    rotation_df,
    rotation_relabel,
    z_monodromy,
)

EXAMPLE = "(1,-6,-4,2)(3,-5)(5,-3)(-2,4,6,-1)"
TETRA_FACES = [(1, 2, 3), (1, 4, 2), (2, 4, 3), (3, 4, 1)]
# frozen from the FaceWalker oracle; every tetrahedron face gives the same
TETRA_MONODROMY = {1: 3, 3: 2, 2: 1, -1: -2, -2: -3, -3: -1}


def test_parse_example():
    s = parse_candidate(EXAMPLE, 6)
    assert s(1) == -6 and s(-6) == -4 and s(-4) == 2 and s(2) == 1
    assert s(3) == -5 and s(-5) == 3 and s(5) == -3 and s(-3) == 5
    assert s(-2) == 4 and s(6) == -1 and s(-1) == -2


def test_identity_is_valid():
    assert parse_candidate("", 3) == identity(3)


def test_parse_errors():
    with pytest.raises(M2Violation) as exc:
        parse_candidate("(1,-1)", 3)
    assert exc.value.i == 1
    with pytest.raises(M1Violation):
        parse_candidate("(1,2)", 3)
    with pytest.raises(SymbolOutOfRange):
        parse_candidate("(1,4)", 3)
    with pytest.raises(RepeatedSymbol):
        parse_candidate("(1,2)(2,3)", 3)
    with pytest.raises(CycleSyntaxError) as exc:
        parse_candidate("(1,2", 3)
    assert exc.value.position == 4
    with pytest.raises(SymbolOutOfRange):
        parse_candidate("(1,0)", 3)
    with pytest.raises(CycleSyntaxError):
        parse_candidate("(1,,2)", 3)


def test_canonical_format_round_trip():
    s = parse_candidate(EXAMPLE, 6)
    text = str(s)
    assert text == "(1,-6,-4,2)(-1,-2,4,6)(3,-5)(-3,5)"
    assert parse_candidate(text, 6) == s


def _involution_test(s):
    neg = {x: -s[x] for x in s}
    return all(neg[neg[x]] == x and neg[x] != x for x in neg)


@pytest.mark.parametrize("k", [3, 4])
def test_validity_matches_involution_criterion(k):
    syms = signed(k)
    for images in itertools.permutations(syms):
        s = dict(zip(syms, images))
        assert is_valid(Candidate.from_mapping(k, s)) == _involution_test(s)


@pytest.mark.parametrize("k,expected", [(3, 15), (4, 105)])
def test_counts_against_brute_force(k, expected):
    brute = brute_force_candidates(k)
    assert len(brute) == expected
    ours = list(enumerate_candidates(k))
    assert count_candidates(k) == expected
    assert {c.images for c in ours} == {Candidate.from_mapping(k, s).images for s in brute}


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_count_formula(k):
    assert count_candidates(k) == double_factorial_odd(k)
    assert sum(1 for _ in enumerate_candidates(k)) == double_factorial_odd(k)


def test_enumerated_candidates_are_valid():
    for c in enumerate_candidates(4):
        check_candidate(c)


def test_face_rotation_on_cube():
    m = cube_map()
    for face in range(len(m.faces)):
        frame = face_frame(m, face)
        d = rotation_df(frame)
        assert [d[i] for i in range(1, 5)] == [2, 3, 4, 1]
        assert [d[-i] for i in range(1, 5)] == [-4, -1, -2, -3]


def test_edge_not_on_face():
    m = cube_map()
    far = next(e for e in range(len(m.edges)) if all(m.faces.of(f) != 0 for f in m.edges.orbits[e]))
    with pytest.raises(EdgeNotOnFace):
        face_frame(m, 0, base_edge=far)


def test_tetrahedron_against_naive_walker():
    m = tetrahedron_map()
    walker = FaceWalker(TETRA_FACES)
    for j, face in enumerate(TETRA_FACES):
        # face j of the builder starts with the flag at face[0] on edge face[0] face[1]
        got = z_monodromy(face_frame_from_flag(m, 6 * j))
        assert got.as_dict() == walker.monodromy(face)
        assert got.as_dict() == TETRA_MONODROMY


def test_cube_against_naive_walker():
    faces = [(1, 4, 3, 2), (5, 6, 7, 8), (1, 2, 6, 5), (2, 3, 7, 6), (3, 4, 8, 7), (4, 1, 5, 8)]
    m = cube_map()
    walker = FaceWalker(faces)
    for j, face in enumerate(faces):
        got = z_monodromy(face_frame_from_flag(m, 8 * j))
        assert got.as_dict() == walker.monodromy(face)
    assert str(got) == "(1,4,3,2)(-1,-2,-3,-4)"


@pytest.mark.parametrize("m", [cube_map(), tetrahedron_map()] + [bipyramid_map(n) for n in range(3, 7)],
                         ids=["Q3", "tetrahedron", "BP3", "BP4", "BP5", "BP6"])
def test_monodromy_laws_on_fixtures(m):
    assert check_monodromy_laws(m) == []
    for face in range(len(m.faces)):
        check_candidate(z_monodromy(face_frame(m, face)))


def test_base_change_conjugates_by_rotation():
    m = bipyramid_map(5)
    frame = face_frame(m, 0)
    shifted = face_frame_from_flag(m, frame.flag_of(2))
    before, after = z_monodromy(frame), z_monodromy(shifted)
    assert relabel_candidate(before, rotation_relabel(frame.k, -1)) == after


def test_reversal_conjugates_by_reflection():
    m = cube_map()
    frame = face_frame(m, 2)
    before, after = z_monodromy(frame), z_monodromy(frame.reversed())
    assert relabel_candidate(before, reflection_relabel(4)) == after


def test_classes_trivial_symmetry():
    classes = classify_candidates(3)
    assert len(classes) == 15
    assert all(len(members) == 1 for _, members in classes)


def _oracle_orbits(k, which):
    shift = {i: (i % k) + 1 for i in range(1, k + 1)}
    shift.update({-i: -v for i, v in list(shift.items())})
    mirror = {}
    for i in range(1, k + 1):
        j = (1 - i) % k + 1
        mirror[i], mirror[-i] = -j, j

    def conj(g):
        def act(images):
            s = dict(zip(signed(k), images))
            ginv = {v: u for u, v in g.items()}
            t = {x: g[s[ginv[x]]] for x in signed(k)}
            return tuple(t[x] for x in signed(k))
        return act

    def invert(images):
        s = dict(zip(signed(k), images))
        inv = {v: u for u, v in s.items()}
        return tuple(inv[x] for x in signed(k))

    gens = []
    if "rotation" in which:
        gens.append(conj(shift))
    if "reflection" in which:
        gens.append(conj(mirror))
    if "reversal" in which:
        gens.append(invert)
    items = [tuple(s[x] for x in signed(k)) for s in brute_force_candidates(k)]
    return orbit_partition(items, gens)


@pytest.mark.parametrize("which", [("rotation",), ("rotation", "reflection"), ("rotation", "reflection", "reversal")])
def test_classes_against_orbit_oracle(which):
    ours = sorted(sorted(c.images for c in members) for _, members in classify_candidates(3, which))
    theirs = sorted(sorted(o) for o in _oracle_orbits(3, which))
    assert ours == theirs


def test_identity_alone_in_its_class():
    for which in [(), ("rotation",), ("rotation", "reflection", "reversal")]:
        for rep, members in classify_candidates(4, which):
            if identity(4) in members:
                assert members == [identity(4)]
