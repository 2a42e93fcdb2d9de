"""Signed permutations of [k]± and z-monodromy of faces.

Symbols are the non-zero integers -k..k.  A candidate ``sigma`` is admissible
when ``sigma(i) = j`` forces ``sigma(-j) = -i`` (M1) and ``sigma(i) != -i``
(M2).  Equivalently ``x -> -sigma(x)`` is a fixed-point-free involution.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .maps import FlagMap, MapError, SSViolated, require_ss, zigzag_step


class CandidateError(ValueError):
    pass


class CycleSyntaxError(CandidateError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SymbolOutOfRange(CandidateError):
    def __init__(self, symbol: int, k: int):
        super().__init__(f"symbol {symbol} outside [{k}]±")
        self.symbol = symbol


class RepeatedSymbol(CandidateError):
    def __init__(self, symbol: int):
        super().__init__(f"symbol {symbol} appears twice")
        self.symbol = symbol


class M1Violation(CandidateError):
    def __init__(self, i: int, j: int, got: int):
        super().__init__(f"M1 fails: sigma({i}) = {j} but sigma({-j}) = {got}, not {-i}")
        self.i, self.j = i, j


class M2Violation(CandidateError):
    def __init__(self, i: int):
        super().__init__(f"M2 fails: sigma({i}) = {-i}")
        self.i = i


class EdgeNotOnFace(MapError):
    pass


def symbols(k: int) -> list[int]:
    return list(range(1, k + 1)) + [-i for i in range(1, k + 1)]


def _slot(x: int, k: int) -> int:
    return x - 1 if x > 0 else k - x - 1


@dataclass(frozen=True)
class Candidate:
    k: int
    images: tuple[int, ...]  # images in the order 1..k, -1..-k

    def __call__(self, x: int) -> int:
        return self.images[_slot(x, self.k)]

    def as_dict(self) -> dict[int, int]:
        return {x: self(x) for x in symbols(self.k)}

    @classmethod
    def from_mapping(cls, k: int, mapping: Mapping[int, int]) -> Candidate:
        return cls(k, tuple(mapping.get(x, x) for x in symbols(k)))

    def inverse(self) -> Candidate:
        inv = {y: x for x, y in self.as_dict().items()}
        return Candidate.from_mapping(self.k, inv)

    def compose(self, other: Candidate) -> Candidate:
        """``self`` after ``other``."""
        return Candidate.from_mapping(self.k, {x: self(other(x)) for x in symbols(self.k)})

    def __str__(self) -> str:
        return format_candidate(self)


def identity(k: int) -> Candidate:
    return Candidate(k, tuple(symbols(k)))


def check_candidate(c: Candidate) -> None:
    """Raise the first M2 or M1 failure; bijectivity is checked too."""
    syms = symbols(c.k)
    if sorted(c.images) != sorted(syms):
        raise CandidateError("not a bijection of [k]±")
    for i in syms:
        if c(i) == -i:
            raise M2Violation(i)
    for i in syms:
        j = c(i)
        if c(-j) != -i:
            raise M1Violation(i, j, c(-j))


def is_valid(c: Candidate) -> bool:
    try:
        check_candidate(c)
    except CandidateError:
        return False
    return True


_TOKEN = re.compile(r"\s*(\(|\)|,|[+-]?\d+)")


def parse_cycles(text: str, k: int) -> Candidate:
    """Parse signed cycle notation without checking M1/M2."""
    if k < 1:
        raise CandidateError("k must be positive")
    pos = 0
    mapping: dict[int, int] = {}
    seen: set[int] = set()
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        if text[pos] != "(":
            raise CycleSyntaxError("expected '('", pos)
        pos += 1
        cyc: list[int] = []
        expect_number = True
        while True:
            m = _TOKEN.match(text, pos)
            if not m:
                raise CycleSyntaxError("unexpected character" if pos < n else "unterminated cycle", pos)
            tok = m.group(1)
            tok_pos = m.start(1)
            pos = m.end()
            if expect_number:
                if tok in "(),":
                    raise CycleSyntaxError("expected a signed integer", tok_pos)
                x = int(tok)
                if x == 0 or abs(x) > k:
                    raise SymbolOutOfRange(x, k)
                if x in seen:
                    raise RepeatedSymbol(x)
                seen.add(x)
                cyc.append(x)
                expect_number = False
            elif tok == ",":
                expect_number = True
            elif tok == ")":
                break
            else:
                raise CycleSyntaxError("expected ',' or ')'", tok_pos)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            mapping[a] = b
    return Candidate.from_mapping(k, mapping)


def parse_candidate(text: str, k: int) -> Candidate:
    if k < 1:
        raise CandidateError("k must be positive")
    c = parse_cycles(text, k)
    check_candidate(c)
    return c


def _scan_order(k: int) -> list[int]:
    out = []
    for i in range(1, k + 1):
        out += [i, -i]
    return out


def cycles(c: Candidate) -> list[tuple[int, ...]]:
    """Non-trivial cycles, ordered by least |symbol| (positive first on ties)."""
    seen = set()
    out = []
    for x in _scan_order(c.k):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = c(x)
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = c(y)
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def format_candidate(c: Candidate) -> str:
    return "".join("(" + ",".join(str(x) for x in cyc) + ")" for cyc in cycles(c))


# --- enumeration ------------------------------------------------------------


def _matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1:]
        for tail in _matchings(rest):
            yield [(a, b), *tail]


def enumerate_candidates(k: int) -> Iterator[Candidate]:
    """Every admissible candidate, via fixed-point-free involutions nu.

    ``sigma(x) = -nu(x)``; the order is the lexicographic order of matchings
    over the symbol list 1..k, -1..-k.
    """
    if k < 1:
        raise CandidateError("k must be positive")
    for matching in _matchings(symbols(k)):
        nu = {}
        for a, b in matching:
            nu[a], nu[b] = b, a
        yield Candidate.from_mapping(k, {x: -nu[x] for x in nu})


def count_candidates(k: int) -> int:
    """(2k-1)!!"""
    out = 1
    for odd in range(1, 2 * k, 2):
        out *= odd
    return out


# --- symmetry classes --------------------------------------------------------


def _conj(c: Candidate, g: Mapping[int, int]) -> Candidate:
    """g sigma g^-1"""
    return Candidate.from_mapping(c.k, {g[x]: g[c(x)] for x in symbols(c.k)})


def rotation_relabel(k: int, steps: int = 1) -> dict[int, int]:
    out = {}
    for i in range(1, k + 1):
        j = (i - 1 + steps) % k + 1
        out[i], out[-i] = j, -j
    return out


def reflection_relabel(k: int) -> dict[int, int]:
    """Label change caused by reading the face the other way from e_1."""
    out = {}
    for i in range(1, k + 1):
        j = (1 - i) % k + 1
        out[i], out[-i] = -j, j
    return out


SYMMETRIES = ("rotation", "reflection", "reversal")


def classify_candidates(k: int, symmetry: Iterable[str] = ()) -> list[tuple[Candidate, list[Candidate]]]:
    """Orbits of admissible candidates under the chosen relabelings.

    ``rotation`` conjugates by the cyclic shift of labels, ``reflection`` by
    the orientation-reversing relabel and ``reversal`` maps sigma to its
    inverse.  Each class is returned as (representative, members) with the
    representative the lexicographically least image tuple.
    """
    chosen = set(symmetry)
    unknown = chosen - set(SYMMETRIES)
    if unknown:
        raise ValueError(f"unknown symmetry {sorted(unknown)}")
    moves = []
    if "rotation" in chosen:
        rot = rotation_relabel(k)
        moves.append(lambda c: _conj(c, rot))
    if "reflection" in chosen:
        ref = reflection_relabel(k)
        moves.append(lambda c: _conj(c, ref))
    if "reversal" in chosen:
        moves.append(lambda c: c.inverse())
    pending = {c.images: c for c in enumerate_candidates(k)}
    classes = []
    while pending:
        start = pending.pop(min(pending))
        members = {start.images: start}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for mv in moves:
                d = mv(c)
                if d.images not in members:
                    members[d.images] = d
                    pending.pop(d.images, None)
                    queue.append(d)
        ordered = [members[key] for key in sorted(members)]
        classes.append((ordered[0], ordered))
    classes.sort(key=lambda cls: cls[0].images)
    return classes


# --- face frames -----------------------------------------------------------------


@dataclass(frozen=True)
class FaceFrame:
    """A k-gonal face with labelled oriented boundary edges.

    ``flags[x]`` is the flag at the start vertex of oriented edge ``x`` on
    the face side.  ``e_{i+1}`` follows ``e_i`` under ``s1 s0``.
    """

    map: FlagMap
    face: int
    base: int
    k: int
    flags: tuple[tuple[int, int], ...]

    def flag_of(self, x: int) -> int:
        return dict(self.flags)[x]

    def symbol_of(self) -> dict[int, int]:
        return {f: x for x, f in self.flags}

    @property
    def edges(self) -> list[int]:
        lookup = dict(self.flags)
        return [self.map.edges.of(lookup[i]) for i in range(1, self.k + 1)]

    def reversed(self) -> FaceFrame:
        return face_frame_from_flag(self.map, self.map.s0[self.base])


def face_frame_from_flag(m: FlagMap, base: int) -> FaceFrame:
    face = m.faces.of(base)
    k = m.faces.size(face)
    flags = []
    f = base
    for i in range(1, k + 1):
        flags.append((i, f))
        flags.append((-i, m.s0[f]))
        f = m.s1[m.s0[f]]
    if f != base:
        raise MapError("boundary walk did not close")
    starts = {g for _, g in flags}
    if len(starts) != 2 * k:
        raise MapError("face boundary repeats an oriented edge")
    return FaceFrame(m, face, base, k, tuple(flags))


def face_frame(m: FlagMap, face: int, base_edge: int | None = None, reverse: bool = False) -> FaceFrame:
    """Frame on ``face`` with e_1 on ``base_edge``.

    Without ``reverse`` e_1 starts at the lesser face flag of that edge.
    """
    members = m.faces.orbits[face]
    if base_edge is None:
        base = members[0]
    else:
        on = [f for f in members if m.edges.of(f) == base_edge]
        if not on:
            raise EdgeNotOnFace(f"edge {base_edge} is not on face {face}")
        base = on[0]
    if reverse:
        base = m.s0[base]
    if m.faces.size(face) < 3:
        raise MapError(f"face {face} has fewer than 3 sides")
    return face_frame_from_flag(m, base)


def frame_from_marks(m: FlagMap) -> FaceFrame:
    if "e1" not in m.marks:
        raise MapError("map has no 'e1' mark")
    return face_frame_from_flag(m, m.marks["e1"])


def rotation_df(frame: FaceFrame) -> dict[int, int]:
    """D_F on symbols.  It is ``s1 s0`` on start flags, for both senses."""
    m = frame.map
    sym = frame.symbol_of()
    out = {}
    for x, f in frame.flags:
        out[x] = sym[m.s1[m.s0[f]]]
    return out


def monodromy_map(m: FlagMap, frame: FaceFrame) -> dict[int, int]:
    """Flag-level z-monodromy; works without SS, used by repair checks."""
    face_flags = set(m.faces.orbits[frame.face])
    sym = frame.symbol_of()
    out = {}
    for x, psi in frame.flags:
        state = m.s2[psi]
        while True:
            state = zigzag_step(m, state)
            if state in face_flags:
                out[x] = sym[state]
                break
            if m.s2[state] in face_flags:
                out[x] = sym[m.s2[state]]
                break
    return out


def z_monodromy(frame: FaceFrame, check: bool = True) -> Candidate:
    if check:
        require_ss(frame.map)
    return Candidate.from_mapping(frame.k, monodromy_map(frame.map, frame))


@dataclass(frozen=True)
class LawViolation:
    """``clause`` is ``mirror`` (M(e) = e' forces M(-e') = -e),
    ``bijective`` or ``no_reversal`` (M(e) != -e)."""

    face: int
    base: int
    clause: str
    symbol: int


def check_monodromy_laws(m: FlagMap) -> list[LawViolation]:
    """Test the three monodromy properties on every face of size >= 3, both ways."""
    require_ss(m)
    out = []
    for face in range(len(m.faces)):
        if m.faces.size(face) < 3:
            continue
        first = m.faces.orbits[face][0]
        for base in (first, m.s0[first]):
            frame = face_frame_from_flag(m, base)
            mf = monodromy_map(m, frame)
            for e, e2 in mf.items():
                if mf.get(-e2) != -e:
                    out.append(LawViolation(face, base, "mirror", e))
                if e2 == -e:
                    out.append(LawViolation(face, base, "no_reversal", e))
            if len(set(mf.values())) != len(mf):
                out.append(LawViolation(face, base, "bijective", 0))
    return out


def relabel_candidate(c: Candidate, g: Mapping[int, int]) -> Candidate:
    """Express ``c`` in new labels, where ``g`` maps old labels to new ones."""
    return _conj(c, g)


__all__ = [
    "Candidate",
    "CandidateError",
    "CycleSyntaxError",
    "EdgeNotOnFace",
    "FaceFrame",
    "M1Violation",
    "M2Violation",
    "RepeatedSymbol",
    "SSViolated",
    "SymbolOutOfRange",
    "check_candidate",
    "check_monodromy_laws",
    "LawViolation",
    "classify_candidates",
    "count_candidates",
    "enumerate_candidates",
    "face_frame",
    "face_frame_from_flag",
    "format_candidate",
    "frame_from_marks",
    "identity",
    "is_valid",
    "monodromy_map",
    "parse_candidate",
    "parse_cycles",
    "rotation_df",
    "z_monodromy",
]
