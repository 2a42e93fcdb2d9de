"""Make a sphere map and its dual simple without disturbing one protected face.

Face-bounding loops are deleted.  Other loops and surplus parallel edges are
replaced by small planar gadgets that carry the two zigzag strands of the
old edge from the same entry states to the same exit states.  Defects of the
dual are fixed by working on the dual map, which shares the flag set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .maps import (
    FlagMap,
    MapError,
    RotationSystem,
    dual,
    loop_edges,
    parallel_classes,
    satisfies_ss,
    validate_flagmap,
    zigzag_step,
)
from .monodromy import face_frame_from_flag, monodromy_map


class NotAFaceLoop(MapError):
    pass


class EdgeOnProtectedFace(MapError):
    pass


class PatchContractViolation(MapError):
    pass


class RepairBudgetExceeded(MapError):
    def __init__(self, message: str, history: list[dict]):
        super().__init__(message)
        self.history = history


class RepairInvariantBroken(MapError):
    def __init__(self, message: str, history: list[dict]):
        super().__init__(message)
        self.history = history


@dataclass(frozen=True)
class Violation:
    """A simplicity defect.

    A1 is a loop bounding a face, A2 any other loop, B a class of parallel
    edges, C an edge with one face on both sides and D two faces sharing
    several edges.  ``side`` says whether it was found in the map or in its
    dual; ``cells`` are vertex ids (A, B) or face ids (C, D) of that side.
    """

    kind: str
    side: str
    edges: tuple[int, ...]
    cells: tuple[int, ...]


def _bounds_face(m: FlagMap, e: int) -> bool:
    return any(m.faces.size(m.faces.of(f)) == 1 for f in m.edges.orbits[e])


def _ab(m: FlagMap, side: str) -> list[Violation]:
    out = []
    for e in loop_edges(m):
        kind = "A1" if _bounds_face(m, e) else "A2"
        out.append(Violation(kind, side, (e,), (m.edge_ends(e)[0],)))
    for group in parallel_classes(m):
        out.append(Violation("B", side, group, tuple(sorted(m.edge_ends(group[0])))))
    return out


def find_violations(m: FlagMap) -> list[Violation]:
    """All defects of ``m`` and its dual, each reported from both sides."""
    out = []
    other = {"primal": "dual", "dual": "primal"}
    for side, target in (("primal", m), ("dual", dual(m))):
        for v in _ab(target, side):
            out.append(v)
            out.append(Violation("C" if v.kind != "B" else "D", other[side], v.edges, v.cells))
    order = {"A1": 0, "A2": 1, "B": 2, "C": 3, "D": 4}
    out.sort(key=lambda v: (v.side != "primal", order[v.kind], v.edges))
    return out


def violation_measure(m: FlagMap) -> int:
    total = 0
    for target in (m, dual(m)):
        total += len(loop_edges(target))
        total += sum(len(g) - 1 for g in parallel_classes(target))
    return total


def _compact(m: FlagMap, drop: set[int], s1_override: Mapping[int, int]) -> FlagMap:
    keep = [f for f in range(len(m)) if f not in drop]
    idx = {f: i for i, f in enumerate(keep)}
    s0 = [idx[m.s0[f]] for f in keep]
    s1 = [idx[s1_override.get(f, m.s1[f])] for f in keep]
    s2 = [idx[m.s2[f]] for f in keep]
    marks = {k: idx[f] for k, f in m.marks.items() if f in idx}
    return validate_flagmap(len(keep), s0, s1, s2, marks)


def delete_edge(m: FlagMap, e: int) -> FlagMap:
    """Remove an edge and close up the corners around it."""
    gone = set(m.edges.orbits[e])
    override = {}
    for f in range(len(m)):
        if f in gone or m.s1[f] not in gone:
            continue
        g = m.s1[f]
        while g in gone:
            g = m.s1[m.s2[g]]
        override[f] = g
    return _compact(m, gone, override)


def remove_loop_face(m: FlagMap, loop_edge: int) -> FlagMap:
    if not m.is_loop(loop_edge) or not _bounds_face(m, loop_edge):
        raise NotAFaceLoop(f"edge {loop_edge} is not a loop bounding a face")
    return delete_edge(m, loop_edge)


# --- gadgets -----------------------------------------------------------------------

# Neighbour lists are counter-clockwise.  "v1"/"v2" are the slots of the
# replaced edge at its two ends; "U"/"L" are the two ends of a loop.
EDGE_GADGET = {
    "P": ["R", "T", "v1", "Q"],
    "Q": ["S", "P", "v1", "v2"],
    "R": ["T", "P", "S", "v2"],
    "S": ["v2", "R", "Q"],
    "T": ["P", "R", "v2"],
    "v1": ["Q", "P"],
    "v2": ["T", "R", "S", "Q"],
}

LOOP_GADGET = {
    "M": ["O", "N", "I", "L"],
    "N": ["U", "I", "M", "O"],
    "I": ["M", "N", "L"],
    "O": ["N", "M", "L"],
    "U": ["N"],
    "L": ["O", "M", "I"],
}


def splice(
    rs: RotationSystem,
    rotation: Mapping[str, Sequence[str]],
    slots: Mapping[str, tuple[int, str]],
) -> dict[tuple[str, str], int]:
    """Insert a planar patch into a rotation system.

    ``rotation`` lists neighbours counter-clockwise for every patch vertex and
    for every host slot.  ``slots[name] = (dart, mode)`` puts that slot's
    darts in place of ``dart`` (mode ``replace``) or right after it
    (mode ``after``).  Returns the dart used for each directed pair.
    """
    halves: dict[frozenset, list[tuple[str, str]]] = {}
    for x, nbrs in rotation.items():
        for y in nbrs:
            halves.setdefault(frozenset((x, y)), []).append((x, y))
    dart: dict[tuple[str, str], int] = {}
    for key in sorted(halves, key=lambda s: sorted(s)):
        pair = halves[key]
        if len(pair) != 2:
            raise PatchContractViolation(f"patch pair {sorted(key)} has {len(pair)} ends")
        a, b = rs.new_edge()
        dart[pair[0]], dart[pair[1]] = a, b
    for x, nbrs in rotation.items():
        darts = [dart[(x, y)] for y in nbrs]
        if x in slots:
            anchor, mode = slots[x]
            if mode == "replace":
                rs.replace(anchor, darts)
            else:
                rs.insert_after(anchor, darts)
        else:
            rs.set_cycle(darts)
    return dart


def _inverse_step(m: FlagMap, f: int) -> int:
    return m.s0[m.s1[m.s2[f]]]


def expand_edge(m: FlagMap, edge: int, protected: Iterable[int] = ()) -> FlagMap:
    """Replace ``edge`` by the matching gadget.

    ``protected`` is a set of flags (a face of the map, or the corresponding
    vertex when working on a dual) whose edges must not be touched.
    """
    guard = set(protected)
    flags = m.edges.orbits[edge]
    if guard.intersection(flags):
        raise EdgeOnProtectedFace(f"edge {edge} touches the protected cell")
    loop = m.is_loop(edge)
    if loop and any(m.faces.size(m.faces.of(f)) == 1 for f in flags):
        raise NotAFaceLoop(f"loop {edge} bounds a face; remove it instead")

    # entry/exit states of the strands through the edge
    passages = []
    for f in flags:
        before, after = _inverse_step(m, f), zigzag_step(m, f)
        if m.edges.of(before) != edge and m.edges.of(after) != edge:
            passages.append((before, after))

    rs, table = RotationSystem.from_flagmap(m)
    marks = {name: table[f] for name, f in m.marks.items()}
    d1 = min(table[f][0] for f in flags)
    d2 = d1 ^ 1
    old_darts = set(rs.nxt)
    if loop:
        splice(rs, LOOP_GADGET, {"U": (d1, "replace"), "L": (d2, "replace")})
        delta = (4, 8, 4)
    else:
        splice(rs, EDGE_GADGET, {"v1": (d1, "replace"), "v2": (d2, "replace")})
        delta = (5, 11, 6)
    new_darts = set(rs.nxt) - old_darts
    out, new_table = rs.to_flagmap(marks)

    got = (len(out.vertices) - len(m.vertices), len(out.edges) - len(m.edges), len(out.faces) - len(m.faces))
    if got != delta:
        raise PatchContractViolation(f"cell counts changed by {got}, expected {delta}")
    gadget_flags = {new_table[(d, s)] for d in new_darts for s in (0, 1)}
    for before, after in passages:
        start = new_table[table[before]]
        target = new_table[table[after]]
        state = zigzag_step(out, start)
        steps = 0
        while state in gadget_flags:
            state = zigzag_step(out, state)
            steps += 1
            if steps > 4 * len(gadget_flags):
                raise PatchContractViolation("strand does not leave the gadget")
        if state != target or steps == 0:
            raise PatchContractViolation("strand leaves the gadget at the wrong place")
    return out


# --- repair -----------------------------------------------------------------------------


def _pick(m: FlagMap, guard: set[int]) -> tuple[str, str, int] | None:
    """Next (kind, side, edge) to act on, or None when the map is SS."""
    views = (("primal", m), ("dual", dual(m)))
    for kind in ("A1", "B", "A2"):
        for side, target in views:
            if kind == "B":
                for group in parallel_classes(target):
                    def keep_key(e: int) -> tuple:
                        on_guard = bool(guard.intersection(target.edges.orbits[e]))
                        marked = any(target.edges.of(f) == e for f in target.marks.values())
                        return (not on_guard, not marked, e)

                    order = sorted(group, key=keep_key)
                    free = [e for e in order[1:] if not guard.intersection(target.edges.orbits[e])]
                    if len(free) < len(order) - 1:
                        raise EdgeOnProtectedFace(f"parallel class {group} has several protected edges")
                    return "B", side, free[0]
                continue
            for e in loop_edges(target):
                if guard.intersection(target.edges.orbits[e]):
                    raise EdgeOnProtectedFace(f"loop {e} touches the protected cell")
                if (kind == "A1") == _bounds_face(target, e):
                    return kind, side, e
    return None


def repair(
    m: FlagMap,
    protected: str = "e1",
    budget_factor: int = 10,
    trace_sink: Callable[[dict], None] | None = None,
) -> tuple[FlagMap, list[dict]]:
    """Apply loop removals and expansions until the map satisfies SS.

    ``protected`` names a mark on a flag of the face to keep intact.  After
    every step the face's monodromy is recomputed and must be unchanged,
    and the total defect count must drop.
    """
    base = m.marks[protected]
    target = monodromy_map(m, face_frame_from_flag(m, base))
    budget = budget_factor * len(m.edges)
    measure = violation_measure(m)
    history: list[dict] = []
    step = 0
    while True:
        guard = set(m.faces.orbits[m.faces.of(m.marks[protected])])
        action = _pick(m, guard)
        if action is None:
            break
        if step >= budget:
            raise RepairBudgetExceeded(f"no SS map after {step} steps", history)
        kind, side, edge = action
        work = m if side == "primal" else dual(m)
        if kind == "A1":
            new = remove_loop_face(work, edge)
        else:
            new = expand_edge(work, edge, guard)
        if side == "dual":
            new = dual(new)
        step += 1
        frame = face_frame_from_flag(new, new.marks[protected])
        ok = monodromy_map(new, frame) == target
        new_measure = violation_measure(new)
        record = {
            "step": step,
            "kind": kind,
            "site": {"side": side, "edge": edge},
            "V": len(new.vertices),
            "E": len(new.edges),
            "F": len(new.faces),
            "monodromy_ok": ok,
        }
        history.append(record)
        if trace_sink is not None:
            trace_sink(record)
        if not ok:
            raise RepairInvariantBroken(f"step {step} changed the protected monodromy", history)
        if new_measure >= measure:
            raise RepairInvariantBroken(f"step {step} did not reduce the defect count", history)
        m, measure = new, new_measure
    if not satisfies_ss(m):
        raise RepairInvariantBroken("repair ended with defects left", history)
    return m, history


def trace_lines(history: Iterable[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in history)
