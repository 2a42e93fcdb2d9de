"""Brute-force reference computations that share no code with the package."""

from __future__ import annotations

import itertools
from collections import deque


def signed(k):
    return list(range(1, k + 1)) + [-i for i in range(1, k + 1)]


def brute_force_candidates(k):
    """All permutations of the signed symbols passing both admissibility rules."""
    syms = signed(k)
    out = []
    for images in itertools.permutations(syms):
        s = dict(zip(syms, images))
        if any(s[i] == -i for i in syms):
            continue
        if all(s[-s[i]] == -i for i in syms):
            out.append(s)
    return out


def double_factorial_odd(k):
    out = 1
    for j in range(1, 2 * k, 2):
        out *= j
    return out


class FaceWalker:
    """Zigzags on an oriented polyhedral map given by consistently oriented face cycles.

    A state is (u, v, turn): travelling u -> v, next turning into the face on
    the left ("L", the face listing u -> v) or on the right ("R").
    """

    def __init__(self, faces):
        self.faces = [tuple(f) for f in faces]
        self.succ = {}
        self.pred = {}
        for f in self.faces:
            n = len(f)
            for i in range(n):
                self.succ[(f[i], f[(i + 1) % n])] = f[(i + 2) % n]
                self.pred[(f[i], f[(i + 1) % n])] = f[i - 1]

    def step(self, state):
        u, v, turn = state
        if turn == "L":
            return (v, self.succ[(u, v)], "R")
        # the right face lists v -> u; the previous vertex of v there
        return (v, self.pred[(v, u)], "L")

    def zigzags(self):
        """Closed zigzags as vertex cycles, one per pair of opposite directions."""
        seen = set()
        out = []
        for f in self.faces:
            for i in range(len(f)):
                for turn in "LR":
                    start = (f[i], f[(i + 1) % len(f)], turn)
                    if start in seen:
                        continue
                    cyc = []
                    s = start
                    while s not in seen:
                        seen.add(s)
                        cyc.append(s)
                        s = self.step(s)
                    out.append(cyc)
        # each zigzag is traversed once per direction; keep one direction
        reps = {}
        for cyc in out:
            edges = frozenset(frozenset((a, b)) for a, b, _ in cyc)
            key = tuple(sorted(tuple(sorted(e)) for e in edges)), len(cyc)
            reps.setdefault(key, []).append([a for a, _, _ in cyc])
        return [v[0] for v in reps.values()]

    def monodromy(self, face):
        """Face monodromy with e_i = v_{i-1} v_i along the face cycle."""
        k = len(face)
        directed = {}
        for i in range(1, k + 1):
            a, b = face[i - 1], face[i % k]
            directed[(a, b)] = i
            directed[(b, a)] = -i
        out = {}
        for x in signed(k):
            i = abs(x)
            a, b = face[i - 1], face[i % k]
            # arriving on e along the face: the face is on the left for
            # positive symbols, so the next turn goes right
            state = (a, b, "R") if x > 0 else (b, a, "L")
            while True:
                state = self.step(state)
                key = (state[0], state[1])
                if key in directed:
                    out[x] = directed[key]
                    break
        return out


def interleaving_crossings(order, pairs):
    """Number of chord pairs whose endpoints alternate around the circle."""
    pos = {lab: q for q, lab in enumerate(order)}
    chords = [tuple(sorted((pos[a], pos[b]))) for a, b in pairs]
    count = 0
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        if (a < c < b) != (a < d < b):
            count += 1
    return count


def trace_boundary_curves(k, partner):
    """Curves formed by the arcs r_i -> l_{i+1} and the chord matching."""
    seen = set()
    count = 0
    for i in range(1, k + 1):
        start = f"r{i}"
        if start in seen:
            continue
        count += 1
        x = start
        while x not in seen:
            seen.add(x)
            j = int(x[1:])
            nxt = f"l{j % k + 1}" if x[0] == "r" else f"r{(j - 2) % k + 1}"
            seen.add(nxt)
            x = partner[nxt]
    return count


def two_colour(adjacent, n):
    """Proper 2-colouring of a graph on range(n), or None."""
    colour = [-1] * n
    for s in range(n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in adjacent[a]:
                if colour[b] < 0:
                    colour[b] = 1 - colour[a]
                    queue.append(b)
                elif colour[b] == colour[a]:
                    return None
    return colour


def orbit_partition(items, generators):
    """Orbits of a finite set under the group generated by the given maps."""
    items = list(items)
    index = {x: i for i, x in enumerate(items)}
    seen = [False] * len(items)
    orbits = []
    for i, x in enumerate(items):
        if seen[i]:
            continue
        orbit = {x}
        queue = [x]
        seen[i] = True
        while queue:
            y = queue.pop()
            for g in generators:
                z = g(y)
                if not seen[index[z]]:
                    seen[index[z]] = True
                    orbit.add(z)
                    queue.append(z)
        orbits.append(orbit)
    return orbits
