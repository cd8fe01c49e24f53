"""Elementary collapses, greedy collapsing and exhaustive collapsibility search."""

from __future__ import annotations

import hashlib
import heapq
import itertools
from dataclasses import dataclass, field

from .complex import SimplicialComplex

YES = "yes"
NO = "no"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CollapseStep:
    free_face: tuple
    coface: tuple


@dataclass
class CollapseSequence:
    steps: list
    residue: SimplicialComplex

    def __len__(self):
        return len(self.steps)

    def to_json(self) -> list:
        return [[list(s.free_face), list(s.coface)] for s in self.steps]


class IllegalCollapse(ValueError):
    pass


def free_faces(K: SimplicialComplex) -> list[tuple]:
    """All (simplex, coface) with the coface the simplex's only proper coface."""
    out = []
    for k in range(1, K.dim + 1):
        co = K.cofaces(k)
        maximal = {s for s, ts in K.cofaces(k + 1).items()} if k < K.dim else set()
        for face, ts in co.items():
            if len(ts) == 1 and ts[0] not in maximal:
                out.append((face, ts[0]))
    out.sort(key=lambda p: (-len(p[1]), p[0]))
    return out


def _priority(seed: int):
    if seed == 0:
        return lambda s: s
    def key(s):
        h = hashlib.blake2b(repr((seed, s)).encode(), digest_size=8).digest()
        return int.from_bytes(h, "big")
    return key


class _CollapseState:
    """Simplices with immediate-coface counts; the sum of coface ids identifies a unique coface."""

    def __init__(self, simplices):
        self.ids = {}
        self.simplex = []
        for s in simplices:
            self.ids[s] = len(self.simplex)
            self.simplex.append(s)
        n = len(self.simplex)
        self.alive = [True] * n
        self.count = [0] * n
        self.cosum = [0] * n
        for i, s in enumerate(self.simplex):
            if len(s) > 1:
                for f in itertools.combinations(s, len(s) - 1):
                    j = self.ids[f]
                    self.count[j] += 1
                    self.cosum[j] += i

    def facets(self, i):
        s = self.simplex[i]
        if len(s) == 1:
            return []
        return [self.ids[f] for f in itertools.combinations(s, len(s) - 1)]

    def unique_coface(self, i):
        """The coface making simplex i free, or None."""
        if not self.alive[i] or self.count[i] != 1:
            return None
        j = self.cosum[i]
        return j if self.count[j] == 0 else None

    def remove(self, i):
        self.alive[i] = False
        for f in self.facets(i):
            self.count[f] -= 1
            self.cosum[f] -= i

    def residue(self) -> SimplicialComplex:
        return SimplicialComplex([s for i, s in enumerate(self.simplex) if self.alive[i]])


def greedy_collapse(K: SimplicialComplex, seed: int = 0, stop_at: SimplicialComplex | None = None) -> CollapseSequence:
    """Collapse until no free face remains (deterministic for a fixed seed).

    Moves are taken in order (coface dimension descending, then key), where
    the key is lexicographic for seed 0 and a seeded hash otherwise.  If
    ``stop_at`` is given, simplices of that subcomplex are never removed.
    """
    state = _CollapseState(K.all_simplices())
    keep = set(stop_at.all_simplices()) if stop_at is not None else set()
    key = _priority(seed)
    heap = []

    def consider(i):
        j = state.unique_coface(i)
        if j is not None and state.simplex[j] not in keep and state.simplex[i] not in keep:
            heapq.heappush(heap, (-len(state.simplex[j]), key(state.simplex[i]), i))

    for i in range(len(state.simplex)):
        consider(i)
    steps = []
    while heap:
        _, _, i = heapq.heappop(heap)
        j = state.unique_coface(i)
        if j is None or state.simplex[j] in keep or state.simplex[i] in keep:
            continue
        steps.append(CollapseStep(state.simplex[i], state.simplex[j]))
        state.remove(j)
        state.remove(i)
        for f in state.facets(j) + state.facets(i):
            consider(f)
    return CollapseSequence(steps, state.residue())


def replay(K: SimplicialComplex, steps) -> SimplicialComplex:
    """Apply a collapse sequence, checking legality of every move."""
    state = _CollapseState(K.all_simplices())
    for n, step in enumerate(steps):
        face = tuple(step.free_face)
        coface = tuple(step.coface)
        i, j = state.ids.get(face), state.ids.get(coface)
        if i is None or j is None or not state.alive[i] or not state.alive[j]:
            raise IllegalCollapse(f"step {n}: simplex missing")
        if len(coface) != len(face) + 1 or not set(face) < set(coface):
            raise IllegalCollapse(f"step {n}: {coface} is not a coface of {face}")
        if state.unique_coface(i) != j:
            raise IllegalCollapse(f"step {n}: {face} is not free in {coface}")
        state.remove(j)
        state.remove(i)
    return state.residue()


def is_collapsible(K: SimplicialComplex, node_budget: int = 10_000):
    """Exhaustive search for a collapse to a point.

    Returns ``(verdict, certificate)``: ``yes`` with a legal step list, ``no``
    once every reachable state has been explored, ``inconclusive`` when the
    node budget runs out first.
    """
    start = frozenset(K.all_simplices())
    seen = set()
    nodes = 0
    budget_hit = False

    def moves(state):
        out = []
        for s in state:
            if len(s) < 2:
                continue
            for f in itertools.combinations(s, len(s) - 1):
                cof = [t for t in state if len(t) == len(f) + 1 and set(f) < set(t)]
                if len(cof) == 1 and cof[0] == s:
                    if not any(len(t) == len(s) + 1 and set(s) < set(t) for t in state):
                        out.append((f, s))
        out.sort(key=lambda p: (-len(p[1]), p[0]))
        return out

    def search(state, path):
        nonlocal nodes, budget_hit
        if len(state) == 1:
            return path
        if state in seen:
            return None
        if nodes >= node_budget:
            budget_hit = True
            return None
        nodes += 1
        seen.add(state)
        for f, s in moves(state):
            found = search(state - {f, s}, path + [CollapseStep(f, s)])
            if found is not None:
                return found
        return None

    cert = search(start, [])
    if cert is not None:
        return YES, cert
    return (INCONCLUSIVE if budget_hit else NO), None
