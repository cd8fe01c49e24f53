"""Edge-path presentations of π1 and Tietze simplification.

Words are tuples of nonzero ints: ``g`` is generator number g (1-based) and
``-g`` its inverse.  Triviality certification is one-sided: an empty
presentation proves the group trivial, anything else proves nothing.
"""

from __future__ import annotations

import heapq
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .complex import SimplicialComplex
from .homology import _sparse_invariants

TRIVIAL = "trivial"
SIMPLIFIED = "simplified"
INCONCLUSIVE = "inconclusive"


class DisconnectedComplex(ValueError):
    pass


def free_reduce(word) -> tuple:
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def inverse(word) -> tuple:
    return tuple(-x for x in reversed(word))


def canonical_relator(word) -> tuple:
    """Least rotation of the word or its inverse (relators are cyclic and sign-free)."""
    w = cyclic_reduce(word)
    if not w:
        return w
    cands = []
    for v in (w, inverse(w)):
        cands.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(cands)


@dataclass
class GroupPresentation:
    generators: list
    relators: list
    status: str = SIMPLIFIED
    steps: int = 0

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            if any(not 1 <= abs(x) <= n for x in r):
                raise ValueError(f"relator {r} uses an unknown generator")

    def word_str(self, word) -> str:
        if not word:
            return "1"
        return "".join(self.generators[abs(x) - 1] + ("^-1" if x < 0 else "") for x in word)

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def length(self) -> int:
        return sum(len(r) for r in self.relators)

    def as_dict(self) -> dict:
        return {"generators": list(self.generators),
                "relators": [self.word_str(r) for r in self.relators],
                "status": self.status, "steps": self.steps,
                "certified_trivial": is_certified_trivial(self)}


@dataclass
class SpanningTree:
    root: int
    tree_edges: set = field(default_factory=set)


def spanning_tree(K: SimplicialComplex, base: int | None = None) -> SpanningTree:
    """Breadth-first tree from ``base`` (default: smallest vertex), neighbours in id order."""
    verts = K.vertices
    root = min(verts) if base is None else base
    adj = defaultdict(list)
    for a, b in K.simplices(1):
        adj[a].append(b)
        adj[b].append(a)
    seen = {root}
    queue = deque([root])
    tree = set()
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                queue.append(w)
    if len(seen) != len(verts):
        raise DisconnectedComplex(f"complex has {len(verts) - len(seen)} vertices unreachable from {root}")
    return SpanningTree(root, tree)


def edge_path_presentation(K: SimplicialComplex, base: int | None = None) -> GroupPresentation:
    """One generator per non-tree edge, one relator per 2-simplex."""
    if K.dim < 1 and len(K.vertices) > 1:
        raise DisconnectedComplex("complex has several vertices and no edges")
    tree = spanning_tree(K, base)
    gen_of = {}
    names = []
    for e in K.simplices(1):
        if e not in tree.tree_edges:
            names.append(f"e{e[0]}_{e[1]}")
            gen_of[e] = len(names)
    relators = []
    for a, b, c in K.simplices(2):
        word = []
        for e, sign in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            g = gen_of.get(e)
            if g:
                word.append(sign * g)
        relators.append(tuple(word))
    return GroupPresentation(names, relators)


# -- abelianisation -----------------------------------------------------------

def abelianization(P: GroupPresentation) -> tuple[int, list]:
    """(free rank, torsion coefficients) of the abelianised group."""
    cols = []
    for r in P.relators:
        col = defaultdict(int)
        for x in r:
            col[abs(x) - 1] += 1 if x > 0 else -1
        cols.append({i: v for i, v in col.items() if v})
    factors = _sparse_invariants(cols, None)
    return len(P.generators) - len(factors), sorted(x for x in factors if x > 1)


# -- Tietze transformations ---------------------------------------------------

class _Workspace:
    """Mutable presentation with a generator -> relator occurrence index."""

    def __init__(self, P: GroupPresentation):
        self.names = list(P.generators)
        self.alive = set(range(1, len(self.names) + 1))
        self.rels: dict[int, tuple] = {}
        self.occ: dict[int, set] = defaultdict(set)
        self.seen: dict[tuple, int] = {}
        self.next_id = 0
        for r in P.relators:
            self.add(r)

    def add(self, word):
        w = cyclic_reduce(word)
        if not w:
            return None
        key = canonical_relator(w)
        if key in self.seen:
            return None
        rid = self.next_id
        self.next_id += 1
        self.rels[rid] = w
        self.seen[key] = rid
        for x in set(map(abs, w)):
            self.occ[x].add(rid)
        return rid

    def remove(self, rid):
        w = self.rels.pop(rid)
        self.seen.pop(canonical_relator(w), None)
        for x in set(map(abs, w)):
            self.occ[x].discard(rid)
        return w

    def eliminate(self, g: int, value: tuple) -> list:
        """Substitute generator g := value everywhere; returns ids of rewritten relators."""
        inv = inverse(value)
        touched = []
        for rid in sorted(self.occ.pop(g, set())):
            w = self.remove(rid)
            new = []
            for x in w:
                if x == g:
                    new.extend(value)
                elif x == -g:
                    new.extend(inv)
                else:
                    new.append(x)
            nid = self.add(new)
            if nid is not None:
                touched.append(nid)
        self.alive.discard(g)
        return touched

    def presentation(self, status, steps) -> GroupPresentation:
        order = sorted(self.alive)
        pos = {g: i + 1 for i, g in enumerate(order)}
        rels = []
        for rid in sorted(self.rels):
            w = self.rels[rid]
            rels.append(tuple(pos[abs(x)] * (1 if x > 0 else -1) for x in w))
        return GroupPresentation([self.names[g - 1] for g in order], rels, status, steps)


def _solve_for(word, g):
    """If g occurs once in cyclic ``word``, return w with g = w; else None."""
    hits = [i for i, x in enumerate(word) if abs(x) == g]
    if len(hits) != 1:
        return None
    i = hits[0]
    rest = word[i + 1:] + word[:i]  # word ~ g^e · rest
    return inverse(rest) if word[i] > 0 else tuple(rest)


def tietze_simplify(P: GroupPresentation, budget: int = 1_000_000, check: bool = False) -> GroupPresentation:
    """Simplify by generator elimination and length-reducing relator substitution.

    Each elimination or substitution costs one step.  If the budget runs out
    the current presentation is returned with status ``inconclusive``.
    With ``check`` the abelianisation is compared after every step.
    """
    ws = _Workspace(P)
    steps = 0
    ab0 = abelianization(P) if check else None

    def verify():
        if check:
            now = abelianization(ws.presentation(SIMPLIFIED, steps))
            assert now == ab0, f"abelianization changed: {ab0} -> {now}"

    # unused generators are free factors; they are never eliminated
    heap = [(len(w), rid) for rid, w in ws.rels.items()]
    heapq.heapify(heap)
    while True:
        while heap:
            size, rid = heapq.heappop(heap)
            w = ws.rels.get(rid)
            if w is None or len(w) != size:
                continue
            candidates = []
            for x in sorted(set(map(abs, w))):
                val = _solve_for(w, x)
                if val is not None:
                    candidates.append((len(ws.occ[x]), x, val))
            if not candidates:
                continue
            if steps >= budget:
                return ws.presentation(INCONCLUSIVE, steps)
            _, g, val = min(candidates)
            ws.remove(rid)
            touched = ws.eliminate(g, val)
            steps += 1
            verify()
            for t in touched:
                heapq.heappush(heap, (len(ws.rels[t]), t))
        if len(ws.rels) > 60 or steps >= budget:
            break
        changed = _substitution_pass(ws)
        if not changed:
            break
        steps += changed
        verify()
        heap = [(len(w), rid) for rid, w in ws.rels.items()]
        heapq.heapify(heap)
    status = TRIVIAL if not ws.alive else SIMPLIFIED
    if status != TRIVIAL and steps >= budget:
        status = INCONCLUSIVE
    return ws.presentation(status, steps)


def _substitution_pass(ws: _Workspace) -> int:
    """Replace a relator r by r·s^±1 (any rotations) when that strictly shortens it."""
    changes = 0
    ids = sorted(ws.rels)
    for a in ids:
        if a not in ws.rels:
            continue
        for b in ids:
            if a == b or b not in ws.rels or a not in ws.rels:
                continue
            r, s = ws.rels[a], ws.rels[b]
            best = None
            for v in (s, inverse(s)):
                for i in range(len(v)):
                    rot = v[i:] + v[:i]
                    for j in range(len(r)):
                        cand = cyclic_reduce(r[j:] + r[:j] + rot)
                        if len(cand) < len(r) and (best is None or len(cand) < len(best)):
                            best = cand
            if best is not None:
                ws.remove(a)
                ws.add(best)
                changes += 1
                break
    return changes


def is_certified_trivial(P: GroupPresentation) -> bool:
    """True only for the empty presentation; False means 'not certified'."""
    return not P.generators and not P.relators
