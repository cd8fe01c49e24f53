"""Immersion checks for quotient maps, sheet multiplicities and Z/2 sheet cycles."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .complex import (SimplicialComplex, SimplicialMap, coherent_orientation, euler_characteristic,
                      is_sphere_low_dim, star_link)
from .homology import boundary_mod2


class DegenerateMap(ValueError):
    """The map drops rank on some simplex (a cone-point type singularity)."""


@dataclass
class ImmersionResult:
    ok: bool
    witness: dict | None = None

    def __bool__(self):
        return self.ok


def is_pl_immersion(f: SimplicialMap) -> ImmersionResult:
    """True iff f is injective on the closed star of every source vertex."""
    bad = f.degenerate_simplex()
    if bad is not None:
        raise DegenerateMap(f"map collapses simplex {bad} to {f.image(bad)}")
    src = f.source
    for v in src.vertices:
        seen = {}
        for facet in src.vertex_star_index.get(v, [(v,)]):
            for u in facet:
                w = f(u)
                if w in seen and seen[w] != u:
                    a, b = seen[w], u
                    sa = next(s for s in src.vertex_star_index[v] if a in s)
                    sb = next(s for s in src.vertex_star_index[v] if b in s)
                    return ImmersionResult(False, {"vertex": v, "simplices": [sa, sb], "image": w})
                seen[w] = u
    return ImmersionResult(True)


@dataclass
class MultiplicityFunction:
    m: dict

    def histogram(self) -> dict:
        return dict(sorted(Counter(self.m.values()).items()))

    def values(self):
        return self.m.values()

    def is_constant(self, value: int) -> bool:
        return bool(self.m) and all(x == value for x in self.m.values())


def fiber_counts(f: SimplicialMap, k: int | None = None) -> Counter:
    """Number of source simplices mapping onto each target simplex (of dimension k)."""
    out = Counter()
    dims = [k] if k is not None else range(f.source.dim + 1)
    for d in dims:
        for s in f.source.simplices(d):
            img = f.image(s)
            if len(img) == len(s):
                out[img] += 1
    return out


def multiplicity(f: SimplicialMap) -> MultiplicityFunction:
    """Fibre cardinality over each open top cell of the target."""
    if not f.is_nondegenerate():
        raise DegenerateMap("multiplicity needs a nondegenerate map")
    d = f.target.dim
    counts = fiber_counts(f, d)
    return MultiplicityFunction({s: counts.get(s, 0) for s in f.target.top_simplices if counts.get(s)})


def semicontinuity_violations(f: SimplicialMap) -> list:
    """Pairs (face, simplex) of the image where the fibre count jumps up on the face side.

    Over the open cell of a face the fibre must be at least as large as over
    any simplex containing it.
    """
    counts = fiber_counts(f)
    bad = []
    for s, n in counts.items():
        for k in range(1, len(s)):
            for face in _subsets(s, k):
                if counts.get(face, 0) < n:
                    bad.append((face, s))
    return bad


def _subsets(s, size):
    from itertools import combinations
    return combinations(s, size)


@dataclass
class SheetChain:
    weights: dict

    @classmethod
    def ones(cls, Y: SimplicialComplex) -> "SheetChain":
        return cls({s: 1 for s in Y.top_simplices})

    @classmethod
    def from_multiplicity(cls, m: MultiplicityFunction, divisor: int = 1) -> "SheetChain":
        return cls({s: v // divisor for s, v in m.m.items()})

    def mod2(self) -> set:
        return {s for s, w in self.weights.items() if w % 2}


def additivity_check(f: SimplicialMap, m: MultiplicityFunction):
    """m-weighted top chain has vanishing mod-2 boundary; returns (ok, witness face)."""
    d = f.target.dim
    totals = defaultdict(int)
    for s, w in m.m.items():
        for i in range(len(s)):
            totals[s[:i] + s[i + 1:]] += w
    bad = sorted(face for face, t in totals.items() if t % 2)
    return (not bad, bad[0] if bad else None)


def z2_cycle_test(Y: SimplicialComplex, c: SheetChain) -> bool:
    tops = set(Y.top_simplices)
    if any(s not in tops for s in c.weights):
        raise ValueError("chain is not supported on top simplices of Y")
    return not boundary_mod2(c.mod2())


def cycle_witness(c: SheetChain):
    bd = boundary_mod2(c.mod2())
    return min(bd) if bd else None


def reduced_chain(m: MultiplicityFunction) -> tuple[SheetChain, int]:
    """(m/d, d) with d the gcd of the multiplicities."""
    d = 0
    for v in m.m.values():
        d = math.gcd(d, v)
    return SheetChain.from_multiplicity(m, d or 1), d


def pushforward_mod2(f: SimplicialMap) -> set:
    """Image of the source's Z/2 fundamental chain, as a set of target top simplices."""
    out = set()
    d = f.target.dim
    for s in f.source.top_simplices:
        img = f.image(s)
        if len(img) == d + 1:
            out ^= {img}
    return out


# -- local models ---------------------------------------------------------

SHEET = "sheet"
TRIPLE = "triple"
QUADRUPLE = "quadruple"


class UnclassifiableLink(ValueError):
    def __init__(self, vertex, link):
        super().__init__(f"link of vertex {vertex} matches no local model (f={link.f_vector()})")
        self.vertex = vertex
        self.link = link


@dataclass
class LocalModelCensus:
    counts: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return dict(self.counts)


def _graph_shape(edges):
    """Topological type of a graph: (branch degrees sorted, arcs as vertex pairs, n_circles)."""
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    branch = {v for v, ns in adj.items() if len(ns) != 2}
    arcs = []
    used = set()
    for v in sorted(branch):
        for w in adj[v]:
            if (v, w) in used:
                continue
            prev, cur = v, w
            used.add((v, w))
            while cur not in branch:
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                prev, cur = cur, nxt
            used.add((cur, prev))
            arcs.append(tuple(sorted((v, cur))))
    covered = set()
    for v in branch:
        covered.add(v)
    # circles made only of degree-2 vertices
    seen = set(branch)
    circles = 0
    for v in adj:
        if v in seen:
            continue
        stack = [v]
        comp_has_branch = False
        while stack:
            u = stack.pop()
            if u in seen:
                if u in branch:
                    comp_has_branch = True
                continue
            seen.add(u)
            stack.extend(adj[u])
        if not comp_has_branch:
            circles += 1
    return sorted(len(adj[v]) for v in branch), arcs, circles


def _is_k4(arcs) -> bool:
    ends = Counter()
    for a, b in arcs:
        if a == b:
            return False
        ends[a] += 1
        ends[b] += 1
    return len(arcs) == 6 and len(set(arcs)) == 6 and len(ends) == 4


def classify_graph(L: SimplicialComplex) -> str | None:
    degs, arcs, circles = _graph_shape(L.simplices(1))
    if not L.is_connected():
        return None
    if not degs and circles == 1:
        return SHEET
    if degs == [3, 3] and len(arcs) == 3 and circles == 0 and all(a != b for a, b in arcs):
        return TRIPLE
    if degs == [3, 3, 3, 3] and circles == 0 and _is_k4(arcs):
        return QUADRUPLE
    return None


def _is_disk(tris) -> bool:
    D = SimplicialComplex.from_facets(tris)
    if not D.is_connected() or euler_characteristic(D) != 1:
        return False
    if any(len(ts) > 2 for ts in D.cofaces(2).values()):
        return False
    for v in D.vertices:
        _, lk = star_link(D, v)
        degs, arcs, circles = _graph_shape(lk.simplices(1))
        if not lk.is_connected():
            return False
        if not (circles == 1 and not degs) and not (degs == [1, 1] and len(arcs) == 1):
            return False
    return True


def classify_surface_link(L: SimplicialComplex) -> str | None:
    """Classify a 2-dimensional vertex link of a 3-dimensional image."""
    if L.dim != 2 or not L.is_connected():
        return None
    co = L.cofaces(2)
    if any(len(ts) not in (2, 3) for ts in co.values()):
        return None
    singular = [e for e, ts in co.items() if len(ts) == 3]
    if not singular:
        return SHEET if is_sphere_low_dim(L, 2) else None
    # regions: triangles joined across regular edges
    parent = {t: t for t in L.top_simplices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, ts in co.items():
        if len(ts) == 2:
            parent[find(ts[0])] = find(ts[1])
    regions = defaultdict(list)
    for t in L.top_simplices:
        regions[find(t)].append(t)
    if not all(_is_disk(r) for r in regions.values()):
        return None
    degs, arcs, circles = _graph_shape(singular)
    if not degs and circles == 1 and len(regions) == 3:
        return TRIPLE
    if degs == [4, 4] and len(arcs) == 4 and circles == 0 and len(regions) == 6:
        # each region is a bigon on two arcs; the six regions realise all pairs of arcs
        arc_of_edge = _arc_labels(singular)
        pairs = set()
        for r in regions.values():
            bd = [e for e, ts in SimplicialComplex.from_facets(r).cofaces(2).items() if len(ts) == 1]
            labels = frozenset(arc_of_edge[e] for e in bd)
            if len(labels) != 2:
                return None
            pairs.add(labels)
        if len(pairs) == 6:
            return QUADRUPLE
    return None


def _arc_labels(edges) -> dict:
    """Label each edge of a graph by the arc (between branch vertices) containing it."""
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    branch = {v for v, ns in adj.items() if len(ns) != 2}
    label = {}
    n = 0
    for v in sorted(branch):
        for w in sorted(adj[v]):
            e = tuple(sorted((v, w)))
            if e in label:
                continue
            prev, cur = v, w
            label[e] = n
            while cur not in branch:
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                label[tuple(sorted((cur, nxt)))] = n
                prev, cur = cur, nxt
            n += 1
    return label


def local_model_census(Y: SimplicialComplex) -> LocalModelCensus:
    """Classify every vertex of a 2- or 3-dimensional image by its link."""
    classify = classify_graph if Y.dim == 2 else classify_surface_link
    counts = Counter()
    classes = {}
    for v in Y.vertices:
        _, link = star_link(Y, v)
        kind = classify(link)
        if kind is None:
            raise UnclassifiableLink(v, link)
        classes[v] = kind
        counts[kind] += 1
    return LocalModelCensus({k: counts.get(k, 0) for k in (SHEET, TRIPLE, QUADRUPLE)}, classes)


def orientable(K: SimplicialComplex) -> bool:
    return coherent_orientation(K) is not None
