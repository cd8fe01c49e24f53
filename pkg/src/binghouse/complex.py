"""Abstract finite simplicial complexes and simplicial maps.

Simplices are stored as sorted tuples of integer vertex ids.  A complex is
immutable once built; derived indices (cofaces, facets, ...) are cached.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Simplex = tuple  # sorted tuple of vertex ids


@dataclass(frozen=True)
class Vertex:
    id: int
    tag: str | None = None


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries assumed distinct)."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def faces_of(simplex: Simplex, k: int | None = None):
    """All nonempty faces of ``simplex`` (or only those of dimension k)."""
    n = len(simplex)
    sizes = range(1, n + 1) if k is None else [k + 1]
    for size in sizes:
        yield from itertools.combinations(simplex, size)


class SimplicialComplex:
    """A finite abstract simplicial complex.

    The constructor stores the given simplices verbatim so that malformed data
    can be inspected by :func:`validate`; use :meth:`from_facets` to build a
    complex closed under taking faces.

    Parameters
    ----------
    simplices : iterable of vertex-id sequences
    tags : optional mapping vertex id -> provenance string
    orientation : optional mapping top simplex (sorted tuple) -> +1/-1, the
        sign relative to the increasing vertex order
    """

    def __init__(self, simplices: Iterable[Sequence[int]], tags: Mapping[int, str] | None = None,
                 orientation: Mapping[Simplex, int] | None = None, vertices: Iterable[int] = ()):
        raw = [tuple(s) for s in simplices]
        self._raw = raw
        by_dim: dict[int, set] = defaultdict(set)
        for s in raw:
            by_dim[len(s) - 1].add(tuple(sorted(s)))
        for v in vertices:
            by_dim[0].add((v,))
        self._by_dim = {k: sorted(v) for k, v in by_dim.items() if k >= 0}
        self.tags = dict(tags or {})
        self.orientation = dict(orientation) if orientation else None

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]], tags=None, orientation=None,
                    vertices: Iterable[int] = ()) -> "SimplicialComplex":
        all_faces = set()
        for f in facets:
            f = tuple(sorted(f))
            if len(set(f)) != len(f):
                raise ValueError(f"simplex {f} repeats a vertex")
            all_faces.update(faces_of(f))
        return cls(all_faces, tags=tags, orientation=orientation, vertices=vertices)

    # -- basic queries ---------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    def simplices(self, k: int) -> list:
        return self._by_dim.get(k, [])

    def all_simplices(self):
        for k in sorted(self._by_dim):
            yield from self._by_dim[k]

    def count(self, k: int) -> int:
        return len(self._by_dim.get(k, ()))

    def f_vector(self) -> list[int]:
        return [self.count(k) for k in range(self.dim + 1)]

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.simplices(0)]

    def vertex(self, v: int) -> Vertex:
        return Vertex(v, self.tags.get(v))

    def __len__(self):
        return sum(len(v) for v in self._by_dim.values())

    def __contains__(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        return s in self._simplex_set

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector()})"

    @cached_property
    def _simplex_set(self) -> frozenset:
        return frozenset(self.all_simplices())

    @cached_property
    def index(self) -> dict:
        """Map simplex -> position within its dimension's sorted list."""
        return {s: i for k in self._by_dim for i, s in enumerate(self._by_dim[k])}

    @cached_property
    def facets(self) -> list:
        """Maximal simplices, sorted by (dimension, vertices)."""
        covered = set()
        for k in sorted(self._by_dim):
            if k == 0:
                continue
            for s in self._by_dim[k]:
                covered.update(itertools.combinations(s, k))
        return [s for s in self.all_simplices() if s not in covered]

    @property
    def top_simplices(self) -> list:
        return self.simplices(self.dim)

    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def cofaces(self, k: int) -> dict:
        """Map each (k-1)-simplex to the list of k-simplices containing it."""
        return self._cofaces(k)

    def _cofaces(self, k):
        cache = self.__dict__.setdefault("_coface_cache", {})
        if k not in cache:
            co = defaultdict(list)
            for s in self.simplices(k):
                for f in itertools.combinations(s, k):
                    co[f].append(s)
            cache[k] = dict(co)
        return cache[k]

    @cached_property
    def vertex_star_index(self) -> dict:
        """Map vertex -> list of facets containing it."""
        idx = defaultdict(list)
        for f in self.facets:
            for v in f:
                idx[v].append(f)
        return dict(idx)

    def subcomplex(self, facets: Iterable[Sequence[int]]) -> "SimplicialComplex":
        facets = [tuple(sorted(f)) for f in facets]
        sub = SimplicialComplex.from_facets(facets)
        tags = {v: self.tags[v] for v in sub.vertices if v in self.tags}
        orient = None
        if self.orientation:
            orient = {s: self.orientation[s] for s in sub.top_simplices if s in self.orientation}
        return SimplicialComplex(sub.all_simplices(), tags=tags, orientation=orient or None)

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex([s for s in self.all_simplices() if len(s) <= k + 1], tags=self.tags)

    def relabel(self, mapping: Mapping[int, int]) -> "SimplicialComplex":
        """Injective relabelling of vertex ids."""
        tags = {mapping[v]: t for v, t in self.tags.items() if v in mapping}
        orient = None
        if self.orientation:
            orient = {}
            for s, sign in self.orientation.items():
                image = [mapping[v] for v in s]
                orient[tuple(sorted(image))] = sign * permutation_sign(image)
        return SimplicialComplex([[mapping[v] for v in s] for s in self.all_simplices()],
                                 tags=tags, orientation=orient)

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, each sorted, ordered by min vertex."""
        adj = defaultdict(set)
        for a, b in self.simplices(1):
            adj[a].add(b)
            adj[b].add(a)
        seen, comps = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, queue = [], deque([v])
            seen.add(v)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        facets = self.facets
        data = {
            "vertices": [{"id": v, "tag": self.tags[v]} if v in self.tags else {"id": v}
                         for v in self.vertices],
            "top_simplices": [list(f) for f in facets],
        }
        if self.orientation:
            data["orientation"] = [self.orientation.get(f, 0) for f in facets]
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        tags = {int(v["id"]): v["tag"] for v in data.get("vertices", []) if v.get("tag") is not None}
        verts = [int(v["id"]) for v in data.get("vertices", [])]
        tops = [list(map(int, s)) for s in data["top_simplices"]]
        orientation = None
        if data.get("orientation") is not None:
            orientation = {}
            for s, sign in zip(tops, data["orientation"]):
                if sign:
                    orientation[tuple(sorted(s))] = int(sign) * permutation_sign(s)
        for s in tops:
            if len(set(s)) != len(s):
                # keep malformed input inspectable by validate()
                return cls(tops, tags=tags, orientation=orientation, vertices=verts)
        return cls.from_facets(tops, tags=tags, orientation=orientation, vertices=verts)

    def to_off(self, coords: Mapping[int, Sequence[float]]) -> str:
        """OFF text of the 2-skeleton; coordinates are for viewing only."""
        verts = self.vertices
        pos = {v: i for i, v in enumerate(verts)}
        tris = self.simplices(2)
        lines = ["OFF", f"{len(verts)} {len(tris)} {self.count(1)}"]
        for v in verts:
            c = list(coords[v])[:3] + [0.0] * max(0, 3 - len(coords[v]))
            lines.append(" ".join(f"{x:g}" for x in c))
        for t in tris:
            lines.append("3 " + " ".join(str(pos[v]) for v in t))
        return "\n".join(lines) + "\n"


def load_complex(path) -> SimplicialComplex:
    with open(path) as fh:
        return SimplicialComplex.from_json(json.load(fh))


# -- validity ---------------------------------------------------------------

@dataclass
class ValidityReport:
    closure_violations: list = field(default_factory=list)
    duplicate_vertices: list = field(default_factory=list)
    orientation_conflicts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.closure_violations or self.duplicate_vertices or self.orientation_conflicts)

    def __bool__(self):
        return self.ok


def validate(K: SimplicialComplex) -> ValidityReport:
    """Check downward closure, repeated vertices and orientation coherence."""
    report = ValidityReport()
    for s in K._raw:
        if len(set(s)) != len(s):
            report.duplicate_vertices.append(tuple(s))
    present = K._simplex_set
    missing = set()
    for s in present:
        if len(set(s)) != len(s):
            continue
        for f in itertools.combinations(s, len(s) - 1):
            if f and f not in present:
                missing.add(f)
    report.closure_violations = sorted(missing)
    if K.orientation and not report.duplicate_vertices:
        report.orientation_conflicts = _orientation_conflicts(K)
    return report


def induced_sign(top: Simplex, sign: int, face: Simplex) -> int:
    """Sign of ``face`` (sorted) in the oriented boundary of ``top`` (sorted) with ``sign``."""
    (missing,) = set(top) - set(face)
    i = top.index(missing)
    return sign * (-1) ** i


def _orientation_conflicts(K: SimplicialComplex) -> list:
    d = K.dim
    out = []
    for face, tops in K.cofaces(d).items():
        signed = [(t, K.orientation.get(t)) for t in tops]
        if len(signed) != 2 or any(s is None for _, s in signed):
            continue
        (t1, s1), (t2, s2) = signed
        if induced_sign(t1, s1, face) == induced_sign(t2, s2, face):
            out.append(face)
    return sorted(out)


def coherent_orientation(K: SimplicialComplex) -> dict | None:
    """A coherent orientation of the top simplices, or None if none exists.

    Only codimension-one faces with exactly two cofaces constrain the signs.
    """
    d = K.dim
    tops = K.top_simplices
    co = K.cofaces(d)
    adj = defaultdict(list)
    for face, ts in co.items():
        if len(ts) == 2:
            adj[ts[0]].append((ts[1], face))
            adj[ts[1]].append((ts[0], face))
    sign = {}
    for start in tops:
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            t = queue.popleft()
            for u, face in adj[t]:
                want = -induced_sign(t, sign[t], face) * induced_sign(u, 1, face)
                if u not in sign:
                    sign[u] = want
                    queue.append(u)
                elif sign[u] != want:
                    return None
    return sign


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * K.count(k) for k in range(K.dim + 1))


# -- stars, links, pseudomanifolds ---------------------------------------

def star_link(K: SimplicialComplex, v: int):
    """Closed star and link of vertex ``v``."""
    if (v,) not in K:
        raise KeyError(f"vertex {v} not in complex")
    facets = K.vertex_star_index.get(v, [(v,)])
    star = SimplicialComplex.from_facets(facets)
    link_facets = [tuple(u for u in f if u != v) for f in facets if len(f) > 1]
    link = SimplicialComplex.from_facets(link_facets)
    return star, link


@dataclass
class PseudomanifoldReport:
    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _strongly_connected(K: SimplicialComplex, d: int) -> bool:
    tops = K.simplices(d)
    if not tops:
        return False
    adj = defaultdict(list)
    for ts in K.cofaces(d).values():
        for a in ts:
            for b in ts:
                if a != b:
                    adj[a].append(b)
    seen = {tops[0]}
    queue = deque([tops[0]])
    while queue:
        t = queue.popleft()
        for u in adj[t]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(tops)


def is_closed_pseudomanifold(K: SimplicialComplex, d: int, check_links: bool = True) -> PseudomanifoldReport:
    """Closed pseudomanifold test; for d <= 3 also checks that vertex links are spheres."""
    if K.dim != d:
        return PseudomanifoldReport(False, None, f"dimension {K.dim} != {d}")
    for f in K.facets:
        if len(f) != d + 1:
            return PseudomanifoldReport(False, f, "not pure")
    for face, ts in K.cofaces(d).items():
        if len(ts) != 2:
            return PseudomanifoldReport(False, face, f"codim-1 face in {len(ts)} top simplices")
    if not _strongly_connected(K, d):
        return PseudomanifoldReport(False, None, "not strongly connected")
    if check_links and 1 <= d <= 3:
        for v in K.vertices:
            _, link = star_link(K, v)
            if not is_sphere_low_dim(link, d - 1):
                return PseudomanifoldReport(False, (v,), f"link of {v} is not a {d - 1}-sphere")
    return PseudomanifoldReport(True)


def is_sphere_low_dim(L: SimplicialComplex, d: int) -> bool:
    """Recognise spheres of dimension <= 2 by classification."""
    if d == 0:
        return L.dim == 0 and L.count(0) == 2
    if L.dim != d or not L.is_connected():
        return False
    if any(len(ts) != 2 for ts in L.cofaces(d).values()):
        return False
    if d == 1:
        return True
    for v in L.vertices:
        _, lk = star_link(L, v)
        if not is_sphere_low_dim(lk, d - 1):
            return False
    return euler_characteristic(L) == 2 and coherent_orientation(L) is not None


def boundary_complex(K: SimplicialComplex) -> SimplicialComplex:
    """Codimension-one faces of a pure complex lying in exactly one top simplex."""
    d = K.dim
    faces = [f for f, ts in K.cofaces(d).items() if len(ts) == 1]
    return K.subcomplex(faces) if faces else SimplicialComplex([])


# -- simplicial maps ------------------------------------------------------

class SimplicialMap:
    """Vertex map between complexes; simplices map to (possibly degenerate) simplices."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, vertex_map: Mapping[int, int]):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def image(self, simplex: Sequence[int]) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in simplex}))

    def check_simplicial(self):
        """Return the first source simplex whose image is not a target simplex, or None."""
        for v in self.source.vertices:
            if v not in self.vertex_map:
                return (v,)
        for f in self.source.facets:
            if self.image(f) not in self.target:
                return f
        return None

    def is_simplicial(self) -> bool:
        return self.check_simplicial() is None

    def degenerate_simplex(self):
        for f in self.source.facets:
            if len(self.image(f)) != len(f):
                return f
        return None

    def is_nondegenerate(self) -> bool:
        return self.degenerate_simplex() is None

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self ∘ other."""
        return SimplicialMap(other.source, self.target,
                             {v: self.vertex_map[w] for v, w in other.vertex_map.items()})

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "vertex_map": [[v, self.vertex_map[v]] for v in sorted(self.vertex_map)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialMap":
        return cls(SimplicialComplex.from_json(data["source"]), SimplicialComplex.from_json(data["target"]),
                   {int(a): int(b) for a, b in data["vertex_map"]})


def identity_map(K: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(K, K, {v: v for v in K.vertices})


def is_isomorphism(f: SimplicialMap) -> bool:
    """True iff f is a bijection on vertices inducing a bijection on simplices."""
    vm = f.vertex_map
    if len(set(vm.values())) != len(vm) or set(vm.values()) != set(f.target.vertices):
        return False
    if len(f.source) != len(f.target):
        return False
    return all(f.image(s) in f.target for s in f.source.facets)


# -- constructions --------------------------------------------------------

def _staircases(p: int, q: int):
    """Monotone lattice paths (0,0) -> (p,q), as lists of points."""
    for ups in itertools.combinations(range(p + q), q):
        path, i, j = [(0, 0)], 0, 0
        ups = set(ups)
        for step in range(p + q):
            if step in ups:
                j += 1
            else:
                i += 1
            path.append((i, j))
        yield path


def product(K: SimplicialComplex, L: SimplicialComplex):
    """Staircase triangulation of |K| x |L| with vertex orders given by the ids.

    Returns ``(P, proj_K, proj_L)``; product vertices get fresh ids in
    lexicographic order of the pairs.
    """
    pairs = sorted((a, b) for a in K.vertices for b in L.vertices)
    pid = {p: i for i, p in enumerate(pairs)}
    tops = []
    for s in K.facets:
        for t in L.facets:
            for path in _staircases(len(s) - 1, len(t) - 1):
                tops.append([pid[(s[i], t[j])] for i, j in path])
    tags = {pid[(a, b)]: f"{K.tags.get(a, a)}x{L.tags.get(b, b)}" for a, b in pairs}
    P = SimplicialComplex.from_facets(tops, tags=tags)
    proj_k = SimplicialMap(P, K, {pid[p]: p[0] for p in pairs})
    proj_l = SimplicialMap(P, L, {pid[p]: p[1] for p in pairs})
    return P, proj_k, proj_l


@dataclass
class GluingTable:
    """Identifications ``(part_i, region_i, part_j, bijection)``.

    ``region_i`` lists the facets of the subcomplex of part i being glued;
    ``bijection`` maps its vertex ids to vertex ids of part j, and the image
    of the region must be a subcomplex of part j.
    """
    pairs: list = field(default_factory=list)

    def add(self, i: int, region_i: Iterable[Sequence[int]], j: int, bijection: Mapping[int, int]):
        self.pairs.append((i, [tuple(sorted(s)) for s in region_i], j, dict(bijection)))


class GluingError(ValueError):
    pass


def glue(parts: Sequence[SimplicialComplex], table: GluingTable):
    """Quotient of the disjoint union of ``parts`` by the table's identifications.

    Returns ``(K, inclusions)`` where ``inclusions[i]`` maps part i into K.
    Raises GluingError if a region is not in its part, the bijection does not
    match the region, or the quotient collapses a simplex.
    """
    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    for n, (i, region, j, bij) in enumerate(table.pairs):
        if not 0 <= i < len(parts) or not 0 <= j < len(parts):
            raise GluingError(f"entry {n}: unknown part index")
        verts = {v for s in region for v in s}
        if set(bij) != verts or len(set(bij.values())) != len(bij):
            raise GluingError(f"entry {n} ({i}->{j}): bijection does not match the region's vertices")
        for s in region:
            if s not in parts[i]:
                raise GluingError(f"entry {n}: {s} is not a simplex of part {i}")
            img = tuple(sorted(bij[v] for v in s))
            if img not in parts[j]:
                raise GluingError(f"entry {n}: image {img} of {s} is not a simplex of part {j}")
        for v, w in bij.items():
            a, b = find((i, v)), find((j, w))
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes = sorted({find((i, v)) for i, P in enumerate(parts) for v in P.vertices})
    new_id = {c: n for n, c in enumerate(classes)}
    inclusions_vm = [{v: new_id[find((i, v))] for v in P.vertices} for i, P in enumerate(parts)]
    tops, tags = [], {}
    for i, P in enumerate(parts):
        vm = inclusions_vm[i]
        for f in P.facets:
            img = [vm[v] for v in f]
            if len(set(img)) != len(img):
                raise GluingError(f"identification collapses simplex {f} of part {i}")
            tops.append(img)
        for v, t in P.tags.items():
            tags.setdefault(vm[v], t)
    K = SimplicialComplex.from_facets(tops, tags=tags)
    return K, [SimplicialMap(P, K, inclusions_vm[i]) for i, P in enumerate(parts)]


def barycentric_subdivision(K: SimplicialComplex):
    """Order complex of the face poset.

    Returns ``(Sd K, carrier)`` where carrier maps each new vertex id to the
    simplex of K whose barycentre it is.
    """
    simplices = list(K.all_simplices())
    bid = {s: i for i, s in enumerate(simplices)}
    tops = []
    for f in K.facets:
        for perm in itertools.permutations(f):
            tops.append([bid[tuple(sorted(perm[:k]))] for k in range(1, len(f) + 1)])
    sd = SimplicialComplex.from_facets(tops, vertices=[bid[s] for s in simplices if len(s) == 1])
    return sd, {bid[s]: s for s in simplices}


# -- isomorphism ----------------------------------------------------------

CANONICAL_VERTEX_LIMIT = 200


def canonical_form(K: SimplicialComplex) -> tuple:
    """Lexicographically minimal facet list over relabellings consistent with refinement.

    Exact (backtracking over individualisations); restricted to small complexes.
    """
    verts = K.vertices
    if len(verts) > CANONICAL_VERTEX_LIMIT:
        raise ValueError(f"canonical form limited to {CANONICAL_VERTEX_LIMIT} vertices")
    facets = K.facets
    inc = defaultdict(list)
    for f in facets:
        for v in f:
            inc[v].append(f)

    def refine(colors):
        while True:
            sig = {}
            for v in verts:
                neigh = sorted(tuple(sorted(colors[u] for u in f if u != v)) + (len(f),) for f in inc[v])
                sig[v] = (colors[v], tuple(neigh))
            keys = sorted(set(sig.values()))
            rank = {k: i for i, k in enumerate(keys)}
            new = {v: rank[sig[v]] for v in verts}
            if len(keys) == len(set(colors.values())):
                return new
            colors = new

    best = [None]

    def search(colors):
        colors = refine(colors)
        cells = defaultdict(list)
        for v, c in colors.items():
            cells[c].append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            form = tuple(sorted(tuple(sorted(colors[v] for v in f)) for f in facets))
            if best[0] is None or form < best[0]:
                best[0] = form
            return
        for v in cells[target]:
            new = {u: 2 * c for u, c in colors.items()}
            new[v] = 2 * target - 1
            search(new)

    search({v: 0 for v in verts})
    return best[0] or ()


def are_isomorphic(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    if K.f_vector() != L.f_vector():
        return False
    return canonical_form(K) == canonical_form(L)
