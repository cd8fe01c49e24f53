"""Lattice tooling used to author the shipped house datasets.

A house is described as a union of codimension-one unit cells of the integer
lattice Z^n.  Cells are triangulated by the reflected Kuhn (J1) triangulation,
which is consistent across shared faces and invariant under reflections in
integer hyperplanes.  The boundary of a regular neighbourhood is produced by
splitting every top simplex into its two sides and identifying sides that
meet the same local complementary region at each vertex.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache

Point = tuple


def cell_simplices(base: Point, axes: tuple) -> list[tuple]:
    """J1 simplices (tuples of lattice points) of the unit cell at ``base`` spanned by ``axes``."""
    origin = list(base)
    step = {}
    for a in axes:
        if base[a] % 2:
            origin[a] = base[a] + 1
            step[a] = -1
        else:
            step[a] = 1
    out = []
    for perm in itertools.permutations(axes):
        p = list(origin)
        pts = [tuple(p)]
        for a in perm:
            p[a] += step[a]
            pts.append(tuple(p))
        out.append(tuple(sorted(pts)))
    return out


@lru_cache(maxsize=None)
def ambient_star(w: Point) -> tuple:
    """Top simplices of the J1 triangulation of R^n containing lattice point ``w``."""
    n = len(w)
    out = set()
    for eps in itertools.product((0, 1), repeat=n):
        base = tuple(w[i] - eps[i] for i in range(n))
        for s in cell_simplices(base, tuple(range(n))):
            if w in s:
                out.add(s)
    return tuple(sorted(out))


def normal_axis(simplex: tuple) -> int:
    """The coordinate held fixed by a codimension-one simplex of a lattice hyperplane."""
    n = len(simplex[0])
    fixed = [a for a in range(n) if len({p[a] for p in simplex}) == 1]
    if len(fixed) != 1:
        raise ValueError(f"{simplex} does not span a codimension-one cell")
    return fixed[0]


class Thickening:
    """Boundary of a regular neighbourhood of a codim-1 lattice complex.

    Parameters
    ----------
    simplices : codimension-one J1 simplices (tuples of lattice points)
    normal_axis : function giving the fixed coordinate of a simplex
    flat_vertices : optional predicate; at vertices where it holds the two
        sides are just the two signs of the normal axis.  Used where the
        lattice chart ends (the rim of a box coned off to infinity).
    """

    def __init__(self, simplices, normal_axis=normal_axis, flat_vertices=None):
        self.simplices = sorted(set(simplices))
        self.normal_axis = normal_axis
        self.flat = flat_vertices or (lambda w: False)
        self.simplex_set = set(self.simplices)
        self.by_vertex = defaultdict(list)
        for s in self.simplices:
            for w in s:
                self.by_vertex[w].append(s)
        self._regions = {}

    def regions(self, w):
        """Map ambient top simplex -> region id, for the star of ``w``."""
        if w in self._regions:
            return self._regions[w]
        star = ambient_star(w)
        n = len(w)
        parent = {s: s for s in star}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        by_face = defaultdict(list)
        for s in star:
            for face in itertools.combinations(s, n):
                if w in face:
                    by_face[face].append(s)
        for face, ss in by_face.items():
            if face in self.simplex_set:
                continue
            if len(ss) == 2:
                a, b = find(ss[0]), find(ss[1])
                if a != b:
                    parent[a] = b
        roots = sorted({find(s) for s in star})
        rid = {r: i for i, r in enumerate(roots)}
        reg = {s: rid[find(s)] for s in star}
        self._regions[w] = reg
        return reg

    def side_simplex(self, tau, sign):
        """The ambient top simplex on side ``sign`` of codim-1 simplex ``tau``."""
        axis = self.normal_axis(tau)
        level = tau[0][axis]
        for s in ambient_star(tau[0]):
            if set(tau) <= set(s):
                (extra,) = set(s) - set(tau)
                if (extra[axis] - level) * sign > 0:
                    return s
        raise RuntimeError(f"no side simplex for {tau}")

    def source_vertex(self, w, tau, sign):
        if self.flat(w):
            return (w, sign)
        sigma = self.side_simplex(tau, sign)
        return (w, self.regions(w)[sigma])

    def sheets(self):
        """Yield (tau, sign, source simplex as tuple of (w, region) labels)."""
        for tau in self.simplices:
            for sign in (1, -1):
                yield tau, sign, tuple(self.source_vertex(w, tau, sign) for w in tau)
