"""Small complexes with known topology, plus independent oracles used by the tests."""

from __future__ import annotations

import itertools

from binghouse.complex import SimplicialComplex


def boundary_of_simplex(n):
    """∂Δ^n, a triangulated (n-1)-sphere."""
    return SimplicialComplex.from_facets(itertools.combinations(range(n + 1), n))


def simplex(n):
    return SimplicialComplex.from_facets([range(n + 1)])


# hemi-icosahedron: the 6-vertex projective plane
RP2_FACETS = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


def rp2():
    return SimplicialComplex.from_facets(RP2_FACETS)


def grid_quotient(n, ident):
    """Triangulated square [0,n]^2 with boundary points identified by ``ident``.

    ``ident(i, j)`` returns a canonical representative for lattice point (i, j).
    """
    rep = {}
    for i in range(n + 1):
        for j in range(n + 1):
            rep[(i, j)] = ident(i, j)
    ids = {p: k for k, p in enumerate(sorted(set(rep.values())))}
    facets = []
    for i in range(n):
        for j in range(n):
            a, b, c, d = (i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)
            for tri in ((a, b, c), (a, c, d)):
                facets.append([ids[rep[p]] for p in tri])
    return SimplicialComplex.from_facets(facets)


def torus(n=3):
    """n x n grid torus; n=3 gives 9 vertices and 18 triangles."""
    return grid_quotient(n, lambda i, j: (i % n, j % n))


def klein_bottle(n=4):
    def ident(i, j):
        if j == n:
            i, j = n - i, 0
        return (i % n, j)
    return grid_quotient(n, ident)


def annulus(n=4):
    return grid_quotient(n, lambda i, j: (i % n, j))


def mobius(n=4):
    return grid_quotient(n, lambda i, j: (0, n - j) if i == n else (i, j))


def disk(n=3):
    return grid_quotient(n, lambda i, j: (i, j))


def dunce_hat():
    """Triangle with its edges identified by the word a a a^-1.

    The boundary is a 9-cycle b0..b8 (three segments per edge), an inner
    9-cycle c0..c8 sits inside it, and a centre vertex z caps the wheel.
    """
    a = [0, 1, 2, 0, 1, 2, 0, 2, 1]   # b_i -> vertex of the loop a; CA runs backwards
    b = lambda i: a[i % 9]
    c = lambda i: 3 + i % 9
    z = 12
    facets = []
    for i in range(9):
        facets += [(b(i), b(i + 1), c(i)), (b(i + 1), c(i), c(i + 1)), (c(i), c(i + 1), z)]
    return SimplicialComplex.from_facets(facets)


def theta_graph():
    return SimplicialComplex.from_facets([(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])


def k4_graph():
    return SimplicialComplex.from_facets(itertools.combinations(range(4), 2))


def circle(n=4):
    return SimplicialComplex.from_facets([(i, (i + 1) % n) for i in range(n)])


def wedge_of_circles(k=2):
    facets = []
    nxt = 1
    for _ in range(k):
        a, b = nxt, nxt + 1
        facets += [(0, a), (a, b), (0, b)]
        nxt += 2
    return SimplicialComplex.from_facets(facets)


def suspension(K, offset=1000):
    n, s = offset, offset + 1
    return SimplicialComplex.from_facets([tuple(f) + (n,) for f in K.facets] + [tuple(f) + (s,) for f in K.facets])


def two_points():
    return SimplicialComplex.from_facets([(0,), (1,)])


def sphere_wedge_circle():
    K = boundary_of_simplex(3)
    return SimplicialComplex.from_facets(list(K.facets) + [(0, 10), (10, 11), (0, 11)])


def bowtie():
    """Two triangles sharing one vertex."""
    return SimplicialComplex.from_facets([(0, 1, 2), (0, 3, 4)])


# name -> (complex factory, integer Betti numbers, torsion per degree)
CORPUS = {
    "point": (lambda: simplex(0), [1], [[]]),
    "two_points": (two_points, [2], [[]]),
    "edge": (lambda: simplex(1), [1, 0], [[], []]),
    "S0": (lambda: boundary_of_simplex(1), [2], [[]]),
    "S1": (lambda: boundary_of_simplex(2), [1, 1], [[], []]),
    "S2": (lambda: boundary_of_simplex(3), [1, 0, 1], [[], [], []]),
    "S3": (lambda: boundary_of_simplex(4), [1, 0, 0, 1], [[], [], [], []]),
    "Delta3": (lambda: simplex(3), [1, 0, 0, 0], [[], [], [], []]),
    "circle6": (lambda: circle(6), [1, 1], [[], []]),
    "theta": (theta_graph, [1, 2], [[], []]),
    "K4": (k4_graph, [1, 3], [[], []]),
    "wedge3": (lambda: wedge_of_circles(3), [1, 3], [[], []]),
    "RP2": (rp2, [1, 0, 0], [[], [2], []]),
    "torus": (torus, [1, 2, 1], [[], [], []]),
    "torus4": (lambda: torus(4), [1, 2, 1], [[], [], []]),
    "klein": (klein_bottle, [1, 1, 0], [[], [2], []]),
    "annulus": (annulus, [1, 1, 0], [[], [], []]),
    "mobius": (mobius, [1, 1, 0], [[], [], []]),
    "disk": (disk, [1, 0, 0], [[], [], []]),
    "dunce_hat": (dunce_hat, [1, 0, 0], [[], [], []]),
    "S2_wedge_S1": (sphere_wedge_circle, [1, 1, 1], [[], [], []]),
    "bowtie": (bowtie, [1, 0, 0], [[], [], []]),
    "suspended_RP2": (lambda: suspension(rp2()), [1, 0, 0, 0], [[], [], [2], []]),
    "suspended_torus": (lambda: suspension(torus()), [1, 0, 2, 1], [[], [], [], []]),
}


# -- oracles ---------------------------------------------------------------------------

def gf2_betti(facets):
    """Betti numbers over GF(2) by Gaussian elimination on bitmask rows.

    Builds its own face lists from the facets; shares no code with the library.
    """
    faces = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            faces.update(itertools.combinations(f, k))
    dim = max(len(s) for s in faces) - 1
    by_dim = [sorted(s for s in faces if len(s) == k + 1) for k in range(dim + 1)]
    index = [{s: i for i, s in enumerate(ss)} for ss in by_dim]

    def rank(k):  # rank of ∂_k over GF(2)
        if k == 0 or k > dim:
            return 0
        rows = []
        for s in by_dim[k]:
            mask = 0
            for i in range(len(s)):
                mask |= 1 << index[k - 1][s[:i] + s[i + 1:]]
            rows.append(mask)
        r = 0
        pivots = {}
        for row in rows:
            while row:
                top = row.bit_length() - 1
                if top in pivots:
                    row ^= pivots[top]
                else:
                    pivots[top] = row
                    r += 1
                    break
        return r

    return [len(by_dim[k]) - rank(k) - rank(k + 1) for k in range(dim + 1)]


def z2_betti_from_integral(betti, torsion):
    """Universal coefficients: b_k(Z2) = b_k + #even torsion in H_k + #even torsion in H_{k-1}."""
    out = []
    for k, b in enumerate(betti):
        t_k = sum(1 for x in torsion[k] if x % 2 == 0)
        t_prev = sum(1 for x in torsion[k - 1] if x % 2 == 0) if k else 0
        out.append(b + t_k + t_prev)
    return out


def det(M):
    """Integer determinant by Bareiss fraction-free elimination."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1] if n else 1


def determinantal_divisors(A):
    """Invariant factors via gcds of k x k minors (small matrices only)."""
    from math import gcd
    m, n = len(A), len(A[0])
    d_prev, out = 1, []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // d_prev)
        d_prev = g
    return out


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
