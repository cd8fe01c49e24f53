"""Simplicial homology over Z and Z/2 via Smith normal form.

Boundary matrices are kept sparse (one dict per column).  Invariant factors
of large matrices are found by sparse elimination on unit pivots, which is a
sequence of unimodular row/column operations, followed by a dense Smith
normal form of whatever non-unit core remains.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Sequence

from .complex import SimplicialComplex

Z = "Z"
Z2 = "Z2"


@dataclass
class BoundaryMatrix:
    """∂_k : C_k -> C_{k-1}; ``columns[j]`` maps row index -> coefficient."""
    k: int
    n_rows: int
    columns: list

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def to_dense(self) -> list[list[int]]:
        A = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                A[i][j] = v
        return A


def boundary_matrices(K: SimplicialComplex) -> list[BoundaryMatrix]:
    """[∂_1, ..., ∂_dim] with the increasing-vertex-order orientation of every simplex."""
    out = []
    for k in range(1, K.dim + 1):
        rows = {s: i for i, s in enumerate(K.simplices(k - 1))}
        cols = []
        for s in K.simplices(k):
            col = {}
            for i in range(k + 1):
                col[rows[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
            cols.append(col)
        out.append(BoundaryMatrix(k, len(rows), cols))
    return out


def compose_is_zero(a: BoundaryMatrix, b: BoundaryMatrix) -> bool:
    """Check ∂_{k-1} ∘ ∂_k = 0 for a = ∂_{k-1}, b = ∂_k."""
    for col in b.columns:
        acc = {}
        for i, v in col.items():
            for r, w in a.columns[i].items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


# -- Smith normal form ------------------------------------------------------

@dataclass
class SnfDecomposition:
    d: list
    rank: int
    U: list | None = None
    V: list | None = None

    def diagonal(self, n_rows: int, n_cols: int) -> list[list[int]]:
        D = [[0] * n_cols for _ in range(n_rows)]
        for i, x in enumerate(self.d):
            D[i][i] = x
        return D


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]], transforms: bool = False) -> SnfDecomposition:
    """Dense Smith normal form with minimal-absolute-value pivoting.

    When ``transforms`` is set, unimodular U, V with U·A·V = diag(d) are returned.
    """
    M = [list(map(int, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        if c:
            M[dst] = [x + c * y for x, y in zip(M[dst], M[src])]
            if U is not None:
                U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        if c:
            for row in M:
                row[dst] += c * row[src]
            if V is not None:
                for row in V:
                    row[dst] += c * row[src]

    d = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = M[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    dirty = dirty or M[i][t] != 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    dirty = dirty or M[t][j] != 0
            if dirty:
                # bring the smallest remainder in row/column t to the pivot
                cand = [(abs(M[i][t]), 0, i) for i in range(t + 1, m) if M[i][t]]
                cand += [(abs(M[t][j]), 1, j) for j in range(t + 1, n) if M[t][j]]
                _, kind, idx = min(cand)
                if kind == 0:
                    swap_rows(t, idx)
                else:
                    swap_cols(t, idx)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        d.append(M[t][t])
        t += 1
    return SnfDecomposition(d, len(d), U, V)


def _sparse_invariants(columns: list, modulus: int | None) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix (over Z/p if modulus)."""
    cols = {}
    rows: dict[int, set] = {}
    for j, col in enumerate(columns):
        c = {}
        for i, v in col.items():
            if modulus:
                v %= modulus
            if v:
                c[i] = v
        if c:
            cols[j] = c
            for i in c:
                rows.setdefault(i, set()).add(j)

    def is_unit(v):
        return v % modulus != 0 if modulus else abs(v) == 1

    units = 0
    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    stuck = []
    while heap:
        size, j = heapq.heappop(heap)
        col = cols.get(j)
        if col is None or len(col) != size:
            if col is not None:
                heapq.heappush(heap, (len(col), j))
            continue
        pivot = None
        for i, v in col.items():
            if is_unit(v):
                key = (len(rows[i]), i)
                if pivot is None or key < pivot[0]:
                    pivot = (key, i, v)
        if pivot is None:
            stuck.append(j)
            continue
        _, r, pv = pivot
        inv = pow(pv, -1, modulus) if modulus else pv
        for j2 in sorted(rows[r]):
            if j2 == j:
                continue
            c2 = cols[j2]
            factor = c2[r] * inv
            if modulus:
                factor %= modulus
            for i, v in col.items():
                nv = c2.get(i, 0) - factor * v
                if modulus:
                    nv %= modulus
                if nv:
                    if i not in c2:
                        rows[i].add(j2)
                    c2[i] = nv
                elif i in c2:
                    del c2[i]
                    rows[i].discard(j2)
            if c2:
                heapq.heappush(heap, (len(c2), j2))
            else:
                del cols[j2]
        for i in col:
            rows[i].discard(j)
        del cols[j]
        del rows[r]
        units += 1
    rest = [j for j in dict.fromkeys(stuck) if j in cols]
    if not rest:
        return [1] * units
    row_ids = sorted({i for j in rest for i in cols[j]})
    pos = {i: n for n, i in enumerate(row_ids)}
    dense = [[0] * len(rest) for _ in row_ids]
    for n, j in enumerate(rest):
        for i, v in cols[j].items():
            dense[pos[i]][n] = v
    if modulus:
        return [1] * (units + _rank_mod_p(dense, modulus))
    return [1] * units + smith_normal_form(dense).d


def _rank_mod_p(A, p):
    A = [row[:] for row in A]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][c] % p), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        for r in range(len(A)):
            if r != rank and A[r][c] % p:
                f = A[r][c] * inv % p
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def invariant_factors(B: BoundaryMatrix, coeffs: str = Z) -> list[int]:
    return _sparse_invariants(B.columns, 2 if coeffs == Z2 else None)


# -- homology ---------------------------------------------------------------

@dataclass
class HomologyProfile:
    betti: list
    torsion: list = field(default_factory=list)
    coefficients: str = Z

    def reduced_is_zero(self) -> bool:
        return (self.betti[:1] == [1] and not any(self.betti[1:])
                and not any(self.torsion))

    def as_dict(self) -> dict:
        return {"coefficients": self.coefficients, "betti": self.betti, "torsion": self.torsion}


def homology(K: SimplicialComplex, coeffs: str = Z) -> HomologyProfile:
    """Betti numbers (and torsion over Z) in degrees 0..dim."""
    if coeffs not in (Z, Z2):
        raise ValueError(f"unsupported coefficients {coeffs!r}")
    dim = K.dim
    if dim < 0:
        return HomologyProfile([], [], coeffs)
    mats = boundary_matrices(K)
    factors = [invariant_factors(B, coeffs) for B in mats]  # factors[k-1] for ∂_k
    ranks = [0] + [len(f) for f in factors] + [0]
    betti, torsion = [], []
    for k in range(dim + 1):
        betti.append(K.count(k) - ranks[k] - ranks[k + 1])
        tors = [x for x in factors[k]] if k < dim else []
        torsion.append(sorted(x for x in tors if x > 1) if coeffs == Z else [])
    return HomologyProfile(betti, torsion, coeffs)


# -- Z/2 chains ----------------------------------------------------------------

def boundary_mod2(chain, k: int | None = None) -> set:
    """Mod-2 boundary of a chain given as an iterable/dict of simplices (sorted tuples)."""
    if isinstance(chain, dict):
        support = [s for s, c in chain.items() if c % 2]
    else:
        support = list(chain)
    out = set()
    for s in support:
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            if f in out:
                out.remove(f)
            else:
                out.add(f)
    return out


@dataclass
class CycleResult:
    chain: dict | None
    witness: tuple | None = None

    @property
    def is_cycle(self) -> bool:
        return self.chain is not None


def fundamental_cycle(K: SimplicialComplex) -> CycleResult:
    """The all-ones top chain if its mod-2 boundary vanishes, else a witness face."""
    chain = {s: 1 for s in K.top_simplices}
    bd = boundary_mod2(chain)
    if bd:
        return CycleResult(None, min(bd))
    return CycleResult(chain)


def gcd_list(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
