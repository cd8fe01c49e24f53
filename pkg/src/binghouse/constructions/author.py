"""Authoring tool for the shipped datasets.

Run ``python -m binghouse.constructions.author [outdir]`` to regenerate
``house2d.json``, ``y3.json`` and ``checksums.json``.  The builders never call
this module; they load and validate the files it wrote.

Both houses are unions of codimension-one unit cells of a lattice, so the
combinatorics is produced from a short geometric description rather than
typed in by hand.  Coordinates x, y, z (and t for Y3) are lattice units.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import sys
from collections import defaultdict
from pathlib import Path

from . import lattice as L

INF = ("inf",)


# -- shared helpers ------------------------------------------------------------

def _closure(facets) -> set:
    out = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            out.update(itertools.combinations(f, k))
    return out


def _maximal(simplices: set) -> list:
    """Simplices of a closed set that are not faces of another member."""
    covered = set()
    for s in simplices:
        if len(s) > 1:
            covered.update(itertools.combinations(s, len(s) - 1))
    return sorted(s for s in simplices if s not in covered)


def _local(global_facets):
    """(sorted global vertex list, facets renumbered 0..n-1)."""
    verts = sorted({v for f in global_facets for v in f})
    pos = {v: i for i, v in enumerate(verts)}
    return verts, sorted(tuple(sorted(pos[v] for v in f)) for f in global_facets)


def _interfaces(parts: dict, order: list) -> list:
    """Shared subcomplexes of every pair of parts, in local ids of both.

    ``parts`` maps label -> (global vertex list, local facets) as from _local.
    """
    closures = {k: _closure([tuple(parts[k][0][i] for i in f) for f in parts[k][1]]) for k in order}
    pos = {k: {v: i for i, v in enumerate(parts[k][0])} for k in order}
    out = []
    for a, b in itertools.combinations(order, 2):
        shared = closures[a] & closures[b]
        if not shared:
            continue
        region = _maximal(shared)
        verts = sorted({v for s in region for v in s})
        out.append({
            "parts": [a, b],
            "region": [sorted(pos[a][v] for v in s) for s in region],
            "bijection": [[pos[a][v], pos[b][v]] for v in verts],
        })
    return out


def _dump(obj, path: Path):
    path.write_text(json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n")


# -- house with two rooms --------------------------------------------------------

def house2d_cells():
    """Unit squares (base, axes) of the house with two rooms in Z^3.

    Box [0,6]x[0,3]x[0,4] with a middle floor at z=2.  The upper room is
    entered through a chimney from the bottom face, the lower room through a
    chimney from the roof; each chimney is tied to the outer wall by a small
    supporting wall.
    """
    cells = set()
    roof_hole, bottom_hole = (1, 1), (4, 1)
    for x in range(6):
        for y in range(3):
            if (x, y) != bottom_hole:
                cells.add(((x, y, 0), (0, 1)))
            if (x, y) != roof_hole:
                cells.add(((x, y, 4), (0, 1)))
            if (x, y) not in (roof_hole, bottom_hole):
                cells.add(((x, y, 2), (0, 1)))
    for z in range(4):
        for x in range(6):
            cells.add(((x, 0, z), (0, 2)))
            cells.add(((x, 3, z), (0, 2)))
        for y in range(3):
            cells.add(((0, y, z), (1, 2)))
            cells.add(((6, y, z), (1, 2)))
    for (hx, hy), zs in ((roof_hole, (2, 3)), (bottom_hole, (0, 1))):
        for z in zs:
            cells.add(((hx, hy, z), (0, 2)))
            cells.add(((hx, hy + 1, z), (0, 2)))
            cells.add(((hx, hy, z), (1, 2)))
            cells.add(((hx + 1, hy, z), (1, 2)))
    for z in (2, 3):
        cells.add(((0, 1, z), (0, 2)))
    for z in (0, 1):
        cells.add(((5, 2, z), (0, 2)))
    return sorted(cells)


def author_house2d() -> dict:
    simplices = sorted({s for base, axes in house2d_cells() for s in L.cell_simplices(base, axes)})
    T = L.Thickening(simplices)
    xid = {p: i for i, p in enumerate(sorted({p for s in simplices for p in s}))}
    sheets = list(T.sheets())
    labels = sorted({x for _, _, s in sheets for x in s})
    sid = {x: i for i, x in enumerate(labels)}

    def offset(label):
        # push a source vertex into its complementary region, for viewing
        w, region = label
        reg = T.regions(w)
        pts = [p for s, r in reg.items() if r == region for p in s]
        c = [sum(p[i] for p in pts) / len(pts) for i in range(3)]
        return [round(w[i] + 0.25 * (c[i] - w[i]), 4) for i in range(3)]

    return {
        "format": "binghouse-house2d/1",
        "notes": "House with two rooms as 142 unit squares of Z^3, each split into two triangles. "
                 "Sphere vertices are (image vertex, local complementary region) pairs.",
        "X": {"top_simplices": sorted(sorted(xid[p] for p in s) for s in simplices)},
        "sphere": {"top_simplices": sorted(sorted(sid[x] for x in s) for _, _, s in sheets)},
        "vertex_map": [[sid[x], xid[x[0]]] for x in labels],
        "coords": {"X": [list(p) for p in sorted(xid, key=xid.get)],
                   "sphere": [offset(x) for x in labels]},
    }


# -- three-dimensional house -------------------------------------------------------

BOX = ((-5, 13), (-5, 5), (-1, 6))  # x, y, z extent of the ball standing in for S^3


def _in_handlebody(c) -> bool:
    x, y, z = c
    return (-4 <= x < 12 and -4 <= y < 4 and 0 <= z < 3
            and not (x in (-1, 0) and y in (-1, 0)) and not (x in (7, 8) and y in (-1, 0)))


def _ring(r, cx=0):
    """Unit squares at Chebyshev radius r - 1/2 around (cx, 0)."""
    return [(x, y) for x in range(cx - r, cx + r) for y in range(-r, r)
            if max(abs(x + 0.5 - cx), abs(y + 0.5)) == r - 0.5]


def _loop(k, cx=0):
    """Edges (base, axis) of the square of radius k around (cx, 0)."""
    e = []
    for x in range(cx - k, cx + k):
        e += [((x, -k), 0), ((x, k), 0)]
    for y in range(-k, k):
        e += [((cx - k, y), 1), ((cx + k, y), 1)]
    return e


def _mirror(p):
    return p if p == INF else (8 - p[0], p[1], p[2], -p[3])


# (z, t) cells swept by the ring to form the tube solid, and by the hoop
TUBE_PATH = [(1, 1), (1, 2), (2, 2), (3, 2), (4, 2), (4, 1), (4, 0)]
HOOP_PATH = [(2, 1), (3, 1), (3, 0)]


def y3_geometry():
    """Pieces of Y3 as sets of J1 tetrahedra in Z^4 (plus a cone to infinity).

    Returns (pieces, fillings, side_label) where side_label(piece, tau, sign)
    names the copy of the piece that the given side of tau belongs to.
    """
    hin = {(x, y, z) for x in range(-4, 12) for y in range(-4, 4) for z in range(3)
           if _in_handlebody((x, y, z))}
    ring = _ring(3)
    na = {(x, y, 1) for x, y in ring}          # circle a, deleted from piece 1
    nc = {(x, y, 4) for x, y in ring}          # trivial circles c, d deleted from piece 3
    nd = {(7 - x, y, z) for x, y, z in nc}
    pieces = defaultdict(set)

    def add(label, base, axes):
        pieces[label].update(L.cell_simplices(base, axes))

    for c in hin:
        if c not in na:
            add("1", c + (1,), (0, 1, 2))
    (x0, x1), (y0, y1), (z0, z1) = BOX
    for c in itertools.product(range(x0, x1), range(y0, y1), range(z0, z1)):
        if c not in hin and c not in nc and c not in nd:
            add("3", c + (0,), (0, 1, 2))
    for (x, y, z) in hin:                       # the Heegaard surface times [0,1]
        for a in range(3):
            for d in (-1, 1):
                n = [x, y, z]
                n[a] += d
                if tuple(n) not in hin:
                    base = [x, y, z]
                    if d == 1:
                        base[a] += 1
                    add("6+", tuple(base) + (0,), tuple(b for b in range(3) if b != a) + (3,))
    s4 = {(x, y, z, t) for x, y in ring for z, t in TUBE_PATH}
    ends = {((x, y, 1, 1), 3) for x, y in ring} | {((x, y, 4, 0), 3) for x, y in ring}
    faces = defaultdict(int)
    for c in s4:
        for a in range(4):
            for d in (0, 1):
                base = list(c)
                base[a] += d
                faces[(tuple(base), a)] += 1
    for (base, a), k in sorted(faces.items()):
        if k == 1 and (base, a) not in ends:
            add("4", base, tuple(b for b in range(4) if b != a))
    for (bx, by), ax in _loop(2):
        for z, t in HOOP_PATH:
            add("7", (bx, by, z, t), (ax, 2, 3))
    for a, b in (("1", "2"), ("6+", "6-"), ("4", "5"), ("7", "8")):
        pieces[b] = {tuple(sorted(_mirror(p) for p in s)) for s in pieces[a]}
    cone = []
    for x in range(x0, x1):
        for y in range(y0, y1):
            for z in (z0, z1):
                cone += L.cell_simplices((x, y, z, 0), (0, 1))
        for z in range(z0, z1):
            for y in (y0, y1):
                cone += L.cell_simplices((x, y, z, 0), (0, 2))
    for y in range(y0, y1):
        for z in range(z0, z1):
            for x in (x0, x1):
                cone += L.cell_simplices((x, y, z, 0), (1, 2))
    cone = {s + (INF,) for s in cone}

    fill_a = set()
    for c in na:
        fill_a.update(L.cell_simplices(c + (1,), (0, 1, 2)))
    fill_b = {tuple(sorted(_mirror(p) for p in s)) for s in fill_a}

    s4m = {(7 - c[0], c[1], c[2], -c[3] - 1) for c in s4}

    def side_cube(tau, sign):
        a = L.normal_axis(tau)
        base = [min(p[i] for p in tau) for i in range(4)]
        if sign < 0:
            base[a] -= 1
        return tuple(base)

    def side_label(piece, tau, sign):
        if piece in ("1", "2", "3"):
            return {"1": {1: "U", -1: "R"}, "2": {1: "R", -1: "L"}, "3": {1: "U", -1: "L"}}[piece][sign]
        if piece in ("6+", "6-"):
            inside = side_cube(tau, sign)[:3] in hin
            return "R" if inside else ("U" if piece == "6+" else "L")
        if piece in ("4", "5"):
            return "in" if side_cube(tau, sign) in (s4 if piece == "4" else s4m) else "out"
        return "+" if sign > 0 else "-"

    return dict(pieces), cone, {"a": fill_a, "b": fill_b}, side_label


PIECE_ORDER = ["1", "2", "3", "4", "5", "6-", "6+", "7", "8"]
COPY_ORDER = ["1:U", "1:R", "2:R", "2:L", "3:U", "3:L", "4:in", "4:out", "5:in", "5:out",
              "6-:R", "6-:L", "6+:R", "6+:U", "7:+", "7:-", "8:+", "8:-"]
CHAMBERS = {
    # 4 ∪ 3 ∪ 6− ∪ 2 ∪ 5 ∪ 8₂ and its mirror; the copy side is the chamber
    "L": ["4:in", "3:L", "6-:L", "2:L", "5:out", "8:+", "8:-"],
    "U": ["5:in", "3:U", "6+:U", "1:U", "4:out", "7:+", "7:-"],
    # the central assembly 1 ∪ 2 ∪ 6
    "R": ["1:R", "2:R", "6-:R", "6+:R"],
}


def author_y3() -> dict:
    pieces, cone, fills, side_label = y3_geometry()
    sheet_simplices = sorted(s for k in PIECE_ORDER for s in pieces[k])
    if len(sheet_simplices) != len(set(sheet_simplices)):
        raise RuntimeError("pieces overlap")
    (x0, x1), (y0, y1), (z0, z1) = BOX

    def flat(w):
        return w[3] == 0 and (w[0] in (x0, x1) or w[1] in (y0, y1) or w[2] in (z0, z1))

    T = L.Thickening(sheet_simplices, flat_vertices=flat)
    points = sorted({p for s in sheet_simplices for p in s}) + [INF]
    yid = {p: i for i, p in enumerate(points)}
    piece_of = {s: k for k in PIECE_ORDER for s in pieces[k]}

    part_y = {}
    for k in PIECE_ORDER:
        tets = [tuple(sorted(yid[p] for p in s)) for s in pieces[k]]
        if k == "3":
            tets += [tuple(sorted(yid[p] for p in s)) for s in cone]
        part_y[k] = _local(tets)
    for k, tets in fills.items():
        part_y["fill_" + k] = _local([tuple(sorted(yid[p] for p in s)) for s in tets])

    # source sheets, grouped by copy; a source vertex is (image point, region)
    copy_sheets = defaultdict(list)
    for tau, sign, labels in T.sheets():
        copy_sheets[piece_of[tau] + ":" + side_label(piece_of[tau], tau, sign)].append(labels)
    for tau in cone:
        for sign in (1, -1):
            copy_sheets["3:" + ("U" if sign > 0 else "L")].append(tuple((w, sign) for w in tau))
    src_labels = sorted({x for ss in copy_sheets.values() for s in ss for x in s},
                        key=lambda x: (yid[x[0]], x[1]))
    mid = {x: i for i, x in enumerate(src_labels)}

    # a copy covers its piece's top cells once, but is cut open where a
    # triple surface runs through the piece, so it keeps its own vertex ids
    copies, to_piece = {}, {}
    for c in COPY_ORDER:
        piece = c.split(":")[0]
        ppos = {v: i for i, v in enumerate(part_y[piece][0])}
        copies[c] = _local([tuple(sorted(mid[x] for x in s)) for s in copy_sheets[c]])
        to_piece[c] = [ppos[yid[src_labels[v][0]]] for v in copies[c][0]]

    piece_ifaces = _interfaces(part_y, PIECE_ORDER)
    fill_ifaces = []
    for k in ("fill_a", "fill_b"):
        for e in _interfaces(part_y, PIECE_ORDER + [k]):
            if k in e["parts"]:
                fill_ifaces.append(e)
    copy_ifaces = _interfaces(copies, COPY_ORDER)

    coords = [None if p == INF else list(p) for p in points]
    return {
        "format": "binghouse-y3/1",
        "notes": [
            "Y3 lives in S^3 x R with S^3 modelled as the box "
            f"{list(map(list, BOX))} at t=0 coned off to a point at infinity.",
            "Pieces 1, 3, 4, 6+, 7 are authored; 2, 6-, 5, 8 are their images under "
            "(x,y,z,t) -> (8-x, y, z, -t).",
            "The deleted circles are squares of radius 2.5 around the handle cores; the tube 4 sweeps "
            "the circle a (z=1, t=1) up and over to the trivial circle c (z=4, t=0), and the hoop 7 "
            "spans the circle of radius 2 between them. This fixes the longitudinal alignment of the "
            "circles in 4/5/7/8 with those in 1/2/3: all are parallel copies of one lattice square.",
            "Gluing data refers to the local vertex ids of the parts it names. Each copy carries "
            "its projection to the local ids of its piece.",
        ],
        "pieces": {k: {"top_simplices": [list(f) for f in part_y[k][1]],
                       "coords": [coords[v] for v in part_y[k][0]]} for k in PIECE_ORDER},
        "fillings": {k[5:]: {"top_simplices": [list(f) for f in part_y[k][1]],
                             "coords": [coords[v] for v in part_y[k][0]]} for k in ("fill_a", "fill_b")},
        "piece_gluing": piece_ifaces,
        "filling_gluing": fill_ifaces,
        "copies": {c: {"piece": c.split(":")[0],
                       "top_simplices": [list(f) for f in copies[c][1]],
                       "to_piece": to_piece[c]} for c in COPY_ORDER},
        "copy_gluing": copy_ifaces,
        "chambers": CHAMBERS,
        "budgets": {"pi1_Y": 30000, "pi1_M": 60000, "pi1_cylinder": 200000},
    }


def write_all(outdir: Path) -> dict:
    outdir.mkdir(parents=True, exist_ok=True)
    _dump(author_house2d(), outdir / "house2d.json")
    _dump(author_y3(), outdir / "y3.json")
    sums = {name: hashlib.sha256((outdir / name).read_bytes()).hexdigest()
            for name in ("house2d.json", "y3.json")}
    _dump(sums, outdir / "checksums.json")
    return sums


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).with_name("data")
    for name, digest in write_all(target).items():
        print(f"{digest}  {name}")
