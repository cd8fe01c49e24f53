"""Load the shipped datasets, check them, and assemble the houses by gluing."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..complex import (GluingTable, SimplicialComplex, SimplicialMap, boundary_complex,
                       coherent_orientation, euler_characteristic, glue, is_isomorphism)
from ..homology import homology

DATA_DIR = Path(__file__).with_name("data")
PIECES = ["1", "2", "3", "4", "5", "6-", "6+", "7", "8"]
MIRROR_PAIRS = [("1", "2"), ("4", "5"), ("7", "8"), ("6+", "6-")]


class DataChecksumError(RuntimeError):
    def __init__(self, path, expected, actual):
        super().__init__(f"checksum mismatch for {path}: expected {expected}, got {actual}")
        self.path = str(path)


class SubassemblyError(ValueError):
    pass


def data_dir(path=None) -> Path:
    return Path(path or os.environ.get("BINGHOUSE_DATA") or DATA_DIR)


def checksums(path=None) -> dict:
    return json.loads((data_dir(path) / "checksums.json").read_text())


def load_data(name: str, path=None) -> dict:
    """Read a dataset after checking its sha256 against checksums.json."""
    d = data_dir(path)
    file = d / name
    raw = file.read_bytes()
    expected = checksums(d).get(name)
    actual = hashlib.sha256(raw).hexdigest()
    if expected != actual:
        raise DataChecksumError(file, expected, actual)
    return json.loads(raw)


def _complex(data) -> SimplicialComplex:
    return SimplicialComplex.from_facets(data["top_simplices"])


# -- house with two rooms ------------------------------------------------------

@dataclass
class House2D:
    X: SimplicialComplex
    f: SimplicialMap
    coords: dict


def load_house2d(path=None) -> House2D:
    data = load_data("house2d.json", path)
    X = _complex(data["X"])
    S = _complex(data["sphere"])
    f = SimplicialMap(S, X, {s: x for s, x in data["vertex_map"]})
    coords = {"X": dict(enumerate(data["coords"]["X"])),
              "sphere": dict(enumerate(data["coords"]["sphere"]))}
    return House2D(X, f, coords)


def build_house2d(path=None):
    """(X, f) with f: S^2 -> X the quotient of the neighbourhood boundary."""
    h = load_house2d(path)
    return h.X, h.f


# -- pieces --------------------------------------------------------------------

def surface_genus(S: SimplicialComplex):
    """Genus of a closed connected orientable surface, or None."""
    if S.dim != 2 or not S.is_connected() or coherent_orientation(S) is None:
        return None
    if any(len(ts) != 2 for ts in S.cofaces(2).values()):
        return None
    chi = euler_characteristic(S)
    return (2 - chi) // 2 if chi % 2 == 0 and chi <= 2 else None


def boundary_census(K: SimplicialComplex) -> list:
    """Sorted genera of the boundary components (None for non-surfaces)."""
    B = boundary_complex(K)
    out = []
    for comp in B.components():
        vs = set(comp)
        out.append(surface_genus(B.subcomplex([f for f in B.facets if f[0] in vs])))
    return sorted(out, key=lambda g: (g is None, g))


# label -> (rank of H1, boundary genera).  Pieces 1 and 2 are a handlebody
# minus an interior circle: H1 = Z^2 + Z (the meridian of the circle).
PIECE_INVARIANTS = {
    "1": (3, [1, 2]), "2": (3, [1, 2]),
    "3": (4, [1, 1, 2]),
    "4": (2, [1, 1]), "5": (2, [1, 1]),
    "6-": (4, [2, 2]), "6+": (4, [2, 2]),
    "7": (1, [1]), "8": (1, [1]),
}


@dataclass
class PieceInventory:
    pieces: dict
    coords: dict = field(default_factory=dict)
    boundary_markings: dict = field(default_factory=dict)

    def check(self, label: str) -> dict:
        K = self.pieces[label]
        h = homology(K)
        census = boundary_census(K)
        self.boundary_markings[label] = census
        rank, genera = PIECE_INVARIANTS[label]
        ok = (h.betti[0] == 1 and h.betti[1] == rank and not any(h.torsion)
              and census == genera)
        return {"ok": ok, "betti": h.betti, "boundary_genera": census,
                "expected": {"h1_rank": rank, "boundary_genera": genera}}

    def mirror_map(self, a: str, b: str) -> SimplicialMap:
        """Vertex map a -> b induced by (x, y, z, t) -> (8 - x, y, z, -t)."""
        pos_b = {tuple(c) if c else None: i for i, c in self.coords[b].items()}
        vm = {}
        for i, c in self.coords[a].items():
            img = None if c is None else (8 - c[0], c[1], c[2], -c[3])
            if img not in pos_b:
                raise KeyError(f"piece {b} has no vertex at {img}")
            vm[i] = pos_b[img]
        return SimplicialMap(self.pieces[a], self.pieces[b], vm)

    def mirror_isomorphic(self, a: str, b: str) -> bool:
        try:
            return is_isomorphism(self.mirror_map(a, b))
        except KeyError:
            return False


# -- assembly ------------------------------------------------------------------

def _table(entries, index) -> GluingTable:
    t = GluingTable()
    for e in entries:
        a, b = e["parts"]
        if a in index and b in index:
            t.add(index[a], e["region"], index[b], {u: v for u, v in e["bijection"]})
    return t


@dataclass
class AssemblyPlan:
    """How 18 copies of the 9 pieces glue to the source M, and how M maps to Y."""
    usage: dict
    copies: dict
    to_piece: dict
    gluing: GluingTable
    copy_order: list
    quotient: SimplicialMap | None = None
    chambers: dict = field(default_factory=dict)
    copy_gluing: list = field(default_factory=list)
    piece_gluing: list = field(default_factory=list)
    filling_gluing: list = field(default_factory=list)
    pieces: dict = field(default_factory=dict)
    fillings: dict = field(default_factory=dict)

    def copy_map(self, label: str) -> SimplicialMap:
        piece = self.usage[label]
        return SimplicialMap(self.copies[label], self.pieces[piece], dict(enumerate(self.to_piece[label])))


@dataclass
class Y3:
    Y: SimplicialComplex
    M: SimplicialComplex
    f: SimplicialMap
    inventory: PieceInventory
    plan: AssemblyPlan
    piece_inclusions: dict
    copy_inclusions: dict
    budgets: dict


def load_y3(path=None) -> Y3:
    data = load_data("y3.json", path)
    pieces = {k: _complex(data["pieces"][k]) for k in PIECES}
    coords = {k: {i: (tuple(c) if c else None) for i, c in enumerate(data["pieces"][k]["coords"])}
              for k in PIECES}
    fillings = {k: _complex(v) for k, v in data["fillings"].items()}

    index = {k: i for i, k in enumerate(PIECES)}
    Y, incs = glue([pieces[k] for k in PIECES], _table(data["piece_gluing"], index))
    piece_inc = dict(zip(PIECES, incs))

    order = list(data["copies"])
    copies = {c: _complex(data["copies"][c]) for c in order}
    usage = {c: data["copies"][c]["piece"] for c in order}
    to_piece = {c: data["copies"][c]["to_piece"] for c in order}
    cindex = {c: i for i, c in enumerate(order)}
    table = _table(data["copy_gluing"], cindex)
    M, cincs = glue([copies[c] for c in order], table)
    copy_inc = dict(zip(order, cincs))

    # f(v) = piece inclusion of the copy projection, and copies must agree
    fm = {}
    for c in order:
        inc, proj = copy_inc[c], piece_inc[usage[c]]
        for i, tp in enumerate(to_piece[c]):
            v, w = inc(i), proj(tp)
            if fm.setdefault(v, w) != w:
                raise ValueError(f"copies disagree on the image of source vertex {v} (copy {c})")
    f = SimplicialMap(M, Y, fm)
    plan = AssemblyPlan(usage, copies, to_piece, table, order, f, data["chambers"],
                        data["copy_gluing"], data["piece_gluing"], data["filling_gluing"],
                        pieces, fillings)
    return Y3(Y, M, f, PieceInventory(pieces, coords), plan, piece_inc, copy_inc, data["budgets"])


def build_y3(path=None):
    """(Y, M, f) with Y glued from 9 pieces and M from 18 piece copies."""
    y = load_y3(path)
    return y.Y, y.M, y.f


def subassembly(labels, plan: AssemblyPlan, fill=()) -> SimplicialComplex:
    """Glue the named copies (source level, e.g. ``"4:in"``) or pieces
    (image level, e.g. ``"6-"``, optionally with fillings ``"a"``/``"b"``)."""
    labels = list(labels)
    if not labels:
        raise SubassemblyError("empty label set")
    if len(set(labels)) != len(labels):
        raise SubassemblyError(f"repeated labels in {labels}")
    if all(l in plan.copies for l in labels):
        if fill:
            raise SubassemblyError("fillings apply to image-level pieces only")
        parts = [plan.copies[l] for l in labels]
        entries = plan.copy_gluing
    elif all(l in plan.pieces for l in labels):
        unknown = [x for x in fill if x not in plan.fillings]
        if unknown:
            raise SubassemblyError(f"unknown fillings {unknown}")
        parts = [plan.pieces[l] for l in labels] + [plan.fillings[x] for x in fill]
        labels = labels + ["fill_" + x for x in fill]
        entries = plan.piece_gluing + plan.filling_gluing
    else:
        bad = [l for l in labels if l not in plan.copies and l not in plan.pieces]
        raise SubassemblyError(f"unknown or mixed-level labels: {bad or labels}")
    K, _ = glue(parts, _table(entries, {l: i for i, l in enumerate(labels)}))
    if not K.is_connected():
        raise SubassemblyError(f"{labels} do not form a connected union")
    return K
