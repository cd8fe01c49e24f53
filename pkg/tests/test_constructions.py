import json
import shutil

import pytest

from binghouse.complex import is_closed_pseudomanifold, is_isomorphism
from binghouse.constructions import (DataChecksumError, SubassemblyError, build_house2d, load_house2d, load_y3,
                                     subassembly)
from binghouse.constructions.builders import DATA_DIR, PIECES, boundary_census, surface_genus
from binghouse.homology import homology
from binghouse.immersion import is_pl_immersion, local_model_census, multiplicity
from corpus import boundary_of_simplex, torus

Y3_CENSUS = {"sheet": 3013, "triple": 622, "quadruple": 32}


@pytest.fixture(scope="module")
def y3():
    return load_y3()


@pytest.fixture
def data_copy(tmp_path):
    d = tmp_path / "data"
    shutil.copytree(DATA_DIR, d)
    return d


def test_tampered_dataset_is_rejected(data_copy):
    p = data_copy / "house2d.json"
    data = json.loads(p.read_text())
    data["X"]["top_simplices"][0] = list(reversed(data["X"]["top_simplices"][0]))
    p.write_text(json.dumps(data))
    with pytest.raises(DataChecksumError) as e:
        load_house2d(data_copy)
    assert e.value.path.endswith("house2d.json")


def test_environment_variable_selects_data_dir(data_copy, monkeypatch):
    (data_copy / "house2d.json").write_text("{}")
    monkeypatch.setenv("BINGHOUSE_DATA", str(data_copy))
    with pytest.raises(DataChecksumError):
        load_house2d()


def test_house2d_shape():
    X, f = build_house2d()
    assert X.dim == 2 and f.source.dim == 2
    assert is_closed_pseudomanifold(f.source, 2)
    assert homology(f.source).betti == [1, 0, 1]
    assert homology(X).reduced_is_zero()
    assert is_pl_immersion(f)
    assert multiplicity(f).is_constant(2)
    assert local_model_census(X).counts == {"sheet": 100, "triple": 26, "quadruple": 2}


def test_surface_genus_helpers():
    assert surface_genus(boundary_of_simplex(3)) == 0
    assert surface_genus(torus()) == 1
    assert boundary_census(boundary_of_simplex(3)) == []


def test_y3_assembly_counts(y3):
    assert set(y3.inventory.pieces) == set(PIECES)
    assert len(y3.plan.copies) == 18
    counts = {}
    for label, piece in y3.plan.usage.items():
        counts[piece] = counts.get(piece, 0) + 1
    assert counts == {p: 2 for p in PIECES}
    assert y3.f.is_simplicial() and y3.f.is_nondegenerate()


def test_y3_census(y3):
    assert local_model_census(y3.Y).counts == Y3_CENSUS


@pytest.mark.parametrize("a,b", [("1", "2"), ("4", "5"), ("7", "8"), ("6+", "6-")])
def test_mirror_pairs(y3, a, b):
    assert y3.inventory.mirror_isomorphic(a, b)


def test_mirror_of_unrelated_pieces_fails(y3):
    assert not y3.inventory.mirror_isomorphic("1", "4")


@pytest.mark.parametrize("label", ["4", "7", "8"])
def test_small_piece_invariants(y3, label):
    assert y3.inventory.check(label)["ok"]


def test_copies_are_nondegenerate_and_onto(y3):
    for label in y3.plan.copies:
        g = y3.plan.copy_map(label)
        assert g.is_nondegenerate()
        images = {g.image(s) for s in g.source.top_simplices}
        assert len(images) == len(g.source.top_simplices) == len(g.target.top_simplices)


def test_piece_inclusions_are_embeddings(y3):
    for label, inc in y3.piece_inclusions.items():
        assert len(set(inc.vertex_map.values())) == len(inc.vertex_map), label


def test_subassembly_levels(y3):
    single = subassembly(["4"], y3.plan)
    assert single.f_vector() == y3.inventory.pieces["4"].f_vector()
    copy = subassembly(["4:in"], y3.plan)
    assert copy.f_vector() == y3.plan.copies["4:in"].f_vector()
    R = subassembly(y3.plan.chambers["R"], y3.plan)
    assert R.dim == 3 and R.is_connected()


@pytest.mark.parametrize("labels,fill", [
    ([], ()),
    (["1", "1"], ()),
    (["nope"], ()),
    (["1", "4:in"], ()),
    (["4:in"], ("a",)),
    (["1"], ("z",)),
])
def test_subassembly_errors(y3, labels, fill):
    with pytest.raises(SubassemblyError):
        subassembly(labels, y3.plan, fill=fill)


def test_disconnected_subassembly_rejected(y3):
    with pytest.raises(SubassemblyError):
        subassembly(["7", "8"], y3.plan)
