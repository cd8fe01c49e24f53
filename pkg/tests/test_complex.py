import itertools

import pytest

from binghouse.complex import (GluingError, GluingTable, SimplicialComplex, SimplicialMap, are_isomorphic,
                               barycentric_subdivision, boundary_complex, coherent_orientation,
                               euler_characteristic, glue, identity_map, is_closed_pseudomanifold,
                               is_isomorphism, product, star_link, validate)
from corpus import boundary_of_simplex, grid_quotient, circle, disk, klein_bottle, rp2, simplex, torus


def test_closure_is_added_and_validate_passes():
    K = SimplicialComplex.from_facets([(0, 1, 2)])
    assert K.f_vector() == [3, 3, 1]
    assert validate(K)


def test_validate_reports_missing_face():
    K = SimplicialComplex([(0, 1, 2), (0, 1), (0,), (1,), (2,)])
    rep = validate(K)
    assert not rep
    assert (0, 2) in rep.closure_violations and (1, 2) in rep.closure_violations


def test_validate_reports_repeated_vertex():
    K = SimplicialComplex([(0, 0), (0,)])
    assert validate(K).duplicate_vertices


@pytest.mark.parametrize("K,chi", [
    (boundary_of_simplex(3), 2), (torus(), 0), (rp2(), 1), (klein_bottle(), 0),
    (circle(5), 0), (simplex(4), 1), (boundary_of_simplex(4), 0),
])
def test_euler_characteristic(K, chi):
    assert euler_characteristic(K) == chi


def test_star_and_link_of_tetrahedron_boundary_vertex():
    star, link = star_link(boundary_of_simplex(3), 0)
    assert sorted(link.facets) == [(1, 2), (1, 3), (2, 3)]
    assert star.count(2) == 3


def test_star_link_unknown_vertex():
    with pytest.raises(KeyError):
        star_link(simplex(2), 9)


@pytest.mark.parametrize("K,d,ok", [
    (boundary_of_simplex(3), 2, True), (torus(), 2, True), (rp2(), 2, True),
    (boundary_of_simplex(4), 3, True), (disk(), 2, False), (simplex(2), 2, False),
])
def test_closed_pseudomanifold(K, d, ok):
    assert bool(is_closed_pseudomanifold(K, d)) is ok


def test_wedge_of_spheres_is_not_strongly_connected():
    A = boundary_of_simplex(3)
    B = A.relabel({0: 0, 1: 4, 2: 5, 3: 6})
    K = SimplicialComplex.from_facets(list(A.facets) + list(B.facets))
    rep = is_closed_pseudomanifold(K, 2)
    assert not rep and "strongly" in rep.reason


def test_pinched_torus_fails_link_check():
    # identify two torus vertices with disjoint stars: the pinch point's link is two circles
    n = 5
    K = grid_quotient(n, lambda i, j: (0, 0) if (i % n, j % n) == (2, 3) else (i % n, j % n))
    assert all(len(t) == 2 for t in K.cofaces(2).values())
    rep = is_closed_pseudomanifold(K, 2)
    assert not rep and "link" in rep.reason
    assert is_closed_pseudomanifold(K, 2, check_links=False)


def test_orientation():
    assert coherent_orientation(torus()) is not None
    assert coherent_orientation(boundary_of_simplex(3)) is not None
    assert coherent_orientation(rp2()) is None
    assert coherent_orientation(klein_bottle()) is None


def test_boundary_complex_of_disk_is_circle():
    B = boundary_complex(disk(3))
    assert B.dim == 1 and B.is_connected() and all(len(t) == 2 for t in B.cofaces(1).values())
    assert B.count(1) == 12


def test_circle_times_circle_is_torus():
    P, pk, pl = product(circle(3), circle(3))
    assert P.count(0) == 9 and P.count(2) == 18
    assert euler_characteristic(P) == 0
    assert is_closed_pseudomanifold(P, 2)
    assert coherent_orientation(P) is not None
    assert pk.is_simplicial() and pl.is_simplicial()


def test_product_of_simplices_is_prism():
    P, _, _ = product(simplex(2), simplex(1))
    assert P.count(3) == 3 and euler_characteristic(P) == 1


def test_two_disks_glued_along_boundary_give_sphere():
    def cone(apex):
        return SimplicialComplex.from_facets([(i, (i + 1) % 6, apex) for i in range(6)])
    D1, D2 = cone(6), cone(6)
    region = [(i, (i + 1) % 6) for i in range(6)]
    t = GluingTable()
    t.add(0, region, 1, {i: i for i in range(6)})
    S, incs = glue([D1, D2], t)
    assert euler_characteristic(S) == 2
    assert is_closed_pseudomanifold(S, 2)
    assert all(is_isomorphism(SimplicialMap(P, S.subcomplex([inc.image(f) for f in P.facets]), inc.vertex_map))
               for P, inc in zip((D1, D2), incs))


def test_glue_rejects_region_outside_part():
    t = GluingTable()
    t.add(0, [(0, 5)], 1, {0: 0, 5: 1})
    with pytest.raises(GluingError):
        glue([simplex(2), simplex(2)], t)


def test_glue_rejects_collapse():
    # identify two vertices of the same edge
    t = GluingTable()
    t.add(0, [(0,)], 0, {0: 1})
    with pytest.raises(GluingError):
        glue([simplex(1)], t)


def test_glue_is_associative_on_a_chain_of_edges():
    e = simplex(1)
    t1 = GluingTable()
    t1.add(0, [(1,)], 1, {1: 0})
    t1.add(1, [(1,)], 2, {1: 0})
    K, _ = glue([e, e, e], t1)
    t2 = GluingTable()
    t2.add(0, [(1,)], 1, {1: 0})
    AB, incs = glue([e, e], t2)
    end = incs[1](1)
    t3 = GluingTable()
    t3.add(0, [(end,)], 1, {end: 0})
    K2, _ = glue([AB, e], t3)
    assert are_isomorphic(K, K2)


def test_barycentric_subdivision_of_triangle():
    sd, carrier = barycentric_subdivision(simplex(2))
    assert sd.count(2) == 6 and sd.count(0) == 7
    assert sorted(len(s) for s in carrier.values()) == [1, 1, 1, 2, 2, 2, 3]


def test_identity_is_isomorphism_and_relabel_detected():
    K = torus()
    assert is_isomorphism(identity_map(K))
    perm = {v: (v * 2) % 9 for v in K.vertices}
    assert are_isomorphic(K, K.relabel(perm))
    assert not are_isomorphic(torus(), klein_bottle(3))


def test_json_roundtrip_keeps_tags():
    K = SimplicialComplex.from_facets([(0, 1, 2)], tags={0: "a"})
    L = SimplicialComplex.from_json(K.to_json())
    assert L.facets == K.facets and L.tags.get(0) == "a"


def test_map_nondegeneracy():
    f = SimplicialMap(simplex(2), simplex(1), {0: 0, 1: 1, 2: 1})
    assert f.is_simplicial() and not f.is_nondegenerate()
    g = SimplicialMap(simplex(1), boundary_of_simplex(2), {0: 0, 1: 2})
    assert g.is_nondegenerate()


def test_faces_are_sorted_tuples():
    K = SimplicialComplex.from_facets([(2, 0, 1)])
    assert K.facets == [(0, 1, 2)]
    assert all(list(s) == sorted(s) for s in K.all_simplices())
