import pytest

from binghouse.collapse import (IllegalCollapse, free_faces, greedy_collapse, is_collapsible, replay)
from binghouse.complex import SimplicialComplex
from corpus import boundary_of_simplex, disk, dunce_hat, simplex, torus


def test_triangle_has_three_free_edges_and_collapses():
    K = simplex(2)
    assert sorted(free_faces(K)) == [((0, 1), (0, 1, 2)), ((0, 2), (0, 1, 2)), ((1, 2), (0, 1, 2))]
    seq = greedy_collapse(K)
    assert seq.residue.f_vector() == [1]


def test_sphere_has_no_free_faces():
    K = boundary_of_simplex(3)
    assert free_faces(K) == []
    assert greedy_collapse(K).residue.f_vector() == K.f_vector()


def test_cone_over_a_circle_is_collapsible():
    cone = SimplicialComplex.from_facets([(i, (i + 1) % 5, 9) for i in range(5)])
    verdict, cert = is_collapsible(cone)
    assert verdict == "yes"
    assert replay(cone, cert).f_vector() == [1]


def test_dunce_hat_is_never_yes():
    K = dunce_hat()
    assert free_faces(K) == []
    verdict, cert = is_collapsible(K, node_budget=200)
    assert verdict != "yes" and cert is None


def test_circle_exhaustive_says_no():
    verdict, _ = is_collapsible(boundary_of_simplex(2))
    assert verdict == "no"


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_greedy_sequences_replay(seed):
    K = disk(3)
    seq = greedy_collapse(K, seed=seed)
    assert replay(K, seq.steps).f_vector() == seq.residue.f_vector() == [1]


def test_stop_at_keeps_the_subcomplex():
    K = simplex(2)
    edge = K.subcomplex([(0, 1)])
    seq = greedy_collapse(K, stop_at=edge)
    assert sorted(seq.residue.facets) == [(0, 1)]
    assert all(step.free_face not in edge and step.coface not in edge for step in seq.steps)


def test_torus_residue_keeps_homology():
    from binghouse.homology import homology
    seq = greedy_collapse(torus())
    assert homology(seq.residue).betti == [1, 2, 1]


def test_replay_rejects_illegal_step():
    from binghouse.collapse import CollapseStep
    with pytest.raises(IllegalCollapse):
        replay(boundary_of_simplex(3), [CollapseStep((0, 1), (0, 1, 2))])
