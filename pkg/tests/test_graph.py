import pytest
from hypothesis import given

from countfo import generators
from countfo.errors import InputError
from countfo.graph import (
    LabeledGraph,
    VertexOrdering,
    closed_neighborhood,
    cluster_X,
    induced_subgraph,
    wreach,
)

from conftest import graphs


P5 = generators.path(5)
K4 = generators.complete(4)


def test_closed_neighborhood_examples():
    assert closed_neighborhood(P5, 2, 1) == {1, 2, 3}
    assert closed_neighborhood(P5, 3, 0) == {3}
    assert closed_neighborhood(K4, 0, 1) == {0, 1, 2, 3}


def test_closed_neighborhood_bad_vertex():
    with pytest.raises(InputError):
        closed_neighborhood(P5, 9, 1)


def test_wreach_examples():
    nat = VertexOrdering.natural(5)
    assert wreach(P5, nat, 4, 2) == {2, 3, 4}
    assert wreach(P5, nat, 0, 3) == {0}
    pi = VertexOrdering((2, 0, 3, 1))
    assert wreach(K4, pi, 1, 1) == {0, 1, 2, 3}


def test_cluster_examples():
    nat = VertexOrdering.natural(5)
    assert cluster_X(P5, nat, 2, 2) == {2, 3, 4}
    assert cluster_X(P5, nat, 3, 0) == {3}
    star = generators.star(4)
    assert cluster_X(star, VertexOrdering.natural(5), 0, 2) == set(range(5))


def test_induced_subgraph_examples():
    H, ids = induced_subgraph(P5, {1, 2, 3})
    assert H == generators.path(3) and ids == [1, 2, 3]
    H, _ = induced_subgraph(K4, {0, 1})
    assert H.m == 1
    H, ids = induced_subgraph(P5, set())
    assert H.n == 0 and ids == []


def test_graph_rejects_loops_and_bad_ids():
    with pytest.raises(InputError):
        LabeledGraph(2, [(0, 0)])
    with pytest.raises(InputError):
        LabeledGraph(2, [(0, 2)])
    with pytest.raises(InputError):
        LabeledGraph(2, [], [{5}])


@given(graphs())
def test_cluster_inverts_wreach(G):
    pi = VertexOrdering(tuple(reversed(range(G.n))))
    for r in (1, 2):
        for v in range(G.n):
            expected = {u for u in range(G.n) if v in wreach(G, pi, u, r)}
            assert cluster_X(G, pi, v, r) == expected


@given(graphs())
def test_wreach_contains_self_and_is_below(G):
    pi = VertexOrdering.natural(G.n)
    for v in range(G.n):
        W = wreach(G, pi, v, 2)
        assert v in W
        assert all(pi.pos[u] <= pi.pos[v] for u in W)
        assert W <= closed_neighborhood(G, v, 2)
