import pytest
from hypothesis import given

from countfo import generators
from countfo.errors import OracleScaleError
from countfo.graph import LabeledGraph, VertexOrdering
from countfo.sparsity import (
    anwd_profile,
    check_treedepth_coloring,
    col_of_ordering,
    exact_min_wcol,
    heuristic_ordering,
    treedepth_coloring,
    wcol_of_ordering,
)

from conftest import graphs


@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_wcol_of_path(n, r):
    assert wcol_of_ordering(generators.path(n), VertexOrdering.natural(n), r) == min(r, n - 1) + 1


@pytest.mark.parametrize("n", range(1, 8))
def test_wcol1_of_clique(n):
    G = generators.complete(n)
    assert wcol_of_ordering(G, VertexOrdering(tuple(reversed(range(n)))), 1) == n


def test_heuristic_examples():
    assert wcol_of_ordering(generators.path(10), heuristic_ordering(generators.path(10), 2), 2) <= 3
    assert wcol_of_ordering(generators.edgeless(6), heuristic_ordering(generators.edgeless(6), 3), 3) == 1
    assert wcol_of_ordering(generators.complete(5), heuristic_ordering(generators.complete(5), 1), 1) == 5


def test_exact_min_wcol_examples():
    assert exact_min_wcol(generators.path(5), 2)[1] == 3
    assert exact_min_wcol(generators.complete(4), 1)[1] == 4
    assert exact_min_wcol(generators.path(2), 1)[1] == 2


def test_exact_min_wcol_cap():
    with pytest.raises(OracleScaleError):
        exact_min_wcol(generators.path(40), 2)


@given(graphs(max_n=7))
def test_exact_lower_bounds_heuristic(G):
    for r in (1, 2):
        pi, best = exact_min_wcol(G, r)
        assert wcol_of_ordering(G, pi, r) == best
        assert best <= wcol_of_ordering(G, heuristic_ordering(G, r), r)


@given(graphs(max_n=8))
def test_col_below_wcol(G):
    pi = heuristic_ordering(G, 3)
    for r in (1, 2, 3):
        assert col_of_ordering(G, pi, r) <= wcol_of_ordering(G, pi, r)
        assert wcol_of_ordering(G, pi, r) <= wcol_of_ordering(G, pi, r + 1)


def test_treedepth_coloring_examples():
    c = treedepth_coloring(generators.edgeless(5), VertexOrdering.natural(5), 3)
    assert c.num_colors == 1
    P8 = generators.path(8)
    nat = VertexOrdering.natural(8)
    c = treedepth_coloring(P8, nat, 2)
    assert c.num_colors <= wcol_of_ordering(P8, nat, 1) + 1
    assert check_treedepth_coloring(P8, c)
    star = generators.star(5)
    c = treedepth_coloring(star, VertexOrdering.natural(6), 3)
    assert c.num_colors <= 3 and check_treedepth_coloring(star, c)


def test_treedepth_coloring_path8_counterexample_radius():
    # coloring by weak reachability at radius 1 is too coarse for pairs on P_8
    P8 = generators.path(8)
    c = treedepth_coloring(P8, VertexOrdering.natural(8), 2)
    assert check_treedepth_coloring(P8, c, max_union=2)


@given(graphs(max_n=9))
def test_treedepth_coloring_invariant(G):
    pi = heuristic_ordering(G, 2)
    for r in (1, 2, 3):
        c = treedepth_coloring(G, pi, r)
        assert len(c.colors) == G.n
        assert check_treedepth_coloring(G, c, max_vertices=10)


def test_anwd_profile_paths_and_cliques():
    paths = anwd_profile([generators.path(n) for n in range(4, 65, 4)], 2, 0.5)
    assert all(rep.ratios[0.5] < 1 for rep in paths if rep.n >= 9)
    cliques = anwd_profile([generators.complete(n) for n in range(4, 33, 4)], 1, 0.5)
    assert all(rep.ratios[0.5] >= 1 for rep in cliques)
    single = anwd_profile([LabeledGraph(1)], 2, 0.5)
    assert single[0].ratios[0.5] == 1
