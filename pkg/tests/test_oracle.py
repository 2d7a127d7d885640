import itertools

import pytest
from hypothesis import given

from countfo import generators
from countfo.errors import OracleScaleError
from countfo.formula import CountingSentence, FALSE
from countfo.graph import LabeledGraph
from countfo.oracle import (
    oracle_count,
    oracle_dominating_selection,
    oracle_max,
    oracle_pds,
    oracle_subrelation_count,
    oracle_treedepth,
)
from countfo.problems import INF, STAR, SubRelation, pds_sentence

from conftest import graphs

PDS1 = ("OR", ("E", 0, 1), ("EQ", 0, 1))


def test_oracle_count_examples():
    star = generators.star(4)
    assert oracle_count(star, PDS1, (0,)) == 5
    assert oracle_count(star, FALSE, (0,)) == 0
    G = generators.random_tree(7, 1)
    assert all(oracle_count(G, ("EQ", 0, 1), (u,)) == 1 for u in range(7))


def test_oracle_max_examples():
    assert oracle_max(generators.star(4), pds_sentence(1, 0)) == (5, (0,))
    value, xs = oracle_max(generators.edgeless(3), pds_sentence(2, 0))
    assert value == 2 and xs[0] != xs[1]
    assert oracle_max(LabeledGraph(1), CountingSentence(1, ("EQ", 0, 1), 0)) == (1, (0,))


def test_oracle_max_budget():
    with pytest.raises(OracleScaleError):
        oracle_max(generators.path(40), pds_sentence(1, 0))


def test_subrelation_examples():
    P5 = generators.path(5)
    assert oracle_subrelation_count(P5, SubRelation.uniform(2, INF), 2) == 6
    G = generators.random_tree(6, 2)
    assert oracle_subrelation_count(G, SubRelation.uniform(3, STAR), 2) == 6 * 5 * 4
    assert oracle_subrelation_count(generators.complete(3), SubRelation.uniform(2, INF), 1) == 0


def test_dominating_selection_examples():
    K31 = LabeledGraph(4, [(0, 3), (1, 3), (2, 3)])
    assert oracle_dominating_selection(K31, [0, 1, 2], [3], 1)
    lonely = LabeledGraph(3, [(0, 2)])
    assert not oracle_dominating_selection(lonely, [0, 1], [2], 5)
    M3 = LabeledGraph(6, [(0, 3), (1, 4), (2, 5)])
    assert not oracle_dominating_selection(M3, [0, 1, 2], [3, 4, 5], 2)
    assert oracle_dominating_selection(M3, [0, 1, 2], [3, 4, 5], 3)


def test_oracle_pds_matches_oracle_max():
    for seed in range(5):
        G = generators.random_tree(9, seed)
        for k in (1, 2):
            assert oracle_pds(G, k)[0] == oracle_max(G, pds_sentence(k, 0))[0]


def test_treedepth_values():
    def td(G):
        return oracle_treedepth(set(range(G.n)), {v: G.neighbors(v) for v in range(G.n)})

    assert td(generators.path(1)) == 1
    assert td(generators.path(3)) == 2
    assert td(generators.path(7)) == 3
    assert td(generators.path(8)) == 4
    assert td(generators.complete(4)) == 4
    assert td(generators.star(5)) == 2


@given(graphs(max_n=7))
def test_subrelation_star_entries_count_injections(G):
    for k in (1, 2, 3):
        if k <= G.n:
            expected = 1
            for i in range(k):
                expected *= G.n - i
            assert oracle_subrelation_count(G, SubRelation.uniform(k, STAR), 2) == expected


@given(graphs(max_n=7))
def test_subrelation_split_identity(G):
    D = G.distances()
    for r in (1, 2):
        far = oracle_subrelation_count(G, SubRelation.uniform(2, INF), r)
        near = sum(1 for u, v in itertools.permutations(range(G.n), 2) if 0 <= D[u, v] <= r)
        assert far + near == G.n * (G.n - 1)
