import itertools
import random

import pytest
from hypothesis import given, strategies as st

from countfo import generators
from countfo.decomposition import build_cover_system, build_decomposition_tree
from countfo.errors import InputError
from countfo.exact import (
    NEG_INF,
    DCMInstance,
    fulfilling_distribution_sides,
    maximize_exact,
    omega_restrict_weight,
    run_dp,
    solve_dcm,
    tree_radii,
)
from countfo.formula import complete_x_clauses, parse_sentence
from countfo.graph import LabeledGraph, VertexOrdering, closed_neighborhood
from countfo.oracle import oracle_count, oracle_max
from countfo.problems import pds_sentence
from countfo.sparsity import heuristic_ordering, wcol_of_ordering

from conftest import graphs

E1 = ("E", 0, 1)
EQ1 = ("EQ", 0, 1)

# oracle_max values, frozen
FROZEN = [
    ("path", {"n": 7}, 0, "exists x1 . count y . (E(y,x1) | y = x1) > 2", 3),
    ("cycle", {"n": 6}, 0, "exists x1 x2 . count y . (E(y,x1) | E(y,x2)) > 3", 4),
    ("grid", {"w": 3}, 0, "exists x1 x2 . count y . (E(y,x1) & !E(y,x2)) > 2", 4),
    ("tree", {"n": 10}, 3, "exists x1 x2 . count y . (E(y,x1) | y = x1 | E(y,x2) | y = x2) > 6", 7),
    ("bounded-degree-random", {"n": 12, "d": 3}, 5, "exists x1 . count y . !(E(y,x1)) > 5", 9),
    ("star", {"n": 6}, 0, "exists x1 x2 . count y . (E(y,x1) & E(y,x2) & !(x1 = x2)) > 0", 1),
    ("subdivided-clique", {"m": 4, "r": 1}, 0, "exists x1 x2 . count y . (E(y,x1) | E(y,x2)) > 5", 5),
    ("complete", {"n": 5}, 0, "exists x1 . count y . (!(y = x1) & E(y,x1)) > 3", 4),
]


@pytest.mark.parametrize("kind,params,seed,text,expected", FROZEN)
def test_frozen_optima(kind, params, seed, text, expected):
    G = generators.generate(kind, dict(params), seed)
    s = parse_sentence(text)
    res = maximize_exact(G, s)
    assert res.value == expected
    assert oracle_count(G, s.matrix, res.witness) == expected
    assert res.decision == ("yes" if expected > s.threshold else "no")


def test_omega_restrict_weight_examples():
    star = generators.star(3)
    assert omega_restrict_weight(star, [(1, (E1,))], {1}, set(star.adj[0]), {1: 0}) == 3
    assert omega_restrict_weight(star, [(1, (E1,))], {1}, set(), {1: 0}) == 0
    assert omega_restrict_weight(star, [(2, (EQ1,))], {1}, {0, 2}, {1: 2}) == 2
    with pytest.raises(InputError):
        omega_restrict_weight(star, [(1, (E1,))], {1}, {0}, {})


def test_solve_dcm_examples():
    inst = DCMInstance(
        [frozenset({1, 2}), frozenset({2, 3}), frozenset({4})], ["a", "b"],
        {(0, 0): 5, (1, 1): 2, (2, 0): 3},
    )
    sel, w = solve_dcm(inst)
    assert w == 5 and sel == [2, 1]
    inst = DCMInstance([frozenset({0}), frozenset({1}), frozenset({2})], ["a"], {(0, 0): 1, (1, 0): 7, (2, 0): 3})
    assert solve_dcm(inst)[1] == 7
    inst = DCMInstance([frozenset({0, 1}), frozenset({1, 2})], ["a", "b"],
                       {(i, l): 1 for i in range(2) for l in range(2)})
    inst.clusters.append(frozenset({0, 2}))
    inst.weights.update({(2, 0): 1, (2, 1): 1})
    assert solve_dcm(inst) == (None, NEG_INF)


@given(st.integers(0, 10 ** 6))
def test_solve_dcm_matches_enumeration(seed):
    rng = random.Random(seed)
    nc, m = rng.randint(1, 12), rng.randint(1, 3)
    clusters = [frozenset(rng.sample(range(10), rng.randint(1, 3))) for _ in range(nc)]
    weights = {(i, l): rng.randint(-4, 9) for i in range(nc) for l in range(m) if rng.random() < 0.7}
    _, value = solve_dcm(DCMInstance(clusters, list(range(m)), weights))
    best = NEG_INF
    for pick in itertools.permutations(range(nc), m):
        if any(clusters[a] & clusters[b] for a, b in itertools.combinations(pick, 2)):
            continue
        if all((c, l) in weights for l, c in enumerate(pick)):
            best = max(best, sum(weights[(c, l)] for l, c in enumerate(pick)))
    assert value == best


def _tree(G, k):
    r = 2 ** k
    radii = tree_radii(k, r)
    pi = heuristic_ordering(G, max(radii))
    return build_decomposition_tree(G, pi, r, wcol_of_ordering(G, pi, max(radii)) + 1, radii)


def test_run_dp_examples():
    omega = [(1, (E1,)), (1, (EQ1,))]
    xi = complete_x_clauses(1)[0]
    star = generators.star(4)
    assert run_dp(star, _tree(star, 1), omega, xi) == (5, (0,))
    edgeless = generators.edgeless(3)
    assert run_dp(edgeless, _tree(edgeless, 1), omega, xi)[0] == 1
    assert run_dp(star, _tree(star, 1), [], xi)[0] == 0


def test_maximize_exact_examples():
    star = generators.star(4)
    res = maximize_exact(star, pds_sentence(1, 4))
    assert (res.value, res.witness, res.decision) == (5, (0,), "yes")
    two = LabeledGraph(8, [(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)])
    res = maximize_exact(two, pds_sentence(2, 7))
    assert res.value == 8 and res.decision == "yes"
    assert maximize_exact(LabeledGraph(1), pds_sentence(1, 0)).value == 1


def test_cap_enforced():
    with pytest.raises(InputError):
        maximize_exact(generators.path(4), pds_sentence(5, 0))


@given(graphs(max_n=9, labels=1), st.integers(1, 2), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_matches_oracle(G, k, size, seed):
    s = generators.random_sentence(k, size, seed)
    res = maximize_exact(G, s)
    best, _ = oracle_max(G, s)
    assert res.value == best
    assert oracle_count(G, s.matrix, res.witness) == best


@given(graphs(max_n=8), st.integers(0, 10 ** 6), st.data())
def test_ordering_independent(G, seed, data):
    s = generators.random_sentence(2, 5, seed, labels=0)
    perm = data.draw(st.permutations(range(G.n)))
    a = maximize_exact(G, s)
    b = maximize_exact(G, s, ordering=VertexOrdering(tuple(perm)))
    assert a.value == b.value


def _random_split_instance(rng):
    n = rng.randint(3, 12)
    seed = rng.randrange(10 ** 6)
    G = generators.with_random_label(rng.choice([
        generators.random_tree(n, seed),
        generators.bounded_degree_random(n, 3, seed),
        generators.cycle(n),
    ]), seed)
    kx, kz = rng.randint(0, 2), rng.randint(1, 2)
    xs = list(range(1, kx + 1))
    zs = list(range(kx + 1, kx + kz + 1))
    order = list(range(n))
    rng.shuffle(order)
    wv = [rng.choice(order) for _ in zs]
    near = set().union(*(closed_neighborhood(G, w, 1) for w in wv))
    rest = [v for v in order if v not in near]
    W = set(wv) | set(rng.sample(rest, rng.randint(0, len(rest))))
    P = (near - W) | {v for v in order if v not in W and rng.random() < 0.5}
    if xs and not P:
        return None
    alpha = dict(zip(zs, wv))
    for x in xs:
        alpha[x] = rng.choice(sorted(P))
    omega = []
    for _ in range(rng.randint(1, 5)):
        lits = []
        for _ in range(rng.randint(1, 3)):
            kind = rng.choice(["E", "EQ", "P"])
            lits.append(("P", 0, 0) if kind == "P" else (kind, 0, rng.choice(xs + zs)))
        omega.append((rng.randint(-3, 3), tuple(lits)))
    cover = build_cover_system(G, heuristic_ordering(G, 4), wv, within=W)
    return G, omega, alpha, xs, zs, W, cover


def fulfilling_instances(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        inst = _random_split_instance(rng)
        if inst is not None:
            out.append(inst)
    return out


@given(st.integers(0, 10 ** 6))
def test_fulfilling_distribution_identity(seed):
    for G, omega, alpha, xs, zs, W, cover in fulfilling_instances(3, seed):
        lhs, rhs = fulfilling_distribution_sides(G, omega, alpha, xs, zs, W, cover)
        assert lhs == rhs
