import random

from hypothesis import settings, strategies as st

from countfo import generators
from countfo.graph import LabeledGraph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def graphs(draw, max_n=8, labels=0):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    marks = [draw(st.sets(st.integers(0, n - 1))) for _ in range(labels)]
    return LabeledGraph(n, edges, marks)


@st.composite
def orderings(draw, n):
    return tuple(draw(st.permutations(range(n))))


def family(n, seed):
    """One graph of each generator kind at roughly n vertices."""
    rng = random.Random(seed)
    side = max(2, int(n ** 0.5))
    return [
        generators.path(n),
        generators.cycle(max(3, n)),
        generators.grid(side, max(1, n // side)),
        generators.random_tree(n, seed),
        generators.bounded_degree_random(n, 3, seed),
        generators.star(max(1, n - 1)),
        generators.subdivided_clique(3, rng.randint(0, 1)),
        generators.union_with_isolated(generators.path(max(1, n - 2)), 2),
    ]
