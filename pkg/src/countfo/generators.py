"""Seed-deterministic graph families.

Numbering: paths and cycles run 0..n-1 along the graph; grid vertex (i, j) is
i*w + j; subdivided cliques put the m principal vertices first, then the
subdivision vertices edge by edge in lexicographic edge order; the isolated
vertices of a union come after the original ones.
"""
import itertools
import random

from .errors import InputError
from .graph import LabeledGraph


def path(n):
    return LabeledGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return LabeledGraph(n, [(i, (i + 1) % n) for i in range(n)])


def grid(w, h):
    edges = []
    for i in range(h):
        for j in range(w):
            v = i * w + j
            if j + 1 < w:
                edges.append((v, v + 1))
            if i + 1 < h:
                edges.append((v, v + w))
    return LabeledGraph(w * h, edges)


def complete(n):
    return LabeledGraph(n, itertools.combinations(range(n), 2))


def star(leaves):
    return LabeledGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def edgeless(n):
    return LabeledGraph(n)


def random_tree(n, seed):
    """Uniform random labeled tree via a Pruefer sequence."""
    rng = random.Random(seed)
    if n <= 1:
        return LabeledGraph(n)
    if n == 2:
        return LabeledGraph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return LabeledGraph(n, edges)


def bounded_degree_random(n, d, seed, density=1.0):
    """Random graph with maximum degree d: pairs are tried in random order."""
    if d < 0:
        raise InputError("degree bound must be nonnegative")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < d and deg[v] < d and rng.random() < density:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return LabeledGraph(n, edges)


def subdivided_clique(m, r):
    """K_m with every edge replaced by a path with r internal vertices."""
    if m < 1 or r < 0:
        raise InputError("need m >= 1 and r >= 0")
    edges = []
    nxt = m
    for a, b in itertools.combinations(range(m), 2):
        chain = [a] + list(range(nxt, nxt + r)) + [b]
        nxt += r
        edges.extend(zip(chain, chain[1:]))
    return LabeledGraph(nxt, edges)


def union_with_isolated(G, count):
    return LabeledGraph(G.n + count, G.edges(), G.labels)


def with_random_label(G, seed, p=0.5):
    """Add one label holding each vertex independently with probability p."""
    rng = random.Random(seed)
    P = {v for v in range(G.n) if rng.random() < p}
    return LabeledGraph(G.n, G.edges(), list(G.labels) + [P])


KINDS = {
    "path": lambda p, s: path(p["n"]),
    "cycle": lambda p, s: cycle(p["n"]),
    "grid": lambda p, s: grid(p["w"], p.get("h", p["w"])),
    "tree": lambda p, s: random_tree(p["n"], s),
    "bounded-degree-random": lambda p, s: bounded_degree_random(p["n"], p["d"], s),
    "subdivided-clique": lambda p, s: subdivided_clique(p["m"], p["r"]),
    "star": lambda p, s: star(p["n"] - 1),
    "complete": lambda p, s: complete(p["n"]),
}


def generate(kind, params, seed=0):
    """Build a graph of the named family; `union-with-isolated` wraps params['base']."""
    if kind == "union-with-isolated":
        base = params["base"]
        if not isinstance(base, LabeledGraph):
            base = generate(base["kind"], base, seed)
        return union_with_isolated(base, params["count"])
    if kind not in KINDS:
        raise InputError(f"unknown generator kind {kind!r}")
    try:
        return KINDS[kind](params, seed)
    except KeyError as e:
        raise InputError(f"generator {kind!r} needs parameter {e.args[0]!r}") from None


def random_matrix(k, size, seed, labels=1):
    """Random quantifier-free matrix over y, x1..xk with at most `size` symbols."""
    rng = random.Random(seed)
    vars_ = list(range(k + 1))

    def atom():
        kind = rng.choice(["E", "EQ", "P"] if labels else ["E", "EQ"])
        if kind == "P":
            return ("P", rng.randrange(labels), rng.choice(vars_))
        a, b = rng.sample(vars_, 2) if k else (0, 0)
        return (kind, a, b)

    def build(budget):
        if budget <= 1 or rng.random() < 0.3:
            return atom()
        if budget >= 2 and rng.random() < 0.2:
            return ("NOT", build(budget - 1))
        left = rng.randint(1, budget - 2) if budget >= 3 else 1
        if budget < 3:
            return atom()
        return (rng.choice(["AND", "OR"]), build(left), build(budget - 1 - left))

    return build(size)


def random_sentence(k, size, seed, labels=1, threshold=None):
    from .formula import CountingSentence

    rng = random.Random(seed + 7919)
    t = rng.randint(0, 6) if threshold is None else threshold
    return CountingSentence(k, random_matrix(k, size, seed, labels), t)
