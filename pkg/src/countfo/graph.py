"""Labeled simple graphs, vertex orderings and reachability primitives."""
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InputError


class LabeledGraph:
    """Simple undirected graph on vertices 0..n-1 with unary labels P_1..P_m.

    Immutable after construction. `labels[i]` is a frozenset of vertices.
    """

    __slots__ = ("n", "adj", "labels", "_nbr_sets", "_csr", "_dist")

    def __init__(self, n, edges=(), labels=()):
        if n < 0:
            raise InputError("negative vertex count")
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._nbr_sets = tuple(frozenset(s) for s in nbrs)
        lab = []
        for P in labels:
            P = frozenset(P)
            if any(not (0 <= v < n) for v in P):
                raise InputError("label set contains an out-of-range vertex")
            lab.append(P)
        self.labels = tuple(lab)
        self._csr = None
        self._dist = None

    @property
    def m(self):
        return sum(len(a) for a in self.adj) // 2

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def neighbors(self, v):
        return self._nbr_sets[v]

    def has_edge(self, u, v):
        return v in self._nbr_sets[u]

    def degree(self, v):
        return len(self.adj[v])

    def csr(self):
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int32)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self.adj[v])
            indices = np.fromiter(
                (u for a in self.adj for u in a), dtype=np.int32, count=int(indptr[-1])
            )
            self._csr = (indptr, indices)
        return self._csr

    def distances(self):
        """All-pairs BFS distance matrix, -1 for unreachable."""
        if self._dist is None:
            indptr, indices = self.csr()
            self._dist = kernels.all_pairs_distances(indptr, indices)
        return self._dist

    def check_vertex(self, v):
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
            raise InputError(f"vertex {v!r} out of range for n={self.n}")

    def canonical(self):
        return (self.n, tuple(self.edges()), tuple(tuple(sorted(P)) for P in self.labels))

    def __eq__(self, other):
        return isinstance(other, LabeledGraph) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"LabeledGraph(n={self.n}, m={self.m}, labels={len(self.labels)})"


@dataclass(frozen=True)
class VertexOrdering:
    perm: tuple
    pos: tuple = field(default=None)

    def __post_init__(self):
        perm = tuple(int(v) for v in self.perm)
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise InputError("ordering is not a permutation")
        pos = [0] * n
        for i, v in enumerate(perm):
            pos[v] = i
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "pos", tuple(pos))

    @classmethod
    def natural(cls, n):
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.perm)

    def less(self, u, v):
        return self.pos[u] < self.pos[v]

    def pos_array(self):
        return np.asarray(self.pos, dtype=np.int32)


def _check_ordering(G, pi):
    if len(pi) != G.n:
        raise InputError(f"ordering has length {len(pi)}, graph has {G.n} vertices")


def _mask(G, within=None):
    if within is None:
        return np.ones(G.n, dtype=np.uint8)
    m = np.zeros(G.n, dtype=np.uint8)
    for v in within:
        m[v] = 1
    return m


def closed_neighborhood(G, v, r, within=None):
    """Vertices at distance at most r from v (inside G[within] if given)."""
    G.check_vertex(v)
    if r < 0:
        raise InputError("negative radius")
    indptr, indices = G.csr()
    return frozenset(int(u) for u in kernels.ball(indptr, indices, _mask(G, within), v, r))


def cluster_X(G, pi, v, r, within=None):
    """{u : v in WReach_r[G, pi, u]}, optionally inside the induced subgraph G[within]."""
    G.check_vertex(v)
    _check_ordering(G, pi)
    if r < 0:
        raise InputError("negative radius")
    indptr, indices = G.csr()
    return frozenset(
        int(u) for u in kernels.cluster(indptr, indices, pi.pos_array(), _mask(G, within), v, r)
    )


def wreach(G, pi, v, r):
    """WReach_r[G, pi, v]; v itself always included."""
    G.check_vertex(v)
    _check_ordering(G, pi)
    if r < 0:
        raise InputError("negative radius")
    # u is weakly reachable from v iff v lies in u's cluster; only u <= v qualify.
    out = {v}
    for u in range(G.n):
        if pi.pos[u] < pi.pos[v] and v in cluster_X(G, pi, u, r):
            out.add(u)
    return frozenset(out)


def wreach_all(G, pi, r):
    """WReach_r for every vertex at once, by inverting the clusters."""
    _check_ordering(G, pi)
    indptr, indices = G.csr()
    pos = pi.pos_array()
    allowed = _mask(G)
    sets = [set() for _ in range(G.n)]
    for u in range(G.n):
        for w in kernels.cluster(indptr, indices, pos, allowed, u, r):
            sets[int(w)].add(u)
    return [frozenset(s) for s in sets]


def induced_subgraph(G, S):
    """Return (G[S], ids) where ids[i] is the original id of new vertex i."""
    ids = sorted(set(S))
    for v in ids:
        G.check_vertex(v)
    index = {v: i for i, v in enumerate(ids)}
    edges = [(index[u], index[v]) for u in ids for v in G.adj[u] if v in index and u < v]
    labels = [{index[v] for v in P if v in index} for P in G.labels]
    return LabeledGraph(len(ids), edges, labels), ids
