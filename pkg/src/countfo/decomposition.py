"""Splitter moves, neighborhood covers, cover systems and radius-r decomposition trees.

A decomposition tree is stored as a DAG of bags: the subtree grown on a bag
depends only on the bag's vertex set, so equal bags are built once. Tree-level
quantities (node count, depth, node iteration) unfold the DAG.
"""
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BudgetExhausted, InputError


def _mask(n, verts):
    m = np.zeros(n, dtype=np.uint8)
    for v in verts:
        m[v] = 1
    return m


def clusters_within(G, pi, verts, radius, seeds=None):
    """{X_radius[G[verts], pi, z] : z in seeds} as a dict seed -> frozenset."""
    indptr, indices = G.csr()
    pos = pi.pos_array()
    allowed = _mask(G.n, verts)
    seeds = verts if seeds is None else seeds
    return {
        z: frozenset(int(u) for u in kernels.cluster(indptr, indices, pos, allowed, z, radius))
        for z in seeds
    }


def splitter_move(G, r, pi=None, bag=None):
    """Deterministic Splitter move on G[bag].

    With an ordering: the pi-minimum vertex of the bag (every child cluster then
    omits it, so bags strictly shrink). Without: a BFS center, i.e. a vertex of
    least eccentricity in the largest component, ties to higher degree then smaller id.
    """
    verts = sorted(range(G.n) if bag is None else bag)
    if not verts:
        raise InputError("splitter move on an empty graph")
    if pi is not None:
        return min(verts, key=lambda v: pi.pos[v])
    inside = set(verts)
    best = None
    for v in verts:
        dist = {v: 0}
        q = deque([v])
        while q:
            a = q.popleft()
            for b in G.adj[a]:
                if b in inside and b not in dist:
                    dist[b] = dist[a] + 1
                    q.append(b)
        key = (-len(dist), max(dist.values()), -G.degree(v), v)
        if best is None or key < best[0]:
            best = (key, v)
    return best[1]


@dataclass
class NeighborhoodCover:
    clusters: list
    max_degree: int
    mean_degree: float


def neighborhood_cover(G, pi, r):
    """Deduplicated clusters X_2r[G, pi, v]; each N_r[v] lies in the cluster of min_pi N_r[v]."""
    found = clusters_within(G, pi, range(G.n), 2 * r)
    clusters = sorted(set(found.values()), key=lambda c: (len(c), sorted(c)))
    load = [0] * G.n
    for c in clusters:
        for v in c:
            load[v] += 1
    return NeighborhoodCover(
        clusters, max(load, default=0), (sum(load) / G.n) if G.n else 0.0
    )


# ---------------------------------------------------------------- cover systems

def cover_radius_ladder(k):
    """Radii a cover system for k seeds can end with: 2, 7, 22, ... (rho -> 3 rho + 1)."""
    out = [2]
    for _ in range(max(k, 1) - 1):
        out.append(3 * out[-1] + 1)
    return out


@dataclass
class CoverSystem:
    clusters: list  # pairwise disjoint frozensets
    seeds: list
    radius: int


def build_cover_system(G, pi, D, within=None, cap=6):
    """Disjoint equal-radius clusters of G[within] covering every component of G[N[D]].

    Starts from X_2 at min_pi N[d]. Two clusters that meet or are joined by an
    edge are replaced by one cluster at the smaller seed with radius 3*rho + 1,
    which contains both (a path u -> z' -> w -> z has length at most 3*rho, one
    more if the clusters only touch by an edge). Radii are then equalized and the
    loop repeats until stable.
    """
    D = sorted(set(D))
    if len(D) > cap:
        raise InputError(f"cover system for {len(D)} seeds exceeds cap {cap}")
    verts = set(range(G.n)) if within is None else set(within)
    if not D:
        return CoverSystem([], [], 0)
    closed = {}
    for d in D:
        closed[d] = ({d} | set(G.adj[d])) & verts
    items = {}
    for d in D:
        z = min(closed[d], key=lambda v: pi.pos[v])
        items[z] = 2
    def cl(z, rho):
        return clusters_within(G, pi, verts, rho, [z])[z]
    while True:
        changed = True
        while changed:
            changed = False
            seeds = sorted(items, key=lambda v: pi.pos[v])
            sets = {z: cl(z, items[z]) for z in seeds}
            for i, a in enumerate(seeds):
                for b in seeds[i + 1:]:
                    A, B = sets[a], sets[b]
                    if A & B or any(w in B for u in A for w in G.adj[u]):
                        rho = 3 * max(items[a], items[b]) + 1
                        del items[a], items[b]
                        items[a] = rho
                        changed = True
                        break
                if changed:
                    break
        top = max(items.values())
        if all(rho == top for rho in items.values()):
            break
        for z in items:
            items[z] = top
    seeds = sorted(items, key=lambda v: pi.pos[v])
    return CoverSystem([cl(z, items[z]) for z in seeds], seeds, top)


# ---------------------------------------------------------------- trees

@dataclass
class TreeNode:
    id: int
    parent: object
    vertex: int
    bag: frozenset
    depth: int
    children: list = field(default_factory=list)


class DecompositionTree:
    """Radius-r decomposition tree T_r(G, pi, l) held as a DAG of distinct bags.

    bag_vertex[b] is beta of any node built on bag b; bag_children[b] lists the
    distinct child bags (clusters of G[bag - beta] at every radius in `radii`).
    """

    def __init__(self, G, pi, r, rounds, radii, bags, bag_vertex, bag_children, root):
        self.G = G
        self.pi = pi
        self.r = r
        self.rounds = rounds
        self.radii = tuple(radii)
        self.bags = bags
        self.bag_vertex = bag_vertex
        self.bag_children = bag_children
        self.root = root
        self._heights = None
        self._sizes = None

    @property
    def empty(self):
        return self.root is None

    def heights(self):
        if self._heights is None:
            h = [0] * len(self.bags)
            for b in range(len(self.bags)):  # children always get smaller ids
                h[b] = 1 + max((h[c] for c in self.bag_children[b]), default=0)
            self._heights = h
        return self._heights

    def subtree_sizes(self):
        if self._sizes is None:
            s = [0] * len(self.bags)
            for b in range(len(self.bags)):
                s[b] = 1 + sum(s[c] for c in self.bag_children[b])
            self._sizes = s
        return self._sizes

    @property
    def depth(self):
        return 0 if self.empty else self.heights()[self.root]

    @property
    def node_count(self):
        return 0 if self.empty else self.subtree_sizes()[self.root]

    @property
    def distinct_bags(self):
        return len(self.bags)

    def nodes(self):
        """Unfold the DAG into explicit tree nodes (preorder)."""
        if self.empty:
            return []
        out = []
        stack = [(self.root, None, 1)]
        while stack:
            b, parent, depth = stack.pop()
            node = TreeNode(len(out), parent, self.bag_vertex[b], self.bags[b], depth)
            out.append(node)
            if parent is not None:
                out[parent].children.append(node.id)
            for c in reversed(self.bag_children[b]):
                stack.append((c, node.id, depth + 1))
        return out

    def stats(self):
        return {
            "nodes": self.node_count,
            "depth": self.depth,
            "distinct_bags": self.distinct_bags,
            "rounds": self.rounds,
            "r": self.r,
            "radii": list(self.radii),
        }


def build_decomposition_tree(G, pi, r, rounds, radii=None):
    """T_r(G, pi, rounds): root = pi-minimum vertex s, children on X_rho[G - s, pi, v].

    `radii` defaults to (2r,); extra radii add further child clusters (the exact
    engine adds the cover-system ladder). Raises BudgetExhausted when some root
    path would need more than `rounds` nodes.
    """
    if rounds < 0:
        raise InputError("round budget must be nonnegative")
    radii = tuple(sorted(set(radii or (2 * r,))))
    bags, bag_vertex, bag_children = [], [], []
    index = {}
    indptr, indices = G.csr()
    pos = pi.pos_array()

    def build(B):
        if B in index:
            return index[B]
        s = splitter_move(G, r, pi, B)
        W = B - {s}
        allowed = _mask(G.n, W)
        kids = set()
        for rho in radii:
            for v in W:
                kids.add(frozenset(int(u) for u in kernels.cluster(indptr, indices, pos, allowed, v, rho)))
        child_ids = sorted({build(c) for c in kids})
        index[B] = len(bags)
        bags.append(B)
        bag_vertex.append(s)
        bag_children.append(child_ids)
        return index[B]

    if G.n == 0:
        return DecompositionTree(G, pi, r, rounds, radii, [], [], [], None)
    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * G.n + 1000))
    try:
        root = build(frozenset(range(G.n)))
    finally:
        sys.setrecursionlimit(old)
    tree = DecompositionTree(G, pi, r, rounds, radii, bags, bag_vertex, bag_children, root)
    if tree.depth > rounds:
        h = tree.heights()
        b, level = root, 1
        while level < rounds:
            b = max(bag_children[b], key=lambda c: h[c])
            level += 1
        deep = max(bag_children[b], key=lambda c: h[c])
        raise BudgetExhausted(
            f"not ({rounds},{2 * r})-winnable with this strategy: sub-instance "
            f"{sorted(bags[deep])} is still nonempty after {rounds} rounds; raise the round budget",
            bags[deep],
        )
    return tree


def check_tree_invariants(tree, wcol_2r=None, check_cover=True):
    """Assert depth, size and cover-corollary invariants; returns the stats dict."""
    from .graph import closed_neighborhood
    from .sparsity import wcol_of_ordering

    G, pi, r = tree.G, tree.pi, tree.r
    assert tree.depth <= tree.rounds, (tree.depth, tree.rounds)
    if wcol_2r is None:
        wcol_2r = wcol_of_ordering(G, pi, 2 * r)
    assert tree.node_count <= wcol_2r ** tree.rounds * G.n, (tree.node_count, wcol_2r, tree.rounds)
    if check_cover:
        for b, B in enumerate(tree.bags):
            W = B - {tree.bag_vertex[b]}
            kids = [tree.bags[c] for c in tree.bag_children[b]]
            for u in W:
                ball = closed_neighborhood(G, u, r, within=W)
                assert any(ball <= K for K in kids), (sorted(B), u)
    return tree.stats()
