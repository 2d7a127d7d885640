"""Generalized coloring numbers, orderings and low treedepth colorings."""
import itertools
from dataclasses import dataclass

from . import kernels
from .errors import OracleScaleError
from .graph import VertexOrdering, closed_neighborhood, wreach_all

EXACT_WCOL_CAP = 9


def wcol_sizes(G, pi, r):
    if G.n == 0:
        return []
    indptr, indices = G.csr()
    return [int(x) for x in kernels.wreach_sizes(indptr, indices, pi.pos_array(), r)]


def wcol_of_ordering(G, pi, r):
    """max over v of |WReach_r[G, pi, v]| (0 on the empty graph)."""
    return max(wcol_sizes(G, pi, r), default=0)


def col_of_ordering(G, pi, r):
    """max over v of |SReach_r[G, pi, v]|: internal path vertices must lie above v."""
    if G.n == 0:
        return 0
    indptr, indices = G.csr()
    return int(max(kernels.sreach_sizes(indptr, indices, pi.pos_array(), r)))


def degeneracy_ordering(G, extra=None):
    """Repeatedly strip a minimum-degree vertex; stripped vertices fill the order from the back.

    `extra` optionally maps vertices to additional neighbors (augmentation arcs).
    """
    nbrs = [set(G.adj[v]) for v in range(G.n)]
    if extra:
        for v, ws in extra.items():
            for w in ws:
                nbrs[v].add(w)
                nbrs[w].add(v)
    alive = set(range(G.n))
    deg = {v: len(nbrs[v]) for v in alive}
    back = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        alive.discard(v)
        back.append(v)
        for w in nbrs[v]:
            if w in alive:
                deg[w] -= 1
    return VertexOrdering(tuple(reversed(back)))


def fraternal_arcs(G, pi, extra=None):
    """Transitive and fraternal arcs of the orientation of G (plus extra) toward earlier vertices."""
    nbrs = [set(G.adj[v]) for v in range(G.n)]
    if extra:
        for v, ws in extra.items():
            for w in ws:
                nbrs[v].add(w)
                nbrs[w].add(v)
    pos = pi.pos
    left = [{w for w in nbrs[v] if pos[w] < pos[v]} for v in range(G.n)]
    added = {}
    for v in range(G.n):
        for a, b in itertools.combinations(sorted(left[v]), 2):
            added.setdefault(a, set()).add(b)
        for a in left[v]:
            for b in left[a]:
                if b not in nbrs[v]:
                    added.setdefault(v, set()).add(b)
    merged = {v: set(ws) for v, ws in (extra or {}).items()}
    for v, ws in added.items():
        merged.setdefault(v, set()).update(ws)
    return merged


def heuristic_ordering(G, r, rounds=2):
    """Degeneracy order refined by fraternal augmentation rounds; the best measured wcol_r wins.

    Deterministic. Carries no approximation guarantee; quality only affects speed downstream.
    """
    if G.n == 0:
        return VertexOrdering(())
    candidates = [degeneracy_ordering(G), VertexOrdering.natural(G.n)]
    extra = None
    pi = candidates[0]
    for _ in range(rounds):
        extra = fraternal_arcs(G, pi, extra)
        pi = degeneracy_ordering(G, extra)
        candidates.append(pi)
    scored = [(wcol_of_ordering(G, p, r), i) for i, p in enumerate(candidates)]
    return candidates[min(scored)[1]]


def exact_min_wcol(G, r, cap=EXACT_WCOL_CAP):
    """(ordering, value) minimizing wcol_r by branch and bound over all orderings.

    Placing u next, with R the still-unplaced vertices, makes u weakly r-reachable
    from exactly the vertices of R within distance r of u in G[R + u].
    """
    n = G.n
    if n > cap:
        raise OracleScaleError(f"exact wcol limited to n <= {cap}, got {n}")
    if n == 0:
        return VertexOrdering(()), 0
    start = heuristic_ordering(G, r)
    best = [wcol_of_ordering(G, start, r) + 1, start.perm]
    counts = [1] * n
    order = []

    def rec(remaining):
        if not remaining:
            val = max(counts)
            if val < best[0]:
                best[0], best[1] = val, tuple(order)
            return
        for u in sorted(remaining):
            ball = closed_neighborhood(G, u, r, within=remaining)
            bumped = [v for v in ball if v != u]
            for v in bumped:
                counts[v] += 1
            if counts[u] < best[0] and all(counts[v] < best[0] for v in bumped):
                order.append(u)
                rec(remaining - {u})
                order.pop()
            for v in bumped:
                counts[v] -= 1

    rec(frozenset(range(n)))
    return VertexOrdering(best[1]), best[0]


@dataclass(frozen=True)
class TreedepthColoring:
    colors: tuple
    num_colors: int
    r: int


def treedepth_coloring(G, pi, r):
    """Greedy coloring along pi avoiding every color in WReach_{2^(r-1)}[v] minus v.

    The result is (r+1)-centered, so any r' <= r classes induce treedepth at most r'.
    Uses at most wcol_{2^(r-1)}(G, pi) colors.
    """
    radius = 2 ** (r - 1) if r >= 1 else 0
    reach = wreach_all(G, pi, radius)
    colors = [None] * G.n
    for v in pi.perm:
        taken = {colors[u] for u in reach[v] if u != v}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    num = max(colors, default=-1) + 1
    return TreedepthColoring(tuple(colors), num, r)


def check_treedepth_coloring(G, coloring, max_union=None, max_vertices=12):
    """Verify by brute force that unions of r' <= min(r, max_union) classes have treedepth <= r'.

    Unions larger than max_vertices are checked componentwise; a component still
    above the cap raises OracleScaleError.
    """
    from .oracle import oracle_treedepth

    adj = {v: G.neighbors(v) for v in range(G.n)}
    top = coloring.r if max_union is None else min(coloring.r, max_union)
    classes = [set() for _ in range(coloring.num_colors)]
    for v, c in enumerate(coloring.colors):
        classes[c].add(v)
    for size in range(1, top + 1):
        for sel in itertools.combinations(range(coloring.num_colors), size):
            verts = set().union(*(classes[c] for c in sel))
            for comp in _components(verts, adj):
                if len(comp) > max_vertices:
                    raise OracleScaleError(f"component of {len(comp)} vertices exceeds the checker cap")
                if oracle_treedepth(comp, adj) > size:
                    return False
    return True


def _components(verts, adj):
    seen = set()
    for s in sorted(verts):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        seen.add(s)
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b in verts and b not in seen:
                    seen.add(b)
                    comp.add(b)
                    stack.append(b)
        yield comp


@dataclass(frozen=True)
class SparsityReport:
    n: int
    r: int
    wcol: tuple  # wcol_1..wcol_r under the ordering
    col: tuple  # col_1..col_r under the ordering
    ratios: dict  # epsilon -> wcol_r / n^epsilon


def sparsity_report(G, pi, r, epsilons=()):
    wcols = tuple(wcol_of_ordering(G, pi, i) for i in range(1, r + 1))
    cols = tuple(col_of_ordering(G, pi, i) for i in range(1, r + 1))
    for i, (w, c) in enumerate(zip(wcols, cols), 1):
        assert c <= w <= max(c ** i, 1), (i, c, w)
    n = max(G.n, 1)
    ratios = {eps: (wcols[-1] if wcols else 0) / n ** eps for eps in epsilons}
    return SparsityReport(G.n, r, wcols, cols, ratios)


def anwd_profile(family, r, eps):
    """Per graph: wcol_r and col_r under heuristic_ordering and the ratio wcol_r / n^eps."""
    return [sparsity_report(G, heuristic_ordering(G, r), r, (eps,)) for G in family]
