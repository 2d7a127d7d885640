"""Problem front-ends: partial dominating set, distance-r clique and independent set,
and the dominating-selection gadget built from a colorful graph."""
import itertools
import math
from dataclasses import dataclass, field

from .errors import InputError
from .formula import CountingSentence
from .graph import LabeledGraph

INF = "inf"
STAR = "*"
DISTANCE_K_CAP = 4
DISTANCE_R_CAP = 4


# ------------------------------------------------------------ partial domination

def pds_sentence(k, t):
    """exists x1..xk #y OR_i (E(y, x_i) | y = x_i) > t"""
    if k < 1:
        raise InputError("k must be at least 1")
    if t < 0:
        raise InputError("threshold must be nonnegative")
    disj = [("OR", ("E", 0, i), ("EQ", 0, i)) for i in range(1, k + 1)]
    matrix = disj[0] if k == 1 else ("OR", *disj)
    return CountingSentence(k, matrix, t)


def partial_dominating_set(G, k, t=0, mode="exact", **options):
    """Best set of at most k vertices by number of dominated vertices, through an engine."""
    from .approx import maximize_approx
    from .exact import maximize_exact

    sentence = pds_sentence(k, t)
    run = maximize_exact if mode == "exact" else maximize_approx
    res = run(G, sentence, **options)
    chosen = sorted(set(res.witness)) if res.witness is not None else []
    return chosen, res


# ---------------------------------------------------------------- subrelations

@dataclass(frozen=True)
class SubRelation:
    """Pair constraints over [k] (0-based): int l (dist <= l), INF (dist > r) or STAR."""

    k: int
    entries: tuple  # ((i, j), value) for i < j, all pairs present

    @staticmethod
    def uniform(k, value):
        return SubRelation(k, tuple(((i, j), value) for i, j in itertools.combinations(range(k), 2)))

    @staticmethod
    def from_dict(k, d):
        out = []
        for i, j in itertools.combinations(range(k), 2):
            v = d.get((i, j), d.get((j, i)))
            if v is None:
                raise InputError(f"pair {i},{j} missing")
            out.append(((i, j), v))
        return SubRelation(k, tuple(out))

    def get(self, i, j):
        i, j = min(i, j), max(i, j)
        return dict(self.entries)[(i, j)]

    def replace(self, pair, value):
        return SubRelation(self.k, tuple((p, value if p == pair else v) for p, v in self.entries))

    def check(self, r):
        for _, v in self.entries:
            if v not in (INF, STAR) and not (isinstance(v, int) and 1 <= v <= r):
                raise InputError(f"bad subrelation entry {v!r} for r={r}")


def expand_infinity(D, r):
    """Rewrite [[D]] = [[D with pair -> *]] - [[D with pair -> r]] until no INF is left.

    Returns a list of (coefficient, infinity-free subrelation), equal ones merged.
    """
    D.check(r)
    work = {D: 1}
    done = {}
    while work:
        nxt = {}
        for d, c in work.items():
            pair = next((p for p, v in d.entries if v == INF), None)
            if pair is None:
                done[d] = done.get(d, 0) + c
                continue
            for d2, sign in ((d.replace(pair, STAR), 1), (d.replace(pair, r), -1)):
                nxt[d2] = nxt.get(d2, 0) + sign * c
        work = {d: c for d, c in nxt.items() if c}
    return sorted(((c, d) for d, c in done.items() if c), key=lambda t: repr(t[1].entries))


def count_embeddings(G, D, dist=None, pinned=None):
    """Injective h with dist(h(i), h(j)) <= D(i, j) for integer entries (no INF allowed)."""
    if any(v == INF for _, v in D.entries):
        raise InputError("count_embeddings needs an infinity-free subrelation")
    if dist is None:
        dist = _distances(G)
    pinned = dict(pinned or {})
    k = D.k
    cons = [[] for _ in range(k)]
    for (i, j), v in D.entries:
        if v != STAR:
            cons[j].append((i, v))
    h = [None] * k

    def rec(i, used):
        if i == k:
            return 1
        cands = [pinned[i]] if i in pinned else range(G.n)
        total = 0
        for v in cands:
            if v in used:
                continue
            if all(0 <= dist[h[a]][v] <= lim for a, lim in cons[i]):
                h[i] = v
                total += rec(i + 1, used | {v})
        return total

    return rec(0, frozenset())


def _distances(G):
    return G.distances().tolist() if G.n else []


def count_subrelation(G, D, r, dist=None, pinned=None):
    """[[D]] through the infinity rewrite and embedding counts."""
    dist = _distances(G) if dist is None else dist
    return sum(c * count_embeddings(G, d, dist, pinned) for c, d in expand_infinity(D, r))


def distance_independent_set(G, k, r):
    """k vertices pairwise at distance > r, or None. Witness by self-reduction on the count."""
    _caps(k, r)
    if k > G.n:
        return None
    if k == 1:
        return [0] if G.n else None
    dist = _distances(G)
    D = SubRelation.uniform(k, INF)
    terms = expand_infinity(D, r)

    def count(pins):
        return sum(c * count_embeddings(G, d, dist, pins) for c, d in terms)

    if count({}) <= 0:
        return None
    pins = {}
    for i in range(k):
        for v in range(G.n):
            if v in pins.values():
                continue
            trial = {**pins, i: v}
            if count(trial) > 0:
                pins = trial
                break
        else:
            raise AssertionError("self-reduction lost the witness")
    S = sorted(pins.values())
    assert all(dist[a][b] < 0 or dist[a][b] > r for a, b in itertools.combinations(S, 2))
    return S


# ------------------------------------------------------------- distance clique

def subdivided_clique_pattern(k, lengths):
    """K_k with pair p replaced by a path of lengths[p] edges; principal vertices 0..k-1."""
    edges, nxt = [], k
    for (a, b), l in zip(itertools.combinations(range(k), 2), lengths):
        prev = a
        for _ in range(l - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, b))
    return nxt, edges


def find_subgraph(G, pn, pedges):
    """An injective map of the pattern into G preserving pattern edges, or None."""
    padj = [set() for _ in range(pn)]
    for a, b in pedges:
        padj[a].add(b)
        padj[b].add(a)
    order, seen = [], set()
    for s in sorted(range(pn), key=lambda v: -len(padj[v])):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(padj[v], key=lambda w: -len(padj[w])):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    deg = [len(G.adj[v]) for v in range(G.n)]
    img = [None] * pn
    used = set()
    memo_fail = set()

    def rec(pos):
        if pos == pn:
            return True
        p = order[pos]
        mapped = [img[q] for q in padj[p] if img[q] is not None]
        if mapped:
            cands = set(G.adj[mapped[0]])
            for m in mapped[1:]:
                cands &= set(G.adj[m])
        else:
            cands = range(G.n)
        key = (pos, tuple(img[q] for q in order[:pos]))
        if key in memo_fail:
            return False
        for v in sorted(cands):
            if v in used or deg[v] < len(padj[p]):
                continue
            img[p] = v
            used.add(v)
            if rec(pos + 1):
                return True
            used.discard(v)
            img[p] = None
        memo_fail.add(key)
        return False

    return list(img) if rec(0) else None


def distance_clique(G, k, r):
    """Principal vertices of a <= r subdivision of K_k inside G, or None."""
    _caps(k, r)
    if k > G.n:
        return None
    if k == 1:
        return [0] if G.n else None
    npairs = k * (k - 1) // 2
    vectors = sorted(itertools.product(range(1, r + 1), repeat=npairs), key=lambda v: (max(v), sum(v), v))
    for lengths in vectors:
        pn, pedges = subdivided_clique_pattern(k, lengths)
        if pn > G.n:
            continue
        img = find_subgraph(G, pn, pedges)
        if img is None:
            continue
        principal = img[:k]
        _verify_clique_paths(G, k, lengths, img)
        return sorted(principal)
    return None


def _verify_clique_paths(G, k, lengths, img):
    """Walk every subdivided edge of the embedding: edges exist and inner vertices are disjoint."""
    _, pedges = subdivided_clique_pattern(k, lengths)
    assert len(set(img)) == len(img)
    for a, b in pedges:
        assert G.has_edge(img[a], img[b])


def _caps(k, r):
    if k < 1 or r < 1:
        raise InputError("k and r must be positive")
    if k > DISTANCE_K_CAP or r > DISTANCE_R_CAP:
        raise InputError(f"k <= {DISTANCE_K_CAP} and r <= {DISTANCE_R_CAP} at desk scale")


# ---------------------------------------------------------------------- gadget

@dataclass(frozen=True)
class ColorfulGraph:
    graph: LabeledGraph
    parts: tuple  # tuple of frozensets

    @staticmethod
    def build(n, edges, parts):
        parts = tuple(frozenset(p) for p in parts)
        if sorted(v for p in parts for v in p) != list(range(n)):
            raise InputError("parts must partition the vertices")
        part_of = {v: i for i, p in enumerate(parts) for v in p}
        for u, v in edges:
            if part_of[u] == part_of[v]:
                raise InputError(f"edge {u}-{v} inside part {part_of[u]}")
        return ColorfulGraph(LabeledGraph(n, edges, [set(p) for p in parts]), parts)

    @property
    def k(self):
        return len(self.parts)

    def part_of(self, v):
        for i, p in enumerate(self.parts):
            if v in p:
                return i
        raise InputError(f"vertex {v} in no part")


def random_colorful_graph(sizes, p, seed):
    import random

    rng = random.Random(seed)
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = [(u, v) for a, b in itertools.combinations(range(len(parts)), 2)
             for u in parts[a] for v in parts[b] if rng.random() < p]
    return ColorfulGraph.build(start, edges, parts)


def code_length(n):
    if n < 2:
        return 0
    return 2 * math.ceil(math.log2(n))


def admissible(n):
    """Enough strings of length 2L with first bit 1 and exactly L ones."""
    L = code_length(n) // 2
    return L >= 1 and math.comb(2 * L - 1, L - 1) >= n


def minimal_admissible(n):
    m = max(n, 2)
    while not admissible(m):
        m += 1
    return m


def enc(index, n):
    """The index-th admissible string in lexicographic order."""
    if not admissible(n):
        raise InputError(f"n={n} too small for the encoding; smallest admissible n >= {n} is {minimal_admissible(n)}")
    if not 0 <= index < n:
        raise InputError(f"rank {index} outside 0..{n - 1}")
    L2 = code_length(n)
    L = L2 // 2
    # rank among strings 1 + (2L-1 bits with L-1 ones), lexicographic
    out, ones, rank = ["1"], L - 1, index
    for pos in range(L2 - 1):
        left = L2 - 2 - pos
        with_zero = math.comb(left, ones)
        if rank < with_zero:
            out.append("0")
        else:
            rank -= with_zero
            out.append("1")
            ones -= 1
    return "".join(out)


def enc_complement(bits):
    return "".join("1" if b == "0" else "0" for b in bits)


def succ(i, j, k):
    s = (j + 1) % k
    return s if s != i else (j + 2) % k


@dataclass
class GadgetInstance:
    H: LabeledGraph
    k: int
    n: int
    budget: int
    cells: dict  # (i, j) -> list of left vertices in order
    right: list
    provenance: dict = field(default_factory=dict)  # right vertex -> (u, v)

    @property
    def left(self):
        return [v for c in sorted(self.cells) for v in self.cells[c]]


def build_domset_gadget(CG, n=None):
    """Bipartite H with cells C_ij and one right vertex per cross edge, wired by codes."""
    G, k = CG.graph, CG.k
    n = G.n if n is None else n
    if n < G.n:
        raise InputError("n must be at least the number of vertices")
    if not admissible(n):
        raise InputError(f"n={n} too small for the encoding; smallest admissible n >= {n} is {minimal_admissible(n)}")
    L2 = code_length(n)
    cells, nxt = {}, 0
    for i in range(k):
        for j in range(k):
            if i != j:
                cells[(i, j)] = list(range(nxt, nxt + L2))
                nxt += L2
    codes = {v: enc(v, n) for v in range(G.n)}
    edges, right, prov = set(), [], {}

    def wire(x, cell, bits):
        for pos, b in enumerate(bits):
            if b == "1":
                edges.add((cells[cell][pos], x))

    for u, v in G.edges():
        i, j = CG.part_of(u), CG.part_of(v)
        if i > j:
            u, v, i, j = v, u, j, i
        x = nxt
        nxt += 1
        right.append(x)
        prov[x] = (u, v)
        wire(x, (i, j), codes[u])
        wire(x, (i, succ(i, j, k)), enc_complement(codes[u]))
        wire(x, (j, i), codes[v])
        wire(x, (j, succ(j, i, k)), enc_complement(codes[v]))
    left_label = {c for cell in cells.values() for c in cell}
    H = LabeledGraph(nxt, edges, [left_label, set(right)])
    inst = GadgetInstance(H, k, n, k * (k - 1) // 2, cells, right, prov)
    if k >= 3:
        check_gadget_structure(inst)
    return inst


def check_gadget_structure(inst):
    """Left size 2k(k-1)ceil(log n); each right vertex touches 4 cells, half of each."""
    L2 = code_length(inst.n)
    assert len(inst.left) == inst.k * (inst.k - 1) * L2
    cell_of = {v: c for c, vs in inst.cells.items() for v in vs}
    for x in inst.right:
        touched = {}
        for w in inst.H.adj[x]:
            touched[cell_of[w]] = touched.get(cell_of[w], 0) + 1
        assert len(touched) == 4, (x, touched)
        assert all(c == L2 // 2 for c in touched.values()), (x, touched)
    return True


def verify_gadget_equivalence(CG, inst):
    """Colorful k-clique in G iff C(k,2) right vertices dominate the left side of H."""
    from .oracle import oracle_colorful_clique, oracle_dominating_selection

    lhs = oracle_colorful_clique(CG.graph, [sorted(p) for p in CG.parts])
    rhs = oracle_dominating_selection(inst.H, inst.left, inst.right, inst.budget)
    return lhs == rhs
