"""Brute-force reference implementations.

Nothing here goes through the clause transforms or the engines; formulas are
evaluated straight from the syntax tree.
"""
import itertools

from .errors import OracleScaleError

DEFAULT_MAX_N = 16
DEFAULT_MAX_K = 3


def _holds(G, f, a):
    op = f[0]
    if op == "E":
        u, v = a[f[1]], a[f[2]]
        return u != v and v in G.neighbors(u)
    if op == "EQ":
        return a[f[1]] == a[f[2]]
    if op == "P":
        return f[1] < len(G.labels) and a[f[2]] in G.labels[f[1]]
    if op == "NOT":
        return not _holds(G, f[1], a)
    if op == "AND":
        for g in f[1:]:
            if not _holds(G, g, a):
                return False
        return True
    if op == "OR":
        for g in f[1:]:
            if _holds(G, g, a):
                return True
        return False
    return op == "TRUE"


def _matrix(phi):
    return phi.matrix if hasattr(phi, "matrix") else phi


def oracle_count(G, phi, xs):
    """#{v : G |= phi(v, xs)}; phi is a matrix or a CountingSentence, xs[i-1] = x_i."""
    f = _matrix(phi)
    a = {i: u for i, u in enumerate(xs, 1)}
    total = 0
    for v in range(G.n):
        a[0] = v
        if _holds(G, f, a):
            total += 1
    return total


def oracle_max(G, sentence, max_n=DEFAULT_MAX_N, max_k=DEFAULT_MAX_K):
    """(value, witness) maximizing the count over all of V^k; smallest tuple wins ties."""
    k = sentence.k
    if G.n > max_n or k > max_k:
        raise OracleScaleError(f"oracle budget exceeded (n={G.n} > {max_n} or k={k} > {max_k})")
    best, arg = None, None
    for xs in itertools.product(range(G.n), repeat=k):
        c = oracle_count(G, sentence.matrix, xs)
        if best is None or c > best:
            best, arg = c, xs
    return best, arg


def oracle_subrelation_count(G, D, r, max_n=DEFAULT_MAX_N, max_k=4):
    """Number of injective h: [k] -> V meeting every pair constraint of D.

    D.get(i, j) is an int l in 1..r (distance <= l), "inf" (distance > r) or "*".
    """
    k = D.k
    if G.n > max_n or k > max_k:
        raise OracleScaleError(f"oracle budget exceeded (n={G.n}, k={k})")
    dist = _bfs_all(G)
    pairs = [(i, j, D.get(i, j)) for i in range(k) for j in range(i + 1, k)]
    total = 0
    for h in itertools.permutations(range(G.n), k):
        ok = True
        for i, j, c in pairs:
            d = dist[h[i]].get(h[j])
            if c == "*":
                continue
            if c == "inf":
                if d is not None and d <= r:
                    ok = False
                    break
            elif d is None or d > c:
                ok = False
                break
        if ok:
            total += 1
    return total


def _bfs_all(G):
    out = []
    for s in range(G.n):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for a in frontier:
                for b in G.adj[a]:
                    if b not in dist:
                        dist[b] = dist[a] + 1
                        nxt.append(b)
            frontier = nxt
        out.append(dist)
    return out


def oracle_dominating_selection(H, left, right, b, max_right=64):
    """Whether at most b vertices of `right` dominate every vertex of `left` in H."""
    right = list(right)
    if len(right) > max_right:
        raise OracleScaleError(f"right side {len(right)} exceeds {max_right}")
    rset = set(right)
    options = {u: frozenset(w for w in H.adj[u] if w in rset) for u in left}
    covers = {w: frozenset(u for u in H.adj[w] if u in options) for w in right}

    def search(undominated, budget):
        if not undominated:
            return True
        if budget == 0:
            return False
        # branch on the hardest left vertex
        u = min(undominated, key=lambda x: (len(options[x]), x))
        for w in sorted(options[u]):
            if search(undominated - covers[w], budget - 1):
                return True
        return False

    return search(frozenset(options), b)


def oracle_colorful_clique(G, parts):
    """Whether G has a clique with exactly one vertex in each part."""
    for choice in itertools.product(*[sorted(p) for p in parts]):
        if all(G.has_edge(u, v) for u, v in itertools.combinations(choice, 2)):
            return True
    return False


def oracle_pds(G, k):
    """Best partial dominating set of size k (as a tuple), by enumeration of vertex subsets."""
    best, arg = -1, None
    for S in itertools.combinations(range(G.n), min(k, G.n)):
        covered = set(S)
        for v in S:
            covered |= G.neighbors(v)
        if len(covered) > best:
            best, arg = len(covered), S
    return best, arg


def oracle_treedepth(vertices, adj):
    """Treedepth of the graph induced on `vertices` (adj maps vertex -> neighbor set)."""
    memo = {}

    def components(S):
        seen, comps = set(), []
        for s in S:
            if s in seen:
                continue
            comp, stack = {s}, [s]
            seen.add(s)
            while stack:
                a = stack.pop()
                for b in adj[a]:
                    if b in S and b not in seen:
                        seen.add(b)
                        comp.add(b)
                        stack.append(b)
            comps.append(frozenset(comp))
        return comps

    def td(S):
        if not S:
            return 0
        if S in memo:
            return memo[S]
        comps = components(S)
        if len(comps) > 1:
            val = max(td(c) for c in comps)
        else:
            val = 1 + min(td(S - {v}) for v in S)
        memo[S] = val
        return val

    return td(frozenset(vertices))


def _simple_paths(G, s, t, r, banned):
    """Internal vertex sets of s-t paths with at most r edges avoiding banned."""
    out = []

    def walk(v, inner, length):
        if length >= r:
            return
        for w in G.adj[v]:
            if w == t:
                out.append(frozenset(inner))
            elif w not in banned and w not in inner and w != s:
                inner.append(w)
                walk(w, inner, length + 1)
                inner.pop()

    walk(s, [], 0)
    return out


def oracle_distance_clique(G, k, r, max_n=DEFAULT_MAX_N):
    """Some k principal vertices joined pairwise by internally disjoint paths of length <= r."""
    if G.n > max_n:
        raise OracleScaleError(f"oracle budget exceeded (n={G.n})")
    for S in itertools.combinations(range(G.n), k):
        banned = set(S)
        pairs = list(itertools.combinations(S, 2))
        options = [sorted(set(_simple_paths(G, a, b, r, banned)), key=len) for a, b in pairs]
        if any(not o for o in options):
            continue

        def pick(i, used):
            if i == len(pairs):
                return True
            return any(not (p & used) and pick(i + 1, used | p) for p in options[i])

        if pick(0, frozenset()):
            return S
    return None


def oracle_distance_independent_set(G, k, r, max_n=DEFAULT_MAX_N):
    """Some k vertices pairwise at distance > r (unreachable counts as far)."""
    if G.n > max_n:
        raise OracleScaleError(f"oracle budget exceeded (n={G.n})")
    dist = _bfs_all(G)
    for S in itertools.combinations(range(G.n), k):
        if all(dist[a].get(b, r + 1) > r for a, b in itertools.combinations(S, 2)):
            return S
    return None
