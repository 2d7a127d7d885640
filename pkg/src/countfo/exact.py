"""Exact maximization of #y phi(y, x) over all tuples, by dynamic programming on
radius-r decomposition trees.

Table semantics. A call is made for a bag B (a tree node), the part `ctx` of its
root path that touches B, and `alpha`: for each variable either unassigned
(None), a root-path vertex in ctx, or FAR (a root-path vertex with no neighbor
in B). The result maps a profile key (per variable: None, or the set S_i of
ctx-neighbors of the vertex it is placed on inside B) to the best total clause
weight of the vertices of B, counting only variables that sit on the root path
or inside B. A variable may only be placed on u when N(u) lies within B plus the
root path; this keeps every placed variable invisible to vertices outside its
cluster, which is what makes the disjoint-cluster combination exact.
"""
import itertools
from dataclasses import dataclass, field

from .decomposition import build_decomposition_tree, cover_radius_ladder
from .errors import InputError
from .formula import (
    Y,
    clause_holds,
    complete_x_clauses,
    labels_used,
    literal_vars,
    split_clause,
    to_positive_clauses,
)
from .sparsity import heuristic_ordering, wcol_of_ordering

NEG_INF = float("-inf")
FAR = -1
K_CAP = 4


@dataclass
class EvalResult:
    value: object
    witness: tuple
    mode: str
    error_bound: int
    decision: str
    details: dict = field(default_factory=dict)


def decide(value, threshold, delta=0):
    if value > threshold:
        return "yes"
    if value + delta <= threshold:
        return "no"
    return "bottom"


# ------------------------------------------------------------ clause weights

def omega_restrict_weight(G, omega, zvars, Z, alpha):
    """sum over v in Z and (mu, w) in Omega whose variables lie in y + zvars of mu * [w(v, alpha)]."""
    zvars = set(zvars)
    missing = [z for z in zvars if z not in alpha]
    if missing:
        raise InputError(f"variable x{missing[0]} of the restriction is unassigned")
    kept = [(mu, c) for mu, c in omega if all(v == Y or v in zvars for l in c for v in literal_vars(l))]
    a = dict(alpha)
    total = 0
    for v in Z:
        a[Y] = v
        for mu, c in kept:
            if clause_holds(G, c, a):
                total += mu
    return total


def fulfilling_distribution_sides(G, omega, alpha, xvars, zvars, W, cover):
    """Both sides of the cover-system split of Omega[W, u w].

    alpha assigns xvars into P and zvars into W, with N[w] inside P + W and P, W
    disjoint. Every literal of Omega must contain y. Returns (direct, via cover)
    where the direct side counts over all of W and the cover side counts over W
    for the x-only clauses and corrects inside each cluster.
    """
    xvars, zvars = set(xvars), set(zvars)
    lhs = omega_restrict_weight(G, omega, xvars | zvars, W, alpha)
    rhs = omega_restrict_weight(G, omega, xvars, W, alpha)
    for Z in cover.clusters:
        zin = {z for z in zvars if alpha[z] in Z}
        rhs += omega_restrict_weight(G, omega, xvars | zin, Z, alpha)
        rhs -= omega_restrict_weight(G, omega, xvars, Z, alpha)
    return lhs, rhs


class _WeightTable:
    """Per-vertex clause weight as a function of (adjacent-variable mask, equal-variable mask)."""

    def __init__(self, G, omega, k):
        self.k = k
        reqs = []
        for mu, c in omega:
            adj = eq = 0
            labs = set()
            for lit in c:
                if lit[0] == "E":
                    other = lit[2] if lit[1] == Y else lit[1]
                    adj |= 1 << (other - 1)
                elif lit[0] == "EQ":
                    other = lit[2] if lit[1] == Y else lit[1]
                    eq |= 1 << (other - 1)
                else:
                    labs.add(lit[1])
            if adj & eq:
                continue  # y adjacent to and equal to the same vertex: never true
            reqs.append((mu, adj, eq, frozenset(labs)))
        self.sig = []
        tables = {}
        full = 1 << k
        for v in range(G.n):
            s = frozenset(p for p in range(len(G.labels)) if v in G.labels[p])
            key = frozenset(p for mu, a, e, labs in reqs for p in labs if p in s)
            if key not in tables:
                live = [(mu, a, e) for mu, a, e, labs in reqs if labs <= s]
                tab = [[0] * full for _ in range(full)]
                for A in range(full):
                    for Q in range(full):
                        tab[A][Q] = sum(mu for mu, a, e in live if a & ~A == 0 and e & ~Q == 0)
                tables[key] = tab
            self.sig.append(tables[key])

    def weight(self, v, adj_mask, eq_mask=0):
        return self.sig[v][adj_mask][eq_mask]


# ---------------------------------------------------------------------- DCM

@dataclass
class DCMInstance:
    clusters: list  # frozensets
    labels: list
    weights: dict  # (cluster index, label index) -> int


def solve_dcm(instance):
    """Pairwise disjoint clusters, one per label, maximizing total weight.

    Exact branch and bound over the explicit intersection graph. Returns
    (list of cluster indices per label, weight) or (None, NEG_INF).
    """
    m = len(instance.labels)
    if m == 0:
        return [], 0
    nc = len(instance.clusters)
    clash = [set() for _ in range(nc)]
    for i in range(nc):
        for j in range(i, nc):
            if instance.clusters[i] & instance.clusters[j] or i == j:
                clash[i].add(j)
                clash[j].add(i)
    options = []
    for lab in range(m):
        opts = [(w, i) for (i, l), w in instance.weights.items() if l == lab and w != NEG_INF]
        options.append(sorted(opts, key=lambda t: (-t[0], t[1])))
    return _dcm_search(options, clash)


def _dcm_search(options, clash):
    """Branch and bound: options[l] is [(weight, cluster)] sorted by weight descending,
    clash[i] the clusters meeting cluster i (itself included)."""
    m = len(options)
    if any(not o for o in options):
        return None, NEG_INF
    order = sorted(range(m), key=lambda l: len(options[l]))
    suffix = [0] * (m + 1)
    for pos in range(m - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + options[order[pos]][0][0]
    best = [NEG_INF, None]
    chosen = [None] * m

    def rec(pos, total, blocked):
        if pos == m:
            if total > best[0]:
                best[0], best[1] = total, list(chosen)
            return
        if total + suffix[pos] <= best[0]:
            return
        lab = order[pos]
        for w, i in options[lab]:
            if total + w + suffix[pos + 1] <= best[0]:
                break
            if i in blocked:
                continue
            chosen[lab] = i
            rec(pos + 1, total + w, blocked | clash[i])
        chosen[lab] = None

    rec(0, 0, frozenset())
    return best[1], best[0]


# ---------------------------------------------------------------- partitions

def _partial_partitions(items):
    """All collections of pairwise disjoint nonempty subsets of items (as sorted tuples)."""
    from .formula import set_partitions

    items = list(items)
    out = []
    for r in range(len(items) + 1):
        for sub in itertools.combinations(items, r):
            for p in set_partitions(sub):
                out.append(tuple(sorted(tuple(sorted(b)) for b in p)))
    return out


# ------------------------------------------------------------------ the DP

class _DP:
    def __init__(self, G, tree, omega_xi, xi, k):
        self.G = G
        self.tree = tree
        self.xi = xi
        self.k = k
        self.wt = _WeightTable(G, omega_xi, k)
        self.memo = {}
        self.parts = {}
        self.clashes = {}
        self.nbr = [G.neighbors(v) for v in range(G.n)]
        self.boundary = []
        for B in tree.bags:
            out = set()
            for u in B:
                out |= self.nbr[u]
            self.boundary.append(frozenset(out - B))
        self.labels_of = [frozenset(p for p in range(len(G.labels)) if v in G.labels[p]) for v in range(G.n)]
        self.calls = 0

    # xi helpers (variables are 0-based here)
    def _xi_ok_at(self, v, Jv, alpha):
        xi = self.xi
        for i in Jv:
            for p in xi.label_ids:
                if (p in self.labels_of[v]) != xi.has_label(i + 1, p):
                    return False
            for j in Jv:
                if j > i and not xi.same(i + 1, j + 1):
                    return False
            for j, a in enumerate(alpha):
                if a is None or j in Jv:
                    continue
                if xi.same(i + 1, j + 1):
                    return False
                adjacent = a != FAR and a in self.nbr[v]
                if adjacent != xi.adjacent(i + 1, j + 1):
                    return False
        return True

    def _apart_ok(self, parts):
        xi = self.xi
        for P, Q in itertools.combinations(parts, 2):
            for i in P:
                for j in Q:
                    if xi.same(i + 1, j + 1) or xi.adjacent(i + 1, j + 1):
                        return False
        return True

    def _adj_mask(self, y, alpha):
        m = 0
        nb = self.nbr[y]
        for j, a in enumerate(alpha):
            if a is not None and a != FAR and a in nb:
                m |= 1 << j
        return m

    def _base(self, verts, alpha):
        wt = self.wt
        return sum(wt.weight(y, self._adj_mask(y, alpha)) for y in verts)

    def solve(self, b, ctx, alpha):
        key = (b, ctx, alpha)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        tree, k = self.tree, self.k
        B = tree.bags[b]
        v = tree.bag_vertex[b]
        W = B - {v}
        placeable_v = self.nbr[v] - B <= ctx
        unassigned = [i for i in range(k) if alpha[i] is None]
        table = {}
        ctx_v = ctx | {v}
        for r in range(len(unassigned) + 1):
            for Jv in itertools.combinations(unassigned, r):
                if Jv and not placeable_v:
                    continue
                if not self._xi_ok_at(v, Jv, alpha):
                    continue
                alpha2 = tuple(v if i in Jv else a for i, a in enumerate(alpha))
                rem = [i for i in unassigned if i not in Jv]
                self._combine(b, v, W, ctx, ctx_v, Jv, alpha2, rem, table)
        self.memo[key] = table
        return table

    def _combine(self, b, v, W, ctx, ctx_v, Jv, alpha2, rem, table):
        tree, k = self.tree, self.k
        base_w = self._base(W, alpha2)
        # candidate child entries grouped by the set of variables they place
        cands = {}
        child_calls = []
        if rem:
            for c in tree.bag_children[b]:
                cctx = ctx_v & self.boundary[c]
                calpha = tuple(
                    None if a is None else (a if a != FAR and a in cctx else FAR) for a in alpha2
                )
                child_calls.append((c, cctx, calpha))
            for idx, (c, cctx, calpha) in enumerate(child_calls):
                sub = self.solve(c, cctx, calpha)
                if len(sub) <= 1:
                    continue
                base_c = self._base(self.tree.bags[c], alpha2)
                for skey, (val, _) in sub.items():
                    J = tuple(i for i in range(k) if skey[i] is not None)
                    if not J:
                        continue
                    prof = tuple(skey[i] for i in J)
                    cands.setdefault(J, {}).setdefault(prof, []).append((idx, val - base_c))
        nbr_v = self.nbr[v]
        jv_prof = frozenset(nbr_v & ctx)
        adj_fixed = self._adj_mask(v, alpha2)
        eq_mask = 0
        for i in Jv:
            eq_mask |= 1 << i
        for parts in self._parts_for(tuple(rem)):
            if any(J not in cands for J in parts):
                continue
            if not self._apart_ok(parts):
                continue
            prof_lists = [sorted(cands[J].items(), key=lambda t: _prof_sort(t[0])) for J in parts]
            for combo in itertools.product(*prof_lists):
                if len(parts) == 1:
                    idx, gain = max(combo[0][1], key=lambda t: (t[1], -t[0]))
                    picks, total = [idx], gain
                else:
                    options = [sorted(((g, idx) for idx, g in lst), key=lambda t: (-t[0], t[1]))
                               for _, lst in combo]
                    picks, total = _dcm_search(options, self._clash(b))
                    if picks is None:
                        continue
                # profile over ctx + v, then forget v
                adj = adj_fixed
                newkey = [None] * k
                for J, (prof, _) in zip(parts, combo):
                    for i, S in zip(J, prof):
                        if v in S:
                            adj |= 1 << i
                        newkey[i] = S - {v}
                for i in Jv:
                    newkey[i] = jv_prof
                value = base_w + total + self.wt.weight(v, adj, eq_mask)
                newkey = tuple(newkey)
                old = table.get(newkey)
                if old is None or value > old[0]:
                    choice = (Jv, tuple(
                        (child_calls[idx], tuple(
                            prof[J.index(i)] if i in J else None for i in range(k)
                        ))
                        for J, (prof, _), idx in zip(parts, combo, picks)
                    ))
                    table[newkey] = (value, choice)
        # no variable placed below v
        newkey = tuple(jv_prof if i in Jv else None for i in range(k))
        value = base_w + self.wt.weight(v, adj_fixed, eq_mask)
        old = table.get(newkey)
        if old is None or value > old[0]:
            table[newkey] = (value, (Jv, ()))

    def _clash(self, b):
        """Child positions of bag b whose bags intersect, per child position."""
        hit = self.clashes.get(b)
        if hit is None:
            bags = [self.tree.bags[c] for c in self.tree.bag_children[b]]
            hit = [frozenset(j for j, D in enumerate(bags) if C & D) for C in bags]
            self.clashes[b] = hit
        return hit

    def _parts_for(self, rem):
        if rem not in self.parts:
            self.parts[rem] = [p for p in _partial_partitions(rem) if p]
        return self.parts[rem]

    def run(self):
        tree = self.tree
        if tree.empty:
            return NEG_INF, None
        alpha = (None,) * self.k
        table = self.solve(tree.root, frozenset(), alpha)
        goal = (frozenset(),) * self.k
        if goal not in table:
            return NEG_INF, None
        value = table[goal][0]
        assign = {}
        self._replay(tree.root, frozenset(), alpha, goal, assign)
        return value, tuple(assign[i] for i in range(self.k))

    def _replay(self, b, ctx, alpha, key, assign):
        value, (Jv, kids) = self.memo[(b, ctx, alpha)][key]
        v = self.tree.bag_vertex[b]
        for i in Jv:
            assign[i] = v
        for (c, cctx, calpha), ckey in kids:
            self._replay(c, cctx, calpha, ckey, assign)


def _prof_sort(prof):
    return tuple(tuple(sorted(s)) for s in prof)


# ------------------------------------------------------------------ pipeline

def omega_for_xi(omega, xi):
    """(mu, y-part) for every clause whose x-only part is implied by xi, merged by y-part."""
    acc = {}
    for mu, c in omega:
        wy, psi = split_clause(c)
        if all(xi.entails(l) for l in psi):
            acc[wy] = acc.get(wy, 0) + mu
    return sorted(((mu, c) for c, mu in acc.items() if mu), key=lambda t: t[1])


def run_dp(G, tree, omega_xi, xi):
    """max over tuples satisfying xi of sum mu * #y w(y, tuple); returns (value, witness)."""
    dp = _DP(G, tree, omega_xi, xi, xi.k)
    return dp.run()


def tree_radii(k, r):
    return sorted({2 * r, *cover_radius_ladder(k)})


def maximize_exact(G, sentence, rounds=None, r=None, ordering=None, cap_k=K_CAP):
    """Exact optimum of #y phi(y, x) with a witness; decision is optimum > N."""
    k = sentence.k
    if k > cap_k:
        raise InputError(f"k={k} exceeds the exact-engine cap {cap_k}")
    r = 2 ** k if r is None else r
    radii = tree_radii(k, r)
    omega = to_positive_clauses(sentence.matrix)
    pi = ordering if ordering is not None else heuristic_ordering(G, max(radii))
    if rounds is None:
        rounds = wcol_of_ordering(G, pi, max(radii)) + 1
    tree = build_decomposition_tree(G, pi, r, rounds, radii=radii)
    best, arg = NEG_INF, None
    for xi in complete_x_clauses(k, labels_used(sentence.matrix), cap=cap_k):
        om = omega_for_xi(omega, xi)
        val, wit = run_dp(G, tree, om, xi)
        if wit is not None and (val > best or (val == best and wit < arg)):
            best, arg = val, wit
    return EvalResult(
        best,
        arg,
        "exact",
        0,
        decide(best, sentence.threshold) if arg is not None else "no",
        {"tree": tree.stats(), "clauses": len(omega), "ordering": list(pi.perm)},
    )
