"""Approximate maximization of #y phi(y, x) with an additive, per-instance error bound.

Pipeline: functional representation of the graph along an ordering, adjacency
atoms rewritten into function literals, clauses of the form y = g(x) dropped
(the only source of error), remaining clauses reduced to one mixed literal
g(y) = x_i, per-vertex weights scattered, and finally one weighted
maximization per complete type of the tuple on low treedepth pieces.

Terms are (var, fns) with fns the symbols applied innermost first; a symbol is
('f', i) or ('h', i), 1-based. Literals are ('EQ', t1, t2, positive) and
('P', label, t, positive).
"""
import itertools
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import InputError, SizeError
from .formula import Y, evaluate_matrix, set_partitions, to_positive_clauses
from .graph import LabeledGraph, wreach
from .sparsity import heuristic_ordering, treedepth_coloring, wcol_of_ordering

NEG_INF = float("-inf")
K_CAP = 2
CLAUSE_CAP = 200000


# ------------------------------------------------------- functional structures

@dataclass(frozen=True)
class FunctionalStructure:
    n: int
    f: tuple
    h: tuple
    labels: tuple
    multiplicity: int
    perm: tuple

    def symbols(self):
        return [("f", i + 1) for i in range(len(self.f))] + [("h", i + 1) for i in range(len(self.h))]

    def apply(self, sym, u):
        return (self.f if sym[0] == "f" else self.h)[sym[1] - 1][u]

    def live_symbols(self, kind):
        table = self.f if kind == "f" else self.h
        return [(kind, i + 1) for i, g in enumerate(table) if any(g[u] != u for u in range(self.n))]

    def arcs(self):
        """(g, u, g(u)) for every non-fixed point."""
        out = []
        for sym in self.symbols():
            for u in range(self.n):
                w = self.apply(sym, u)
                if w != u:
                    out.append((sym, u, w))
        return out

    def underlying_graph(self):
        return LabeledGraph(self.n, {(min(u, w), max(u, w)) for _, u, w in self.arcs()}, self.labels)

    def pair_symbols(self):
        """(u, w) -> frozenset of (g, d): d=0 means g(u) = w, d=1 means g(w) = u."""
        acc = defaultdict(set)
        for sym, u, w in self.arcs():
            acc[(u, w)].add((sym, 0))
            acc[(w, u)].add((sym, 1))
        return {p: frozenset(s) for p, s in acc.items()}

    def measured_multiplicity(self):
        return max((len(s) for s in self.pair_symbols().values()), default=0)


def _enumeration(G, pi, r):
    pos = pi.pos
    return [sorted(wreach(G, pi, u, r) - {u}, key=lambda v: pos[v]) for u in range(G.n)]


def _tables(G, reach, width):
    return tuple(tuple(reach[u][i] if i < len(reach[u]) else u for u in range(G.n)) for i in range(width))


def functional_representation(G, pi):
    """f_i(u) = i-th weakly 1-reachable vertex from u other than u; f_i(u) = u past the end."""
    reach = _enumeration(G, pi, 1)
    t = wcol_of_ordering(G, pi, 1) if G.n else 0
    F = FunctionalStructure(G.n, _tables(G, reach, t), (), tuple(G.labels), 1, tuple(pi.perm))
    rebuilt = {(min(u, w), max(u, w)) for _, u, w in F.arcs()}
    assert rebuilt == set(G.edges()), "edge set not recoverable from f"
    return F


def augmentation(G, pi):
    """Adds h_i(u) = i-th weakly 2-reachable vertex from u other than u."""
    F = functional_representation(G, pi)
    reach = _enumeration(G, pi, 2)
    s = wcol_of_ordering(G, pi, 2) if G.n else 0
    F2 = FunctionalStructure(G.n, F.f, _tables(G, reach, s), F.labels, 2, F.perm)
    assert F2.measured_multiplicity() <= 2
    return F2


# ------------------------------------------------------------ term semantics

def term_value(F, term, env):
    v = env[term[0]]
    for g in term[1]:
        v = F.apply(g, v)
    return v


def literal_holds(F, lit, env):
    if lit[0] == "EQ":
        ok = term_value(F, lit[1], env) == term_value(F, lit[2], env)
        return ok == lit[3]
    ok = term_value(F, lit[2], env) in F.labels[lit[1]] if lit[1] < len(F.labels) else False
    return ok == lit[3]


def functional_count(F, lits, xs):
    """#y with every literal true; xs maps 1..k to vertices."""
    env = dict(enumerate(xs, start=1))
    total = 0
    for y in range(F.n):
        env[Y] = y
        if all(literal_holds(F, l, env) for l in lits):
            total += 1
    return total


def _T(var, *fns):
    return (var, tuple(fns))


def _eq(a, b, pos=True):
    a, b = sorted((a, b))
    return ("EQ", a, b, pos)


def _neg(lit):
    return lit[:-1] + (not lit[-1],)


def _lit_vars(lit):
    if lit[0] == "EQ":
        return {lit[1][0], lit[2][0]}
    return {lit[2][0]}


def _is_mixed(lit):
    vs = _lit_vars(lit)
    return Y in vs and len(vs) > 1


def _consistent(lits):
    return not any(_neg(l) in lits for l in lits)


def _trivial(lit):
    """True/False if the literal is decided syntactically, else None."""
    if lit[0] == "EQ" and lit[1] == lit[2]:
        return lit[3]
    return None


def _substitute(lit, var):
    """Replace y by var everywhere in lit."""
    if lit[0] == "EQ":
        a = (var if lit[1][0] == Y else lit[1][0], lit[1][1])
        b = (var if lit[2][0] == Y else lit[2][0], lit[2][1])
        return _eq(a, b, lit[3])
    return ("P", lit[1], (var, lit[2][1]), lit[3])


def _normalize(lits):
    """Drop syntactically true literals; None if some literal is false or two clash."""
    out = set()
    for l in lits:
        t = _trivial(l)
        if t is True:
            continue
        if t is False:
            return None
        out.add(l)
    if not _consistent(out):
        return None
    return frozenset(out)


def _pin_substitution(lits):
    """With a positive y = x_p present, move every other mixed literal to x-only form."""
    pins = sorted(l[2][0] for l in lits if l[0] == "EQ" and l[3] and l[1] == _T(Y) and not l[2][1] and l[2][0] != Y)
    if not pins:
        return lits
    p = pins[0]
    keep = _eq(_T(Y), _T(p))
    out = [keep]
    for l in lits:
        if l == keep:
            continue
        out.append(_substitute(l, p) if _is_mixed(l) else l)
    return _normalize(out)


def _is_upsilon(lits):
    for l in lits:
        if l[0] != "EQ":
            continue
        for a, b in ((l[1], l[2]), (l[2], l[1])):
            if a == _T(Y) and b[0] != Y and b[1]:
                return True
    return False


@dataclass(frozen=True)
class DecomposedClause:
    mu: int
    tau: frozenset
    psi: frozenset
    mixed: object  # None, or (symbol or None, var index)

    def literals(self):
        out = set(self.tau) | set(self.psi)
        if self.mixed is not None:
            g, i = self.mixed
            out.add(_eq(_T(Y, g) if g else _T(Y), _T(i)))
        return frozenset(out)


@dataclass
class ClausePipeline:
    clauses: list
    delta: int
    delta_plus: int
    delta_minus: int
    dropped: list
    positive: list
    delta_loose: int = 0
    stats: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.clauses, self.delta))


def expand_adjacency(F, clause, live_f):
    """Rewrite each E(a, b) as a mutually exclusive choice of f_i(a) = b with f_i(a) != a or
    f_i(b) = a with f_i(b) != b; returns a list of literal sets."""
    base, choices = [], []
    for lit in clause:
        if lit[0] == "EQ":
            base.append(_eq(_T(lit[1]), _T(lit[2])))
        elif lit[0] == "P":
            base.append(("P", lit[1], _T(lit[2]), True))
        else:
            a, b = lit[1], lit[2]
            if a == b:
                return []
            opts = []
            for g in live_f:
                opts.append((_eq(_T(a, g), _T(b)), _eq(_T(a, g), _T(a), False)))
                opts.append((_eq(_T(b, g), _T(a)), _eq(_T(b, g), _T(b), False)))
            choices.append(opts)
    out = []
    for combo in itertools.product(*choices):
        lits = _normalize(base + [l for pair in combo for l in pair])
        if lits is not None:
            out.append(lits)
    return out


def remove_equalities(F, lits, live_h):
    """Split a clause whose mixed literals are all f(y) = x into clauses with one mixed literal each.

    The counts in F add up exactly (the split is mutually exclusive).
    """
    done, work = [], [lits]
    while work:
        c = work.pop()
        mixed = sorted(
            (l[1][1][0][1], l[2][0], l) for l in c if _is_mixed(l)
        ) if all(_f_mixed(l) for l in c if _is_mixed(l)) else None
        if mixed is None:
            done.append(c)  # identity pin: already a single mixed literal
            continue
        if len(mixed) <= 1:
            done.append(c)
            continue
        (i, p, lp), (j, q, lq) = mixed[0], mixed[1]
        fi, fj = ("f", i), ("f", j)
        if i == j:
            nxt = _normalize([l for l in c if l != lq] + [_eq(_T(p), _T(q))])
            if nxt is not None:
                work.append(nxt)
            continue
        rest = [l for l in c if l not in (lp, lq)]
        a = _normalize(rest + [_eq(_T(Y), _T(p)), _eq(_T(p), _T(q)),
                               _eq(_T(Y, fi), _T(Y)), _eq(_T(Y, fj), _T(Y))])
        if a is not None:
            a = _pin_substitution(a)
            if a is not None:
                done.append(a)
        if p == q:
            continue
        for hk in live_h:
            b = _normalize(rest + [lq, _eq(_T(p), _T(q), False), _eq(_T(q, hk), _T(p)),
                                   _eq(_T(Y, fi), _T(Y, fj, hk))])
            if b is not None:
                work.append(b)
    return done


def _f_mixed(l):
    """Mixed literal of the form f(y) = x."""
    return l[0] == "EQ" and l[3] and l[1][0] == Y and len(l[1][1]) == 1 and l[2][0] != Y and not l[2][1]


def _decompose(mu, lits):
    tau, psi, mixed = set(), set(), None
    for l in lits:
        vs = _lit_vars(l)
        if vs == {Y}:
            tau.add(l)
        elif Y not in vs:
            psi.add(l)
        else:
            if mixed is not None or not l[3]:
                raise AssertionError(f"not a single positive mixed literal: {sorted(lits)}")
            ty, tx = (l[1], l[2]) if l[1][0] == Y else (l[2], l[1])
            if tx[1]:
                raise AssertionError(f"pinned literal left in a kept clause: {l}")
            mixed = (ty[1][0] if ty[1] else None, tx[0])
    return DecomposedClause(mu, frozenset(tau), frozenset(psi), mixed)


def clause_pipeline(F, matrix, k, cap=CLAUSE_CAP):
    """Weighted clauses with at most one mixed literal g(y) = x_i plus the error certificate.

    For every tuple u: sum mu #y w(y, u) over kept clauses differs from #y phi(y, u)
    by the dropped-clause sum, which lies in [-delta_minus, delta_plus].
    """
    positive = to_positive_clauses(matrix)
    live_f, live_h = F.live_symbols("f"), F.live_symbols("h")
    stage2 = defaultdict(int)
    for mu, c in positive:
        for lits in expand_adjacency(F, c, live_f):
            lits = _pin_substitution(lits)
            if lits is not None:
                stage2[lits] += mu
        if len(stage2) > cap:
            raise SizeError(f"more than {cap} clauses after adjacency expansion")
    dropped, kept = [], defaultdict(int)
    for lits, mu in stage2.items():
        if not mu:
            continue
        if _is_upsilon(lits):
            dropped.append((mu, lits))
            continue
        for piece in remove_equalities(F, lits, live_h):
            kept[piece] += mu
        if len(kept) > cap:
            raise SizeError(f"more than {cap} clauses after equality removal")
    clauses = [_decompose(mu, lits) for lits, mu in sorted(kept.items(), key=lambda t: sorted(t[0])) if mu]
    merged = defaultdict(int)
    for mu, lits in dropped:
        merged[lits] += mu
    dropped = sorted(((mu, lits) for lits, mu in merged.items() if mu), key=lambda t: sorted(t[1]))
    # a dropped clause pins y = g(x_p), so it counts at most one vertex per tuple
    dplus = sum(mu for mu, _ in dropped if mu > 0)
    dminus = sum(-mu for mu, _ in dropped if mu < 0)
    wcol1 = wcol_of_ordering(F.underlying_graph(), _Ordering(F.perm), 1) if F.n else 0
    loose = len(dropped) * max((abs(mu) for mu, _ in dropped), default=0) * wcol1
    return ClausePipeline(
        clauses, dplus + dminus, dplus, dminus, dropped, positive, loose,
        {"positive": len(positive), "expanded": len(stage2), "kept": len(clauses), "dropped": len(dropped)},
    )


def _Ordering(perm):
    from .graph import VertexOrdering

    return VertexOrdering(tuple(perm))


# ------------------------------------------------------------ complete types

def _unary_atoms_of(clauses):
    atoms = set()
    for c in clauses:
        for l in c.psi:
            if l[0] == "P":
                atoms.add(("lab", l[1]))
            else:
                for t in (l[1], l[2]):
                    for g in t[1]:
                        atoms.add(("fix", g))
    return tuple(sorted(atoms))


def _unary_of(F, atoms, v):
    out = []
    for a in atoms:
        if a[0] == "lab":
            if a[1] < len(F.labels) and v in F.labels[a[1]]:
                out.append(a)
        elif F.apply(a[1], v) == v:
            out.append(a)
    return frozenset(out)


@dataclass(frozen=True)
class CompleteType:
    """Complete clause over x_1..x_k: equality classes, unary atoms per class, arcs per class pair."""

    classes: tuple  # var index - 1 -> class id
    unary: tuple  # per class
    rel: tuple  # ((c1, c2), frozenset of (g, d)) for c1 < c2

    @property
    def m(self):
        return len(self.unary)

    def relation(self, c1, c2):
        return dict(self.rel)[(c1, c2)]

    def entails(self, lit):
        if lit[0] == "P":
            c = self.classes[lit[2][0] - 1]
            return (("lab", lit[1]) in self.unary[c]) == lit[3]
        (va, fa), (vb, fb) = lit[1], lit[2]
        if fa and fb:
            raise InputError(f"unsupported literal {lit}")
        if fa:  # g(x_a) = x_b
            src, g, dst = va, fa[0], vb
        elif fb:
            src, g, dst = vb, fb[0], va
        else:
            return (self.classes[va - 1] == self.classes[vb - 1]) == lit[3]
        cs, cd = self.classes[src - 1], self.classes[dst - 1]
        if cs == cd:
            ok = ("fix", g) in self.unary[cs]
        elif cs < cd:
            ok = (g, 0) in self.relation(cs, cd)
        else:
            ok = (g, 1) in self.relation(cd, cs)
        return ok == lit[3]


def type_of(F, atoms, xs, pairs=None):
    pairs = F.pair_symbols() if pairs is None else pairs
    reps, classes = [], []
    for u in xs:
        if u not in reps:
            reps.append(u)
        classes.append(reps.index(u))
    unary = tuple(_unary_of(F, atoms, u) for u in reps)
    rel = tuple(
        ((a, b), pairs.get((reps[a], reps[b]), frozenset()))
        for a, b in itertools.combinations(range(len(reps)), 2)
    )
    return CompleteType(tuple(classes), unary, rel)


def _restricted_growth(k):
    for p in set_partitions(list(range(k))):
        cls = [None] * k
        for idx, block in enumerate(sorted(p, key=min)):
            for v in block:
                cls[v] = idx
        yield tuple(cls)


def enumerate_types(F, k, atoms, pairs=None):
    """Candidate complete types: unary parts and pairwise parts that occur in F."""
    pairs = F.pair_symbols() if pairs is None else pairs
    unary = [_unary_of(F, atoms, v) for v in range(F.n)]
    U = sorted(set(unary), key=sorted)
    pair_types = defaultdict(set)
    for (u, w), s in pairs.items():
        pair_types[(unary[u], unary[w])].add(s)
    for a in U:
        for b in U:
            pair_types[(a, b)].add(frozenset())
    seen = set()
    for classes in _restricted_growth(k):
        m = max(classes) + 1
        for un in itertools.product(U, repeat=m):
            pair_list = list(itertools.combinations(range(m), 2))
            options = [sorted(pair_types[(un[a], un[b])], key=sorted) for a, b in pair_list]
            for rels in itertools.product(*options):
                t = CompleteType(classes, un, tuple(zip(pair_list, rels)))
                if t not in seen:
                    seen.add(t)
                    yield t


# ---------------------------------------------------------------- weights

@dataclass
class WeightModel:
    """Per distinct x-part: constant term and one weight vector per variable."""

    k: int
    n: int
    groups: list  # (psi, const, {var: list of ints})
    atoms: tuple

    def weights(self, omega):
        const = 0
        vec = [[0] * self.n for _ in range(self.k)]
        for psi, c0, per_var in self.groups:
            if all(omega.entails(l) for l in psi):
                const += c0
                for i, w in per_var.items():
                    row = vec[i - 1]
                    for v in range(self.n):
                        row[v] += w[v]
        return const, vec


def extract_weights(F, clauses, k):
    """Scatter each clause: c(g(y)) += mu for every y with tau(y); grouped by the x-part."""
    acc = {}
    for c in clauses:
        entry = acc.setdefault(c.psi, [0, {}])
        env = {}
        sat = []
        for y in range(F.n):
            env[Y] = y
            if all(literal_holds(F, l, env) for l in c.tau):
                sat.append(y)
        if c.mixed is None:
            entry[0] += c.mu * len(sat)
            continue
        g, i = c.mixed
        row = entry[1].setdefault(i, [0] * F.n)
        for y in sat:
            row[F.apply(g, y) if g else y] += c.mu
    groups = [(psi, c0, per) for psi, (c0, per) in sorted(acc.items(), key=lambda t: sorted(t[0]))]
    return WeightModel(k, F.n, groups, _unary_atoms_of(clauses))


# -------------------------------------------------------- restricted signature

@dataclass(frozen=True)
class RestrictedStructure:
    n: int
    unary: tuple
    pairs: dict  # (u, w) -> (frozenset over sigma_plus, E_minus flag)
    sigma_plus: frozenset


@dataclass(frozen=True)
class RestrictedClause:
    classes: tuple
    unary: tuple
    rel: tuple  # ((c1, c2), frozenset over sigma_plus); E_minus false everywhere

    def relation(self, c1, c2):
        return dict(self.rel)[(c1, c2)]


def restrict_signature(F, omega, k, atoms, pairs=None):
    """Keep the symbols omega uses positively and merge all others into one relation E-."""
    pairs = F.pair_symbols() if pairs is None else pairs
    if any(len(s) > 2 for s in pairs.values()):
        raise InputError("structure has multiplicity above 2")
    for _, s in omega.rel:
        if len(s) > 2:
            raise InputError("clause has multiplicity above 2")
    plus = frozenset(g for _, s in omega.rel for g, _ in s)
    if len(plus) > 2 * k * k:
        raise AssertionError("positive signature too large")
    restricted = {}
    for p, s in pairs.items():
        keep = frozenset(x for x in s if x[0] in plus)
        restricted[p] = (keep, len(keep) < len(s))
    unary = tuple(_unary_of(F, atoms, v) for v in range(F.n))
    H = RestrictedStructure(F.n, unary, restricted, plus)
    return H, RestrictedClause(omega.classes, omega.unary, omega.rel)


# ------------------------------------------------- elimination-forest search

def elimination_forest(vertices, adj, colors):
    """Root each component at a vertex whose color is unique there; recurse."""
    children = defaultdict(list)
    roots = []

    def comps(vs):
        vs = set(vs)
        out = []
        while vs:
            s = min(vs)
            stack, comp = [s], {s}
            vs.discard(s)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w in vs:
                        vs.discard(w)
                        comp.add(w)
                        stack.append(w)
            out.append(comp)
        return out

    def build(comp, parent):
        count = defaultdict(int)
        for v in comp:
            count[colors[v]] += 1
        uniq = sorted(v for v in comp if count[colors[v]] == 1)
        root = uniq[0] if uniq else min(comp)
        (children[parent] if parent is not None else roots).append(root)
        for c in comps(comp - {root}):
            build(c, root)

    for c in comps(vertices):
        build(c, None)
    return roots, children


def maximize_weighted_clause(H, omega, weights, coloring, adj, k):
    """max sum_i c_i(u_i) over tuples of complete type omega, searched per selection of
    color classes by DP over an elimination forest. Returns (tuple, value)."""
    m = len(omega.unary)
    cw = [[0] * H.n for _ in range(m)]
    for i, c in enumerate(omega.classes):
        for v in range(H.n):
            cw[c][v] += weights[i][v]
    rel = dict(omega.rel)
    apart = {(a, b): not s for (a, b), s in rel.items()}
    colors = coloring.colors
    palette = sorted(set(colors))
    best = [NEG_INF, None]
    fits = [[v for v in range(H.n) if H.unary[v] == omega.unary[c]] for c in range(m)]
    if any(not f for f in fits):
        return None, NEG_INF

    def pair_ok(c1, v1, c2, v2):
        if c1 > c2:
            c1, v1, c2, v2 = c2, v2, c1, v1
        got = H.pairs.get((v1, v2), (frozenset(), False))
        return not got[1] and got[0] == rel[(c1, c2)]

    seen_sets = set()
    for sel in itertools.combinations(palette, min(m, len(palette))):
        chosen = set(sel)
        verts = frozenset(v for v in range(H.n) if colors[v] in chosen)
        if verts in seen_sets:
            continue
        seen_sets.add(verts)
        ub = sum(max(cw[c][v] for v in fits[c] if v in verts) if any(v in verts for v in fits[c]) else NEG_INF
                 for c in range(m))
        if ub <= best[0]:
            continue
        roots, children = elimination_forest(verts, adj, colors)
        size = {}

        def subtree(t):
            if t not in size:
                size[t] = 1 + sum(subtree(c) for c in children[t])
            return size[t]

        memo = {}

        def solve(t, anc, J):
            key = (t, anc, J)
            if key in memo:
                return memo[key]
            res = (NEG_INF, None)
            if subtree(t) >= len(J):
                opts = [None] + [c for c in sorted(J) if H.unary[t] == omega.unary[c]
                                 and all(pair_ok(c, t, c2, w) for c2, w in anc)]
                for c in opts:
                    here = cw[c][t] if c is not None else 0
                    rest = J - {c} if c is not None else J
                    anc2 = anc + ((c, t),) if c is not None else anc
                    if not rest:
                        cand = (here, {c: t} if c is not None else {})
                    else:
                        val, place = distribute(children[t], anc2, rest)
                        if place is None:
                            continue
                        cand = (here + val, {**place, **({c: t} if c is not None else {})})
                    if cand[0] > res[0]:
                        res = cand
            memo[key] = res
            return res

        def distribute(kids, anc, J):
            out = (NEG_INF, None)
            for part in set_partitions(sorted(J)):
                groups = [frozenset(b) for b in part]
                if any(not apart[tuple(sorted((a, b)))] for g1, g2 in itertools.combinations(groups, 2)
                       for a in g1 for b in g2):
                    continue
                # f[mask] over children, each child takes at most one group
                full = (1 << len(groups)) - 1
                table = {0: (0, {})}
                for ch in kids:
                    nxt = dict(table)
                    for mask, (val, place) in table.items():
                        for gi, g in enumerate(groups):
                            if mask >> gi & 1:
                                continue
                            sv, sp = solve(ch, anc, g)
                            if sp is None:
                                continue
                            nm = mask | 1 << gi
                            cand = val + sv
                            if nm not in nxt or cand > nxt[nm][0]:
                                nxt[nm] = (cand, {**place, **sp})
                    table = nxt
                if full in table and table[full][0] > out[0]:
                    out = table[full]
            return out

        val, place = distribute(roots, (), frozenset(range(m)))
        if place is not None and val > best[0]:
            best = [val, tuple(place[c] for c in omega.classes)]
    return best[1], best[0]


# ------------------------------------------------------------------- driver

def maximize_approx(G, sentence, ordering=None, cap_k=K_CAP):
    """Approximate optimum A* with witness; |optimum - A*| <= delta."""
    from .exact import EvalResult

    k = sentence.k
    if k > cap_k:
        raise InputError(f"k={k} exceeds the approximation cap {cap_k}")
    if G.n == 0:
        return EvalResult(NEG_INF, None, "approx", 0, "no", {})
    pi = ordering if ordering is not None else heuristic_ordering(G, 2)
    F = augmentation(G, pi)
    pipe = clause_pipeline(F, sentence.matrix, k)
    model = extract_weights(F, pipe.clauses, k)
    pairs = F.pair_symbols()
    under = F.underlying_graph()
    adj = [under.neighbors(v) for v in range(F.n)]
    coloring = treedepth_coloring(under, pi, k)
    unary = [_unary_of(F, model.atoms, v) for v in range(F.n)]
    scored = []
    for omega in enumerate_types(F, k, model.atoms, pairs):
        const, vec = model.weights(omega)
        ub = const
        for c in range(omega.m):
            vals = [sum(vec[i][v] for i, cc in enumerate(omega.classes) if cc == c)
                    for v in range(F.n) if unary[v] == omega.unary[c]]
            if not vals:
                ub = NEG_INF
                break
            ub += max(vals)
        if ub != NEG_INF:
            scored.append((ub, omega, const, vec))
    scored.sort(key=lambda t: -t[0])
    best, arg, searched = NEG_INF, None, 0
    for ub, omega, const, vec in scored:
        if ub <= best:
            break
        H, omega_r = restrict_signature(F, omega, k, model.atoms, pairs)
        tup, val = maximize_weighted_clause(H, omega_r, vec, coloring, adj, k)
        searched += 1
        if tup is not None and const + val > best:
            best, arg = const + val, tup
    exact_at = sum(1 for y in range(G.n) if evaluate_matrix(G, sentence.matrix, {Y: y, **dict(enumerate(arg, 1))}))
    lo = max(exact_at, best - pipe.delta_minus)
    hi = best + pipe.delta_plus
    N = sentence.threshold
    decision = "yes" if lo > N else ("no" if hi <= N else "bottom")
    return EvalResult(
        best, arg, "approx", pipe.delta, decision,
        {
            "count_at_witness": exact_at,
            "lower": lo,
            "upper": hi,
            "delta_plus": pipe.delta_plus,
            "delta_minus": pipe.delta_minus,
            "delta_loose": pipe.delta_loose,
            "clauses": pipe.stats,
            "types": len(scored),
            "types_searched": searched,
            "colors": coloring.num_colors,
            "wcol1": wcol_of_ordering(G, pi, 1),
            "wcol2": wcol_of_ordering(G, pi, 2),
            "ordering": list(pi.perm),
        },
    )
