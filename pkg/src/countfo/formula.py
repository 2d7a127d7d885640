"""Quantifier-free matrices of counting sentences and their normal forms.

Variables are small integers: 0 is the counted variable y, i >= 1 is x_i.
Formulas are nested tuples:

    ("E", a, b)   ("EQ", a, b)   ("P", label, a)
    ("NOT", f)    ("AND", f, g, ...)   ("OR", f, g, ...)
    ("TRUE",)     ("FALSE",)
"""
import itertools
import re
from dataclasses import dataclass

from .errors import InputError, SizeError

Y = 0
TRUE = ("TRUE",)
FALSE = ("FALSE",)


class FormulaSyntaxError(InputError):
    """Parse failure; carries a 1-based line and column."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class CountingSentence:
    k: int
    matrix: tuple
    threshold: int
    names: tuple = ()

    def __post_init__(self):
        if self.k < 1:
            raise InputError("a counting sentence needs at least one existential variable")
        bad = [v for v in variables(self.matrix) if not 0 <= v <= self.k]
        if bad:
            raise InputError(f"matrix mentions undeclared variable index {bad[0]}")

    def __str__(self):
        xs = " ".join(var_name(i) for i in range(1, self.k + 1))
        return f"exists {xs} . count y . {to_text(self.matrix)} > {self.threshold}"


def var_name(v):
    return "y" if v == Y else f"x{v}"


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[().,|&!=>])"
)


def _tokenize(text):
    line, col, i = 1, 1, 0
    out = []
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                out.append((kind, tok, line, col))
            col += len(tok)
        i = m.end()
    out.append(("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = {}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(msg, tok[2], tok[3])

    def expect(self, value, what=None):
        t = self.peek()
        if t[1] != value:
            self.fail(f"expected {what or repr(value)}, found {t[1]!r}" if t[1] else f"expected {what or repr(value)}, found end of input")
        return self.take()

    def sentence(self):
        self.expect("exists")
        names = []
        while self.peek()[0] == "ident" and self.peek()[1] not in ("count",):
            t = self.take()
            if t[1] in names:
                self.fail(f"variable {t[1]!r} declared twice", t)
            names.append(t[1])
        if not names:
            self.fail("expected at least one variable after 'exists'")
        self.expect(".")
        self.expect("count")
        t = self.peek()
        if t[0] != "ident":
            self.fail("expected the counted variable after 'count'")
        self.take()
        if t[1] in names:
            self.fail(f"counted variable {t[1]!r} is also existential", t)
        self.vars = {t[1]: Y}
        for i, nm in enumerate(names, 1):
            self.vars[nm] = i
        self.expect(".")
        f = self.formula()
        self.expect(">", "'>' before the threshold")
        t = self.peek()
        if t[0] != "int":
            self.fail("threshold must be an integer")
        self.take()
        if self.peek()[0] != "eof":
            self.fail(f"trailing input {self.peek()[1]!r}")
        return CountingSentence(len(names), f, int(t[1]), tuple(names))

    def formula(self):
        # '|' binds weaker than '&'
        parts = [self.conj()]
        while self.peek()[1] == "|":
            self.take()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else ("OR", *parts)

    def conj(self):
        parts = [self.unary()]
        while self.peek()[1] == "&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else ("AND", *parts)

    def unary(self):
        t = self.peek()
        if t[1] == "!":
            self.take()
            return ("NOT", self.unary())
        if t[1] == "(":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def variable(self):
        t = self.peek()
        if t[0] != "ident":
            self.fail("expected a variable")
        if t[1] not in self.vars:
            self.fail(f"unknown variable {t[1]!r}")
        self.take()
        return self.vars[t[1]]

    def atom(self):
        t = self.peek()
        if t[0] != "ident":
            self.fail(f"expected an atom, found {t[1]!r}" if t[1] else "expected an atom, found end of input")
        name = t[1]
        if name in ("true", "false"):
            self.take()
            return TRUE if name == "true" else FALSE
        if name == "E" and self.toks[self.i + 1][1] == "(":
            self.take()
            self.expect("(")
            a = self.variable()
            self.expect(",")
            b = self.variable()
            self.expect(")")
            return ("E", a, b)
        m = re.fullmatch(r"P(\d+)", name)
        if m and self.toks[self.i + 1][1] == "(":
            self.take()
            self.expect("(")
            a = self.variable()
            self.expect(")")
            return ("P", int(m.group(1)), a)
        a = self.variable()
        self.expect("=", "'=' in an equality atom")
        b = self.variable()
        return ("EQ", a, b)


def parse_sentence(text):
    """Parse `exists x1 .. . count y . formula > N`."""
    return _Parser(text).sentence()


def to_text(f):
    op = f[0]
    if op == "TRUE":
        return "true"
    if op == "FALSE":
        return "false"
    if op == "E":
        return f"E({var_name(f[1])},{var_name(f[2])})"
    if op == "EQ":
        return f"{var_name(f[1])} = {var_name(f[2])}"
    if op == "P":
        return f"P{f[1]}({var_name(f[2])})"
    if op == "NOT":
        inner = to_text(f[1])
        return "!" + (inner if f[1][0] in ("AND", "OR", "E", "P", "NOT") else f"({inner})")
    sep = " & " if op == "AND" else " | "
    return "(" + sep.join(to_text(g) for g in f[1:]) + ")"


# ------------------------------------------------------------ inspection

def variables(f):
    op = f[0]
    if op in ("E", "EQ"):
        return {f[1], f[2]}
    if op == "P":
        return {f[2]}
    if op in ("TRUE", "FALSE"):
        return set()
    out = set()
    for g in f[1:]:
        out |= variables(g)
    return out


def labels_used(f):
    op = f[0]
    if op == "P":
        return {f[1]}
    if op in ("E", "EQ", "TRUE", "FALSE"):
        return set()
    out = set()
    for g in f[1:]:
        out |= labels_used(g)
    return out


def length(f):
    """Symbol count: one per atom or constant plus one per binary or unary connective."""
    op = f[0]
    if op in ("E", "EQ", "P", "TRUE", "FALSE"):
        return 1
    if op == "NOT":
        return 1 + length(f[1])
    return (len(f) - 2) + sum(length(g) for g in f[1:])


# ------------------------------------------------------------- semantics

def _normalize_assignment(assignment):
    out = {}
    for key, v in assignment.items():
        if isinstance(key, str):
            key = Y if key == "y" else int(key[1:])
        out[key] = v
    return out


def evaluate_matrix(G, f, assignment):
    """Truth value of the quantifier-free formula f in G under assignment var -> vertex."""
    a = _normalize_assignment(assignment)
    missing = variables(f) - set(a)
    if missing:
        raise InputError(f"unbound variable {var_name(min(missing))}")
    return _eval(G, f, a)


def _eval(G, f, a):
    op = f[0]
    if op == "E":
        return G.has_edge(a[f[1]], a[f[2]])
    if op == "EQ":
        return a[f[1]] == a[f[2]]
    if op == "P":
        return f[1] < len(G.labels) and a[f[2]] in G.labels[f[1]]
    if op == "NOT":
        return not _eval(G, f[1], a)
    if op == "AND":
        return all(_eval(G, g, a) for g in f[1:])
    if op == "OR":
        return any(_eval(G, g, a) for g in f[1:])
    return op == "TRUE"


# --------------------------------------------------------- positive clauses

def canonical_literal(lit):
    if lit[0] in ("E", "EQ"):
        a, b = sorted(lit[1:])
        return (lit[0], a, b)
    return lit


def literal_vars(lit):
    return {lit[1], lit[2]} if lit[0] in ("E", "EQ") else {lit[2]}


def clause(*lits):
    """Canonical positive clause: sorted tuple of distinct literals."""
    return tuple(sorted({canonical_literal(l) for l in lits}))


def simplify(f):
    """Drop E(a,a) (false on simple graphs) and a=a (true), then fold constants."""
    op = f[0]
    if op == "E":
        return FALSE if f[1] == f[2] else canonical_literal(f)
    if op == "EQ":
        return TRUE if f[1] == f[2] else canonical_literal(f)
    if op in ("P", "TRUE", "FALSE"):
        return f
    if op == "NOT":
        g = simplify(f[1])
        if g == TRUE:
            return FALSE
        if g == FALSE:
            return TRUE
        return ("NOT", g)
    parts = [simplify(g) for g in f[1:]]
    absorbing, neutral = (FALSE, TRUE) if op == "AND" else (TRUE, FALSE)
    if absorbing in parts:
        return absorbing
    parts = [g for g in parts if g != neutral]
    if not parts:
        return neutral
    return parts[0] if len(parts) == 1 else (op, *parts)


def atoms(f):
    op = f[0]
    if op in ("E", "EQ", "P"):
        return {f}
    if op in ("TRUE", "FALSE"):
        return set()
    out = set()
    for g in f[1:]:
        out |= atoms(g)
    return out


def _eval_atoms(f, truth):
    op = f[0]
    if op in ("E", "EQ", "P"):
        return truth[f]
    if op == "NOT":
        return not _eval_atoms(f[1], truth)
    if op == "AND":
        return all(_eval_atoms(g, truth) for g in f[1:])
    if op == "OR":
        return any(_eval_atoms(g, truth) for g in f[1:])
    return op == "TRUE"


def to_positive_clauses(f, cap=None):
    """Weighted positive clauses Omega with #y f = sum of mu * #y omega for every graph and tuple.

    Complete DNF over the atoms of f, then each negative literal l of a disjunct
    is removed by [[w & !l]] = [[w]] - [[w & l]]. Equal clauses merge by summing
    weights; zero weights are dropped. Returns a list of (mu, clause) sorted by clause.
    """
    size = length(f)
    cap = 4 ** size if cap is None else cap
    g = simplify(f)
    universe = sorted(atoms(g))
    acc = {}
    produced = 0
    for bits in itertools.product((False, True), repeat=len(universe)):
        truth = dict(zip(universe, bits))
        if not _eval_atoms(g, truth):
            continue
        pos = [a for a, b in truth.items() if b]
        neg = [a for a, b in truth.items() if not b]
        for r in range(len(neg) + 1):
            for extra in itertools.combinations(neg, r):
                produced += 1
                if produced > cap:
                    raise SizeError(f"clause expansion exceeded cap {cap}")
                c = clause(*pos, *extra)
                acc[c] = acc.get(c, 0) + (-1) ** r
    return sorted(((mu, c) for c, mu in acc.items() if mu != 0), key=lambda t: t[1])


def clause_holds(G, c, a):
    for lit in c:
        if lit[0] == "E":
            if not G.has_edge(a[lit[1]], a[lit[2]]):
                return False
        elif lit[0] == "EQ":
            if a[lit[1]] != a[lit[2]]:
                return False
        elif not (lit[1] < len(G.labels) and a[lit[2]] in G.labels[lit[1]]):
            return False
    return True


def clause_set_count(G, omega, xs):
    """sum over (mu, c) of mu * #{v : c(v, xs)}; xs[i-1] is the value of x_i."""
    a = {i: u for i, u in enumerate(xs, 1)}
    total = 0
    for v in range(G.n):
        a[Y] = v
        for mu, c in omega:
            if clause_holds(G, c, a):
                total += mu
    return total


def split_clause(c):
    """(part mentioning y, x-only part) of a positive clause."""
    with_y = tuple(l for l in c if Y in literal_vars(l))
    rest = tuple(l for l in c if Y not in literal_vars(l))
    return with_y, rest


# ------------------------------------------------------ complete x-clauses

def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


@dataclass(frozen=True)
class XClause:
    """A complete type of x_1..x_k: equality classes, adjacency between classes, labels per class."""

    k: int
    classes: tuple  # tuple of sorted tuples of variable indices
    edges: frozenset  # pairs (a, b) of class indices, a < b
    marks: tuple  # per class, frozenset of label indices
    label_ids: tuple = ()

    def cls(self, i):
        for ci, c in enumerate(self.classes):
            if i in c:
                return ci
        raise KeyError(i)

    def same(self, i, j):
        return self.cls(i) == self.cls(j)

    def adjacent(self, i, j):
        a, b = sorted((self.cls(i), self.cls(j)))
        return (a, b) in self.edges

    def has_label(self, i, p):
        return p in self.marks[self.cls(i)]

    def entails(self, lit):
        """Whether this type implies the positive x-only literal."""
        if lit[0] == "EQ":
            return self.same(lit[1], lit[2])
        if lit[0] == "E":
            return not self.same(lit[1], lit[2]) and self.adjacent(lit[1], lit[2])
        return self.has_label(lit[2], lit[1])

    def holds(self, G, xs):
        for i in range(1, self.k + 1):
            for j in range(i + 1, self.k + 1):
                u, v = xs[i - 1], xs[j - 1]
                if (u == v) != self.same(i, j):
                    return False
                if u != v and G.has_edge(u, v) != self.adjacent(i, j):
                    return False
        for ci, c in enumerate(self.classes):
            u = xs[c[0] - 1]
            for p in self.label_ids:
                inside = p < len(G.labels) and u in G.labels[p]
                if inside != (p in self.marks[ci]):
                    return False
        return True

    def literals(self):
        out = []
        for i in range(1, self.k + 1):
            for j in range(i + 1, self.k + 1):
                if self.same(i, j):
                    out.append(("EQ", i, j))
                else:
                    out.append(("NOT", ("EQ", i, j)))
                    out.append(("E", i, j) if self.adjacent(i, j) else ("NOT", ("E", i, j)))
            for p in self.label_ids:
                out.append(("P", p, i) if self.has_label(i, p) else ("NOT", ("P", p, i)))
        return out


def complete_x_clauses(k, labels=0, cap=4):
    """All complete types of k variables over E, = and the given labels.

    `labels` is a count (label indices 0..labels-1) or an iterable of indices.
    """
    label_ids = tuple(range(labels)) if isinstance(labels, int) else tuple(sorted(set(labels)))
    num_labels = len(label_ids)
    if k > cap:
        raise InputError(f"k={k} exceeds the complete-clause guard {cap}")
    out = []
    for part in set_partitions(range(1, k + 1)):
        classes = tuple(sorted(tuple(sorted(c)) for c in part))
        pairs = list(itertools.combinations(range(len(classes)), 2))
        for ebits in itertools.product((False, True), repeat=len(pairs)):
            edges = frozenset(p for p, b in zip(pairs, ebits) if b)
            for lbits in itertools.product((False, True), repeat=len(classes) * num_labels):
                marks = tuple(
                    frozenset(
                        p for j, p in enumerate(label_ids) if lbits[ci * num_labels + j]
                    )
                    for ci in range(len(classes))
                )
                out.append(XClause(k, classes, edges, marks, label_ids))
    return out
