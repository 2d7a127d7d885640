"""Command line front-end: countfo <subcommand> ...

Graphs are read from the line format in fileio; sentences are given inline or
as a file path, e.g. "exists x1 . count y . E(y, x1) | y = x1 > 4".
"""
import argparse
import json
import os
import sys
import time

from . import generators
from .errors import BudgetExhausted, InputError, OracleScaleError, SizeError
from .fileio import dumps_report, load_graph, make_report, save_graph
from .formula import parse_sentence
from .graph import VertexOrdering


def _sentence(text):
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    return parse_sentence(text)


def _graph(args):
    if not args.graph:
        raise InputError("--graph is required")
    return load_graph(args.graph)


def _wcols(G, perm):
    from .sparsity import wcol_of_ordering

    if not perm:
        return {"wcol1": 0, "wcol2": 0}
    pi = VertexOrdering(tuple(perm))
    return {"wcol1": wcol_of_ordering(G, pi, 1), "wcol2": wcol_of_ordering(G, pi, 2)}


def _emit(args, report, lines):
    if args.json:
        print(dumps_report(report))
    else:
        for line in lines:
            print(line)


def _result_report(args, G, sentence, res, timings):
    return make_report(
        input={"graph": args.graph, "n": G.n, "m": G.m, "sentence": str(sentence)},
        mode=res.mode,
        value=res.value,
        witness=list(res.witness) if res.witness is not None else None,
        delta=res.error_bound,
        decision=res.decision,
        timings=timings,
        sparsity=_wcols(G, res.details.get("ordering")),
        details={k: v for k, v in res.details.items() if k != "ordering"},
    )


def _witness_text(w):
    return "none" if w is None else " ".join(str(v) for v in w)


def cmd_eval_exact(args):
    from .exact import maximize_exact

    G, sentence = _graph(args), _sentence(args.formula)
    t0 = time.perf_counter()
    res = maximize_exact(G, sentence, rounds=args.rounds, cap_k=args.cap_k or 4)
    report = _result_report(args, G, sentence, res, {"total": time.perf_counter() - t0})
    _emit(args, report, [f"value {res.value}", f"witness {_witness_text(res.witness)}",
                         f"decision {res.decision}"])


def cmd_eval_approx(args):
    from .approx import maximize_approx

    G, sentence = _graph(args), _sentence(args.formula)
    t0 = time.perf_counter()
    res = maximize_approx(G, sentence, cap_k=args.cap_k or 2)
    report = _result_report(args, G, sentence, res, {"total": time.perf_counter() - t0})
    lines = [f"value {res.value}", f"witness {_witness_text(res.witness)}",
             f"delta {res.error_bound}", f"decision {res.decision}"]
    if args.epsilon_report:
        d = res.details
        lines += [f"interval [{d.get('lower')}, {d.get('upper')}]",
                  f"delta+ {d.get('delta_plus')} delta- {d.get('delta_minus')} loose {d.get('delta_loose')}",
                  f"wcol1 {d.get('wcol1')} wcol2 {d.get('wcol2')} colors {d.get('colors')}"]
    _emit(args, report, lines)


def cmd_oracle(args):
    from .oracle import oracle_max

    G, sentence = _graph(args), _sentence(args.formula)
    t0 = time.perf_counter()
    value, witness = oracle_max(G, sentence)
    decision = "yes" if value > sentence.threshold else "no"
    report = make_report(
        input={"graph": args.graph, "n": G.n, "m": G.m, "sentence": str(sentence)},
        mode="oracle", value=value, witness=witness, delta=0, decision=decision,
        timings={"total": time.perf_counter() - t0},
    )
    _emit(args, report, [f"value {value}", f"witness {_witness_text(witness)}", f"decision {decision}"])


def cmd_wcol(args):
    from .sparsity import col_of_ordering, exact_min_wcol, heuristic_ordering, wcol_of_ordering

    G = _graph(args)
    pi = heuristic_ordering(G, args.r)
    rows = [{"r": i, "wcol": wcol_of_ordering(G, pi, i), "col": col_of_ordering(G, pi, i)}
            for i in range(1, args.r + 1)]
    out = {"ordering": list(pi.perm), "rows": rows}
    lines = [f"r={row['r']} wcol {row['wcol']} col {row['col']}" for row in rows]
    if args.exact:
        _, best = exact_min_wcol(G, args.r)
        out["exact_min_wcol"] = best
        lines.append(f"exact min wcol_{args.r} {best}")
    _emit(args, make_report(input={"graph": args.graph, "n": G.n}, mode="wcol", **out), lines)


def cmd_decompose(args):
    from .decomposition import build_decomposition_tree, check_tree_invariants
    from .sparsity import heuristic_ordering, wcol_of_ordering

    G = _graph(args)
    pi = heuristic_ordering(G, 2 * args.r)
    rounds = args.rounds if args.rounds is not None else wcol_of_ordering(G, pi, 2 * args.r) + 1
    tree = build_decomposition_tree(G, pi, args.r, rounds)
    stats = check_tree_invariants(tree, check_cover=G.n <= 30)
    _emit(args, make_report(input={"graph": args.graph, "n": G.n}, mode="decompose", tree=stats),
          [f"{k} {v}" for k, v in stats.items()])


def _params(pairs):
    out = {}
    for p in pairs or ():
        if "=" not in p:
            raise InputError(f"parameter {p!r} is not key=value")
        k, v = p.split("=", 1)
        out[k] = int(v) if v.lstrip("-").isdigit() else v
    return out


def cmd_gen(args):
    params = _params(args.param)
    if args.kind == "union-with-isolated":
        base = {"kind": params.pop("base")}
        base.update({k[5:]: v for k, v in params.items() if k.startswith("base_")})
        params = {"base": base, "count": params.get("count", 0)}
    G = generators.generate(args.kind, params, args.seed)
    if args.out:
        save_graph(G, args.out, comment=f"{args.kind} {json.dumps(params, sort_keys=True)} seed={args.seed}")
    else:
        from .fileio import format_graph

        sys.stdout.write(format_graph(G))


def cmd_gadget(args):
    from .problems import build_domset_gadget, random_colorful_graph, verify_gadget_equivalence

    sizes = [int(s) for s in args.sizes.split(",")]
    CG = random_colorful_graph(sizes, args.p, args.seed)
    inst = build_domset_gadget(CG, args.n)
    prov = {
        "k": inst.k, "n": inst.n, "budget": inst.budget,
        "parts": [sorted(p) for p in CG.parts],
        "source_edges": [list(e) for e in CG.graph.edges()],
        "cells": {f"{i},{j}": vs for (i, j), vs in inst.cells.items()},
        "right": {str(x): list(uv) for x, uv in inst.provenance.items()},
    }
    if args.emit:
        save_graph(inst.H, args.emit, comment=f"dominating-selection gadget k={inst.k} n={inst.n}")
        with open(args.emit + ".provenance.json", "w") as fh:
            json.dump(prov, fh, indent=2, sort_keys=True)
    lines = [f"left {len(inst.left)} right {len(inst.right)} budget {inst.budget}"]
    if args.verify:
        ok = verify_gadget_equivalence(CG, inst)
        prov["equivalent"] = ok
        lines.append(f"equivalent {ok}")
    _emit(args, make_report(mode="gadget", **prov), lines)


def cmd_pds(args):
    from .problems import partial_dominating_set

    G = _graph(args)
    t0 = time.perf_counter()
    chosen, res = partial_dominating_set(G, args.k, args.t, mode=args.mode)
    report = make_report(input={"graph": args.graph, "n": G.n, "k": args.k, "t": args.t},
                         mode=res.mode, value=res.value, witness=chosen, delta=res.error_bound,
                         decision=res.decision, timings={"total": time.perf_counter() - t0})
    _emit(args, report, [f"dominated {res.value}", f"set {_witness_text(chosen)}", f"decision {res.decision}"])


def cmd_distance(args):
    from .problems import distance_clique, distance_independent_set

    G = _graph(args)
    fn = distance_clique if args.mode == "clique" else distance_independent_set
    t0 = time.perf_counter()
    S = fn(G, args.k, args.r)
    report = make_report(input={"graph": args.graph, "n": G.n, "k": args.k, "r": args.r},
                         mode=args.mode, witness=S, timings={"total": time.perf_counter() - t0})
    _emit(args, report, [f"{args.mode} {_witness_text(S)}"])


def cmd_bench(args):
    from .bench import run_suite

    if args.config:
        with open(args.config) as fh:
            config = json.load(fh)
    else:
        config = {"instances": []}
    reports = run_suite(config)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)
    if args.json or not args.out:
        print(json.dumps(reports, indent=2, sort_keys=True))


def build_parser():
    ap = argparse.ArgumentParser(prog="countfo", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formula=False):
        p.add_argument("--graph")
        if formula:
            p.add_argument("--formula", required=True)
        p.add_argument("--json", action="store_true")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--rounds", type=int)
        p.add_argument("--cap-k", type=int)
        return p

    common(sub.add_parser("eval-exact"), True).set_defaults(fn=cmd_eval_exact)
    p = common(sub.add_parser("eval-approx"), True)
    p.add_argument("--epsilon-report", action="store_true")
    p.set_defaults(fn=cmd_eval_approx)
    common(sub.add_parser("oracle"), True).set_defaults(fn=cmd_oracle)

    p = common(sub.add_parser("wcol"))
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(fn=cmd_wcol)

    p = common(sub.add_parser("decompose"))
    p.add_argument("--r", type=int, default=1)
    p.set_defaults(fn=cmd_decompose)

    p = common(sub.add_parser("gen"))
    p.add_argument("--kind", required=True)
    p.add_argument("--param", action="append", help="key=value, repeatable")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = common(sub.add_parser("gadget"))
    p.add_argument("--sizes", default="2,2,2", help="part sizes, comma separated")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--emit", help="write the gadget graph here plus <path>.provenance.json")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=cmd_gadget)

    p = common(sub.add_parser("pds"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--mode", choices=["exact", "approx"], default="exact")
    p.set_defaults(fn=cmd_pds)

    p = common(sub.add_parser("distance"))
    p.add_argument("--mode", choices=["clique", "indset"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(fn=cmd_distance)

    p = common(sub.add_parser("bench"))
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except (InputError, OracleScaleError, SizeError, BudgetExhausted) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
