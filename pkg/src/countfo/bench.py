"""Suite runner behind `countfo bench`.

A config is {"instances": [...]} where each instance has
    "graph": {"kind": ..., <params>}     generator spec
    "seed": int                          optional
    "sentence": "<text>" or {"pds": {"k": 1, "t": 0}}
    "mode": "exact" | "approx"
    "wcol_r": int                        optional, length of the wcol curve (default 3)
Failures are recorded per instance and the suite continues.
"""
import time

from . import generators
from .errors import OracleScaleError
from .fileio import make_report
from .formula import parse_sentence
from .graph import VertexOrdering
from .oracle import oracle_max
from .sparsity import wcol_of_ordering


def _sentence(spec):
    if isinstance(spec, str):
        return parse_sentence(spec)
    from .problems import pds_sentence

    p = spec["pds"]
    return pds_sentence(p["k"], p.get("t", 0))


def run_instance(inst):
    from .approx import maximize_approx
    from .exact import maximize_exact

    gspec = dict(inst["graph"])
    kind = gspec.pop("kind")
    seed = inst.get("seed", 0)
    G = generators.generate(kind, gspec, seed)
    sentence = _sentence(inst["sentence"])
    mode = inst.get("mode", "exact")
    t0 = time.perf_counter()
    res = (maximize_exact if mode == "exact" else maximize_approx)(G, sentence)
    elapsed = time.perf_counter() - t0
    try:
        t1 = time.perf_counter()
        oracle_value, _ = oracle_max(G, sentence)
        oracle_time = time.perf_counter() - t1
    except OracleScaleError:
        oracle_value, oracle_time = None, None
    perm = res.details.get("ordering") or []
    curve = []
    if perm:
        pi = VertexOrdering(tuple(perm))
        curve = [wcol_of_ordering(G, pi, r) for r in range(1, inst.get("wcol_r", 3) + 1)]
    gap = None if oracle_value is None else abs(oracle_value - res.value)
    return make_report(
        input={"graph": {"kind": kind, **gspec}, "seed": seed, "n": G.n, "m": G.m,
               "sentence": str(sentence)},
        mode=mode, value=res.value, witness=res.witness, delta=res.error_bound,
        decision=res.decision, oracle=oracle_value, gap=gap,
        timings={"engine": elapsed, "oracle": oracle_time},
        sparsity={"wcol1": curve[0] if curve else 0, "wcol2": curve[1] if len(curve) > 1 else 0,
                  "wcol_curve": curve},
    )


def run_suite(config):
    out = []
    for inst in config.get("instances", []):
        try:
            out.append(run_instance(inst))
        except Exception as e:  # recorded, suite continues
            out.append(make_report(input=inst, error=f"{type(e).__name__}: {e}"))
    return out
