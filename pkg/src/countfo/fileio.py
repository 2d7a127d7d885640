"""Graph text format and JSON run reports.

Graph files are line oriented:

    # comment
    p <n> <m> <labels>
    e <u> <v>          (0-based, u < v)
    l <label-index> <v>
"""
import json
import math

from .errors import InputError
from .graph import LabeledGraph

SCHEMA_VERSION = 1
SAFE_INT = 2 ** 53 - 1


class GraphFormatError(InputError):
    """Malformed graph file; message names the line."""


def parse_graph(text):
    header = None
    edges, seen = [], set()
    labels = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer field in {line!r}") from None
        if tag == "p":
            if header is not None:
                raise GraphFormatError(f"line {lineno}: second header")
            if len(nums) != 3 or min(nums) < 0:
                raise GraphFormatError(f"line {lineno}: header must be 'p <n> <m> <labels>'")
            header = nums
            labels = [set() for _ in range(nums[2])]
            continue
        if header is None:
            raise GraphFormatError(f"line {lineno}: {tag!r} before the 'p' header")
        n = header[0]
        if tag == "e":
            if len(nums) != 2:
                raise GraphFormatError(f"line {lineno}: edge must be 'e <u> <v>'")
            u, v = nums
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"line {lineno}: edge endpoint out of range")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
            seen.add(key)
            edges.append(key)
        elif tag == "l":
            if len(nums) != 2:
                raise GraphFormatError(f"line {lineno}: label must be 'l <label-index> <v>'")
            p, v = nums
            if not 0 <= p < len(labels):
                raise GraphFormatError(f"line {lineno}: label index {p} not declared")
            if not 0 <= v < n:
                raise GraphFormatError(f"line {lineno}: labeled vertex out of range")
            labels[p].add(v)
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {tag!r}")
    if header is None:
        raise GraphFormatError("missing 'p' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, file has {len(edges)}")
    return LabeledGraph(header[0], edges, labels)


def format_graph(G, comment=None):
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {G.n} {G.m} {len(G.labels)}")
    lines.extend(f"e {u} {v}" for u, v in G.edges())
    for i, P in enumerate(G.labels):
        lines.extend(f"l {i} {v}" for v in sorted(P))
    return "\n".join(lines) + "\n"


def load_graph(path):
    with open(path) as fh:
        return parse_graph(fh.read())


def save_graph(G, path, comment=None):
    with open(path, "w") as fh:
        fh.write(format_graph(G, comment))


def _jsonable(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > SAFE_INT else x
    if isinstance(x, float):
        return x if math.isfinite(x) else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if hasattr(x, "item"):
        return _jsonable(x.item())
    return str(x)


def make_report(**fields):
    """A schema-1 report dict; large integers become strings."""
    out = {"schema": SCHEMA_VERSION}
    out.update(fields)
    return _jsonable(out)


def dumps_report(report):
    return json.dumps(report, indent=2, sort_keys=True)


def loads_report(text):
    data = json.loads(text)
    if data.get("schema") != SCHEMA_VERSION:
        raise InputError(f"unsupported report schema {data.get('schema')!r}")
    return data
