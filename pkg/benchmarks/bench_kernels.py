"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--sizes 200 800] [--repeat 3]
"""
import argparse
import time

from countfo import _kernels_py, generators
from countfo.sparsity import heuristic_ordering

try:
    from countfo import _kernels
except ImportError:
    _kernels = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def workloads(G, pi):
    import numpy as np

    indptr, indices = G.csr()
    pos = pi.pos_array()
    allowed = np.ones(G.n, dtype=np.uint8)
    return {
        "wreach_sizes r=2": lambda m: m.wreach_sizes(indptr, indices, pos, 2),
        "sreach_sizes r=2": lambda m: m.sreach_sizes(indptr, indices, pos, 2),
        "cluster r=4 (all roots)": lambda m: [m.cluster(indptr, indices, pos, allowed, v, 4) for v in range(G.n)],
        "all_pairs_distances": lambda m: m.all_pairs_distances(indptr, indices),
    }


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 800])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'graph':28} {'kernel':26} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n in args.sizes:
        for name, G in [(f"grid {int(n ** 0.5)}^2", generators.grid(int(n ** 0.5), int(n ** 0.5))),
                        (f"deg-3 random n={n}", generators.bounded_degree_random(n, 3, 1))]:
            pi = heuristic_ordering(G, 2)
            for label, run in workloads(G, pi).items():
                tp = _time(lambda: run(_kernels_py), args.repeat)
                if _kernels is not None:
                    a, b = run(_kernels_py), run(_kernels)
                    same = all((x == y).all() if hasattr(x, "all") else list(x) == list(y)
                               for x, y in (zip(a, b) if isinstance(a, list) else [(a, b)]))
                    assert same, (name, label)
                    tc = _time(lambda: run(_kernels), args.repeat)
                    print(f"{name:28} {label:26} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}")
                else:
                    print(f"{name:28} {label:26} {tp:10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
