import numpy as np
import pytest
from hypothesis import given

from countfo import _kernels_py, generators, kernels
from countfo.graph import VertexOrdering

from conftest import graphs

compiled = pytest.importorskip("countfo._kernels")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@given(graphs(max_n=10))
def test_compiled_matches_fallback(G):
    indptr, indices = G.csr()
    pos = VertexOrdering(tuple(reversed(range(G.n)))).pos_array()
    allowed = np.ones(G.n, dtype=np.uint8)
    for r in (1, 2, 3):
        assert list(compiled.wreach_sizes(indptr, indices, pos, r)) == list(_kernels_py.wreach_sizes(indptr, indices, pos, r))
        assert list(compiled.sreach_sizes(indptr, indices, pos, r)) == list(_kernels_py.sreach_sizes(indptr, indices, pos, r))
        for v in range(G.n):
            a = sorted(int(u) for u in compiled.cluster(indptr, indices, pos, allowed, v, r))
            b = sorted(int(u) for u in _kernels_py.cluster(indptr, indices, pos, allowed, v, r))
            assert a == b
            a = sorted(int(u) for u in compiled.ball(indptr, indices, allowed, v, r))
            b = sorted(int(u) for u in _kernels_py.ball(indptr, indices, allowed, v, r))
            assert a == b
    assert (compiled.all_pairs_distances(indptr, indices) == _kernels_py.all_pairs_distances(indptr, indices)).all()


def test_distances_on_grid():
    G = generators.grid(3, 3)
    D = G.distances()
    assert D[0, 8] == 4 and D[4, 4] == 0
