"""Select the compiled kernels when available, else the pure-Python ones.

Set COUNTFO_PURE=1 to force the fallback.
"""
import os

if os.environ.get("COUNTFO_PURE"):
    from . import _kernels_py as impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as impl
        BACKEND = "python"

ball = impl.ball
cluster = impl.cluster
wreach_sizes = impl.wreach_sizes
sreach_sizes = impl.sreach_sizes
all_pairs_distances = impl.all_pairs_distances
