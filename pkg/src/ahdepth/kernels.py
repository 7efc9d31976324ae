"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the numpy
implementations in :mod:`ahdepth._kernels_py` take over. Both are exposed so
tests and benchmarks can compare them.
"""
from . import _kernels_py as python

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

_impl = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"
NONE = python.NONE

ray_min = _impl.ray_min
range_min = _impl.range_min
# the BLAS matrix product in the numpy version beats the compiled loop
halfspace_counts = python.halfspace_counts
