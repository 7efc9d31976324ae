import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ahdepth import kernels
from ahdepth import _kernels_py as py

BACKENDS = [py] + ([kernels.compiled] if kernels.compiled is not None else [])


def naive_range_min(W, lo, length):
    K = len(W)
    return np.array([min(W[(a + i) % K] for i in range(n)) for a, n in zip(lo, length)])


@pytest.mark.parametrize("impl", BACKENDS)
def test_ray_min_small(impl):
    Q = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])
    R = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    best, arg = impl.ray_min(Q, R, np.array([5, 3, 7]), 1e-9)
    assert list(best) == [5, 3, kernels.NONE]
    assert list(arg) == [0, 1, -1]


@pytest.mark.parametrize("impl", BACKENDS)
def test_halfspace_counts_small(impl):
    P = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
    pos, zero = impl.halfspace_counts(P, np.array([1, 2, 3]), np.array([[1.0, 0.0]]), 1e-9)
    assert list(pos) == [1]
    assert zero.tolist() == [[0, 1, 0]]


@pytest.mark.parametrize("impl", BACKENDS)
def test_range_min_small(impl):
    W = np.array([4, 1, 3, 2])
    out = impl.range_min(W, np.array([0, 2, 3, 1]), np.array([1, 2, 2, 4]))
    assert list(out) == [4, 2, 2, 1]


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 60), st.integers(1, 40), st.integers(2, 4), st.integers(0, 10 ** 6))
def test_backends_agree(nq, nr, d, seed):
    rng = np.random.default_rng(seed)
    Q = rng.standard_normal((nq, d))
    R = rng.standard_normal((nr, d))
    # include exact boundary cases
    R[0] = Q[0] * 0 + np.eye(d)[0]
    Q[0, 0] = 0.0
    vals = rng.integers(0, 20, nr)
    for impl in BACKENDS:
        b, a = impl.ray_min(Q, R, vals, 1e-9)
        b0, a0 = py.ray_min(Q, R, vals, 1e-9)
        assert np.array_equal(b, b0)
        assert np.array_equal(np.where(a >= 0, vals[np.maximum(a, 0)], -1), np.where(a0 >= 0, vals[np.maximum(a0, 0)], -1))
        c = rng.integers(1, 5, nq)
        pos, zero = impl.halfspace_counts(Q, c, R, 1e-9)
        pos0, zero0 = py.halfspace_counts(Q, c, R, 1e-9)
        assert np.array_equal(pos, pos0) and np.array_equal(np.asarray(zero), np.asarray(zero0))
        lo = rng.integers(0, nr, nq)
        ln = rng.integers(1, nr + 1, nq)
        assert np.array_equal(impl.range_min(vals, lo, ln), naive_range_min(vals, lo, ln))


def test_backend_flag():
    assert kernels.BACKEND in ("python", "cython")
    if kernels.compiled is not None:
        assert kernels.BACKEND == "cython"


def test_fallback_without_extension():
    import subprocess
    import sys
    code = ("import sys; sys.modules['ahdepth._kernels'] = None\n"
            "import ahdepth.kernels as k, ahdepth.depth as D\n"
            "from ahdepth.verify import five_atom_dataset\n"
            "print(k.BACKEND, D.ahd([0, 0, 1], five_atom_dataset()).value)")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "2/5"]
