"""Pure numpy implementations of the hot loops.

Signatures match the compiled ``_kernels`` extension exactly; see
:mod:`ahdepth.kernels` for backend selection.
"""
import numpy as np

NONE = np.iinfo(np.int64).max
_CHUNK = 1 << 22


def ray_min(queries, rays, values, eps):
    """Per query, the minimum of ``values[k]`` over rays with ``<x, r_k> > eps``.

    Returns ``(best, arg)``; queries with no admissible ray get ``NONE`` / -1.
    """
    Q = np.ascontiguousarray(queries, dtype=np.float64)
    R = np.ascontiguousarray(rays, dtype=np.float64)
    v = np.ascontiguousarray(values, dtype=np.int64)
    nq, nr = Q.shape[0], R.shape[0]
    best = np.full(nq, NONE, dtype=np.int64)
    arg = np.full(nq, -1, dtype=np.int64)
    if nr == 0 or nq == 0:
        return best, arg
    step = max(1, _CHUNK // nr)
    for s in range(0, nq, step):
        G = Q[s:s + step] @ R.T
        masked = np.where(G > eps, v[None, :], NONE)
        a = np.argmin(masked, axis=1)
        b = masked[np.arange(masked.shape[0]), a]
        best[s:s + step] = b
        arg[s:s + step] = np.where(b == NONE, -1, a)
    return best, arg


def halfspace_counts(points, counts, normals, eps):
    """Weight strictly inside each open halfspace, plus boundary membership.

    Returns ``(pos, zero)`` with ``pos[k] = sum(counts[<p, u_k> > eps])`` and
    ``zero[k, i] = |<p_i, u_k>| <= eps``.
    """
    P = np.ascontiguousarray(points, dtype=np.float64)
    U = np.ascontiguousarray(normals, dtype=np.float64)
    c = np.ascontiguousarray(counts, dtype=np.int64)
    G = U @ P.T
    pos = (G > eps).astype(np.int64) @ c
    zero = (np.abs(G) <= eps).astype(np.uint8)
    return pos, zero


def range_min(W, lo, length):
    """Minimum of ``W`` over cyclic index ranges ``[lo, lo + length)``."""
    W = np.ascontiguousarray(W, dtype=np.int64)
    lo = np.ascontiguousarray(lo, dtype=np.int64)
    length = np.ascontiguousarray(length, dtype=np.int64)
    K = W.shape[0]
    if lo.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    # sparse table over the doubled array
    table = [np.concatenate([W, W])]
    span = 1
    while 2 * span <= K:
        prev = table[-1]
        table.append(np.minimum(prev[:-span], prev[span:]))
        span *= 2
    lvl = np.floor(np.log2(np.maximum(length, 1))).astype(np.int64)
    lvl = np.minimum(lvl, len(table) - 1)
    out = np.empty(lo.shape[0], dtype=np.int64)
    for j in np.unique(lvl):
        sel = lvl == j
        t = table[j]
        a = lo[sel] % K
        b = a + length[sel] - (1 << j)
        out[sel] = np.minimum(t[a], t[b])
    return out
