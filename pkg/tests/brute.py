"""Independent reference depth for generic data.

The depth of ``x`` for data in general position is the smallest weight of a
closed halfspace ``{<y, u> >= 0}`` with ``<x, u> > 0``, attained on an open cell
of the arrangement of the hyperplanes ``p_i^perp`` and ``x^perp``. Every
cell touches a vertex, so nudging each vertex into all adjacent cells
enumerates every candidate value.
"""
import itertools
from fractions import Fraction

import numpy as np


def brute_depth(x, points, weights, delta=1e-7):
    x = np.asarray(x, dtype=float)
    P = np.asarray(points, dtype=float)
    d = P.shape[1]
    # auxiliary hyperplanes only refine the cells; they guarantee vertices exist
    extra = np.random.default_rng(0).standard_normal((d, d))
    normals = np.vstack([P, x[None, :], extra])
    best = None
    signs = list(itertools.product((-1.0, 1.0), repeat=d - 1))
    for sub in itertools.combinations(range(len(normals)), d - 1):
        N = normals[list(sub)]
        _, s, vt = np.linalg.svd(N)
        if s[-1] < 1e-9:
            continue
        v = vt[-1]
        pinv = np.linalg.pinv(N)
        for sgn in (-1.0, 1.0):
            for pattern in signs:
                u = sgn * v + delta * pinv @ np.array(pattern)
                if u @ x <= 0:
                    continue
                w = sum((wt for p, wt in zip(P, weights) if p @ u >= 0), Fraction(0))
                best = w if best is None else min(best, w)
    return best
