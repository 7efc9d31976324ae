"""Exact angular halfspace depth of finite weighted datasets.

Every routine here works with integer weight numerators over the dataset's
common denominator, so the returned depths are exact fractions.

Three independent routes are provided:

* :func:`ahd_oracle` -- recursive search over flag halfspaces whose normals
  are vertices of the arrangement generated by the atoms and the query;
* :func:`ahd_circle` -- angular sweep on the circle (``d = 2``);
* :func:`ahd_projected` -- gnomonic projection to the plane followed by a
  signed halfspace depth (``d = 3``).

:class:`DepthTable` precomputes the vertex rays of the atom arrangement once
and answers many queries with a masked minimum; it backs the region and
median code.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .errors import CrossValidationError, DimensionMismatch
from .sphere import (EPS_CLASS, SphericalDataset, as_points, as_unit, gnomonic_project,
                     orthonormal_complement, random_unit, span_basis)

ORACLE_LIMIT = 64
_BIG = np.iinfo(np.int64).max

# Boundary handling of the flag search. "flag" is the correct rule; "closed"
# counts every boundary atom as inside and exists only so the verification
# battery can show that it detects a wrong engine.
_MODE = {"boundary": "flag"}


@contextmanager
def boundary_mode(mode: str):
    """Temporarily switch the oracle's boundary rule (``"flag"`` or ``"closed"``)."""
    if mode not in ("flag", "closed"):
        raise ValueError(f"unknown boundary mode {mode!r}")
    old = _MODE["boundary"]
    _MODE["boundary"] = mode
    try:
        yield
    finally:
        _MODE["boundary"] = old


@dataclass(frozen=True)
class FlagWitness:
    """A flag halfspace given by an ordered orthonormal frame.

    ``normals[0]`` is the inner normal of the top-dimensional open halfspace,
    ``normals[1]`` the normal of the next one inside its boundary, and so on.
    A nonzero vector belongs to the flag iff its first nonzero inner product
    with the frame is positive.
    """

    normals: Tuple[np.ndarray, ...]

    @property
    def subspace_bases(self) -> List[np.ndarray]:
        """Orthonormal bases of the nested boundary subspaces."""
        N = np.array(self.normals)
        return [N[k + 1:] for k in range(len(N))]

    def contains(self, points, eps: float = EPS_CLASS) -> np.ndarray:
        P = np.atleast_2d(np.asarray(points, dtype=float))
        G = P @ np.array(self.normals).T
        nz = np.abs(G) > eps
        first = np.argmax(nz, axis=1)
        val = G[np.arange(len(P)), first]
        return nz.any(axis=1) & (val > 0)

    def weight(self, data: SphericalDataset) -> Fraction:
        inside = self.contains(data.points)
        return Fraction(int(data.counts[inside].sum()), data.den)

    def generic_normal(self, points, eps: float = EPS_CLASS) -> np.ndarray:
        """A single normal ``v`` whose open halfspace agrees with the flag on ``points``."""
        P = np.atleast_2d(np.asarray(points, dtype=float))
        N = np.array(self.normals)
        G = np.abs(P @ N.T)
        nz = G[G > eps]
        scale = 0.25 * (float(nz.min()) if nz.size else 1.0)
        v = np.zeros(N.shape[1])
        f = 1.0
        for u in N:
            v = v + f * u
            f *= scale
            if f < 1e-300:
                break
        return v / np.linalg.norm(v)


@dataclass(frozen=True)
class DepthResult:
    value: Fraction
    witness: FlagWitness
    evaluations: int = 0

    def __float__(self):
        return float(self.value)


def _complete_frame(normals: List[np.ndarray], d: int) -> FlagWitness:
    N = [np.asarray(u, dtype=float) for u in normals]
    if len(N) < d:
        rest = orthonormal_complement(np.array(N) if N else np.zeros((0, d)), d)
        N += list(rest)
    return FlagWitness(tuple(N[:d]))


def _check_query(x, data: SphericalDataset) -> np.ndarray:
    x = as_unit(x, 1e-9)
    if x.shape[0] != data.dim:
        raise DimensionMismatch(f"query has dimension {x.shape[0]}, data {data.dim}")
    return x


# ---------------------------------------------------------------------------
# flag recursion (oracle)


def _subset_normals(L: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Unit normals (in local coordinates) to each subset of rows of ``L``.

    Rows of ``subsets`` index ``m - 1`` vectors of ``L`` (shape ``(N, m)``);
    dependent subsets yield a zero row.
    """
    m = L.shape[1]
    A = L[subsets]  # (K, m-1, m)
    K = A.shape[0]
    out = np.empty((K, m))
    for j in range(m):
        cols = [c for c in range(m) if c != j]
        minor = A[:, :, cols]
        out[:, j] = (-1) ** j * (np.linalg.det(minor) if m > 1 else 1.0)
    nrm = np.linalg.norm(out, axis=1)
    good = nrm > 1e-9
    out[good] /= nrm[good, None]
    out[~good] = 0.0
    return out


def _all_negative_direction(P: np.ndarray) -> np.ndarray:
    """Unit ``w`` with ``<p, w> < 0`` for linearly independent rows ``p``."""
    w, *_ = np.linalg.lstsq(P, -np.ones(len(P)), rcond=None)
    return w / np.linalg.norm(w)


class _Counter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def _flag_search(P: np.ndarray, c: np.ndarray, x: Optional[np.ndarray],
                 counter: _Counter, best_known: int = _BIG) -> Tuple[int, List[np.ndarray]]:
    """Minimum flag weight of atoms ``P`` (optionally forcing ``x`` inside).

    All vectors live in the current boundary subspace, expressed in ambient
    coordinates. Returns the integer weight and the frame realizing it.
    """
    if len(P) == 0:
        return 0, ([] if x is None else [x / np.linalg.norm(x)])
    M = P if x is None else np.vstack([P, x])
    B = span_basis(M)
    m = B.shape[0]
    if m == 1:
        b = B[0]
        s = P @ b
        if x is not None:
            sx = 1.0 if float(x @ b) > 0 else -1.0
            return int(c[s * sx > 0].sum()), [sx * b]
        wp, wm = int(c[s > 0].sum()), int(c[s < 0].sum())
        return (wp, [b]) if wp <= wm else (wm, [-b])
    closed = _MODE["boundary"] == "closed"
    if x is None and m == len(P) and not closed:
        return 0, [_all_negative_direction(P)]

    L = M @ B.T
    subsets = np.array(list(combinations(range(len(M)), m - 1)), dtype=np.int64)
    nl = _subset_normals(L, subsets)
    nl = nl[np.any(nl != 0.0, axis=1)]
    U = np.empty((2 * len(nl), B.shape[1]))
    U[0::2] = nl @ B
    U[1::2] = -U[0::2]
    pos, zero = kernels.halfspace_counts(P, c, U, EPS_CLASS)
    if x is not None:
        xs = U @ x
        feasible = xs >= -EPS_CLASS
    else:
        xs = None
        feasible = np.ones(len(U), dtype=bool)

    best, frame = _BIG, []
    for k in np.flatnonzero(feasible):
        base = int(pos[k])
        if base >= best or base >= best_known:
            continue
        counter.n += 1
        u = U[k]
        zk = zero[k].astype(bool)
        if closed:
            v = base + int(c[zk].sum())
            if v < best:
                best, frame = v, [u]
            continue
        Z = P[zk]
        Z = Z - np.outer(Z @ u, u)
        sub_x = None
        if x is not None and xs[k] <= EPS_CLASS:
            sub_x = x - float(x @ u) * u
        v, fr = _flag_search(Z, c[zk], sub_x, counter, min(best, best_known) - base)
        if base + v < best:
            best, frame = base + v, [u] + fr
            if best == 0:
                break
    return best, frame


def ahd_oracle(x, data: SphericalDataset) -> DepthResult:
    """Exact depth by exhaustive search over flag halfspaces containing ``x``."""
    x = _check_query(x, data)
    counter = _Counter()
    val, frame = _flag_search(np.array(data.points), data.counts, x, counter)
    return DepthResult(Fraction(val, data.den), _complete_frame(frame, data.dim), counter.n)


def min_flag(data: SphericalDataset) -> Tuple[Fraction, FlagWitness]:
    """Global minimum weight over all flag halfspaces (the minimum depth)."""
    counter = _Counter()
    val, frame = _flag_search(np.array(data.points), data.counts, None, counter)
    return Fraction(val, data.den), _complete_frame(frame, data.dim)


# ---------------------------------------------------------------------------
# ray table


class DepthTable:
    """Vertex rays of the atom arrangement with their minimal adjacent weight.

    For atoms spanning ``R^d`` the depth of any query ``x`` is the minimum of
    ``value(r)`` over rays ``r`` with ``<x, r> > 0``. When the atoms span a
    proper subspace ``L`` the rays are taken inside ``L``, and queries off
    ``L`` get the global minimum.
    """

    def __init__(self, data: SphericalDataset, chunk: int = 20000):
        self.data = data
        P = np.array(data.points)
        c = data.counts
        self.den = data.den
        self.basis = B = span_basis(P)
        m = B.shape[0]
        d = data.dim
        if m == 1:
            b = B[0]
            s = P @ b
            rays = np.array([b, -b])
            vals = np.array([c[s > 0].sum(), c[s < 0].sum()], dtype=np.int64)
            zsets = [np.zeros(0, dtype=np.int64)] * 2
        else:
            L = P @ B.T
            seen = {}
            ray_list, val_list, zsets = [], [], []
            combos = combinations(range(len(P)), m - 1)
            while True:
                block = np.array([s for _, s in zip(range(chunk), combos)], dtype=np.int64)
                if block.size == 0:
                    break
                nl = _subset_normals(L, block)
                nl = nl[np.any(nl != 0.0, axis=1)]
                if not len(nl):
                    continue
                U = np.empty((2 * len(nl), d))
                U[0::2] = nl @ B
                U[1::2] = -U[0::2]
                pos, zero = kernels.halfspace_counts(P, c, U, EPS_CLASS)
                for k in range(len(U)):
                    key = (k % 2, zero[k].tobytes())
                    if key in seen:
                        continue
                    seen[key] = True
                    zi = np.flatnonzero(zero[k])
                    Z = P[zi]
                    u = U[k]
                    if np.linalg.matrix_rank(Z, tol=1e-9) == len(zi):
                        rec = 0
                    else:
                        Z = Z - np.outer(Z @ u, u)
                        rec, _ = _flag_search(Z, c[zi], None, _Counter())
                    ray_list.append(u)
                    val_list.append(int(pos[k]) + rec)
                    zsets.append(zi)
            rays = np.array(ray_list)
            vals = np.array(val_list, dtype=np.int64)
        self.rays = np.ascontiguousarray(rays)
        self.values = vals
        self._zsets = zsets
        self.global_min = int(vals.min())

    def __len__(self):
        return len(self.values)

    def query_counts(self, queries) -> np.ndarray:
        X = as_points(queries, self.data.dim)
        best, _ = kernels.ray_min(X, self.rays, self.values, EPS_CLASS)
        off = self._off_span(X)
        best[off] = self.global_min
        if np.any(best == kernels.NONE):
            raise RuntimeError("query orthogonal to every ray")
        return best

    def query(self, queries) -> List[Fraction]:
        return [Fraction(int(v), self.den) for v in self.query_counts(queries)]

    def _off_span(self, X: np.ndarray) -> np.ndarray:
        if self.basis.shape[0] == self.data.dim:
            return np.zeros(len(X), dtype=bool)
        perp = X - (X @ self.basis.T) @ self.basis
        return np.linalg.norm(perp, axis=1) > EPS_CLASS

    def depth(self, x) -> DepthResult:
        x = _check_query(x, self.data)
        X = x[None, :]
        P = np.array(self.data.points)
        c = self.data.counts
        if self._off_span(X)[0]:
            k = int(np.argmin(self.values))
            perp = x - self.basis.T @ (self.basis @ x)
            lead = [perp / np.linalg.norm(perp)]
        else:
            _, arg = kernels.ray_min(X, self.rays, self.values, EPS_CLASS)
            k = int(arg[0])
            lead = []
        u = self.rays[k]
        zi = self._zsets[k]
        Z = P[zi] - np.outer(P[zi] @ u, u)
        _, fr = _flag_search(Z, c[zi], None, _Counter())
        frame = lead + [u] + fr
        return DepthResult(Fraction(int(self.values[k]), self.den),
                           _complete_frame(frame, self.data.dim), len(self.values))


# ---------------------------------------------------------------------------
# circle sweep (d = 2)

TWO_PI = 2.0 * math.pi


def _merge_angles(phi: np.ndarray, weights: Optional[np.ndarray] = None, eps: float = EPS_CLASS):
    """Sort angles in [0, 2pi), merging those closer than ``eps`` (cyclically)."""
    order = np.argsort(phi, kind="stable")
    phi = phi[order]
    w = None if weights is None else weights[order]
    if len(phi) == 0:
        return phi, w
    new_group = np.concatenate([[True], np.diff(phi) > eps])
    gid = np.cumsum(new_group) - 1
    if len(phi) > 1 and phi[0] + TWO_PI - phi[-1] <= eps:
        gid[gid == gid[-1]] = 0
    ng = gid.max() + 1
    first = np.full(ng, -1)
    for i in range(len(phi) - 1, -1, -1):
        first[gid[i]] = i
    reps = phi[first]
    if w is not None:
        acc = np.zeros(ng, dtype=np.int64)
        np.add.at(acc, gid, w)
        w = acc
    o = np.argsort(reps, kind="stable")
    return reps[o], (None if w is None else w[o])


class CircleIndex:
    """Precomputed angular sweep structure for a dataset on the circle."""

    def __init__(self, data: SphericalDataset):
        if data.dim != 2:
            raise DimensionMismatch("circle sweep needs d = 2")
        self.data = data
        self.den = data.den
        phi = np.mod(np.arctan2(data.points[:, 1], data.points[:, 0]), TWO_PI)
        self.phi, self.cnt = _merge_angles(phi, data.counts.copy())
        crit = np.mod(np.concatenate([self.phi, self.phi + math.pi]), TWO_PI)
        self.crit, _ = _merge_angles(crit)
        K = len(self.crit)
        nxt = np.append(self.crit[1:], self.crit[0] + TWO_PI)
        self.mid = np.mod((self.crit + nxt) / 2.0, TWO_PI)
        self.gap_weight = self._open_arc_weight(self.mid)
        self.K = K

    def _open_arc_weight(self, a: np.ndarray) -> np.ndarray:
        """Weight in the open half-circles ``(a, a + pi)`` for generic ``a``."""
        phi2 = np.concatenate([self.phi, self.phi + TWO_PI])
        cum = np.concatenate([[0], np.cumsum(np.concatenate([self.cnt, self.cnt]))])
        lo = np.searchsorted(phi2, a, side="right")
        hi = np.searchsorted(phi2, a + math.pi, side="left")
        return cum[hi] - cum[lo]

    def _locate(self, t: np.ndarray):
        """Index of the critical point at ``t`` (or -1) and the gap containing ``t``."""
        c = self.crit
        i = np.searchsorted(c, t, side="right") - 1  # c[i] <= t, -1 means before c[0]
        gap = np.mod(i, self.K)
        d_lo = np.abs(t - c[gap] + np.where(i < 0, TWO_PI, 0.0))
        nxt = np.mod(i + 1, self.K)
        d_hi = np.abs(c[nxt] + np.where(i + 1 >= self.K, TWO_PI, 0.0) - t)
        at = np.where(d_lo <= EPS_CLASS, gap, np.where(d_hi <= EPS_CLASS, nxt, -1))
        return at, gap

    def windows(self, theta: np.ndarray):
        """First gap and number of gaps meeting the window ``(theta - pi, theta)``."""
        theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
        s = np.mod(theta - math.pi, TWO_PI)
        at_s, gap_s = self._locate(s)
        first = np.where(at_s >= 0, at_s, gap_s)
        at_t, gap_t = self._locate(theta)
        last = np.where(at_t >= 0, np.mod(at_t - 1, self.K), gap_t)
        length = np.mod(last - first, self.K) + 1
        return first, length

    def query_counts(self, theta) -> np.ndarray:
        first, length = self.windows(theta)
        return kernels.range_min(self.gap_weight, first, length)

    def depth(self, theta: float) -> DepthResult:
        first, length = self.windows(np.array([theta]))
        idx = np.mod(first[0] + np.arange(length[0]), self.K)
        j = int(idx[np.argmin(self.gap_weight[idx])])
        lo = self.crit[j]
        hi = self.crit[j + 1] if j + 1 < self.K else self.crit[0] + TWO_PI
        # clip the gap to the admissible window of half-circle starts
        w_lo = theta - math.pi
        w_hi = theta
        shift = TWO_PI * np.round(((lo + hi) / 2 - (w_lo + w_hi) / 2) / TWO_PI)
        lo, hi = lo - shift, hi - shift
        a = (max(lo, w_lo) + min(hi, w_hi)) / 2.0
        v = np.array([math.cos(a + math.pi / 2), math.sin(a + math.pi / 2)])
        return DepthResult(Fraction(int(self.gap_weight[j]), self.den),
                           _complete_frame([v], 2), int(length[0]))


def ahd_circle(x, data: SphericalDataset) -> DepthResult:
    """Exact depth on the circle by an angular sweep, ``O(n log n)``."""
    x = _check_query(x, data)
    if data.dim != 2:
        raise DimensionMismatch("ahd_circle requires d = 2")
    return CircleIndex(data).depth(math.atan2(x[1], x[0]))


# ---------------------------------------------------------------------------
# signed halfspace depth in the gnomonic plane


def _merge_points(pts: np.ndarray, w: np.ndarray, tol: float):
    reps, acc, owner = [], [], np.empty(len(pts), dtype=np.int64)
    for i, p in enumerate(pts):
        for j, q in enumerate(reps):
            if np.max(np.abs(p - q)) <= tol:
                acc[j] += int(w[i])
                owner[i] = j
                break
        else:
            reps.append(p)
            acc.append(int(w[i]))
            owner[i] = len(reps) - 1
    return np.array(reps).reshape(-1, pts.shape[1]), np.array(acc, dtype=np.int64), owner


def _signed_search(z: np.ndarray, pts: np.ndarray, scounts: np.ndarray):
    """Minimum signed weight of a generic open halfspace containing ``z``.

    ``scounts`` are signed integer weights. Returns ``(value, info)`` where
    ``info`` describes the optimal cut for lifting back to the sphere.
    """
    k = pts.shape[1] if pts.size else z.shape[0]
    allp = np.vstack([pts.reshape(-1, k), z[None, :]])
    scale = max(1.0, float(np.max(np.abs(allp))))
    tol = 1e-9 * scale
    w = np.append(scounts, 0)
    items, iw, owner = _merge_points(allp, w, tol)
    zi = int(owner[-1])
    N = len(items)

    if k == 1:
        dirs = np.array([[1.0], [-1.0]])
        pars = np.zeros((2, 1))
        taus = np.array([1.0, 1.0])
    elif k == 2:
        dl, pl = [np.array([1.0, 0.0]), np.array([0.0, 1.0])], []
        pl = [np.array([0.0, 1.0]), np.array([-1.0, 0.0])]
        for i, j in combinations(range(N), 2):
            dv = items[j] - items[i]
            nv = np.linalg.norm(dv)
            par = dv / nv
            dl.append(np.array([-par[1], par[0]]))
            pl.append(par)
        base_d, base_p = np.array(dl), np.array(pl)
        dirs = np.concatenate([base_d, base_d, -base_d, -base_d])
        pars = np.concatenate([base_p, base_p, base_p, base_p])
        taus = np.concatenate([np.ones(len(base_d)), -np.ones(len(base_d))] * 2)
    else:
        raise DimensionMismatch("signed halfspace depth implemented for planes and lines")

    prim = dirs @ items.T  # (K, N)
    sec = taus[:, None] * (pars @ items.T)
    K = len(dirs)
    order = np.argsort(-prim, axis=1, kind="stable")
    sp = np.take_along_axis(prim, order, axis=1)
    newg = np.concatenate([np.zeros((K, 1), dtype=np.int64),
                           (-np.diff(sp, axis=1) > tol).astype(np.int64)], axis=1)
    gid_sorted = np.cumsum(newg, axis=1)
    gid = np.empty_like(gid_sorted)
    np.put_along_axis(gid, order, gid_sorted, axis=1)
    rank_sec = np.argsort(np.argsort(-sec, axis=1, kind="stable"), axis=1, kind="stable")
    key = gid * N + rank_sec
    final = np.argsort(key, axis=1, kind="stable")
    cs = np.cumsum(iw[final], axis=1)
    zpos = np.argmax(final == zi, axis=1)
    best_val, best = None, None
    for r in range(K):
        tail = cs[r, zpos[r]:]
        j = int(np.argmin(tail))
        v = int(tail[j])
        if best_val is None or v < best_val:
            best_val, best = v, (r, zpos[r] + j)
    r, j = best
    seq = final[r]
    info = {"dir": dirs[r], "par": pars[r] * taus[r], "full": j == N - 1}
    if j < N - 1:
        a_, b_ = seq[j], seq[j + 1]
        if gid[r, a_] != gid[r, b_]:
            info["t"] = 0.5 * (prim[r, a_] + prim[r, b_])
        else:
            info["t"] = float(prim[r, a_])
            info["m"] = 0.5 * (sec[r, a_] + sec[r, b_])
    return best_val, info


def signed_halfspace_depth(z, proj) -> Fraction:
    """Infimum of ``P_+(H) - P_-(H interior)`` over generalized halfspaces ``H`` containing ``z``.

    ``proj`` is a :class:`~ahdepth.sphere.ProjectedSignedDataset`; planes
    (``d = 3``) and lines (``d = 2``) are supported.
    """
    z = np.asarray(z, dtype=float).reshape(-1)
    val, _ = _signed_search(z, proj.points, proj.signs * proj.counts)
    return Fraction(val, proj.den)


def _lift_cut(info: dict, k: int) -> List[np.ndarray]:
    """Frame (in rotated sphere coordinates) of the halfspace cut ``info``."""
    e = np.zeros(k + 1)
    e[-1] = 1.0
    if info["full"]:
        return [e]
    u = np.append(info["dir"], -info["t"])
    u /= np.linalg.norm(u)
    frame = [u]
    if "m" in info:
        raw = np.append(info["par"], -info["m"])
        raw -= float(raw @ u) * u
        frame.append(raw / np.linalg.norm(raw))
    return frame


def ahd_projected(x, data: SphericalDataset, seed: int = 0) -> DepthResult:
    """Exact depth on S^2 via gnomonic projection and signed planar depth."""
    x = _check_query(x, data)
    if data.dim != 3:
        raise DimensionMismatch("ahd_projected requires d = 3")
    proj, z = gnomonic_project(data, x, seed)
    south = int(proj.counts[proj.signs < 0].sum())
    val, info = _signed_search(z, proj.points, proj.signs * proj.counts)
    O = proj.pole_rotation
    frame = [O.T @ u for u in _lift_cut(info, 2)]
    return DepthResult(Fraction(south + val, data.den), _complete_frame(frame, 3), 1)


# ---------------------------------------------------------------------------
# dispatch


def ahd(x, data: SphericalDataset, seed: int = 0) -> DepthResult:
    """Exact angular halfspace depth of ``x`` with respect to ``data``.

    Uses the circle sweep for ``d = 2``, the projected route for ``d = 3``
    (checked against the oracle when ``n <= ORACLE_LIMIT``) and the oracle
    otherwise.
    """
    x = _check_query(x, data)
    if data.dim == 2:
        return ahd_circle(x, data)
    if data.dim == 3:
        res = ahd_projected(x, data, seed)
        if data.n <= ORACLE_LIMIT:
            ref = ahd_oracle(x, data)
            if ref.value != res.value:
                raise CrossValidationError(
                    f"projected depth {res.value} != oracle depth {ref.value} at {x}")
        return res
    return ahd_oracle(x, data)


def ahd_approx(x, data: SphericalDataset, m: int, seed: int = 0) -> Fraction:
    """Upper bound from ``m`` random closed halfspaces containing ``x``."""
    if m < 1:
        raise ValueError("m must be positive")
    x = _check_query(x, data)
    rng = np.random.default_rng(seed)
    U = random_unit(m, data.dim, rng)
    U *= np.where(U @ x < 0, -1.0, 1.0)[:, None]
    G = data.points @ U.T
    inside = (G > -EPS_CLASS).astype(np.int64)
    return Fraction(int((data.counts @ inside).min()), data.den)


def depth_counts(data: SphericalDataset, queries) -> np.ndarray:
    """Integer depth numerators (over ``data.den``) for many queries."""
    X = as_points(queries, data.dim)
    if data.dim == 2:
        return CircleIndex(data).query_counts(np.arctan2(X[:, 1], X[:, 0]))
    return DepthTable(data).query_counts(X)


def depth_many(data: SphericalDataset, queries) -> List[Fraction]:
    return [Fraction(int(v), data.den) for v in depth_counts(data, queries)]
