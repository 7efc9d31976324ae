"""Central regions, angular medians, Hausdorff distances and diagnostics.

A central region is the upper level set ``{x : AHD(x) >= alpha}``. On the
circle it is a finite union of closed arcs and is computed exactly. On S^2
it is the intersection of the closed hemispheres ``{<x, r> <= 0}`` over the
arrangement rays ``r`` whose adjacent cell has weight below ``alpha``; that
polyhedral cone is traced exactly for small samples and contoured on an
icosphere otherwise. Higher dimensions use a sampled membership grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError, cKDTree

from .depth import TWO_PI, CircleIndex, DepthTable, depth_counts, min_flag
from .errors import DimensionMismatch, EmptyRegion
from .sphere import (EPS_CLASS, SphericalDataset, as_points, as_unit, fibonacci_sphere,
                     icosphere, icosphere_edges, normalize, orthonormal_complement,
                     random_unit, span_basis)

EXACT_LIMIT = 40
BISECT_TOL = 1e-6
_CONE_TOL = 1e-10


@dataclass(eq=False)
class CentralRegion:
    """A depth region in one of several representations.

    ``kind`` is one of ``"empty"``, ``"full"``, ``"arc_list"`` (d = 2,
    ``arcs`` holds closed intervals ``(lo, hi)`` of angles with
    ``0 <= lo < 2 pi`` and ``lo <= hi < lo + 2 pi``), ``"spherical_polygon"``
    (d = 3, ordered ``vertices``; one vertex is a point, two a geodesic
    segment) or ``"grid_indicator"`` (sampled ``grid`` with boolean ``mask``).
    """

    dim: int
    alpha: Fraction
    kind: str
    arcs: List[Tuple[float, float]] = field(default_factory=list)
    vertices: Optional[np.ndarray] = None
    interior: Optional[np.ndarray] = None
    grid: Optional[np.ndarray] = None
    mask: Optional[np.ndarray] = None
    resolution: int = 0
    approximate: bool = False

    @property
    def is_empty(self) -> bool:
        if self.kind == "grid_indicator":
            return not bool(np.any(self.mask))
        return self.kind == "empty"

    # -- geometry ---------------------------------------------------------

    def contains(self, X, tol: float = 1e-9) -> np.ndarray:
        X = as_points(X, self.dim)
        if self.kind == "empty":
            return np.zeros(len(X), dtype=bool)
        if self.kind == "full":
            return np.ones(len(X), dtype=bool)
        return self.distance(X) <= tol

    def distance(self, X) -> np.ndarray:
        """Euclidean distance from each row of ``X`` to the region."""
        X = as_points(X, self.dim)
        if self.kind == "empty":
            return np.full(len(X), np.inf)
        if self.kind == "full":
            return np.zeros(len(X))
        if self.kind == "arc_list":
            ang = _arc_distance(np.arctan2(X[:, 1], X[:, 0]), self.arcs)
            return 2.0 * np.sin(ang / 2.0)
        if self.kind == "spherical_polygon":
            return _polygon_distance(X, self.vertices, self.interior)
        pts = self.grid[self.mask]
        if not len(pts):
            return np.full(len(X), np.inf)
        return cKDTree(pts).query(X)[0]

    def sample(self, spacing: float = 1e-3) -> np.ndarray:
        """Points of the region: vertices, boundary samples and interior."""
        if self.kind == "empty":
            return np.zeros((0, self.dim))
        if self.kind == "full":
            if self.dim == 2:
                t = np.linspace(0.0, TWO_PI, int(TWO_PI / spacing), endpoint=False)
                return np.column_stack([np.cos(t), np.sin(t)])
            if self.dim == 3:
                return fibonacci_sphere(max(2000, int(4 * math.pi / spacing ** 2) // 100))
            return self.grid if self.grid is not None else np.zeros((0, self.dim))
        if self.kind == "arc_list":
            out = []
            for lo, hi in self.arcs:
                m = max(2, int((hi - lo) / spacing) + 1)
                t = np.linspace(lo, hi, m)
                out.append(np.column_stack([np.cos(t), np.sin(t)]))
            return np.vstack(out)
        if self.kind == "spherical_polygon":
            V = self.vertices
            out = [V]
            if len(V) > 1:
                for a, b in zip(V, np.roll(V, -1, axis=0)) if len(V) > 2 else [(V[0], V[1])]:
                    ang = math.acos(max(-1.0, min(1.0, float(a @ b))))
                    m = max(2, int(ang / spacing) + 1)
                    t = np.linspace(0.0, 1.0, m)[:, None]
                    out.append(_slerp(a, b, t))
            if self.interior is not None:
                out.append(self.interior[None, :])
            return np.vstack(out)
        return self.grid[self.mask]

    def to_dict(self) -> dict:
        out = {"dim": self.dim, "alpha_num": self.alpha.numerator, "alpha_den": self.alpha.denominator,
               "alpha": float(self.alpha), "kind": self.kind, "approximate": self.approximate}
        if self.kind == "arc_list":
            out["arcs"] = [[float(a), float(b)] for a, b in self.arcs]
        elif self.kind == "spherical_polygon":
            out["vertices"] = self.vertices.tolist()
            out["interior"] = None if self.interior is None else self.interior.tolist()
        elif self.kind == "grid_indicator":
            out["resolution"] = self.resolution
            out["grid_size"] = int(len(self.grid))
            out["inside"] = self.grid[self.mask].tolist()
        return out


@dataclass(eq=False)
class MedianResult:
    max_depth: Fraction
    region: CentralRegion
    approximate: bool = False


@dataclass
class DiagnosticReport:
    name: str
    checked: int
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# small geometry helpers


def _slerp(a: np.ndarray, b: np.ndarray, t: np.ndarray) -> np.ndarray:
    ang = math.acos(max(-1.0, min(1.0, float(a @ b))))
    if ang < 1e-12:
        return np.repeat(a[None, :], len(t), axis=0)
    s = math.sin(ang)
    return (np.sin((1.0 - t) * ang) * a + np.sin(t * ang) * b) / s


def _arc_distance(theta: np.ndarray, arcs) -> np.ndarray:
    """Angular distance from angles to a union of closed arcs."""
    theta = np.mod(theta, TWO_PI)
    best = np.full(theta.shape, np.inf)
    for lo, hi in arcs:
        rel = np.mod(theta - lo, TWO_PI)
        inside = rel <= (hi - lo) + 1e-12
        d_lo = np.minimum(rel, TWO_PI - rel)
        rel_hi = np.mod(theta - hi, TWO_PI)
        d_hi = np.minimum(rel_hi, TWO_PI - rel_hi)
        best = np.minimum(best, np.where(inside, 0.0, np.minimum(d_lo, d_hi)))
    return best


def _segment_distance(X: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Chord distance from points to the minor geodesic arc ``[a, b]``."""
    n = np.cross(a, b)
    nn = np.linalg.norm(n)
    da = np.linalg.norm(X - a, axis=1)
    db = np.linalg.norm(X - b, axis=1)
    out = np.minimum(da, db)
    if nn < 1e-14:
        return out
    n = n / nn
    proj = X - np.outer(X @ n, n)
    pn = np.linalg.norm(proj, axis=1)
    ok = pn > 1e-14
    p = np.zeros_like(proj)
    p[ok] = proj[ok] / pn[ok, None]
    within = ok & (np.cross(a, p) @ n >= 0) & (np.cross(p, b) @ n >= 0)
    dp = np.linalg.norm(X - p, axis=1)
    return np.where(within, np.minimum(out, dp), out)


def _polygon_distance(X: np.ndarray, V: np.ndarray, interior: Optional[np.ndarray]) -> np.ndarray:
    if len(V) == 1:
        return np.linalg.norm(X - V[0], axis=1)
    if len(V) == 2:
        return _segment_distance(X, V[0], V[1])
    out = np.full(len(X), np.inf)
    inside = np.ones(len(X), dtype=bool)
    for a, b in zip(V, np.roll(V, -1, axis=0)):
        out = np.minimum(out, _segment_distance(X, a, b))
        n = np.cross(a, b)
        if interior is not None and float(n @ interior) < 0:
            n = -n
        inside &= X @ n >= -1e-12
    # the edge halfspaces cut out a pointed cone, so no extra hemisphere test
    return np.where(inside, 0.0, out)


def _angles(X: np.ndarray) -> np.ndarray:
    return np.mod(np.arctan2(X[:, 1], X[:, 0]), TWO_PI)


def _meets(counts: np.ndarray, alpha: Fraction, den: int) -> np.ndarray:
    """``counts / den >= alpha`` exactly."""
    return counts.astype(object) * alpha.denominator >= alpha.numerator * den


# ---------------------------------------------------------------------------
# depth profile


def depth_profile(data: SphericalDataset, queries, seed: int = 0) -> List[Fraction]:
    """Exact depth of each query, in order."""
    Q = np.asarray(queries, dtype=float)
    if Q.size == 0:
        return []
    Q = as_points(Q, data.dim)
    if np.any(np.abs(np.linalg.norm(Q, axis=1) - 1.0) > 1e-9):
        Q = np.array([as_unit(q, 1e-9) for q in Q])
    return [Fraction(int(v), data.den) for v in depth_counts(data, Q)]


# ---------------------------------------------------------------------------
# d = 2


def _circle_cells(index: CircleIndex):
    crit_depth = index.query_counts(index.crit)
    gap_depth = index.query_counts(index.mid)
    return crit_depth, gap_depth


def _arcs_from_cells(index: CircleIndex, crit_in: np.ndarray, gap_in: np.ndarray):
    K = index.K
    if crit_in.all() and gap_in.all():
        return None
    c = index.crit
    # start the cyclic scan at an excluded critical point, or just after an
    # excluded gap, so that no run wraps around the start
    start = None
    for i in range(K):
        if not crit_in[i]:
            start = ("c", i)
            break
    if start is None:
        i = int(np.flatnonzero(~gap_in)[0])
        start = ("g", i)
    seq = []
    if start[0] == "c":
        i0 = start[1]
        for k in range(K):
            j = (i0 + k) % K
            if k > 0:
                seq.append(("c", j))
            seq.append(("g", j))
    else:
        i0 = start[1]
        for k in range(1, K + 1):
            j = (i0 + k) % K
            seq.append(("c", j))
            if k < K:
                seq.append(("g", j))
    arcs = []
    cur = None
    for kind, j in seq:
        inn = crit_in[j] if kind == "c" else gap_in[j]
        if inn:
            end = j if kind == "c" else (j + 1) % K
            if cur is None:
                cur = [j, end]
            else:
                cur[1] = end
        elif cur is not None:
            arcs.append(tuple(cur))
            cur = None
    if cur is not None:
        arcs.append(tuple(cur))
    out = []
    for a, b in arcs:
        lo = float(c[a])
        hi = float(c[b])
        if hi < lo - 1e-15:
            hi += TWO_PI
        out.append((lo, hi))
    out.sort()
    return out


def _region_circle(data: SphericalDataset, alpha: Fraction) -> CentralRegion:
    index = CircleIndex(data)
    crit_d, gap_d = _circle_cells(index)
    crit_in = _meets(crit_d, alpha, data.den)
    gap_in = _meets(gap_d, alpha, data.den)
    if not crit_in.any() and not gap_in.any():
        return CentralRegion(2, alpha, "empty")
    arcs = _arcs_from_cells(index, crit_in, gap_in)
    if arcs is None:
        return CentralRegion(2, alpha, "full")
    return CentralRegion(2, alpha, "arc_list", arcs=arcs)


# ---------------------------------------------------------------------------
# d = 3, exact cone


def _cone_section(R: np.ndarray, basis: np.ndarray):
    """Unit vectors of ``span(basis)`` with ``<x, r> <= 0`` for every row ``r``.

    Returns ``("empty",)``, ``("points", [x...])``, ``("arc", a, b)`` or
    ``("polygon", vertices, interior)``.
    """
    k = basis.shape[0]
    if k == 0:
        return ("empty",)
    Rl = R @ basis.T
    nr = np.linalg.norm(Rl, axis=1)
    Rl = Rl[nr > 1e-12] / nr[nr > 1e-12, None]
    if len(Rl) == 0:
        raise RuntimeError("unconstrained subspace: region is not pointed")
    if k == 1:
        pts = [s * basis[0] for s in (1.0, -1.0) if np.all(s * Rl[:, 0] <= _CONE_TOL)]
        return ("points", pts) if pts else ("empty",)
    res = linprog(np.append(np.zeros(k), -1.0),
                  A_ub=np.hstack([Rl, np.ones((len(Rl), 1))]), b_ub=np.zeros(len(Rl)),
                  bounds=[(-1.0, 1.0)] * k + [(None, 1.0)], method="highs")
    if res.status != 0:
        raise RuntimeError(f"cone LP failed: {res.message}")
    y, t = res.x[:k], res.x[k]
    if t > 1e-9:
        c = y / np.linalg.norm(y)
        if k == 2:
            return _cone_arc(Rl, c, basis)
        return _cone_polygon(Rl, c, basis)
    lam = -np.asarray(res.ineqlin.marginals)
    E = lam > 1e-12 * max(1.0, lam.max(initial=0.0))
    if not E.any():
        E = Rl @ y > -1e-9
    N = span_basis(Rl[E])
    comp = orthonormal_complement(N, k)
    return _cone_section(R, comp @ basis)


def _cone_arc(Rl: np.ndarray, c: np.ndarray, basis: np.ndarray):
    q = np.array([-c[1], c[0]])
    a = Rl @ c
    b = Rl @ q
    beta = np.mod(np.arctan2(b, a), TWO_PI)  # in (pi/2, 3pi/2) since a < 0
    lo = float(np.max(beta - 1.5 * math.pi))
    hi = float(np.min(beta - 0.5 * math.pi))
    ends = [math.cos(p) * c + math.sin(p) * q for p in (lo, hi)]
    A, B = (e @ basis for e in ends)
    return ("arc", normalize(A), normalize(B))


def _cone_polygon(Rl: np.ndarray, c: np.ndarray, basis: np.ndarray):
    # all our polygons are full-dimensional in R^3 here
    g = -Rl.sum(axis=0)
    g = g / np.linalg.norm(g)
    if float(c @ g) <= 0:
        raise RuntimeError("cone is not pointed")
    e1, e2 = orthonormal_complement(g[None, :], 3)
    hs = np.column_stack([Rl @ e1, Rl @ e2, Rl @ g])
    cs = c / float(c @ g)
    inner = np.array([cs @ e1, cs @ e2])
    H = HalfspaceIntersection(hs, inner)
    P2 = H.intersections
    P2 = P2[np.all(np.isfinite(P2), axis=1)]
    if len(P2) >= 3:
        try:
            P2 = P2[ConvexHull(P2).vertices]
        except QhullError:
            pass
    V = np.array([normalize(g + a * e1 + b * e2) for a, b in P2])
    V = _dedupe_ring(V)
    interior = normalize(np.mean(V, axis=0)) if len(V) > 2 else c
    return ("polygon", V @ basis, interior @ basis)


def _dedupe_ring(V: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    keep = [0]
    for i in range(1, len(V)):
        if np.linalg.norm(V[i] - V[keep[-1]]) > tol:
            keep.append(i)
    if len(keep) > 1 and np.linalg.norm(V[keep[-1]] - V[keep[0]]) <= tol:
        keep.pop()
    return V[keep]


def _region_from_cone(table: DepthTable, alpha: Fraction) -> CentralRegion:
    den = table.den
    below = table.values * alpha.denominator < alpha.numerator * den
    R = table.rays[below]
    basis = table.basis if table.basis.shape[0] < 3 else np.eye(3)
    sec = _cone_section(R, basis)
    if sec[0] == "empty" or (sec[0] == "points" and not sec[1]):
        return CentralRegion(3, alpha, "empty")
    if sec[0] == "points":
        V = np.array(sec[1])
        return CentralRegion(3, alpha, "spherical_polygon", vertices=V, interior=V[0])
    if sec[0] == "arc":
        V = np.array([sec[1], sec[2]])
        if np.linalg.norm(V[0] - V[1]) <= 1e-12:
            V = V[:1]
        return CentralRegion(3, alpha, "spherical_polygon", vertices=V, interior=normalize(V.sum(0)))
    V, interior = sec[1], sec[2]
    if len(V) <= 2:
        return CentralRegion(3, alpha, "spherical_polygon", vertices=V, interior=normalize(V.sum(0)))
    return CentralRegion(3, alpha, "spherical_polygon", vertices=V, interior=interior)


# ---------------------------------------------------------------------------
# d = 3 grid contour, d >= 4 indicator


def _grid_points(dim: int, resolution: int, seed: int) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    if dim == 3:
        verts, faces = icosphere(resolution)
        return verts, icosphere_edges(faces)
    rng = np.random.default_rng(seed)
    return random_unit(10 * 4 ** resolution + 2, dim, rng), None


def _bisect_boundary(table: DepthTable, A: np.ndarray, B: np.ndarray, alpha: Fraction) -> np.ndarray:
    """Refine boundary crossings between inside ``A`` and outside ``B`` rows."""
    lo = np.zeros(len(A))
    hi = np.ones(len(A))
    ang = np.arccos(np.clip(np.sum(A * B, axis=1), -1.0, 1.0))
    iters = int(math.ceil(math.log2(max(float(ang.max(initial=0.0)), BISECT_TOL) / BISECT_TOL))) + 1
    for _ in range(max(iters, 1)):
        mid = (lo + hi) / 2.0
        P = A + mid[:, None] * (B - A)
        P /= np.linalg.norm(P, axis=1)[:, None]
        ok = _meets(table.query_counts(P), alpha, table.den)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    P = A + lo[:, None] * (B - A)
    return P / np.linalg.norm(P, axis=1)[:, None]


def _polygon_from_points(P: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    c = normalize(P.sum(axis=0))
    e1, e2 = orthonormal_complement(c[None, :], 3)
    G = P / (P @ c)[:, None]
    U = np.column_stack([G @ e1, G @ e2])
    if len(P) >= 3:
        try:
            hull = ConvexHull(U)
            return P[hull.vertices], c
        except QhullError:
            pass
    order = np.argsort(U[:, 0])
    return P[[order[0], order[-1]]] if len(P) > 1 else P, c


def _region_grid(data: SphericalDataset, table: DepthTable, alpha: Fraction,
                 resolution: int, seed: int) -> CentralRegion:
    d = data.dim
    pts, edges = _grid_points(d, resolution, seed)
    inside = _meets(table.query_counts(pts), alpha, data.den)
    if d != 3:
        return CentralRegion(d, alpha, "grid_indicator", grid=pts, mask=inside,
                             resolution=resolution, approximate=True)
    if not inside.any():
        return CentralRegion(3, alpha, "empty", approximate=True)
    a_in, b_in = inside[edges[:, 0]], inside[edges[:, 1]]
    cross = a_in != b_in
    if not cross.any():
        return CentralRegion(3, alpha, "full", approximate=True)
    e = edges[cross]
    first_in = a_in[cross]
    A = np.where(first_in[:, None], pts[e[:, 0]], pts[e[:, 1]])
    B = np.where(first_in[:, None], pts[e[:, 1]], pts[e[:, 0]])
    P = _bisect_boundary(table, A, B, alpha)
    V, c = _polygon_from_points(np.vstack([P, pts[inside]]))
    return CentralRegion(3, alpha, "spherical_polygon", vertices=V, interior=c,
                         resolution=resolution, approximate=True)


# ---------------------------------------------------------------------------
# public region / median API


def _check_alpha(alpha) -> Fraction:
    a = Fraction(alpha) if not isinstance(alpha, float) else Fraction(alpha).limit_denominator(10 ** 12)
    if a < 0 or a > 1:
        from .errors import AlphaOutOfRange
        raise AlphaOutOfRange(f"alpha={a} outside [0, 1]")
    return a


def central_region(data: SphericalDataset, alpha, resolution: int = 5, seed: int = 0,
                   exact_limit: int = EXACT_LIMIT) -> CentralRegion:
    """The closed level set ``{x : AHD(x; data) >= alpha}``."""
    alpha = _check_alpha(alpha)
    if data.dim == 2:
        return _region_circle(data, alpha)
    lo, _ = min_flag(data)
    if alpha <= lo:
        return CentralRegion(data.dim, alpha, "full")
    table = DepthTable(data)
    if data.dim == 3 and data.n <= exact_limit:
        try:
            return _region_from_cone(table, alpha)
        except (RuntimeError, QhullError, ValueError):
            pass
    return _region_grid(data, table, alpha, resolution, seed)


def median_set(data: SphericalDataset, resolution: int = 5, seed: int = 0,
               exact_limit: int = EXACT_LIMIT) -> MedianResult:
    """Maximal depth and the set of its maximizers."""
    if data.dim == 2:
        index = CircleIndex(data)
        crit_d, gap_d = _circle_cells(index)
        top = Fraction(int(max(crit_d.max(), gap_d.max())), data.den)
        return MedianResult(top, _region_circle(data, top))
    table = DepthTable(data)
    if data.dim == 3 and data.n <= exact_limit:
        try:
            return _median_exact(data, table)
        except (RuntimeError, QhullError, ValueError):
            pass
    pts, _ = _grid_points(data.dim, resolution, seed)
    D = table.query_counts(pts)
    best = int(D.max())
    # local refinement around the best grid points
    rng = np.random.default_rng(seed)
    spread = 2.0 * math.sqrt(4.0 * math.pi / len(pts))
    centres = pts[D == best][:64]
    for _ in range(4):
        J = np.repeat(centres, 64, axis=0) + spread * rng.standard_normal((64 * len(centres), data.dim))
        J /= np.linalg.norm(J, axis=1)[:, None]
        DJ = table.query_counts(J)
        if DJ.max() > best:
            best = int(DJ.max())
            centres = J[DJ == best][:64]
        spread /= 2.0
    top = Fraction(best, data.den)
    region = central_region(data, top, resolution, seed, exact_limit=0)
    return MedianResult(top, region, approximate=True)


def _median_exact(data: SphericalDataset, table: DepthTable) -> MedianResult:
    levels = sorted(set(int(v) for v in table.values) | {table.global_min})
    lo, hi = 0, len(levels) - 1  # levels[lo] always attained
    while lo < hi:
        mid = (lo + hi + 1) // 2
        reg = _region_from_cone(table, Fraction(levels[mid], data.den))
        if reg.is_empty:
            hi = mid - 1
        else:
            lo = mid
    top = Fraction(levels[lo], data.den)
    if lo == 0 and len(levels) == 1:
        return MedianResult(top, CentralRegion(3, top, "full"))
    region = central_region(data, top, exact_limit=data.n)
    return MedianResult(top, region)


# ---------------------------------------------------------------------------
# Hausdorff distance


def _arc_candidates(a: CentralRegion, b: CentralRegion) -> np.ndarray:
    arcs_a = a.arcs if a.kind == "arc_list" else [(0.0, TWO_PI)]
    th = [x for arc in arcs_a for x in arc]
    if b.kind == "arc_list":
        bs = sorted(b.arcs)
        for i, (_, hi) in enumerate(bs):
            nlo = bs[(i + 1) % len(bs)][0]
            gap = np.mod(nlo - hi, TWO_PI)
            if gap > 0:
                th.append(hi + gap / 2.0)
    th = np.array(th)
    if a.kind == "arc_list":
        th = th[_arc_distance(th, arcs_a) <= 1e-12]
    return np.column_stack([np.cos(th), np.sin(th)])


def hausdorff(a: CentralRegion, b: CentralRegion, spacing: float = 1e-3) -> float:
    """Symmetric Hausdorff distance between two regions (chord metric)."""
    if a.dim != b.dim:
        raise DimensionMismatch("regions live in different dimensions")
    if a.is_empty or b.is_empty:
        raise EmptyRegion("Hausdorff distance needs nonempty regions")
    if a.dim == 2 and {a.kind, b.kind} <= {"arc_list", "full"}:
        if a.kind == b.kind == "full":
            return 0.0
        da = float(np.max(b.distance(_arc_candidates(a, b)), initial=0.0))
        db = float(np.max(a.distance(_arc_candidates(b, a)), initial=0.0))
        return max(da, db)
    sa = a.sample(spacing)
    sb = b.sample(spacing)
    return float(max(np.max(b.distance(sa), initial=0.0), np.max(a.distance(sb), initial=0.0)))


# ---------------------------------------------------------------------------
# diagnostics


def _depth_fn(data: SphericalDataset) -> Callable[[np.ndarray], np.ndarray]:
    if data.dim == 2:
        index = CircleIndex(data)
        return lambda X: index.query_counts(_angles(X))
    table = DepthTable(data)
    return table.query_counts


def convexity_check(data: SphericalDataset, alpha, trials: int = 200, seed: int = 0) -> DiagnosticReport:
    """Check that geodesics between region points stay in the region."""
    if trials < 1:
        raise ValueError("trials must be positive")
    alpha = _check_alpha(alpha)
    depth = _depth_fn(data)
    rng = np.random.default_rng(seed)
    region = central_region(data, alpha, seed=seed)
    pool = [region.sample(0.05)] if not region.is_empty else []
    cand = random_unit(4000, data.dim, rng)
    pool.append(cand[_meets(depth(cand), alpha, data.den)])
    pool = np.vstack(pool) if pool else np.zeros((0, data.dim))
    if len(pool):
        pool = pool[_meets(depth(pool), alpha, data.den)]
    report = DiagnosticReport("convexity", 0, details={"alpha": alpha, "pool": len(pool)})
    if len(pool) < 1:
        report.details["vacuous"] = True
        return report
    t = np.linspace(0.0, 1.0, 33)[:, None]
    for _ in range(trials):
        i, j = rng.integers(len(pool), size=2)
        x, y = pool[i], pool[j]
        if float(x @ y) <= -1.0 + 1e-9:
            continue
        P = x + t * (y - x)
        P /= np.linalg.norm(P, axis=1)[:, None]
        ok = _meets(depth(P), alpha, data.den)
        report.checked += 1
        if not ok.all():
            report.violations.append((x, y, float(t[np.argmin(ok), 0])))
    return report


def antipodal_min_check(data: SphericalDataset, queries) -> DiagnosticReport:
    """``min(AHD(x), AHD(-x))`` must equal the global minimum depth."""
    Q = as_points(queries, data.dim)
    lo, _ = min_flag(data)
    report = DiagnosticReport("antipodal_min", len(Q), details={"min_depth": lo})
    if not len(Q):
        return report
    depth = _depth_fn(data)
    a, b = depth(Q), depth(-Q)
    m = np.minimum(a, b)
    for k in np.flatnonzero(m * lo.denominator != lo.numerator * data.den):
        report.violations.append((Q[k], Fraction(int(a[k]), data.den), Fraction(int(b[k]), data.den)))
    return report


def closed_hemisphere_test(data: SphericalDataset, alpha, u, x) -> dict:
    """Compare a closed hemisphere ``H = {<y, u> >= 0}`` with the region at ``x``.

    The closed-hemisphere intersection over all ``u`` whose complement has
    mass below ``alpha`` is only a subset of the central region. This reports,
    exactly, whether the given ``u`` qualifies, whether ``x`` lies in ``H``
    and whether ``x`` lies in the region.
    """
    alpha = _check_alpha(alpha)
    u = as_unit(u, 1e-9)
    x = as_unit(x, 1e-9)
    G = data.points @ u
    comp = Fraction(int(data.counts[G < -EPS_CLASS].sum()), data.den)
    dx = Fraction(int(depth_counts(data, x[None, :])[0]), data.den)
    return {"complement_mass": comp, "qualifies": comp < alpha,
            "x_in_halfspace": bool(float(x @ u) >= -EPS_CLASS),
            "depth": dx, "x_in_region": dx >= alpha}


def certificate_halfspace(data: SphericalDataset, x) -> Tuple[np.ndarray, Fraction]:
    """Normal ``v`` of an open halfspace containing ``x`` with weight ``AHD(x)``.

    No atom lies on the boundary of the returned halfspace, so its closed
    version carries the same weight.
    """
    from .depth import ahd_oracle
    x = as_unit(x, 1e-9)
    res = DepthTable(data).depth(x) if data.dim > 2 else ahd_oracle(x, data)
    v = res.witness.generic_normal(np.vstack([data.points, x]))
    return v, res.value


def _grid_for(dim: int, resolution: int, seed: int):
    if dim == 2:
        k = np.arange(resolution)
        th = TWO_PI * k / resolution
        nb = np.column_stack([np.roll(k, 1), np.roll(k, -1)])
        return np.column_stack([np.cos(th), np.sin(th)]), [nb[i] for i in k], th
    verts, faces = icosphere(resolution)
    edges = icosphere_edges(faces)
    nb = [[] for _ in range(len(verts))]
    for a, b in edges:
        nb[a].append(b)
        nb[b].append(a)
    return verts, nb, None


def strict_monotonicity_diagnostic(model_or_data, alpha_grid: Sequence, resolution: int = 720,
                                   seed: int = 0) -> DiagnosticReport:
    """Compare ``{D >= alpha}`` with the closure of ``{D > alpha}`` on a grid.

    Grid points of the level set that are not within one cell of the strict
    region are reported; on the circle they are grouped into angle intervals.
    ``resolution`` is the number of angles for d = 2 and the icosphere level
    for d = 3.
    """
    obj = model_or_data
    if isinstance(obj, SphericalDataset):
        pts, nb, th = _grid_for(obj.dim, resolution, seed)
        den = obj.den
        D = [Fraction(int(v), den) for v in _depth_fn(obj)(pts)]
    else:
        from .models import population_depth_grid
        pts, nb, th = _grid_for(obj.dim, resolution, seed)
        D = population_depth_grid(obj, pts, th)
    lo, hi = min(D), max(D)
    report = DiagnosticReport("strict_monotonicity", 0, details={"min": lo, "max": hi, "flagged": {}})
    if lo == hi:
        report.details["vacuous"] = True
        return report
    for alpha in alpha_grid:
        alpha = _check_alpha(alpha)
        if not lo < alpha < hi:
            continue
        report.checked += 1
        level = np.array([v >= alpha for v in D])
        strict = np.array([v > alpha for v in D])
        near = strict.copy()
        for i in np.flatnonzero(strict):
            near[nb[i]] = True
        bad = np.flatnonzero(level & ~near)
        if len(bad):
            if th is not None:
                intervals = _runs(bad, th, len(pts))
            else:
                intervals = pts[bad]
            report.violations.append((alpha, intervals))
            report.details["flagged"][alpha] = intervals
    return report


def _runs(idx: np.ndarray, th: np.ndarray, K: int) -> List[Tuple[float, float]]:
    s = set(int(i) for i in idx)
    out = []
    for i in sorted(s):
        if (i - 1) % K in s and len(s) < K:
            continue
        j = i
        while (j + 1) % K in s and (j + 1) % K != i:
            j = (j + 1) % K
        lo, hi = float(th[i]), float(th[j])
        out.append((lo, hi if hi >= lo else hi + TWO_PI))
    return out
