"""Geometric primitives on the unit sphere S^{d-1}.

Points are plain ``numpy`` float arrays; datasets carry exact rational
weights so that depth values can be compared with ``==``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import AntipodalPair, DimensionMismatch, GenericityFailure, ZeroVector

EPS_UNIT = 1e-12
EPS_CLASS = 1e-9
GENERIC_RETRIES = 64


def normalize(v) -> np.ndarray:
    """Return ``v / ||v||`` as a float array.

    Raises
    ------
    ZeroVector
        If the norm is below 1e-300.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.shape[0] < 2:
        raise DimensionMismatch("a direction needs at least 2 coordinates")
    nrm = float(np.linalg.norm(v))
    if not nrm > 1e-300:
        raise ZeroVector("cannot normalize a zero vector")
    return v / nrm


def as_unit(v, tol: float = EPS_UNIT) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.shape[0] < 2:
        raise DimensionMismatch("a direction needs at least 2 coordinates")
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise ValueError(f"not a unit vector (norm {np.linalg.norm(v)!r})")
    return v


def unit_from_angle(theta: float) -> np.ndarray:
    return np.array([math.cos(theta), math.sin(theta)])


def angle_of(v) -> float:
    """Polar angle of a 2-vector in (-pi, pi]."""
    return math.atan2(v[1], v[0])


def snap(values: np.ndarray, eps: float = EPS_CLASS) -> np.ndarray:
    """Zero out entries with ``|value| < eps``."""
    out = np.array(values, dtype=float, copy=True)
    out[np.abs(out) < eps] = 0.0
    return out


def to_fraction(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, float):
        return Fraction(w).limit_denominator(10**12)
    return Fraction(w)


@dataclass(frozen=True, eq=False)
class SphericalDataset:
    """Weighted finite point set on the sphere (an empirical measure).

    ``points`` is an ``(n, d)`` array of unit vectors; ``weights`` are positive
    fractions summing to exactly one. Duplicate points are allowed.
    """

    points: np.ndarray
    weights: tuple

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] < 2:
            raise DimensionMismatch("points must be an (n, d) array with d >= 2")
        if pts.shape[0] == 0:
            raise ValueError("dataset must contain at least one point")
        if len(self.weights) != pts.shape[0]:
            raise ValueError("one weight per point required")
        if np.any(np.abs(np.linalg.norm(pts, axis=1) - 1.0) > 1e-10):
            raise ValueError("all points must be unit vectors")
        ws = tuple(to_fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        if sum(ws) != 1:
            raise ValueError(f"weights must sum to 1, got {sum(ws)}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", ws)

    @classmethod
    def from_points(cls, points, weights: Optional[Iterable] = None,
                    renormalize: bool = True) -> "SphericalDataset":
        """Build a dataset, normalizing rows and rescaling weights to sum one.

        Float weights are converted with ``limit_denominator(10**12)``.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if renormalize:
            nrm = np.linalg.norm(pts, axis=1)
            if np.any(nrm <= 1e-300):
                raise ZeroVector("dataset contains a zero row")
            pts = pts / nrm[:, None]
        if weights is None:
            n = pts.shape[0]
            ws = [Fraction(1, n)] * n
        else:
            ws = [to_fraction(w) for w in weights]
            total = sum(ws)
            if total <= 0:
                raise ValueError("weights must have positive sum")
            ws = [w / total for w in ws]
        return cls(pts, tuple(ws))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @cached_property
    def den(self) -> int:
        """Common denominator of all weights."""
        den = 1
        for w in self.weights:
            den = den * w.denominator // math.gcd(den, w.denominator)
        return den

    @cached_property
    def counts(self) -> np.ndarray:
        """Integer numerators of the weights over :attr:`den`."""
        c = [w.numerator * (self.den // w.denominator) for w in self.weights]
        if max(c) >= 2**62:
            raise OverflowError("weight denominators too large for int64 counts")
        out = np.array(c, dtype=np.int64)
        out.setflags(write=False)
        return out

    def mass(self, count: int) -> Fraction:
        return Fraction(int(count), self.den)


@dataclass(frozen=True, eq=False)
class ProjectedSignedDataset:
    """Gnomonic image of a dataset with signed weights.

    ``signs[i]`` is +1 for preimages in the open northern hemisphere and -1 for
    the southern one; ``southern_mass`` is the total weight of the latter.
    """

    points: np.ndarray
    signs: np.ndarray
    weights: tuple
    southern_mass: Fraction
    pole_rotation: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @cached_property
    def den(self) -> int:
        den = 1
        for w in self.weights:
            den = den * w.denominator // math.gcd(den, w.denominator)
        return den

    @cached_property
    def counts(self) -> np.ndarray:
        return np.array([w.numerator * (self.den // w.denominator) for w in self.weights],
                        dtype=np.int64)


def check_orthogonal(O, tol: float = 1e-10) -> np.ndarray:
    O = np.asarray(O, dtype=float)
    if O.ndim != 2 or O.shape[0] != O.shape[1]:
        raise DimensionMismatch("orthogonal matrix must be square")
    if np.max(np.abs(O @ O.T - np.eye(O.shape[0]))) > tol:
        raise ValueError("matrix is not orthogonal")
    return O


def random_orthogonal(d: int, seed: int) -> np.ndarray:
    """Haar-distributed orthogonal matrix from a QR of a Gaussian ensemble."""
    if d < 2:
        raise DimensionMismatch("d must be at least 2")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def random_linear(d: int, seed: int, max_cond: float = 100.0) -> np.ndarray:
    """Random nonsingular matrix with condition number at most ``max_cond``."""
    rng = np.random.default_rng(seed)
    u = random_orthogonal(d, int(rng.integers(2**31)))
    v = random_orthogonal(d, int(rng.integers(2**31)))
    s = np.exp(rng.uniform(0.0, math.log(max_cond), size=d))
    s[0], s[-1] = 1.0, max_cond ** rng.uniform(0.2, 1.0)
    return u @ np.diag(s) @ v


def apply_rotation(O, data: SphericalDataset) -> SphericalDataset:
    O = check_orthogonal(O)
    return apply_linear(O, data)


def apply_linear(A, data: SphericalDataset) -> SphericalDataset:
    """Push a dataset through ``x -> Ax / ||Ax||``; weights are kept."""
    A = np.asarray(A, dtype=float)
    if A.shape != (data.dim, data.dim):
        raise DimensionMismatch(f"matrix shape {A.shape} does not match d={data.dim}")
    pts = data.points @ A.T
    pts = pts / np.linalg.norm(pts, axis=1)[:, None]
    return SphericalDataset(pts, data.weights)


def _householder_to_pole(u: np.ndarray) -> np.ndarray:
    d = u.shape[0]
    e = np.zeros(d)
    e[-1] = 1.0
    w = u - e
    nw = float(w @ w)
    if nw < 1e-30:
        return np.eye(d)
    return np.eye(d) - 2.0 * np.outer(w, w) / nw


def _margin(points: np.ndarray, x: np.ndarray, u: np.ndarray) -> float:
    m = float(x @ u)
    if points.size:
        m = min(m, float(np.min(np.abs(points @ u))))
    return m


def generic_pole_rotation(data: SphericalDataset, x, seed: int = 0) -> np.ndarray:
    """Orthogonal ``O`` putting no data on the equator and ``O x`` in the north.

    The identity is returned when it already works. Otherwise a handful of
    seeded random poles are drawn per attempt and the one with the largest
    margin is used.
    """
    x = as_unit(x, 1e-9)
    if x.shape[0] != data.dim:
        raise DimensionMismatch("query and data dimensions differ")
    d = data.dim
    e = np.zeros(d)
    e[-1] = 1.0
    if _margin(data.points, x, e) > EPS_CLASS:
        return np.eye(d)
    for attempt in range(GENERIC_RETRIES):
        rng = np.random.default_rng([seed, attempt])
        cand = rng.standard_normal((16, d))
        cand /= np.linalg.norm(cand, axis=1)[:, None]
        cand *= np.where(cand @ x < 0, -1.0, 1.0)[:, None]
        margins = [_margin(data.points, x, u) for u in cand]
        best = int(np.argmax(margins))
        if margins[best] > EPS_CLASS:
            return _householder_to_pole(cand[best])
    raise GenericityFailure("no generic pole found")


def gnomonic_project(data: SphericalDataset, x, seed: int = 0):
    """Rotate to a generic pole and project centrally onto the tangent plane.

    Returns
    -------
    (ProjectedSignedDataset, ndarray)
        The signed planar dataset and the image of the query.
    """
    O = generic_pole_rotation(data, x, seed)
    y = data.points @ O.T
    last = y[:, -1]
    proj = y[:, :-1] / last[:, None]
    signs = np.where(last > 0, 1, -1).astype(np.int64)
    south = sum((w for w, s in zip(data.weights, signs) if s < 0), Fraction(0))
    xr = O @ np.asarray(x, dtype=float)
    pq = xr[:-1] / xr[-1]
    pd = ProjectedSignedDataset(proj, signs, data.weights, south, O)
    return pd, pq


def inverse_gnomonic(z, sign: int = 1) -> np.ndarray:
    """Sphere point whose gnomonic image is ``z`` in the given hemisphere."""
    z = np.asarray(z, dtype=float)
    return sign * normalize(np.append(z, 1.0))


def geodesic_point(a, b, t: float) -> np.ndarray:
    """``normalize(a + t (b - a))`` for non-antipodal ``a``, ``b``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if float(a @ b) <= -1.0 + 1e-12:
        raise AntipodalPair("geodesic undefined for antipodal endpoints")
    return normalize(a + t * (b - a))


def chord(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a, float) - np.asarray(b, float)))


def icosphere(level: int):
    """Vertices and triangular faces of a subdivided icosahedron.

    ``level`` subdivisions give ``10 * 4**level + 2`` vertices.
    """
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [(-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
             (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
             (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1)]
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
             (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
             (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
             (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    verts = [np.array(v, float) / np.linalg.norm(v) for v in verts]
    for _ in range(level):
        cache = {}

        def mid(i, j):
            key = (i, j) if i < j else (j, i)
            if key not in cache:
                verts.append(normalize(verts[i] + verts[j]))
                cache[key] = len(verts) - 1
            return cache[key]

        new = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new
    return np.array(verts), np.array(faces, dtype=np.int64)


def icosphere_edges(faces: np.ndarray) -> np.ndarray:
    e = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    e.sort(axis=1)
    return np.unique(e, axis=0)


def fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(1.0 - z * z)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def random_unit(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((n, d))
    return g / np.linalg.norm(g, axis=1)[:, None]


def orthonormal_complement(B: np.ndarray, d: int) -> np.ndarray:
    """Rows spanning the orthogonal complement of the row space of ``B``."""
    if B.size == 0:
        return np.eye(d)
    _, s, vt = np.linalg.svd(B, full_matrices=True)
    rank = int(np.sum(s > 1e-10))
    return vt[rank:]


def span_basis(M: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal rows spanning the row space of ``M``."""
    if M.size == 0:
        return np.zeros((0, M.shape[1] if M.ndim == 2 else 0))
    _, s, vt = np.linalg.svd(M, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return vt[:rank]


def as_points(queries: Sequence, d: Optional[int] = None) -> np.ndarray:
    Q = np.atleast_2d(np.asarray(queries, dtype=float))
    if d is not None and Q.shape[1] != d:
        raise DimensionMismatch(f"queries have dimension {Q.shape[1]}, expected {d}")
    return Q
