"""Population models on the sphere: samplers and population depths.

Circle mixtures store every angle as an exact :class:`~fractions.Fraction`
in units of pi, so their depths are exact rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from .errors import DimensionMismatch, UnsupportedModel
from .sphere import SphericalDataset, as_unit, random_unit, to_fraction

KINDS = ("atomic", "circle_mixture", "uniform_sphere", "vmf", "hemisphere_uniform_plus_atom")
TWO = Fraction(2)


def angle_pi(theta: float) -> Fraction:
    """Angle in radians as an exact fraction of pi (snapped to small denominators)."""
    return Fraction(theta / math.pi).limit_denominator(10 ** 9)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v)
    return to_fraction(v)


@dataclass(frozen=True)
class Arc:
    start: Fraction
    end: Fraction
    weight: Fraction
    closed_start: bool = True
    closed_end: bool = True

    @property
    def length(self) -> Fraction:
        return self.end - self.start


@dataclass(eq=False)
class PopulationModel:
    """A probability distribution on the sphere.

    Use the factory functions (:func:`atomic`, :func:`circle_mixture`, ...)
    rather than constructing instances directly.
    """

    kind: str
    dim: int
    points: Optional[np.ndarray] = None
    weights: Tuple[Fraction, ...] = ()
    arcs: Tuple[Arc, ...] = ()
    atoms: Tuple[Tuple[Fraction, Fraction], ...] = ()
    mu: Optional[np.ndarray] = None
    kappa: float = 0.0
    pole: Optional[np.ndarray] = None
    atom: Optional[np.ndarray] = None
    label: str = ""
    _cm: Optional["_CircleMass"] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "dim": self.dim}
        if self.label:
            out["label"] = self.label
        if self.kind == "atomic":
            out["points"] = self.points.tolist()
            out["weights"] = [str(w) for w in self.weights]
        elif self.kind == "circle_mixture":
            out["arcs"] = [{"start": str(a.start), "end": str(a.end), "weight": str(a.weight),
                            "closed_start": a.closed_start, "closed_end": a.closed_end}
                           for a in self.arcs]
            out["atoms"] = [{"angle": str(p), "weight": str(w)} for p, w in self.atoms]
        elif self.kind == "vmf":
            out["mu"] = self.mu.tolist()
            out["kappa"] = self.kappa
        elif self.kind == "hemisphere_uniform_plus_atom":
            out["pole"] = self.pole.tolist()
            out["atom"] = self.atom.tolist()
            out["weights"] = [str(w) for w in self.weights]
        return out


# ---------------------------------------------------------------------------
# factories


def atomic(points, weights=None, label: str = "") -> PopulationModel:
    ds = SphericalDataset.from_points(points, weights)
    return PopulationModel("atomic", ds.dim, points=np.array(ds.points), weights=ds.weights, label=label)


def circle_mixture(arcs: Sequence, atoms: Sequence = (), label: str = "") -> PopulationModel:
    """Mixture of uniform arcs and atoms on the circle.

    ``arcs`` holds ``(start, end, weight[, closed_start, closed_end])`` and
    ``atoms`` holds ``(angle, weight)``; angles are in units of pi.
    """
    A = []
    for a in arcs:
        s, e, w = _frac(a[0]), _frac(a[1]), _frac(a[2])
        cs = bool(a[3]) if len(a) > 3 else True
        ce = bool(a[4]) if len(a) > 4 else True
        if not e > s or e - s > 2:
            raise ValueError(f"bad arc [{s}, {e}]")
        if w <= 0:
            raise ValueError("arc weights must be positive")
        A.append(Arc(s % 2, s % 2 + (e - s), w, cs, ce))
    P = tuple((_frac(p) % 2, _frac(w)) for p, w in atoms)
    total = sum((a.weight for a in A), Fraction(0)) + sum((w for _, w in P), Fraction(0))
    if total != 1:
        raise ValueError(f"total mass {total} != 1")
    m = PopulationModel("circle_mixture", 2, arcs=tuple(A), atoms=P, label=label)
    m._cm = _CircleMass(m.arcs, m.atoms)
    return m


def uniform_sphere(d: int) -> PopulationModel:
    if d < 2:
        raise DimensionMismatch("d must be at least 2")
    return PopulationModel("uniform_sphere", d)


def vmf(mu, kappa: float) -> PopulationModel:
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    mu = as_unit(mu, 1e-9)
    return PopulationModel("vmf", len(mu), mu=mu, kappa=float(kappa))


def hemisphere_uniform_plus_atom(pole, atom, weights=(Fraction(1, 2), Fraction(1, 2))) -> PopulationModel:
    """Uniform mass on the open hemisphere around ``pole`` plus one atom."""
    pole = as_unit(pole, 1e-9)
    atom = as_unit(atom, 1e-9)
    if len(pole) != len(atom):
        raise DimensionMismatch("pole and atom dimensions differ")
    w = tuple(_frac(v) for v in weights)
    if sum(w) != 1:
        raise ValueError("weights must sum to 1")
    return PopulationModel("hemisphere_uniform_plus_atom", len(pole), pole=pole, atom=atom, weights=w)


def four_arcs() -> PopulationModel:
    """Four uniform arcs on the circle whose depth has a flat shoulder at 3/8."""
    F = Fraction
    return circle_mixture([(F(1, 2), F(1), F(1, 2)),
                           (F(0), F(1, 4), F(1, 4)),
                           (F(1, 4), F(1, 2), F(1, 8)),
                           (F(-3, 4), F(-1, 2), F(1, 8))], label="four_arcs")


def four_arcs_depth(t: Fraction) -> Fraction:
    """Closed-form depth of :func:`four_arcs` at angle ``t * pi``, ``t`` in (-1, 1]."""
    t = (t + 1) % 2 - 1
    if t <= 0:
        return Fraction(1, 8)
    if t <= Fraction(1, 4):
        return Fraction(1, 8) + t
    if t <= Fraction(1, 2):
        return Fraction(3, 8)
    if t <= Fraction(3, 4):
        return Fraction(1, 2) - abs(t - Fraction(5, 8))
    return Fraction(1, 8) + (1 - t)


def from_dict(spec: dict) -> PopulationModel:
    kind = spec.get("kind")
    if kind == "four_arcs":
        return four_arcs()
    if kind == "atomic":
        w = spec.get("weights")
        return atomic(spec["points"], None if w is None else [_frac(v) for v in w], spec.get("label", ""))
    if kind == "circle_mixture":
        arcs = [(a["start"], a["end"], a["weight"], a.get("closed_start", True), a.get("closed_end", True))
                for a in spec.get("arcs", [])]
        atoms = [(a["angle"], a["weight"]) for a in spec.get("atoms", [])]
        return circle_mixture(arcs, atoms, spec.get("label", ""))
    if kind == "uniform_sphere":
        return uniform_sphere(int(spec["dim"]))
    if kind == "vmf":
        return vmf(spec["mu"], float(spec["kappa"]))
    if kind == "hemisphere_uniform_plus_atom":
        return hemisphere_uniform_plus_atom(spec["pole"], spec["atom"],
                                            spec.get("weights", ["1/2", "1/2"]))
    raise UnsupportedModel(f"unknown model kind {kind!r}")


# ---------------------------------------------------------------------------
# sampling


def _wood_cosines(kappa: float, d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Cosines ``<X, mu>`` of vMF draws by Wood's rejection scheme."""
    m = d - 1
    b = m / (math.sqrt(4.0 * kappa ** 2 + m ** 2) + 2.0 * kappa)
    x0 = (1.0 - b) / (1.0 + b)
    c = kappa * x0 + m * math.log(1.0 - x0 ** 2)
    out = np.empty(0)
    while len(out) < n:
        k = max(16, int(1.3 * (n - len(out))))
        z = rng.beta(m / 2.0, m / 2.0, size=k)
        w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z)
        u = rng.uniform(size=k)
        ok = kappa * w + m * np.log(1.0 - x0 * w) - c >= np.log(u)
        out = np.concatenate([out, w[ok]])
    return out[:n]


def _sample_points(model: PopulationModel, n: int, rng: np.random.Generator) -> np.ndarray:
    d = model.dim
    if model.kind == "uniform_sphere":
        return random_unit(n, d, rng)
    if model.kind == "atomic":
        p = np.array([float(w) for w in model.weights])
        idx = rng.choice(len(p), size=n, p=p / p.sum())
        return model.points[idx]
    if model.kind == "vmf":
        w = _wood_cosines(model.kappa, d, n, rng)
        v = rng.standard_normal((n, d))
        v -= np.outer(v @ model.mu, model.mu)
        v /= np.linalg.norm(v, axis=1)[:, None]
        return w[:, None] * model.mu + np.sqrt(np.clip(1.0 - w ** 2, 0.0, None))[:, None] * v
    if model.kind == "circle_mixture":
        comps = [(float(a.start), float(a.end)) for a in model.arcs] + [(float(p), float(p)) for p, _ in model.atoms]
        p = np.array([float(a.weight) for a in model.arcs] + [float(w) for _, w in model.atoms])
        idx = rng.choice(len(comps), size=n, p=p / p.sum())
        lo = np.array([c[0] for c in comps])[idx]
        hi = np.array([c[1] for c in comps])[idx]
        t = math.pi * (lo + (hi - lo) * rng.uniform(size=n))
        return np.column_stack([np.cos(t), np.sin(t)])
    if model.kind == "hemisphere_uniform_plus_atom":
        on_atom = rng.uniform(size=n) < float(model.weights[1])
        X = random_unit(n, d, rng)
        X *= np.where(X @ model.pole < 0, -1.0, 1.0)[:, None]
        X[on_atom] = model.atom
        return X
    raise UnsupportedModel(model.kind)


def sample(model: PopulationModel, n: int, seed: int = 0) -> SphericalDataset:
    """``n`` i.i.d. draws with uniform weights ``1/n``."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    X = _sample_points(model, n, rng)
    return SphericalDataset.from_points(X, [Fraction(1, n)] * n)


def designed_sample(model: PopulationModel, n: int) -> SphericalDataset:
    """Exact-frequency sample of an atomic model (``n`` a multiple of the denominator)."""
    if model.kind != "atomic":
        raise UnsupportedModel("designed samples need an atomic model")
    den = math.lcm(*(w.denominator for w in model.weights))
    if n % den:
        raise ValueError(f"n must be a multiple of {den}")
    reps = [int(w * n) for w in model.weights]
    X = np.repeat(model.points, reps, axis=0)
    return SphericalDataset.from_points(X, [Fraction(1, n)] * n)


# ---------------------------------------------------------------------------
# circle mixture depth


def _overlap(s: Fraction, L: Fraction, a: Fraction) -> Fraction:
    """Length of ``[s, s + L]`` (mod 2) inside the window ``[a, a + 1]`` (mod 2)."""
    a = a % 2
    tot = Fraction(0)
    for k in (-2, 0, 2):
        lo = max(s + k, a)
        hi = min(s + k + L, a + 1)
        if hi > lo:
            tot += hi - lo
    return tot


class _CircleMass:
    """Weight ``W(a)`` of the open half-circle ``(a, a + 1)`` (units of pi)."""

    def __init__(self, arcs, atoms):
        self.arcs = arcs
        self.atoms = atoms
        bps = set()
        for a in arcs:
            for v in (a.start, a.end):
                bps.add(v % 2)
                bps.add((v - 1) % 2)
        for p, _ in atoms:
            bps.add(p % 2)
            bps.add((p - 1) % 2)
        bps.add(Fraction(0))
        self.breaks = sorted(bps)

    def cont(self, a: Fraction) -> Fraction:
        return sum((arc.weight * _overlap(arc.start, arc.length, a) / arc.length for arc in self.arcs),
                   Fraction(0))

    def atoms_in(self, a: Fraction) -> Fraction:
        """Atom weight strictly inside ``(a, a + 1)``; ``a`` is not an atom break."""
        a = a % 2
        tot = Fraction(0)
        for p, w in self.atoms:
            if a < p < a + 1 or a < p + 2 < a + 1:
                tot += w
        return tot

    def depth(self, t: Fraction) -> Fraction:
        """Infimum of ``W(a)`` over ``a`` in ``(t - 1, t)``."""
        lo = t - 1
        hi = t
        base = (lo // 2) * 2
        pts = {lo, hi}
        for b in self.breaks:
            for k in (base, base + 2):
                if lo < b + k < hi:
                    pts.add(b + k)
        pts = sorted(pts)
        best = None
        for left, right in zip(pts[:-1], pts[1:]):
            inside = self.atoms_in((left + right) / 2)
            v = min(self.cont(left), self.cont(right)) + inside
            if best is None or v < best:
                best = v
        return best


def _circle_model(model: PopulationModel) -> PopulationModel:
    if model.kind == "circle_mixture":
        return model
    if model.kind == "hemisphere_uniform_plus_atom" and model.dim == 2:
        c = angle_pi(math.atan2(model.pole[1], model.pole[0]))
        p = angle_pi(math.atan2(model.atom[1], model.atom[0]))
        return circle_mixture([(c - Fraction(1, 2), c + Fraction(1, 2), model.weights[0], False, False)],
                              [(p, model.weights[1])])
    raise UnsupportedModel(model.kind)


def circle_depth(model: PopulationModel, t: Fraction) -> Fraction:
    """Exact depth at angle ``t * pi`` for circle models."""
    m = _circle_model(model)
    if m._cm is None:
        m._cm = _CircleMass(m.arcs, m.atoms)
    return m._cm.depth(Fraction(t))


# ---------------------------------------------------------------------------
# vMF depth


def vmf_hemisphere_mass(c: float, kappa: float, d: int) -> float:
    """``P(<X, u> >= 0)`` for a vMF law and any unit ``u`` with ``<u, mu> = c``.

    Integrates over the polar angle of ``X`` around ``mu``; the remaining
    tangent direction contributes a Beta survival probability.
    """
    c = float(np.clip(c, -1.0, 1.0))
    sc = math.sqrt(max(0.0, 1.0 - c * c))
    half = (d - 2) / 2.0

    def tail(s):
        if s <= -1.0:
            return 1.0
        if s >= 1.0:
            return 0.0
        if d == 2:
            return 0.5 * ((1.0 >= s) + (-1.0 >= s))
        return float(special.betainc(half, half, (1.0 - s) / 2.0))

    def dens(phi):
        return math.exp(kappa * (math.cos(phi) - 1.0)) * math.sin(phi) ** (d - 2)

    def integrand(phi):
        t = math.cos(phi)
        st = math.sin(phi)
        if sc < 1e-15 or st < 1e-15:
            g = 1.0 if t * c >= 0 else 0.0
        else:
            g = tail(-t * c / (st * sc))
        return dens(phi) * g

    # split where the Beta argument hits +-1 and around the concentration scale
    pts = [min(math.pi, 3.0 / math.sqrt(kappa)), min(math.pi, 10.0 / math.sqrt(kappa))]
    if sc > 1e-15:
        pts += [math.acos(sc), math.pi - math.acos(sc)]
    pts = sorted(set(p for p in pts if 0.0 < p < math.pi))
    edges = [0.0] + pts + [math.pi]
    num = sum(integrate.quad(integrand, a, b, epsabs=1e-12, epsrel=1e-10, limit=200)[0]
              for a, b in zip(edges[:-1], edges[1:]))
    den = sum(integrate.quad(dens, a, b, epsabs=1e-12, epsrel=1e-10, limit=200)[0]
              for a, b in zip(edges[:-1], edges[1:]))
    return num / den


def vmf_depth(model: PopulationModel, x) -> float:
    x = as_unit(x, 1e-9)
    cos_t = float(np.clip(x @ model.mu, -1.0, 1.0))
    c = -math.sqrt(max(0.0, 1.0 - cos_t ** 2)) if cos_t > 0 else -1.0
    return vmf_hemisphere_mass(c, model.kappa, model.dim)


# ---------------------------------------------------------------------------
# dispatch


def population_depth(model: PopulationModel, x):
    """Depth of ``x`` under the model; exact rational where possible."""
    x = as_unit(x, 1e-9)
    if len(x) != model.dim:
        raise DimensionMismatch("query and model dimensions differ")
    if model.kind == "uniform_sphere":
        return Fraction(1, 2)
    if model.kind == "atomic":
        from .depth import ahd
        return ahd(x, SphericalDataset(model.points, model.weights)).value
    if model.kind == "vmf":
        return vmf_depth(model, x)
    if model.dim == 2 and model.kind in ("circle_mixture", "hemisphere_uniform_plus_atom"):
        return circle_depth(model, angle_pi(math.atan2(x[1], x[0])))
    raise UnsupportedModel(f"no depth formula for {model.kind} in d={model.dim}")


def population_depth_grid(model: PopulationModel, pts: np.ndarray, th=None) -> list:
    """Depth at many grid points (angles ``th`` in radians help snapping on the circle)."""
    if model.dim == 2 and model.kind in ("circle_mixture", "hemisphere_uniform_plus_atom"):
        if th is None:
            th = np.arctan2(pts[:, 1], pts[:, 0])
        return [circle_depth(model, angle_pi(float(t))) for t in th]
    if model.kind == "atomic":
        from .depth import depth_many
        return depth_many(SphericalDataset(model.points, model.weights), pts)
    return [population_depth(model, p) for p in pts]


# ---------------------------------------------------------------------------
# population regions and medians on the circle


def _bisect_level(f, t_in: Fraction, t_out: Fraction, alpha: Fraction, iters: int = 44) -> Fraction:
    lo, hi = t_in, t_out
    for _ in range(iters):
        mid = Fraction((lo + hi) / 2).limit_denominator(10 ** 15)
        if f(mid) >= alpha:
            lo = mid
        else:
            hi = mid
    return lo


def population_region(model: PopulationModel, alpha, resolution: int = 720):
    """Level set of a circle model: grid scan plus exact-depth bisection."""
    from .regions import CentralRegion, TWO_PI
    alpha = _frac(alpha)
    if model.kind == "uniform_sphere":
        kind = "full" if alpha <= Fraction(1, 2) else "empty"
        return CentralRegion(model.dim, alpha, kind)
    if model.kind == "atomic":
        from .regions import central_region
        return central_region(SphericalDataset(model.points, model.weights), alpha)
    m = _circle_model(model)
    f = lambda t: circle_depth(m, t)
    ts = [Fraction(2 * k, resolution) for k in range(resolution)]
    ins = [f(t) >= alpha for t in ts]
    if not any(ins):
        return CentralRegion(2, alpha, "empty", approximate=True)
    if all(ins):
        return CentralRegion(2, alpha, "full", approximate=True)
    K = resolution
    step = Fraction(2, resolution)
    arcs = []
    start = next(i for i in range(K) if ins[i] and not ins[i - 1])
    i = start
    while True:
        j = i
        while ins[(j + 1) % K]:
            j += 1
        tj = ts[j % K] + 2 * (j // K)
        lo = _bisect_level(f, ts[i], ts[i] - step, alpha)
        hi = _bisect_level(f, tj, tj + step, alpha)
        lo_r = float(lo) * math.pi
        hi_r = float(hi) * math.pi
        lo_m = lo_r % TWO_PI
        arcs.append((lo_m, lo_m + (hi_r - lo_r)))
        nxt = next((k for k in range(j + 1, j + K) if ins[k % K] and not ins[(k - 1) % K]), None)
        if nxt is None or nxt % K == start:
            break
        i = nxt % K
    arcs.sort()
    return CentralRegion(2, alpha, "arc_list", arcs=arcs, approximate=True)


def population_median(model: PopulationModel, resolution: int = 720):
    """Maximal population depth and its maximizers (circle models and atomic)."""
    from .regions import CentralRegion, MedianResult, median_set
    if model.kind == "atomic":
        return median_set(SphericalDataset(model.points, model.weights))
    if model.kind == "uniform_sphere":
        return MedianResult(Fraction(1, 2), CentralRegion(model.dim, Fraction(1, 2), "full"))
    m = _circle_model(model)
    f = lambda t: circle_depth(m, t)
    ts = [Fraction(2 * k, resolution) for k in range(resolution)]
    vals = [f(t) for t in ts]
    best = max(vals)
    # refine around each grid maximum by golden-section search on the exact depth
    step = Fraction(2, resolution)
    peaks = []
    for k in [i for i, v in enumerate(vals) if v == best]:
        a, b = float(ts[k] - step), float(ts[k] + step)
        g = (math.sqrt(5.0) - 1.0) / 2.0
        for _ in range(60):
            c1, c2 = b - g * (b - a), a + g * (b - a)
            if f(angle_pi(c1 * math.pi)) >= f(angle_pi(c2 * math.pi)):
                b = c2
            else:
                a = c1
        cand = angle_pi((a + b) / 2.0 * math.pi)
        v = f(cand)
        if v > best:
            best, peaks = v, [cand]
        elif v == best:
            peaks.append(cand)
    region = population_region(m, best, resolution)
    if region.is_empty:
        th = sorted(float(p % 2) * math.pi for p in peaks)
        region = CentralRegion(2, best, "arc_list", arcs=[(t, t) for t in th], approximate=True)
    return MedianResult(best, region, approximate=True)
