"""Simulation harness for the large-sample behaviour of depths, regions and medians.

Each experiment runs over an increasing list of sample sizes and a number
of replicates; replicate seeds are derived from ``(seed, n, replicate)`` so
results do not depend on execution order.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from . import models as M
from .depth import CircleIndex, depth_counts
from .errors import AlphaOutOfRange, UnsupportedModel
from .regions import TWO_PI, CentralRegion, central_region, hausdorff, median_set
from .sphere import SphericalDataset, fibonacci_sphere, to_fraction

SCENARIOS = ("iid", "designed", "cap", "alternating", "median_discontinuity")
Measure = Union[SphericalDataset, M.PopulationModel]


@dataclass
class ExperimentSpec:
    """Description of a convergence experiment.

    ``scenario`` selects how the n-th measure is produced: ``"iid"`` samples
    from ``model``; ``"designed"`` uses exact frequencies of an atomic model;
    ``"cap"``, ``"alternating"`` and ``"median_discontinuity"`` are the
    deterministic or structured counterexample sequences (``model`` is then
    implied).
    """

    model: Optional[M.PopulationModel] = None
    sample_sizes: Sequence[int] = (500, 2000, 8000, 20000)
    replications: int = 20
    query_grid: int = 360
    alphas: Sequence = ()
    seed: int = 0
    scenario: str = "iid"
    epsilon: Fraction = Fraction(1, 20)

    def __post_init__(self):
        sizes = list(self.sample_sizes)
        if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])) or sizes[0] < 1:
            raise ValueError("sample sizes must be positive and strictly increasing")
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.scenario in ("iid", "designed") and self.model is None:
            raise ValueError("scenario needs a model")
        if self.scenario == "alternating":
            self.model = M.four_arcs()
        self.alphas = tuple(Fraction(a) if not isinstance(a, float) else to_fraction(a) for a in self.alphas)
        self.epsilon = Fraction(self.epsilon)

    @property
    def deterministic(self) -> bool:
        return self.scenario in ("designed", "cap", "alternating")

    def to_dict(self) -> dict:
        return {"model": None if self.model is None else self.model.to_dict(),
                "sample_sizes": list(self.sample_sizes), "replications": self.replications,
                "query_grid": self.query_grid, "alphas": [str(a) for a in self.alphas],
                "seed": self.seed, "scenario": self.scenario, "epsilon": str(self.epsilon)}

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        model = d.get("model")
        return cls(model=None if model is None else M.from_dict(model),
                   sample_sizes=d.get("sample_sizes", (500, 2000, 8000, 20000)),
                   replications=int(d.get("replications", 20)),
                   query_grid=int(d.get("query_grid", 360)),
                   alphas=[Fraction(str(a)) for a in d.get("alphas", [])],
                   seed=int(d.get("seed", 0)), scenario=d.get("scenario", "iid"),
                   epsilon=Fraction(str(d.get("epsilon", "1/20"))))


@dataclass
class ConvergenceTable:
    rows: List[tuple] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, n: int, replicate: int, statistic: str, value: float):
        self.rows.append((int(n), int(replicate), statistic, float(value)))

    def statistics(self) -> List[str]:
        return sorted({r[2] for r in self.rows})

    def summary(self, statistic: str) -> Dict[int, float]:
        """Median over replicates for each sample size."""
        by_n: Dict[int, list] = {}
        for n, _, s, v in self.rows:
            if s == statistic:
                by_n.setdefault(n, []).append(v)
        return {n: float(np.median(v)) for n, v in sorted(by_n.items())}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "replicate", "statistic", "value"])
        for n, r, s, v in self.rows:
            w.writerow([n, r, s, repr(v)])
        return buf.getvalue()

    def to_json(self, timing: bool = False) -> str:
        meta = dict(self.metadata)
        if not timing:
            meta.pop("wall_time", None)
        clean = lambda v: None if not math.isfinite(v) else v
        out = {"metadata": meta,
               "rows": [{"n": n, "replicate": r, "statistic": s, "value": clean(v)} for n, r, s, v in self.rows],
               "summary": {s: {str(n): clean(v) for n, v in self.summary(s).items()}
                           for s in self.statistics()}}
        return json.dumps(out, indent=2, sort_keys=True)


def replicate_seed(seed: int, n: int, replicate: int) -> int:
    return int(np.random.SeedSequence([seed, n, replicate]).generate_state(1)[0])


# ---------------------------------------------------------------------------
# scenario measures


def cap_measure(n: int) -> M.PopulationModel:
    """Uniform arc of angular radius ``1/n`` around ``e_2``."""
    r = to_fraction(1.0 / (n * math.pi))
    return M.circle_mixture([(Fraction(1, 2) - r, Fraction(1, 2) + r, Fraction(1))])


def point_mass_e2() -> M.PopulationModel:
    return M.circle_mixture([], [(Fraction(1, 2), Fraction(1))])


def alternating_measure(n: int, epsilon: Fraction) -> M.PopulationModel:
    """The four-arc model with mass ``(-1)^n eps/n`` moved between two arcs."""
    F = Fraction
    e = epsilon / n * (1 if n % 2 == 0 else -1)
    return M.circle_mixture([(F(1, 2), F(1), F(1, 2) + e),
                             (F(0), F(1, 4), F(1, 4) - e),
                             (F(1, 4), F(1, 2), F(1, 8)),
                             (F(-3, 4), F(-1, 2), F(1, 8))])


def median_discontinuity_sample(n: int, epsilon: Fraction, seed: int) -> SphericalDataset:
    """Line mixture ``U[-2,-1]`` (mass 1/2 + eps/n) and ``U[1,2]`` lifted to the upper half-circle."""
    rng = np.random.default_rng(seed)
    left = rng.uniform(size=n) < 0.5 + float(epsilon) / n
    y = np.where(left, rng.uniform(-2.0, -1.0, size=n), rng.uniform(1.0, 2.0, size=n))
    X = np.column_stack([y, np.ones(n)])
    X /= np.linalg.norm(X, axis=1)[:, None]
    return SphericalDataset.from_points(X, [Fraction(1, n)] * n)


def _measure(spec: ExperimentSpec, n: int, replicate: int) -> Measure:
    s = spec.scenario
    if s == "iid":
        return M.sample(spec.model, n, replicate_seed(spec.seed, n, replicate))
    if s == "designed":
        return M.designed_sample(spec.model, n)
    if s == "cap":
        return cap_measure(n)
    if s == "alternating":
        return alternating_measure(n, spec.epsilon)
    return median_discontinuity_sample(n, spec.epsilon, replicate_seed(spec.seed, n, replicate))


def _population(spec: ExperimentSpec) -> Measure:
    if spec.scenario == "cap":
        return point_mass_e2()
    if spec.scenario == "median_discontinuity":
        raise UnsupportedModel("no population depth for the lifted line mixture")
    return spec.model


def _grid(spec: ExperimentSpec, dim: int):
    G = spec.query_grid
    if dim == 2:
        t = [Fraction(2 * k, G) for k in range(G)]
        th = np.array([float(v) * math.pi for v in t])
        return np.column_stack([np.cos(th), np.sin(th)]), t
    if dim == 3:
        return fibonacci_sphere(G), None
    raise UnsupportedModel("query grids are available for d = 2 and d = 3")


def _depths(meas: Measure, X: np.ndarray, t) -> list:
    if isinstance(meas, SphericalDataset):
        den = meas.den
        return [Fraction(int(v), den) for v in depth_counts(meas, X)]
    if meas.dim == 2 and meas.kind in ("circle_mixture", "hemisphere_uniform_plus_atom") and t is not None:
        return [M.circle_depth(meas, v) for v in t]
    return M.population_depth_grid(meas, X)


def _region(meas: Measure, alpha: Fraction) -> CentralRegion:
    if isinstance(meas, SphericalDataset):
        return central_region(meas, alpha)
    return M.population_region(meas, alpha)


def _median(meas: Measure) -> CentralRegion:
    if isinstance(meas, SphericalDataset):
        return median_set(meas).region
    return M.population_median(meas).region


def _reps(spec: ExperimentSpec) -> int:
    return 1 if spec.deterministic else spec.replications


def _meta(spec: ExperimentSpec, kind: str, start: float) -> dict:
    return {"experiment": kind, "spec": spec.to_dict(), "seed": spec.seed,
            "model": None if spec.model is None else (spec.model.label or spec.model.kind),
            "wall_time": time.perf_counter() - start}


def _safe_hausdorff(a: CentralRegion, b: CentralRegion) -> float:
    if a.is_empty or b.is_empty:
        return math.inf
    return hausdorff(a, b)


# ---------------------------------------------------------------------------
# experiments


def run_uniform_consistency(spec: ExperimentSpec) -> ConvergenceTable:
    """Sup over the query grid of |sample depth - population depth|."""
    start = time.perf_counter()
    pop = _population(spec)
    X, t = _grid(spec, pop.dim)
    truth = _depths(pop, X, t)
    table = ConvergenceTable()
    for n in spec.sample_sizes:
        for r in range(_reps(spec)):
            meas = _measure(spec, n, r)
            est = _depths(meas, X, t)
            err = max(abs(a - b) for a, b in zip(est, truth))
            table.add(n, r, "sup_error", float(err))
    table.metadata = _meta(spec, "uniform", start)
    return table


def run_region_consistency(spec: ExperimentSpec) -> ConvergenceTable:
    """Hausdorff distance between sample and population central regions."""
    start = time.perf_counter()
    if not spec.alphas:
        raise AlphaOutOfRange("region consistency needs alphas")
    pop = _population(spec)
    X, t = _grid(spec, pop.dim)
    truth = _depths(pop, X, t)
    lo, hi = min(truth), max(truth)
    for a in spec.alphas:
        if not lo < a < hi:
            raise AlphaOutOfRange(f"alpha={a} not inside ({lo}, {hi})")
    pop_regions = {a: _region(pop, a) for a in spec.alphas}
    table = ConvergenceTable()
    for n in spec.sample_sizes:
        for r in range(_reps(spec)):
            meas = _measure(spec, n, r)
            for a in spec.alphas:
                h = _safe_hausdorff(_region(meas, a), pop_regions[a])
                table.add(n, r, f"hausdorff_alpha={a}", h)
    table.metadata = _meta(spec, "region", start)
    return table


def run_median_consistency(spec: ExperimentSpec) -> ConvergenceTable:
    """Hausdorff distance between sample and population median sets.

    Also records the one-sided excess ``sup_{x in sample median} d(x, med(P))``,
    which vanishes under outer semi-continuity even when the Hausdorff
    distance does not.
    """
    start = time.perf_counter()
    if spec.scenario == "median_discontinuity":
        lo, hi = math.pi / 4, 3 * math.pi / 4
        pop_med = CentralRegion(2, Fraction(1, 2), "arc_list", arcs=[(lo, hi)])
    else:
        pop_med = _median(_population(spec))
    table = ConvergenceTable()
    for n in spec.sample_sizes:
        for r in range(_reps(spec)):
            med = _median(_measure(spec, n, r))
            table.add(n, r, "median_hausdorff", _safe_hausdorff(med, pop_med))
            excess = float(np.max(pop_med.distance(med.sample(1e-3)))) if not med.is_empty else math.inf
            table.add(n, r, "median_excess", excess)
    table.metadata = _meta(spec, "median", start)
    return table


RUNNERS = {"uniform": run_uniform_consistency, "region": run_region_consistency,
           "median": run_median_consistency}
