"""One-shot verification battery with exact checks.

Every check is seed-independent in its verdict; the seed only changes
which random instances are drawn.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import numpy as np

from . import depth as D
from . import models as M
from . import regions as R
from .sphere import (SphericalDataset, apply_linear, apply_rotation, random_linear,
                     random_orthogonal, random_unit)

MUTATIONS = ("closed-boundary",)

_S = 1.0 / math.sqrt(2.0)
FIVE_ATOMS = np.array([[-_S, 0.0, _S], [0.0, 0.0, 1.0], [_S, 0.0, _S],
                       [0.0, -_S, -_S], [0.0, _S, -_S]])


def five_atom_dataset() -> SphericalDataset:
    return SphericalDataset.from_points(FIVE_ATOMS)


def simplex_dataset(d: int) -> SphericalDataset:
    """``e_1, ..., e_d`` and the normalized negative diagonal, equal weights."""
    pts = np.vstack([np.eye(d), -np.ones(d) / math.sqrt(d)])
    return SphericalDataset.from_points(pts)


def short_arc_point(a: float) -> np.ndarray:
    """Point of the short arc from the first to the third atom, ``a`` in [0, pi/2]."""
    return math.cos(a) * FIVE_ATOMS[0] + math.sin(a) * FIVE_ATOMS[2]


@dataclass
class CheckResult:
    name: str
    anchor: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def _random_instance(rng, d: int, n: int) -> SphericalDataset:
    X = rng.standard_normal((n, d))
    return SphericalDataset.from_points(X)


# ---------------------------------------------------------------------------
# checks


def check_five_atoms(seed: int) -> Tuple[bool, str]:
    data = five_atom_dataset()
    rng = np.random.default_rng(seed)
    on = [short_arc_point(a) for a in np.linspace(0.0, math.pi / 2, 7)]
    off = list(random_unit(12, 3, rng))
    off = [x for x in off if abs(x[1]) > 1e-3]
    bad = []
    for x in on:
        for f in (D.ahd_oracle, D.ahd_projected):
            v = f(x, data).value
            if v != Fraction(2, 5):
                bad.append(f"{f.__name__}{np.round(x, 3).tolist()}={v}")
    for x in off + [np.array([0.0, 0.0, -1.0])]:
        for f in (D.ahd_oracle, D.ahd_projected):
            v = f(x, data).value
            if v != Fraction(1, 5):
                bad.append(f"{f.__name__}{np.round(x, 3).tolist()}={v}")
    if D.min_flag(data)[0] != Fraction(1, 5):
        bad.append("min_flag")
    reg = R.central_region(data, Fraction(2, 5))
    ok_reg = reg.kind == "spherical_polygon" and len(reg.vertices) == 2 and \
        min(np.abs(reg.vertices - FIVE_ATOMS[[0, 2]]).max(), np.abs(reg.vertices - FIVE_ATOMS[[2, 0]]).max()) < 1e-6
    if not ok_reg:
        bad.append("region at 2/5 is not the arc between the first and third atom")
    return not bad, "; ".join(bad[:5]) or "depth 2/5 on the arc, 1/5 elsewhere"


def check_simplex(seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    bad = []
    for d in (2, 3, 4):
        data = simplex_dataset(d)
        target = Fraction(1, d + 1)
        for x in random_unit(20, d, rng):
            if D.ahd(x, data).value != target:
                bad.append(f"d={d}")
                break
        if D.min_flag(data)[0] != target:
            bad.append(f"min_flag d={d}")
    return not bad, ", ".join(bad) or "constant depth 1/(d+1) for d = 2, 3, 4"


def check_closed_hemisphere(seed: int) -> Tuple[bool, str]:
    t = R.closed_hemisphere_test(five_atom_dataset(), Fraction(2, 5), [1.0, 0.0, 0.0], FIVE_ATOMS[0])
    ok = t["qualifies"] and not t["x_in_halfspace"] and t["x_in_region"]
    return ok, f"complement mass {t['complement_mass']}, first atom depth {t['depth']}"


def check_four_arcs(seed: int) -> Tuple[bool, str]:
    m = M.four_arcs()
    bad = [k for k in range(-179, 181) if M.circle_depth(m, Fraction(k, 180)) != M.four_arcs_depth(Fraction(k, 180))]
    peak = M.circle_depth(m, Fraction(5, 8))
    ok = not bad and peak == Fraction(1, 2)
    return ok, f"{len(bad)} mismatches, peak {peak}"


def check_oracle_equivalence(seed: int, trials: int = 120) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    fails = 0
    for i in range(trials):
        d = int(rng.integers(2, 5))
        n = int(rng.integers(1, 13))
        data = _random_instance(rng, d, n)
        x = random_unit(1, d, rng)[0]
        if D.ahd(x, data).value != D.ahd_oracle(x, data).value:
            fails += 1
    return fails == 0, f"{fails} mismatches in {trials} instances"


def check_invariance(seed: int, trials: int = 30) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    fails = 0
    for i in range(trials):
        d = int(rng.integers(2, 5))
        data = _random_instance(rng, d, int(rng.integers(2, 10)))
        x = random_unit(1, d, rng)[0]
        v = D.ahd(x, data).value
        O = random_orthogonal(d, int(rng.integers(2 ** 31)))
        if D.ahd(O @ x, apply_rotation(O, data)).value != v:
            fails += 1
        A = random_linear(d, int(rng.integers(2 ** 31)))
        Ax = A @ x
        if D.ahd(Ax / np.linalg.norm(Ax), apply_linear(A, data)).value != v:
            fails += 1
    return fails == 0, f"{fails} failures in {2 * trials} transformed instances"


def check_antipodal(seed: int, trials: int = 30) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    fails = 0
    for i in range(trials):
        d = int(rng.integers(2, 5))
        data = _random_instance(rng, d, int(rng.integers(1, 10)))
        if not R.antipodal_min_check(data, random_unit(20, d, rng)).passed:
            fails += 1
    return fails == 0, f"{fails} failing datasets"


def check_convexity(seed: int, trials: int = 10) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    viol = 0
    for i in range(trials):
        n = 10
        data = _random_instance(rng, 3, n)
        lo, _ = D.min_flag(data)
        viol += len(R.convexity_check(data, lo + Fraction(1, 2 * n), 30, seed + i).violations)
    viol += len(R.convexity_check(five_atom_dataset(), Fraction(2, 5), 30, seed).violations)
    return viol == 0, f"{viol} violations"


def check_median_bound(seed: int, trials: int = 10) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    bad = 0
    for i in range(trials):
        d = 2 + i % 2
        data = _random_instance(rng, d, int(rng.integers(3, 15)))
        med = R.median_set(data)
        if med.max_depth < Fraction(1, d + 1):
            bad += 1
    return bad == 0, f"{bad} medians below 1/(d+1)"


def check_witnesses(seed: int, trials: int = 40) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    bad = 0
    for i in range(trials):
        d = int(rng.integers(2, 5))
        data = _random_instance(rng, d, int(rng.integers(1, 10)))
        x = random_unit(1, d, rng)[0]
        res = D.ahd(x, data)
        if res.witness.weight(data) != res.value or not res.witness.contains(x)[0]:
            bad += 1
    return bad == 0, f"{bad} witnesses inconsistent"


CHECKS: List[Tuple[str, str, Callable]] = [
    ("five_atoms", "five-atom S^2 example: depth 2/5 on the arc, 1/5 elsewhere, region = arc", check_five_atoms),
    ("simplex", "simplex atoms give constant depth 1/(d+1)", check_simplex),
    ("closed_hemispheres", "closed-hemisphere intersection is a strict subset", check_closed_hemisphere),
    ("four_arc_model", "four-arc circle model: closed-form depth and peak 1/2", check_four_arcs),
    ("oracle_equivalence", "dispatcher agrees with flag oracle", check_oracle_equivalence),
    ("invariance", "rotation and linear-map invariance", check_invariance),
    ("antipodal_min", "min(depth(x), depth(-x)) equals the minimum depth", check_antipodal),
    ("convexity", "central regions are spherically convex", check_convexity),
    ("median_bound", "maximal depth is at least 1/(d+1)", check_median_bound),
    ("witnesses", "flag witness weight equals the depth", check_witnesses),
]


def verify_suite(seed: int = 0, mutate: Optional[str] = None) -> Tuple[int, List[CheckResult]]:
    """Run all checks; returns ``(exit_status, results)``.

    ``mutate="closed-boundary"`` switches the oracle to closed-halfspace
    counting, which the battery must detect.
    """
    if mutate is not None and mutate not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutate!r}")
    mode = "closed" if mutate == "closed-boundary" else "flag"
    results = []
    with D.boundary_mode(mode):
        for name, anchor, fn in CHECKS:
            t0 = time.perf_counter()
            try:
                ok, detail = fn(seed)
            except Exception as exc:  # a crash is a failed check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, anchor, bool(ok), detail, time.perf_counter() - t0))
    status = 0 if all(r.passed for r in results) else 1
    return status, results


def format_report(results: List[CheckResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<20} {r.anchor}  [{r.detail}]")
    n_ok = sum(r.passed for r in results)
    lines.append(f"{n_ok}/{len(results)} checks passed")
    return "\n".join(lines)
