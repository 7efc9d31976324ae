"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from ahdepth import depth as D
from ahdepth import lab
from ahdepth import models as M
from ahdepth import regions as R
from ahdepth.sphere import (SphericalDataset, apply_linear, apply_rotation, fibonacci_sphere,
                            icosphere, random_linear, random_orthogonal, random_unit)
from ahdepth.verify import FIVE_ATOMS, short_arc_point, five_atom_dataset, simplex_dataset, verify_suite

from conftest import random_dataset


def _report(acceptance, k, title, ok, detail):
    acceptance(k, title, ok, detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {k}: {title} [{detail}]")
    assert ok, detail


def _on_short_arc(x, tol=1e-9):
    # the short arc runs between the first and third atom: y = 0, z >= |x|
    return abs(x[1]) <= tol and x[2] >= abs(x[0]) - tol


def test_1_five_atom_vector(acceptance):
    t0 = time.perf_counter()
    data = five_atom_dataset()
    on = [short_arc_point(a) for a in np.linspace(0.0, math.pi / 2, 20)]
    off = [x for x in fibonacci_sphere(60) if not _on_short_arc(x)][:50]
    bad = 0
    for x in on:
        bad += D.ahd_projected(x, data).value != Fraction(2, 5)
        bad += D.ahd_oracle(x, data).value != Fraction(2, 5)
    for x in off:
        bad += D.ahd_projected(x, data).value != Fraction(1, 5)
        bad += D.ahd_oracle(x, data).value != Fraction(1, 5)
    reg = R.central_region(data, Fraction(2, 5))
    V = reg.vertices
    end_err = min(np.arccos(np.clip(np.sum(V * FIVE_ATOMS[[0, 2]], axis=1), -1, 1)).max(),
                  np.arccos(np.clip(np.sum(V * FIVE_ATOMS[[2, 0]], axis=1), -1, 1)).max())
    dt = time.perf_counter() - t0
    ok = len(off) == 50 and bad == 0 and len(V) == 2 and end_err < 1e-6 and dt < 5.0
    _report(acceptance, 1, "five-atom exact depth vector and arc region", ok,
            f"{bad} wrong values, endpoint error {end_err:.2e} rad, {dt:.2f}s")


def test_2_simplex_constancy(acceptance, rng):
    t0 = time.perf_counter()
    bad = []
    for d in (2, 3, 4):
        data = simplex_dataset(d)
        target = Fraction(1, d + 1)
        wrong = sum(D.ahd(x, data).value != target for x in random_unit(100, d, rng))
        if wrong or D.min_flag(data)[0] != target:
            bad.append(f"d={d}: {wrong}")
    dt = time.perf_counter() - t0
    _report(acceptance, 2, "simplex datasets have constant depth 1/(d+1)", not bad and dt < 10.0,
            f"{', '.join(bad) or 'all exact'}, {dt:.2f}s")


def test_3_closed_hemisphere_strictness(acceptance):
    t = R.closed_hemisphere_test(five_atom_dataset(), Fraction(2, 5), [1.0, 0.0, 0.0], FIVE_ATOMS[0])
    ok = t["qualifies"] and not t["x_in_halfspace"] and t["x_in_region"] and t["depth"] == Fraction(2, 5)
    _report(acceptance, 3, "closed-hemisphere intersection excludes a region point", ok,
            f"complement mass {t['complement_mass']}, depth {t['depth']}")


def test_4_four_arc_population_depth(acceptance):
    m = M.four_arcs()
    ts = [Fraction(k, 50) for k in range(-49, 51)]
    bad = 0
    branches = set()
    for t in ts:
        x = np.array([math.cos(float(t) * math.pi), math.sin(float(t) * math.pi)])
        got = M.population_depth(m, x)
        bad += got != M.four_arcs_depth(t)
        branches.add(sum(t > b for b in (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))))
    med = M.population_median(m)
    peak = med.region.arcs[0]
    mid = (peak[0] + peak[1]) / 2
    ok = bad == 0 and len(branches) == 5 and med.max_depth == Fraction(1, 2) \
        and abs(mid - 5 * math.pi / 8) < 1e-6
    _report(acceptance, 4, "four-arc model depth formula and maximizer", ok,
            f"{bad} mismatches over {len(ts)} angles, max {med.max_depth} at {mid / math.pi:.6f} pi")


def test_5_oracle_equivalence(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    fails = 0
    for _ in range(500):
        d = int(rng.integers(2, 5))
        data = random_dataset(rng, d, int(rng.integers(1, 13)))
        x = random_unit(1, d, rng)[0]
        fails += D.ahd(x, data).value != D.ahd_oracle(x, data).value
    dt = time.perf_counter() - t0
    _report(acceptance, 5, "dispatcher equals flag oracle on 500 instances", fails == 0 and dt < 60.0,
            f"{fails} failures, {dt:.2f}s")


def test_6_invariance_battery(acceptance):
    rng = np.random.default_rng(77)
    rot = lin = anti = 0
    for _ in range(100):
        d = int(rng.integers(2, 5))
        data = random_dataset(rng, d, int(rng.integers(2, 12)))
        x = random_unit(1, d, rng)[0]
        v = D.ahd(x, data).value
        O = random_orthogonal(d, int(rng.integers(2 ** 31)))
        rot += D.ahd(O @ x, apply_rotation(O, data)).value != v
    for _ in range(100):
        d = int(rng.integers(2, 5))
        data = random_dataset(rng, d, int(rng.integers(2, 12)))
        x = random_unit(1, d, rng)[0]
        v = D.ahd(x, data).value
        A = random_linear(d, int(rng.integers(2 ** 31)))
        Ax = A @ x
        lin += D.ahd(Ax / np.linalg.norm(Ax), apply_linear(A, data)).value != v
    for _ in range(100):
        d = int(rng.integers(2, 5))
        data = random_dataset(rng, d, int(rng.integers(1, 12)))
        anti += not R.antipodal_min_check(data, random_unit(10, d, rng)).passed
    V, _ = icosphere(5)
    worst = Fraction(1)
    for _ in range(20):
        data = random_dataset(rng, 3, int(rng.integers(5, 41)))
        counts = D.DepthTable(data).query_counts(V)
        worst = min(worst, Fraction(int(counts.max()), data.den))
    ok = rot == lin == anti == 0 and len(V) == 10242 and worst >= Fraction(1, 4) - Fraction(1, 200)
    _report(acceptance, 6, "rotation, linear-map and antipodal invariances; median lower bound", ok,
            f"rotation {rot}, linear {lin}, antipodal {anti} failures; smallest grid max {worst}")


def test_7_convexity(acceptance):
    rng = np.random.default_rng(31)
    viol = 0
    for i in range(200):
        d = 2 + i % 2
        n = int(rng.integers(3, 16))
        data = random_dataset(rng, d, n)
        lo, _ = D.min_flag(data)
        viol += len(R.convexity_check(data, lo + Fraction(1, 2 * n), 50, i).violations)
    _report(acceptance, 7, "central regions are spherically convex", viol == 0,
            f"{viol} violations over 200 datasets")


def test_8_consistency(acceptance):
    t0 = time.perf_counter()
    sizes = (500, 2000, 8000, 20000)
    spec = lab.ExperimentSpec(model=M.four_arcs(), sample_sizes=sizes, replications=20, seed=0)
    sup = lab.run_uniform_consistency(spec).summary("sup_error")[20000]
    spec_r = lab.ExperimentSpec(model=M.four_arcs(), sample_sizes=sizes, replications=20,
                                alphas=[Fraction(9, 20)], seed=0)
    reg = lab.run_region_consistency(spec_r).summary("hausdorff_alpha=9/20")[20000]
    med = lab.run_median_consistency(spec).summary("median_hausdorff")[20000]
    dt = time.perf_counter() - t0
    ok = sup <= 0.02 and reg <= 0.05 and med <= 0.05 and dt < 600.0
    _report(acceptance, 8, "uniform, region and median consistency on the four-arc model", ok,
            f"sup {sup:.4f}, region {reg:.4f}, median {med:.4f} at n=20000, {dt:.1f}s")


def test_9_counterexamples(acceptance):
    cap = lab.run_uniform_consistency(lab.ExperimentSpec(sample_sizes=(10, 100, 1000, 10000),
                                                         scenario="cap"))
    cap_min = min(cap.summary("sup_error").values())
    alt = lab.run_region_consistency(lab.ExperimentSpec(sample_sizes=(100, 101, 1000, 1001, 10000),
                                                        alphas=[Fraction(3, 8)], scenario="alternating"))
    h = list(alt.summary("hausdorff_alpha=3/8").values())
    swing = max(h) - min(h)
    ok = cap_min >= 0.45 and swing >= 0.1
    _report(acceptance, 9, "spherical cap and alternating perturbation counterexamples", ok,
            f"cap min sup error {cap_min:.3f}, alternating swing {swing:.3f}")


def test_10_verify_suite(acceptance):
    good, _ = verify_suite(0)
    bad, results = verify_suite(0, mutate="closed-boundary")
    five = next(r for r in results if r.name == "five_atoms")
    ok = good == 0 and bad != 0 and not five.passed
    _report(acceptance, 10, "verification battery passes and catches the boundary mutation", ok,
            f"exit {good} clean, exit {bad} mutated")
