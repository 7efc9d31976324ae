import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ahdepth import depth as D
from ahdepth import models as M
from ahdepth import regions as R
from ahdepth.errors import AlphaOutOfRange, EmptyRegion
from ahdepth.sphere import SphericalDataset, fibonacci_sphere, random_unit
from ahdepth.verify import FIVE_ATOMS, five_atom_dataset, simplex_dataset


def test_five_atom_region_is_arc():
    reg = R.central_region(five_atom_dataset(), Fraction(2, 5))
    assert reg.kind == "spherical_polygon" and not reg.approximate
    V = reg.vertices
    assert len(V) == 2
    assert np.allclose(sorted(V[:, 0]), [-math.sqrt(0.5), math.sqrt(0.5)], atol=1e-9)
    assert np.allclose(V[:, 1], 0.0, atol=1e-9)
    assert reg.contains([[0.0, 0.0, 1.0]])[0]
    assert not reg.contains([[0.0, 1.0, 0.0]])[0]


def test_levels_of_five_atoms():
    data = five_atom_dataset()
    assert R.central_region(data, Fraction(1, 5)).kind == "full"
    assert R.central_region(data, Fraction(1, 2)).is_empty
    med = R.median_set(data)
    assert med.max_depth == Fraction(2, 5) and not med.approximate


def test_simplex_region_full_or_empty():
    data = simplex_dataset(2)
    assert R.central_region(data, Fraction(1, 3)).kind == "full"
    assert R.central_region(data, Fraction(34, 100)).is_empty
    assert R.central_region(simplex_dataset(3), Fraction(1, 4)).kind == "full"


def test_single_atom_region_is_point():
    data = SphericalDataset.from_points([[1.0, 0.0]])
    reg = R.central_region(data, 1)
    assert reg.kind == "arc_list" and reg.arcs == [(0.0, 0.0)]
    data3 = SphericalDataset.from_points([[0.0, 0.0, 1.0]])
    reg3 = R.central_region(data3, 1)
    assert np.allclose(reg3.vertices, [[0.0, 0.0, 1.0]])


def test_alpha_out_of_range():
    with pytest.raises(AlphaOutOfRange):
        R.central_region(five_atom_dataset(), Fraction(3, 2))


def test_hausdorff_frozen_value():
    arc = R.central_region(five_atom_dataset(), Fraction(2, 5))
    pole = R.CentralRegion(3, Fraction(1), "spherical_polygon", vertices=np.array([[0.0, 0.0, 1.0]]))
    # chord from the north pole to an arc endpoint at 45 degrees
    assert R.hausdorff(arc, pole) == pytest.approx(2 * math.sin(math.pi / 8), abs=1e-9)
    assert R.hausdorff(arc, arc) == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(EmptyRegion):
        R.hausdorff(arc, R.CentralRegion(3, Fraction(1), "empty"))


def test_hausdorff_arcs_exact():
    a = R.CentralRegion(2, Fraction(1, 2), "arc_list", arcs=[(0.0, 1.0)])
    b = R.CentralRegion(2, Fraction(1, 2), "arc_list", arcs=[(0.5, 2.0)])
    assert R.hausdorff(a, b) == pytest.approx(2 * math.sin(0.5), abs=1e-12)


def test_exact_and_grid_regions_agree():
    rng = np.random.default_rng(4)
    data = SphericalDataset.from_points(rng.standard_normal((15, 3)))
    lo, _ = D.min_flag(data)
    alpha = lo + Fraction(2, 15)
    exact = R.central_region(data, alpha)
    grid = R.central_region(data, alpha, exact_limit=0)
    assert not exact.approximate and grid.approximate
    assert R.hausdorff(exact, grid) < 0.05


def test_grid_region_in_four_dimensions():
    rng = np.random.default_rng(2)
    data = SphericalDataset.from_points(rng.standard_normal((12, 4)))
    lo, _ = D.min_flag(data)
    reg = R.central_region(data, lo + Fraction(1, 12), resolution=3)
    assert reg.kind in ("grid_indicator", "empty")
    if not reg.is_empty:
        inside = reg.grid[reg.mask]
        assert all(v >= lo + Fraction(1, 12) for v in D.depth_many(data, inside))


@st.composite
def dataset_and_alpha(draw):
    d = draw(st.integers(2, 3))
    n = draw(st.integers(2, 12))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    data = SphericalDataset.from_points(rng.standard_normal((n, d)))
    k = draw(st.integers(0, n))
    return data, Fraction(k, n), rng


@settings(max_examples=60, deadline=None)
@given(dataset_and_alpha())
def test_region_matches_depth(inst):
    data, alpha, rng = inst
    reg = R.central_region(data, alpha)
    Q = np.vstack([random_unit(300, data.dim, rng), data.points])
    depth = D.depth_many(data, Q)
    dist = reg.distance(Q)
    for q, v, dq in zip(Q, depth, dist):
        if v >= alpha:
            assert dq <= 1e-6
        elif dq > 1e-6:
            assert v < alpha
    for p in reg.sample(0.05)[:200]:
        assert D.ahd(p, data).value >= alpha or reg.distance(p[None, :])[0] <= 1e-9


@settings(max_examples=40, deadline=None)
@given(dataset_and_alpha())
def test_median_is_max_depth(inst):
    data, _, rng = inst
    med = R.median_set(data)
    assert med.max_depth >= Fraction(1, data.dim + 1)
    grid = random_unit(500, data.dim, rng)
    assert max(D.depth_many(data, grid)) <= med.max_depth
    assert not med.region.is_empty


def test_convexity_and_antipodal_reports():
    data = five_atom_dataset()
    rep = R.convexity_check(data, Fraction(2, 5), 50, 0)
    assert rep.passed and rep.checked > 0
    assert R.antipodal_min_check(data, fibonacci_sphere(50)).passed


def test_closed_hemisphere_strict_subset():
    t = R.closed_hemisphere_test(five_atom_dataset(), Fraction(2, 5), [1, 0, 0], FIVE_ATOMS[0])
    assert t["complement_mass"] == Fraction(1, 5) and t["qualifies"]
    assert not t["x_in_halfspace"] and t["x_in_region"]


def test_certificate_halfspace():
    data = five_atom_dataset()
    x = np.array([0.0, 0.0, -1.0])
    v, val = R.certificate_halfspace(data, x)
    assert val == Fraction(1, 5)
    G = data.points @ v
    assert v @ x > 0 and np.min(np.abs(G)) > 1e-9
    assert sum(w for w, g in zip(data.weights, G) if g > 0) == val


def test_strict_monotonicity_flags_shoulder():
    m = M.four_arcs()
    rep = R.strict_monotonicity_diagnostic(m, [Fraction(3, 8), Fraction(9, 20)])
    flagged = dict(rep.violations)
    assert Fraction(3, 8) in flagged and Fraction(9, 20) not in flagged
    lo, hi = flagged[Fraction(3, 8)][0]
    assert lo == pytest.approx(math.pi / 4, abs=0.02) and hi == pytest.approx(math.pi / 2, abs=0.02)
    assert R.strict_monotonicity_diagnostic(M.uniform_sphere(3), [Fraction(1, 4)], 2).details["vacuous"]
