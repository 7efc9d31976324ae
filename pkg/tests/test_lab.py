import json
import math
from fractions import Fraction

import pytest

from ahdepth import lab
from ahdepth import models as M
from ahdepth.errors import AlphaOutOfRange


def small_spec(**kw):
    base = dict(model=M.four_arcs(), sample_sizes=(100, 400), replications=3, query_grid=120, seed=1)
    base.update(kw)
    return lab.ExperimentSpec(**base)


def test_spec_validation():
    with pytest.raises(ValueError):
        small_spec(sample_sizes=(400, 100))
    with pytest.raises(ValueError):
        small_spec(replications=0)
    with pytest.raises(ValueError):
        small_spec(scenario="bootstrap")
    with pytest.raises(ValueError):
        lab.ExperimentSpec(model=None, scenario="iid")


def test_spec_roundtrip():
    spec = small_spec(alphas=[Fraction(9, 20)])
    back = lab.ExperimentSpec.from_dict(json.loads(json.dumps(spec.to_dict())))
    assert back.to_dict() == spec.to_dict()


def test_replicate_seeds_are_order_free():
    seeds = {lab.replicate_seed(0, n, r) for n in (100, 200) for r in range(10)}
    assert len(seeds) == 20
    assert lab.replicate_seed(0, 100, 3) == lab.replicate_seed(0, 100, 3)


def test_uniform_table_is_byte_stable():
    a = lab.run_uniform_consistency(small_spec())
    b = lab.run_uniform_consistency(small_spec())
    assert a.to_json() == b.to_json() and a.to_csv() == b.to_csv()
    assert "wall_time" not in json.loads(a.to_json())["metadata"]
    assert "wall_time" in json.loads(a.to_json(timing=True))["metadata"]
    assert a.to_csv().splitlines()[0] == "n,replicate,statistic,value"
    assert len(a.rows) == 6


def test_uniform_error_shrinks():
    s = lab.run_uniform_consistency(small_spec(sample_sizes=(100, 10000), replications=5)).summary("sup_error")
    assert s[10000] < s[100] and s[10000] < 0.05


def test_region_needs_valid_alpha():
    with pytest.raises(AlphaOutOfRange):
        lab.run_region_consistency(small_spec())
    with pytest.raises(AlphaOutOfRange):
        lab.run_region_consistency(small_spec(alphas=[Fraction(3, 4)]))


def test_region_and_median_statistics():
    t = lab.run_region_consistency(small_spec(alphas=[Fraction(9, 20)]))
    assert t.statistics() == ["hausdorff_alpha=9/20"]
    m = lab.run_median_consistency(small_spec())
    assert m.statistics() == ["median_excess", "median_hausdorff"]
    assert all(math.isfinite(v) for v in m.summary("median_hausdorff").values())


def test_cap_scenario_never_converges():
    t = lab.run_uniform_consistency(lab.ExperimentSpec(sample_sizes=(10, 1000), scenario="cap"))
    assert t.summary("sup_error") == {10: 0.5, 1000: 0.5}


def test_alternating_measure_masses():
    for n in (10, 11):
        m = lab.alternating_measure(n, Fraction(1, 20))
        sign = 1 if n % 2 == 0 else -1
        assert m.arcs[0].weight == Fraction(1, 2) + sign * Fraction(1, 20) / n
        assert sum(a.weight for a in m.arcs) == 1


def test_alternating_oscillates():
    t = lab.run_region_consistency(lab.ExperimentSpec(sample_sizes=(100, 101, 1000, 1001),
                                                      alphas=[Fraction(3, 8)], scenario="alternating"))
    h = t.summary("hausdorff_alpha=3/8")
    assert h[100] > 0.5 and h[1000] > 0.5
    assert h[101] < 0.01 and h[1001] < 0.01


def test_median_discontinuity_excess_vanishes():
    spec = lab.ExperimentSpec(sample_sizes=(200, 20000), replications=3, scenario="median_discontinuity")
    t = lab.run_median_consistency(spec)
    ex = t.summary("median_excess")
    assert ex[20000] < 0.05
    # the population median is an arc while sample medians are nearly points
    assert t.summary("median_hausdorff")[20000] > 1.0
