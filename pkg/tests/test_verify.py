from ahdepth.verify import CHECKS, MUTATIONS, format_report, verify_suite


def test_clean_build_passes():
    status, results = verify_suite(0)
    assert status == 0 and len(results) == len(CHECKS)
    assert format_report(results).endswith(f"{len(CHECKS)}/{len(CHECKS)} checks passed")


def test_verdicts_do_not_depend_on_seed():
    for seed in (1, 2):
        status, results = verify_suite(seed)
        assert status == 0 and all(r.passed for r in results)


def test_boundary_mutation_is_caught():
    assert "closed-boundary" in MUTATIONS
    status, results = verify_suite(0, "closed-boundary")
    verdicts = {r.name: r.passed for r in results}
    assert status == 1 and not verdicts["five_atoms"]
    # the mutation must not leak into later calls
    assert verify_suite(0)[0] == 0
