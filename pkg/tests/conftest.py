import numpy as np
import pytest

from ahdepth.sphere import SphericalDataset

ACCEPTANCE: dict = {}


def record(number: int, title: str, passed: bool, detail: str = ""):
    ACCEPTANCE[number] = (title, bool(passed), detail)


@pytest.fixture
def acceptance():
    return record


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_dataset(rng, d: int, n: int) -> SphericalDataset:
    return SphericalDataset.from_points(rng.standard_normal((n, d)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {title} [{detail}]")
