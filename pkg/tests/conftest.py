import numpy as np
import pytest

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::test_criterion_")[1]
    if report.when == "call" or report.failed:
        _CRITERIA.setdefault(name, report.outcome)
        if report.failed:
            _CRITERIA[name] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        num, _, label = name.partition("_")
        status = "PASS" if _CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {int(num):2d} {label.replace('_', ' ')}: {status}")
