import re

import numpy as np
import pytest

from muborbits.cli import fourier
from muborbits.dim4 import f4

_ACCEPTANCE = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def F40():
    return f4(0.0)


def fourier_matrix(n):
    return fourier(n)


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_([a-z0-9_]+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = m.group(2).replace("_", " ")
        # parametrized criteria fail if any case fails
        if _ACCEPTANCE.get(key, (name, "passed"))[1] == "passed":
            _ACCEPTANCE[key] = (name, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        name, outcome = _ACCEPTANCE[key]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {key:2d} [{verdict}] {name}")
