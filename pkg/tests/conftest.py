import sys

import pytest

from flagmod.coxeter import build_system


@pytest.fixture(scope="session")
def systems():
    cache = {}

    def get(label):
        if label not in cache:
            cache[label] = build_system(label)
        return cache[label]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
