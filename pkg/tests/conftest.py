import pytest

from pervcoh.bundled import data_path
from pervcoh.scenario_io import load_scenario


@pytest.fixture(scope="session")
def cone():
    return load_scenario(data_path("cone.json"))


@pytest.fixture(scope="session")
def line():
    return load_scenario(data_path("line.json"))


@pytest.fixture(scope="session")
def plane():
    return load_scenario(data_path("plane.json"))


@pytest.fixture(scope="session")
def bundled(cone, line, plane):
    return {"cone": cone, "line": line, "plane": plane}


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
