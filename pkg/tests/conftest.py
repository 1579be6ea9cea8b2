import importlib
from pathlib import Path

import pytest

from daginclusion.io import load_dag
from daginclusion.oracle import enumerate_dags, model

FIXTURES = Path(__file__).parent / "fixtures"

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title = marker.args
        _criteria[number] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}")


def fixture_dag(name):
    return load_dag(FIXTURES / name).dag


@pytest.fixture(scope="session")
def dags4():
    return list(enumerate_dags("abcd"))


@pytest.fixture(scope="session")
def models4(dags4):
    return [model(g).bits for g in dags4]


@pytest.fixture(scope="session")
def dags3():
    return list(enumerate_dags("abc"))


@pytest.fixture(params=["python", "cython"])
def kernel_backend(request):
    if request.param == "python":
        return importlib.import_module("daginclusion._pykernels")
    try:
        return importlib.import_module("daginclusion._ckernels")
    except ImportError:
        pytest.skip("compiled kernels not built")
