from pathlib import Path

import pytest

from wconstruct.dsl import read_lattice

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "wconstruct" / "fixtures"

_acceptance: dict = {}


def load_fixture(name: str):
    result = read_lattice(FIXTURES / name)
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.lattice


@pytest.fixture
def fixture_lattice():
    return load_fixture


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and report.when == "call":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance[item.name] = (report.passed, doc)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        passed, doc = _acceptance[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {doc}")
