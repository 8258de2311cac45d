from pathlib import Path

import pytest

from crndecomp import read_network

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: list[tuple[str, str]] = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240607, help="base seed for random network corpora")


@pytest.fixture(scope="session")
def base_seed(request) -> int:
    return request.config.getoption("--seed")


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load(name: str):
    return read_network(FIXTURES / name)


@pytest.fixture
def record_criterion():
    """Record a PASS/FAIL line for the acceptance summary."""

    def record(label: str, ok: bool) -> None:
        _criteria.append(("PASS" if ok else "FAIL", label))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for status, label in _criteria:
        terminalreporter.write_line(f"{status}  {label}")
