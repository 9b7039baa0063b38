import pytest

from singular_sources import make_diff_op, make_grid


@pytest.fixture(scope="session")
def cheb64():
    grid = make_grid("chebyshev", 64)
    return grid, make_diff_op(grid, "chebyshev")


@pytest.fixture(scope="session")
def cheb4():
    grid = make_grid("chebyshev", 4)
    return grid, make_diff_op(grid, "chebyshev")


_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, passed, detail)``."""

    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        _CRITERIA.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_CRITERIA, key=lambda item: item[0]):
        terminalreporter.write_line(line)
