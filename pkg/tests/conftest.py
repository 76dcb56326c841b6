import pytest

from mhres import validate_system

ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def bilinear_scaled():
    """l = d = (1, 1), s = (1, 1, 2): the running two-group example."""
    return validate_system((1, 1), (1, 1), (1, 1, 2))


@pytest.fixture(scope="session")
def plane_conics():
    """Three generic conics in the plane: l = (2), d = (2), s = (1, 1, 1)."""
    return validate_system((2,), (2,), (1, 1, 1))


@pytest.fixture(scope="session")
def bilinear_unmixed():
    return validate_system((1, 1), (1, 1), (1, 1, 1))


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
