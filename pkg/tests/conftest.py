import numpy as np
import pytest


def random_tree_edges(n, rng):
    """Random labelled spanning tree by random attachment plus relabelling.

    Independent of the Prufer code under test.
    """
    perm = rng.permutation(n) + 1
    edges = []
    for k in range(1, n):
        parent = int(rng.integers(0, k))
        u, v = int(perm[k]), int(perm[parent])
        edges.append((min(u, v), max(u, v)))
    return edges


def brute_residual(a):
    n = len(a)
    return max(
        abs(a[i][j] * a[j][k] / a[i][k] - 1.0)
        for i in range(n)
        for j in range(n)
        for k in range(n)
    )


def rel_diff(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a / b - 1.0)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def example2_text():
    return "1 2 2\n1 3 6\n2 4 3\n"


_criteria: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit-criterion test")
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    outcome = "PASS" if call.excinfo is None else "FAIL"
    _criteria.append((marker.args[0], outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria:
        terminalreporter.write_line(f"{outcome}  {name}")
