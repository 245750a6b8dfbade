import itertools

import pytest

from commrank.graph import build_graph

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria[number] = (title, report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome, duration = _criteria[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}  ({duration:.1f}s)")


# ---------------------------------------------------------------------------
# small graphs


def complete(n, w=1.0):
    return build_graph(range(n), [(i, j, w) for i, j in itertools.combinations(range(n), 2)])


def path(n):
    return build_graph(range(n), [(i, i + 1, 1.0) for i in range(n - 1)])


def star(n):
    """Star on n nodes, centre 0."""
    return build_graph(range(n), [(0, i, 1.0) for i in range(1, n)])


def two_triangles(bridge=False):
    edges = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]
    if bridge:
        edges.append((2, 3, 1))
    return build_graph(range(6), edges)


def clique_ring(k=4, size=5):
    edges = []
    for c in range(k):
        base = c * size
        edges += [(base + i, base + j, 1.0) for i, j in itertools.combinations(range(size), 2)]
        edges.append((base + size - 1, ((c + 1) % k) * size, 1.0))
    return build_graph(range(k * size), edges)


def gnp(n, p, rng):
    edges = [(i, j, 1.0) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return build_graph(range(n), edges)
