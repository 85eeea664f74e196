import numpy as np
import pytest

from hlindex.graph import Graph, from_edge_list


def cycle(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def random_graph(rng: np.random.Generator, n: int, p: float, multi: bool = False) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    if multi:
        pairs += [e for e in pairs if rng.random() < 0.2]
    return from_edge_list(n, pairs)


def numpy_spectrum(M) -> np.ndarray:
    """Reference eigenvalues from LAPACK, descending."""
    return np.sort(np.linalg.eigvalsh(np.asarray(M)))[::-1]


@pytest.fixture
def rng():
    return np.random.default_rng(20241016)


# --- acceptance gate reporting ---------------------------------------------

_criteria: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
        _criteria.append((marker.args[0], "PASS" if rep.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, detail in _criteria:
        terminalreporter.write_line(f"{status}  {label}" + (f"  [{detail}]" if detail else ""))
