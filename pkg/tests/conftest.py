"""Shared fixtures and brute-force oracles.

The oracles here never call into the search code they check: automorphisms
are counted over all n! vertex permutations and containment over all
injections of pattern vertices into host vertices.
"""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from ftspare.fault import build_global_sparing
from ftspare.graph import Graph, hypercube, make_graph
from ftspare.perm import PermGroup, parse_cycles

_PERMS: dict[int, np.ndarray] = {}


def all_perms(n: int) -> np.ndarray:
    if n not in _PERMS:
        _PERMS[n] = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    return _PERMS[n]


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges:
        a[u, v] = a[v, u] = True
    return a


def _perm_chunks(n: int, size: int = 200_000):
    if n <= 8:
        yield all_perms(n)
        return
    # stream larger symmetric groups to bound memory
    perms = itertools.permutations(range(n))
    while chunk := list(itertools.islice(perms, size)):
        yield np.array(chunk, dtype=np.int64)


def brute_aut_count(g: Graph) -> int:
    """|Aut(g)| by testing every vertex permutation against the adjacency matrix."""
    if g.n == 0:
        return 1
    a = adjacency_matrix(g)
    total = 0
    for p in _perm_chunks(g.n):
        permuted = a[p[:, :, None], p[:, None, :]]
        total += int(np.all(permuted == a, axis=(1, 2)).sum())
    return total


_INJECTIONS: dict[tuple[int, int], np.ndarray] = {}


def all_injections(n: int, k: int) -> np.ndarray:
    if (n, k) not in _INJECTIONS:
        _INJECTIONS[n, k] = np.array(list(itertools.permutations(range(n), k)), dtype=np.int64).reshape(-1, k)
    return _INJECTIONS[n, k]


def brute_contains(host: Graph, pattern: Graph) -> bool:
    """Whether some injection of pattern vertices into host vertices preserves every pattern edge."""
    if pattern.n > host.n:
        return False
    if not pattern.edges:
        return True
    ha = adjacency_matrix(host)
    inj = all_injections(host.n, pattern.n)
    ok = np.ones(len(inj), dtype=bool)
    for u, v in pattern.edges:
        ok &= ha[inj[:, u], inj[:, v]]
    return bool(ok.any())


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.random()
    return make_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


@pytest.fixture
def q3() -> Graph:
    return hypercube(3)


@pytest.fixture
def q3_spared() -> Graph:
    return build_global_sparing(hypercube(3), 2, "universal")


@pytest.fixture
def lemma_group() -> PermGroup:
    return PermGroup(7, [parse_cycles("(1 2 3 4 5 6 7)", 7), parse_cycles("(2 3 5)(4 7 6)", 7)])


# one summary line per acceptance criterion

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    prev = _CRITERIA.get(number, (title, "PASS"))[1]
    status = "FAIL" if report.failed or prev == "FAIL" else "PASS"
    _CRITERIA[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
