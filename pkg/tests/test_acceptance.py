"""Acceptance suite: one test (or group of tests) per criterion, each with its runtime bound.

Run ``pytest tests/test_acceptance.py`` for the summary lines; add ``-m slow``
for the seven-vertex enumeration.
"""

import itertools
import random
import time

import pytest

from ftspare.autgroup import automorphism_group
from ftspare.fault import build_global_sparing, find_reconfiguration, is_k_fault_tolerant_realization
from ftspare.graph import complete_graph, cycle_graph, empty_graph, hypercube, make_graph, path_graph
from ftspare.lab import (
    lemma_s7_group,
    verify_group_lemmas,
    verify_lemma_s7,
    verify_main_theorem,
    verify_q3_example,
    verify_theorem_3subsets,
)
from ftspare.perm import compose, is_k_homogeneous, is_k_transitive
from ftspare.subiso import contains_subgraph, is_valid_embedding

from conftest import brute_aut_count, brute_contains, random_graph


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.mark.criterion(1, "degree-7 group: order 21, 2-homogeneous, not 2-transitive, xy = yx^2")
def test_lemma_s7():
    with Timer() as t:
        g = lemma_s7_group()
        x, y = g.generators
        assert g.order() == 21
        assert is_k_homogeneous(g, 2)
        assert not is_k_transitive(g, 2)
        assert compose(x, y) == compose(y, compose(x, x))
        assert verify_lemma_s7().ok
    assert t.elapsed < 1


@pytest.mark.criterion(2, "Q3 with two universal spares: 45 fault pairs, no k-homogeneity for 1..9, spare degree 8")
def test_q3_example():
    with Timer() as t:
        q3 = hypercube(3)
        x = build_global_sparing(q3, 2, "universal")
        res = is_k_fault_tolerant_realization(x, q3, 2)
        assert res.verdict and res.checked_subsets == 45
        spectrum = automorphism_group(x).homogeneity
        assert not any(spectrum[1:10])
        assert [len(x.neighbors(s)) for s in (8, 9)] == [8, 8]
        assert verify_q3_example().ok
    assert t.elapsed < 5


@pytest.mark.criterion(3, "uniform 3-subsets force completeness on 5..6 vertices; C4 is an n = 4 witness")
def test_three_subsets():
    with Timer() as t:
        r = verify_theorem_3subsets(5, 6)
    assert r.counterexamples == []
    assert r.instances_checked == 2 ** 10 + 2 ** 15
    assert "C4" in r.facts["boundary_n4_shapes"]
    assert t.elapsed < 30


@pytest.mark.slow
@pytest.mark.criterion(3, "uniform 3-subsets force completeness on 5..6 vertices; C4 is an n = 4 witness")
def test_three_subsets_n7():
    with Timer() as t:
        r = verify_theorem_3subsets(5, 7)
    assert r.counterexamples == []
    assert r.instances_checked == 2 ** 10 + 2 ** 15 + 2 ** 21
    assert t.elapsed < 600


@pytest.mark.criterion(4, "k-homogeneous Aut (2 <= k <= n-2) forces a complete graph with Aut of order n!, n <= 6")
def test_main_theorem():
    with Timer() as t:
        r = verify_main_theorem(6)
    assert r.counterexamples == []
    assert r.instances_checked == sum(2 ** (n * (n - 1) // 2) - 1 for n in (4, 5, 6))
    assert t.elapsed < 120


@pytest.mark.criterion(5, "group lemmas and orbit-count monotonicity hold over the corpus")
def test_group_lemmas():
    with Timer() as t:
        r = verify_group_lemmas()
    assert r.counterexamples == []
    assert t.elapsed < 10


def _builtins():
    graphs = []
    for n in range(1, 9):
        graphs += [complete_graph(n), path_graph(n), empty_graph(n)]
    graphs += [cycle_graph(n) for n in range(3, 9)]
    graphs += [hypercube(d) for d in range(4)]
    return graphs


@pytest.mark.criterion(6, "Aut order and subgraph containment agree with brute force")
def test_oracle_equivalence_random():
    rng = random.Random(20240611)
    disagreements = []
    for i in range(1000):
        n = rng.randint(1, 7)
        host = random_graph(rng, n)
        if brute_aut_count(host) != automorphism_group(host).order:
            disagreements.append(("aut", host))
        k = rng.randint(1, min(6, n))
        if rng.random() < 0.5:
            # a subgraph of the host on k vertices, relabelled, so positives are common
            picked = rng.sample(range(n), k)
            pos = {v: j for j, v in enumerate(picked)}
            edges = [(pos[u], pos[v]) for u, v in host.edges if u in pos and v in pos and rng.random() < 0.8]
            pattern = make_graph(k, [tuple(sorted(e)) for e in edges])
        else:
            pattern = random_graph(rng, k)
        found = contains_subgraph(host, pattern)
        if (found is not None) != brute_contains(host, pattern):
            disagreements.append(("subiso", host, pattern))
        if found is not None and not is_valid_embedding(host, pattern, found):
            disagreements.append(("witness", host, pattern))
    assert disagreements == []


@pytest.mark.criterion(6, "Aut order and subgraph containment agree with brute force")
def test_oracle_equivalence_builtins():
    graphs = _builtins() + [build_global_sparing(hypercube(3), 2)]
    disagreements = []
    for g in graphs:
        if brute_aut_count(g) != automorphism_group(g).order:
            disagreements.append(("aut", g))
    patterns = [g for g in graphs if g.n <= 6]
    for host in graphs:
        if host.n > 8:
            continue
        for pattern in patterns:
            if (contains_subgraph(host, pattern) is not None) != brute_contains(host, pattern):
                disagreements.append(("subiso", host, pattern))
    assert disagreements == []


@pytest.mark.criterion(7, "reconfiguration: all 45x45 pairs on K10; Q3 with spares only for F = S")
def test_reconfiguration_contract():
    k10 = complete_graph(10)
    aut = automorphism_group(k10)
    pairs = list(itertools.combinations(range(10), 2))
    violations = []
    for s in pairs:
        for f in pairs:
            plan = find_reconfiguration(k10, s, f, aut)
            if plan is None or {plan.automorphism.images[v] for v in s} != set(f):
                violations.append(("K10", s, f))

    x = build_global_sparing(hypercube(3), 2)
    spares = (8, 9)
    for f in pairs:
        plan = find_reconfiguration(x, spares, f)
        if (plan is not None) != (f == spares):
            violations.append(("Q3", spares, f))
    assert violations == []
