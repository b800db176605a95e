"""Exhaustive desk-scale checks of the fault-tolerance and homogeneity results.

Each suite returns a :class:`VerificationReport`.  Graph suites walk every
labelled graph on a given number of vertices in edge-bitmask order, where bit
``i`` is the ``i``-th vertex pair in graph6 column order.  Large ranges are
split into chunks that can run in worker processes; chunk results are merged
in a fixed order so reports do not depend on the worker count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from typing import Any, Callable, Iterator

from .autgroup import automorphism_generators, automorphism_group
from .errors import UniverseTooLarge
from .fault import build_global_sparing, homogeneity_spectrum_report, is_k_fault_tolerant_realization
from .graph import Graph, cycle_graph, degree_sequence, delete_vertices, emit_graph6, hypercube
from .perm import (
    PermGroup,
    compose,
    count_orbits_on_ksubsets,
    enumerate_elements,
    is_k_homogeneous,
    is_k_transitive,
    ktuple_orbits,
    orbit_count_monotonicity_check,
    orbit_of_tuple,
    parse_cycles,
    parse_group_text,
)
from .subiso import contains_subgraph

ENUMERATION_CAP = 7
SUITES = ("theorem3subsets", "main", "lemma-s7", "q3", "group-lemmas", "corollaries")


@dataclass
class VerificationReport:
    suite: str
    instances_checked: int
    counterexamples: list[dict[str, Any]]
    elapsed: float
    parameters: dict[str, Any]
    facts: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "ok": self.ok,
            "instances_checked": self.instances_checked,
            "counterexamples": self.counterexamples,
            "parameters": self.parameters,
            "facts": self.facts,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


# --- enumeration --------------------------------------------------------------

def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = _pairs(n)
    return Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def enumerate_labeled_graphs(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Graph]:
    """All 2^C(n,2) labelled graphs on n vertices, in edge-bitmask order."""
    if n > cap:
        raise UniverseTooLarge(f"labelled enumeration is capped at n <= {cap}, got n={n}")
    pairs = _pairs(n)
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_chunks(worker: Callable, n: int, total: int, threads: int) -> list:
    if threads <= 1:
        return [worker(n, 0, total)]
    spans = _chunks(total, threads * 4)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, [n] * len(spans), *zip(*spans)))


def _check_enumeration_range(n_max: int) -> None:
    if n_max > ENUMERATION_CAP:
        raise UniverseTooLarge(f"labelled enumeration is capped at n <= {ENUMERATION_CAP}, got n_max={n_max}")


# --- every 3-subset induces the same subgraph ---------------------------------

def _triple_masks(n: int) -> list[int]:
    index = {p: i for i, p in enumerate(_pairs(n))}
    out = []
    for a, b, c in combinations(range(n), 3):
        out.append((1 << index[(a, b)]) | (1 << index[(a, c)]) | (1 << index[(b, c)]))
    return out


def _uniform_triples_chunk(n: int, lo: int, hi: int) -> list[int]:
    """Nonempty masks in [lo, hi) whose 3-vertex induced subgraphs all have equal edge counts."""
    triples = _triple_masks(n)
    if not triples:
        return []
    first, rest = triples[0], triples[1:]
    hits = []
    for mask in range(max(lo, 1), hi):
        c = (mask & first).bit_count()
        for t in rest:
            if (mask & t).bit_count() != c:
                break
        else:
            hits.append(mask)
    return hits


def _shape_name(g: Graph) -> str:
    degs = sorted(degree_sequence(g))
    if g.is_complete():
        return f"K{g.n}"
    if g.m == g.n and degs == [2] * g.n and contains_subgraph(g, cycle_graph(g.n)) is not None:
        return f"C{g.n}"
    if g.n % 2 == 0 and degs == [1] * g.n:
        return f"{g.n // 2}K2"
    return "degrees " + ",".join(map(str, degs))


def verify_theorem_3subsets(n_min: int = 5, n_max: int = 6, threads: int = 1, boundary: bool = True) -> VerificationReport:
    """Nonempty graphs on at least 5 vertices whose 3-subsets all induce the same graph are complete.

    Two 3-vertex graphs are isomorphic exactly when their edge counts agree, so
    the condition is an edge-count comparison over all triples.  The optional
    n = 4 run lists the noncomplete graphs that satisfy the condition there.
    """
    if not (5 <= n_min <= n_max):
        raise ValueError(f"need 5 <= n_min <= n_max, got {n_min}, {n_max}")
    _check_enumeration_range(n_max)
    start = time.perf_counter()
    counterexamples = []
    checked = 0
    uniform = {}
    for n in range(n_min, n_max + 1):
        total = 1 << math.comb(n, 2)
        checked += total
        hits = sorted(h for part in _run_chunks(_uniform_triples_chunk, n, total, threads) for h in part)
        uniform[str(n)] = len(hits)
        full = total - 1
        for mask in hits:
            if mask != full:
                g = graph_from_mask(n, mask)
                counterexamples.append({"n": n, "graph6": emit_graph6(g), "edges": g.sorted_edges()})
    facts: dict[str, Any] = {"uniform_nonempty_graphs": uniform}
    if boundary:
        witnesses = []
        for mask in _uniform_triples_chunk(4, 0, 1 << 6):
            g = graph_from_mask(4, mask)
            if not g.is_complete():
                witnesses.append({"graph6": emit_graph6(g), "shape": _shape_name(g), "edges": g.sorted_edges()})
        facts["boundary_n4_witnesses"] = witnesses
        facts["boundary_n4_shapes"] = sorted({w["shape"] for w in witnesses})
    return VerificationReport(
        "theorem3subsets", checked, counterexamples, time.perf_counter() - start,
        {"n_min": n_min, "n_max": n_max, "boundary_run": boundary}, facts,
    )


# --- k-homogeneous automorphism groups force completeness -----------------------

def _main_theorem_chunk(n: int, lo: int, hi: int) -> tuple[int, int, list[dict]]:
    full = (1 << math.comb(n, 2)) - 1
    fact = math.factorial(n)
    instances = 0
    homogeneous_hits = 0
    bad = []
    for mask in range(max(lo, 1), hi):
        g = graph_from_mask(n, mask)
        group = PermGroup(n, automorphism_generators(g))
        instances += 1
        for k in range(2, n - 1):
            if not is_k_homogeneous(group, k):
                continue
            homogeneous_hits += 1
            order = group.order()
            if mask != full or order != fact:
                bad.append({"n": n, "k": k, "graph6": emit_graph6(g), "aut_order": order,
                            "complete": mask == full})
    return instances, homogeneous_hits, bad


def verify_main_theorem(n_max: int = 6, threads: int = 1) -> VerificationReport:
    """For every nonempty labelled graph with 4 <= n <= n_max and every 2 <= k <= n-2:
    a k-homogeneous automorphism group means the graph is complete with Aut of order n!."""
    if not (4 <= n_max):
        raise ValueError(f"need n_max >= 4, got {n_max}")
    _check_enumeration_range(n_max)
    start = time.perf_counter()
    checked = 0
    hits = {}
    counterexamples = []
    for n in range(4, n_max + 1):
        total = 1 << math.comb(n, 2)
        parts = _run_chunks(_main_theorem_chunk, n, total, threads)
        checked += sum(p[0] for p in parts)
        hits[str(n)] = sum(p[1] for p in parts)
        counterexamples.extend(c for p in parts for c in p[2])
    facts = {
        "homogeneous_instances_by_n": hits,
        "k2_case_note": "k = 2 instances cover the two-fault statement; no separate suite is needed",
    }
    return VerificationReport("main", checked, counterexamples, time.perf_counter() - start,
                              {"n_min": 4, "n_max": n_max}, facts)


# --- the degree-7 group that is 2-homogeneous but not 2-transitive -------------

def lemma_s7_group() -> PermGroup:
    x = parse_cycles("(1 2 3 4 5 6 7)", 7)
    y = parse_cycles("(2 3 5)(4 7 6)", 7)
    return PermGroup(7, [x, y])


def _expect(failures: list, name: str, got, want) -> None:
    if got != want:
        failures.append({"check": name, "got": got, "expected": want})


def verify_lemma_s7() -> VerificationReport:
    start = time.perf_counter()
    G = lemma_s7_group()
    x, y = G.generators
    order = G.order()
    relation = compose(x, y) == compose(y, compose(x, x))
    hom2 = is_k_homogeneous(G, 2)
    trans2 = is_k_transitive(G, 2)
    pair_orbit = len(orbit_of_tuple(G, (0, 1)))
    pair_orbits = len(ktuple_orbits(G, 2))
    failures: list = []
    _expect(failures, "group_order", order, 21)
    _expect(failures, "xy == yx^2", relation, True)
    _expect(failures, "2-homogeneous", hom2, True)
    _expect(failures, "2-transitive", trans2, False)
    _expect(failures, "ordered_pair_orbit_size", pair_orbit, 21)
    _expect(failures, "order_below_2_transitive_bound", order < 42, True)
    facts = {
        "group_order": order,
        "relation_xy_eq_yx2": relation,
        "is_2_homogeneous": hom2,
        "is_2_transitive": trans2,
        "ordered_pair_orbit_size": pair_orbit,
        "ordered_pair_orbits": pair_orbits,
        "two_transitive_order_lower_bound": 7 * 6,
        "orbits_on_3_subsets": count_orbits_on_ksubsets(G, 3),
    }
    return VerificationReport("lemma-s7", 6, failures, time.perf_counter() - start, {}, facts)


# --- the cube with two universal spares -----------------------------------------

def verify_q3_example() -> VerificationReport:
    start = time.perf_counter()
    q3 = hypercube(3)
    c6 = cycle_graph(6)
    x = build_global_sparing(q3, 2, "universal")
    failures: list = []

    realization = is_k_fault_tolerant_realization(x, q3, 2)
    _expect(failures, "2-fault-tolerant", realization.verdict, True)
    _expect(failures, "fault_pairs_checked", realization.checked_subsets, 45)

    spectrum = homogeneity_spectrum_report(x)
    homogeneous_ks = [k for k, h, _ in spectrum if h]
    _expect(failures, "homogeneous_k_values", homogeneous_ks, [0, x.n])

    degrees = degree_sequence(x)
    spare_degrees = degrees[q3.n:]
    cube_degrees = sorted(set(degrees[:q3.n]))
    _expect(failures, "spare_degrees", spare_degrees, [8, 8])
    vertex_transitive = automorphism_group(x).vertex_transitive
    _expect(failures, "vertex_transitive", vertex_transitive, False)

    antipodal = [(v, v ^ 7) for v in range(8) if v < v ^ 7]
    adjacent = sorted(q3.edges)
    antipodal_c6 = all(contains_subgraph(delete_vertices(q3, p)[0], c6) is not None for p in antipodal)
    adjacent_c6 = all(contains_subgraph(delete_vertices(q3, p)[0], c6) is not None for p in adjacent)
    antipodal_is_c6 = all(delete_vertices(q3, p)[0].m == 6 for p in antipodal)
    _expect(failures, "antipodal_removal_contains_C6", antipodal_c6, True)
    _expect(failures, "antipodal_removal_is_exactly_C6", antipodal_is_c6, True)
    _expect(failures, "adjacent_removal_contains_C6", adjacent_c6, True)

    facts = {
        "host_graph6": emit_graph6(x),
        "host_vertices": x.n,
        "host_edges": x.m,
        "fault_pairs_checked": realization.checked_subsets,
        "realization_verdict": realization.verdict,
        "homogeneity_spectrum": [h for _, h, _ in spectrum],
        "spare_degrees": spare_degrees,
        "cube_vertex_degrees": cube_degrees,
        "vertex_transitive": vertex_transitive,
        "antipodal_pairs_checked": len(antipodal),
        "adjacent_pairs_checked": len(adjacent),
    }
    instances = realization.checked_subsets + len(antipodal) + len(adjacent) + len(spectrum)
    return VerificationReport("q3", instances, failures, time.perf_counter() - start, {}, facts)


# --- permutation-group lemmas over a fixed corpus -------------------------------

def load_group_corpus() -> dict[str, PermGroup]:
    text = resources.files("ftspare").joinpath("data/group_corpus.txt").read_text()
    corpus = {}
    for block in text.split("\n\n"):
        lines = [ln for ln in block.strip().splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            continue
        head = lines[0].split()
        if head[0] != "group" or len(head) != 2:
            raise ValueError(f"corpus block must start with 'group <name>': {lines[0]!r}")
        corpus[head[1]] = parse_group_text("\n".join(lines[1:]))
    return corpus


def verify_group_lemmas(corpus: dict[str, PermGroup] | None = None) -> VerificationReport:
    """Transitivity implies homogeneity, k/(n-k) homogeneity symmetry, transitivity descends,
    and orbit counts on m-subsets never exceed those on k-subsets for m <= k, m + k <= n."""
    start = time.perf_counter()
    if corpus is None:
        corpus = load_group_corpus()
    violations = []
    instances = 0
    summary = {}
    for name, G in corpus.items():
        n = G.degree
        hom = [is_k_homogeneous(G, k) for k in range(n + 1)]
        trans = [is_k_transitive(G, k) for k in range(n + 1)]
        order = G.order()
        if order <= 10000:
            instances += 1
            brute = sum(1 for _ in enumerate_elements(G))
            if brute != order:
                violations.append({"group": name, "check": "order_vs_closure", "chain": order, "closure": brute})
        for k in range(n + 1):
            instances += 2
            if trans[k] and not hom[k]:
                violations.append({"group": name, "check": "transitive_implies_homogeneous", "k": k})
            if hom[k] != hom[n - k]:
                violations.append({"group": name, "check": "homogeneous_complement", "k": k})
            if k >= 2:
                instances += 1
                if trans[k] and not trans[k - 1]:
                    violations.append({"group": name, "check": "transitive_descends", "k": k})
        for k in range(n + 1):
            for m in range(0, k + 1):
                if m + k > n:
                    continue
                instances += 1
                res = orbit_count_monotonicity_check(G, m, k)
                if not res.holds:
                    violations.append({"group": name, "check": "orbit_count_monotonicity", "m": m, "k": k,
                                       "orbits_m": res.orbits_m, "orbits_k": res.orbits_k})
        summary[name] = {"degree": n, "order": order,
                         "homogeneous": [k for k in range(n + 1) if hom[k]],
                         "transitive": [k for k in range(n + 1) if trans[k]]}
    return VerificationReport("group-lemmas", instances, violations, time.perf_counter() - start,
                              {"corpus": sorted(corpus)}, {"groups": summary})


# --- corollaries: homogeneity descends and Aut is the full symmetric group --------

def _corollary_chunk(n: int, lo: int, hi: int) -> tuple[int, int, list[dict]]:
    fact = math.factorial(n)
    instances = 0
    qualifying = 0
    bad = []
    for mask in range(lo, hi):
        g = graph_from_mask(n, mask)
        group = PermGroup(n, automorphism_generators(g))
        instances += 1
        hom = [None, None] + [is_k_homogeneous(group, k) for k in range(2, n - 1)]
        ks = [k for k in range(2, n - 1) if hom[k]]
        if not ks:
            continue
        qualifying += 1
        order = group.order()
        if order != fact:
            bad.append({"n": n, "graph6": emit_graph6(g), "check": "aut_is_symmetric", "aut_order": order})
        for k in ks:
            missing = [i for i in range(1, k) if not is_k_homogeneous(group, i)]
            if missing:
                bad.append({"n": n, "graph6": emit_graph6(g), "check": "homogeneity_descends",
                            "k": k, "missing": missing})
    return instances, qualifying, bad


def corollary_checks(n_max: int = 6, threads: int = 1) -> VerificationReport:
    if not (4 <= n_max):
        raise ValueError(f"need n_max >= 4, got {n_max}")
    _check_enumeration_range(n_max)
    start = time.perf_counter()
    checked = 0
    qualifying = {}
    counterexamples = []
    for n in range(4, n_max + 1):
        parts = _run_chunks(_corollary_chunk, n, 1 << math.comb(n, 2), threads)
        checked += sum(p[0] for p in parts)
        qualifying[str(n)] = sum(p[1] for p in parts)
        counterexamples.extend(c for p in parts for c in p[2])

    cycles = {}
    for n in range(4, n_max + 1):
        c = cycle_graph(n)
        group = PermGroup(n, automorphism_generators(c))
        hom = [is_k_homogeneous(group, k) for k in range(n + 1)]
        cycles[f"C{n}"] = hom
        checked += 1
        expected = [True, True] + [False] * (n - 3) + [True, True]
        if hom != expected:
            counterexamples.append({"n": n, "graph6": emit_graph6(c), "check": "cycle_tightness",
                                    "spectrum": hom, "expected": expected})
    facts = {"qualifying_graphs_by_n": qualifying, "cycle_spectra": cycles}
    return VerificationReport("corollaries", checked, counterexamples, time.perf_counter() - start,
                              {"n_min": 4, "n_max": n_max}, facts)


def run_suite(name: str, n_max: int = 6, threads: int = 1) -> list[VerificationReport]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, n_max, threads)]
    if name == "theorem3subsets":
        return [verify_theorem_3subsets(5, max(5, n_max), threads)]
    if name == "main":
        return [verify_main_theorem(n_max, threads)]
    if name == "lemma-s7":
        return [verify_lemma_s7()]
    if name == "q3":
        return [verify_q3_example()]
    if name == "group-lemmas":
        return [verify_group_lemmas()]
    if name == "corollaries":
        return [corollary_checks(n_max, threads)]
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
