"""Fault-tolerant realizations, global sparing and automorphic reconfiguration.

A host graph X is a k-fault-tolerant realization of a basic graph Y when
deleting any k vertices of X leaves a graph that still contains Y as a
(not necessarily induced) subgraph.  Automorphic reconfiguration asks for an
automorphism of X carrying the spare set onto the fault set.
"""

from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .autgroup import AutomorphismGroupResult, automorphism_group
from .errors import InvalidVertex, OrderMismatch, SizeMismatch
from .graph import Graph, make_graph, normalize_vertex_set
from .perm import Permutation, compose, identity, inverse
from .subiso import contains_subgraph_after_faults

SPARING_POLICIES = ("universal", "universal-clique")


@dataclass(frozen=True)
class RealizationCheck:
    basic: Graph
    host: Graph
    k: int
    verdict: bool
    counterexample: tuple[int, ...] | None
    checked_subsets: int


@dataclass(frozen=True)
class ReconfigPlan:
    host: Graph
    spares: tuple[int, ...]
    faults: tuple[int, ...]
    automorphism: Permutation
    relabel: dict[int, int]


def default_threads() -> int:
    env = os.environ.get("FTSPARE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _lex_rank(subset: tuple[int, ...], n: int) -> int:
    """Position of a k-subset of range(n) in lexicographic order."""
    k = len(subset)
    rank = 0
    prev = -1
    for i, c in enumerate(subset):
        for skipped in range(prev + 1, c):
            rank += math.comb(n - skipped - 1, k - i - 1)
        prev = c
    return rank


def _scan_chunk(host: Graph, basic: Graph, k: int, first: int | None) -> tuple[tuple[int, ...] | None, int]:
    """Scan the k-subsets whose smallest element is ``first`` (all of them when None)."""
    if first is None:
        subsets = combinations(range(host.n), k)
    else:
        subsets = ((first,) + rest for rest in combinations(range(first + 1, host.n), k - 1))
    checked = 0
    for faults in subsets:
        checked += 1
        if contains_subgraph_after_faults(host, basic, faults) is None:
            return faults, checked
    return None, checked


def is_k_fault_tolerant_realization(
    host: Graph,
    basic: Graph,
    k: int,
    relaxed: bool = False,
    threads: int = 1,
    order: Iterable[tuple[int, ...]] | None = None,
) -> RealizationCheck:
    """Check every k-subset of host vertices as a fault set.

    Subsets are scanned lexicographically and the scan stops at the first
    fault set that destroys every copy of ``basic``.  With ``threads > 1`` the
    subset space is split by smallest element across worker processes; the
    reported counterexample is still the lexicographically first one.
    ``order`` replaces the enumeration with an explicit sequence of fault sets.
    """
    if k < 0:
        raise ValueError(f"fault budget must be non-negative, got {k}")
    want = basic.n + k
    if relaxed and host.n < want:
        raise OrderMismatch(f"host has {host.n} vertices, need at least {basic.n} + {k}")
    if not relaxed and host.n != want:
        raise OrderMismatch(f"host has {host.n} vertices, need exactly {basic.n} + {k}")

    if order is not None:
        checked = 0
        for faults in order:
            checked += 1
            if contains_subgraph_after_faults(host, basic, faults) is None:
                return RealizationCheck(basic, host, k, False, tuple(sorted(faults)), checked)
        return RealizationCheck(basic, host, k, True, None, checked)

    total = math.comb(host.n, k)
    if threads <= 1 or k == 0:
        faults, checked = _scan_chunk(host, basic, k, None)
    else:
        firsts = list(range(host.n - k + 1))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_chunk, *zip(*[(host, basic, k, f) for f in firsts])))
        failures = [r[0] for r in results if r[0] is not None]
        faults = min(failures) if failures else None
        checked = _lex_rank(faults, host.n) + 1 if faults is not None else total
    if faults is None:
        return RealizationCheck(basic, host, k, True, None, total)
    return RealizationCheck(basic, host, k, False, faults, checked)


def build_global_sparing(basic: Graph, k: int, spare_adjacency: str = "universal") -> Graph:
    """Add ``k`` spares labelled ``n..n+k-1``, each joined to every basic vertex.

    ``universal`` leaves the spares mutually nonadjacent; ``universal-clique``
    also joins them to each other.
    """
    if k < 0:
        raise ValueError(f"spare count must be non-negative, got {k}")
    if spare_adjacency not in SPARING_POLICIES:
        raise ValueError(f"unknown sparing policy {spare_adjacency!r}; expected one of {SPARING_POLICIES}")
    n = basic.n
    spares = range(n, n + k)
    edges = set(basic.edges)
    edges.update((v, s) for s in spares for v in range(n))
    if spare_adjacency == "universal-clique":
        edges.update(combinations(spares, 2))
    return make_graph(n + k, edges)


def find_reconfiguration(
    host: Graph,
    spares: Iterable[int],
    faults: Iterable[int],
    aut: AutomorphismGroupResult | None = None,
) -> ReconfigPlan | None:
    """Search Aut(host) for an automorphism mapping ``spares`` onto ``faults``.

    Runs a breadth-first search over the orbit of the spare set under the
    automorphism generators, remembering how each subset was reached, and
    multiplies the generators along the path.  ``relabel`` sends each nonfaulty
    vertex to the vertex whose role it takes over.
    """
    spare_list = list(spares)
    fault_list = list(faults)
    s = normalize_vertex_set(spare_list, host.n)
    f = normalize_vertex_set(fault_list, host.n)
    if len(s) != len(spare_list) or len(f) != len(fault_list):
        raise InvalidVertex("spare and fault sets must not repeat vertices")
    if len(s) != len(f):
        raise SizeMismatch(f"{len(s)} spares cannot cover {len(f)} faults")
    if aut is None:
        aut = automorphism_group(host)
    gens = aut.group.generators

    start = frozenset(s)
    target = frozenset(f)
    parent: dict[frozenset[int], tuple[frozenset[int], int] | None] = {start: None}
    queue = deque([start])
    while queue and target not in parent:
        cur = queue.popleft()
        for gi, gen in enumerate(gens):
            img = frozenset(gen.images[v] for v in cur)
            if img not in parent:
                parent[img] = (cur, gi)
                queue.append(img)
    if target not in parent:
        return None

    steps = []
    node = target
    while parent[node] is not None:
        prev, gi = parent[node]
        steps.append(gi)
        node = prev
    g = identity(host.n)
    for gi in reversed(steps):
        g = compose(g, gens[gi])
    ginv = inverse(g)
    relabel = {v: ginv.images[v] for v in range(host.n) if v not in target}
    return ReconfigPlan(host, s, f, g, relabel)


def homogeneity_spectrum_report(host: Graph) -> list[tuple[int, bool | None, bool | None]]:
    """Per k: whether Aut(host) is k-homogeneous, and whether every k-fault set can be
    reached from every spare set by an automorphism (the same property)."""
    spectrum = automorphism_group(host).homogeneity
    return [(k, h, h) for k, h in enumerate(spectrum)]
