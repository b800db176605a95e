"""Non-induced subgraph containment by backtracking over bitmask candidate sets."""

from __future__ import annotations

from typing import Iterable

from .graph import Graph, delete_vertices

Embedding = tuple[int, ...]


def _search_order(pattern: Graph) -> list[int]:
    deg = [m.bit_count() for m in pattern.adjacency]
    return sorted(range(pattern.n), key=lambda v: (-deg[v], v))


def contains_subgraph(host: Graph, pattern: Graph) -> Embedding | None:
    """Find an injective map of pattern vertices into host vertices that preserves edges.

    Extra host edges are allowed.  Pattern vertices are placed by descending
    degree and host candidates are tried in ascending order, so the witness is
    deterministic.  Returns ``None`` when no embedding exists.
    """
    if pattern.n > host.n or pattern.m > host.m:
        return None
    hadj = host.adjacency
    padj = pattern.adjacency
    hdeg = [m.bit_count() for m in hadj]
    order = _search_order(pattern)
    # earlier-placed neighbours of each pattern vertex, in placement order
    back = [[u for u in order[:i] if padj[v] >> u & 1] for i, v in enumerate(order)]
    need = [padj[v].bit_count() for v in order]
    all_host = (1 << host.n) - 1
    eligible = []
    for i in range(len(order)):
        mask = 0
        for h in range(host.n):
            if hdeg[h] >= need[i]:
                mask |= 1 << h
        eligible.append(mask)

    mapping = [-1] * pattern.n

    def extend(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cand = eligible[i] & ~used & all_host
        for u in back[i]:
            cand &= hadj[mapping[u]]
        while cand:
            low = cand & -cand
            h = low.bit_length() - 1
            mapping[v] = h
            if extend(i + 1, used | low):
                return True
            cand ^= low
        mapping[v] = -1
        return False

    if extend(0, 0):
        return tuple(mapping)
    return None


def contains_subgraph_after_faults(host: Graph, pattern: Graph, faults: Iterable[int]) -> Embedding | None:
    """Containment in ``host`` minus ``faults``, with the witness in original host labels."""
    damaged, relabel = delete_vertices(host, faults)
    found = contains_subgraph(damaged, pattern)
    if found is None:
        return None
    back = {new: old for old, new in relabel.items()}
    return tuple(back[h] for h in found)


def is_valid_embedding(host: Graph, pattern: Graph, embedding: Embedding) -> bool:
    """Independent witness check: injective, in range, and every pattern edge lands on a host edge."""
    if len(embedding) != pattern.n or len(set(embedding)) != pattern.n:
        return False
    if any(not (0 <= h < host.n) for h in embedding):
        return False
    for u, v in pattern.edges:
        a, b = embedding[u], embedding[v]
        if (min(a, b), max(a, b)) not in host.edges:
            return False
    return True
