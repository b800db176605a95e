"""Simple undirected graphs on dense integer labels, with graph6 and edge-list I/O.

A :class:`Graph` is immutable: ``n`` vertices labelled ``0..n-1`` and a
frozenset of normalized pairs ``(u, v)`` with ``u < v``.  Adjacency bitmasks
are derived lazily and cached on the instance, which is what the search code
in the other modules works on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidEdge, InvalidVertex, ParseError

Edge = tuple[int, int]

GRAPH6_MAX_N = 62


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidVertex(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InvalidEdge(f"edge ({u}, {v}) is not normalized or out of range for n={self.n}")

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an int bitmask."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adjacency[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adjacency[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def normalize_vertex_set(vertices: Iterable[int], n: int) -> tuple[int, ...]:
    """Sorted, duplicate-free tuple of vertices, each checked against ``[0, n)``."""
    members = sorted(set(vertices))
    for v in members:
        if not (0 <= v < n):
            raise InvalidVertex(f"vertex {v} out of range for n={n}")
    return tuple(members)


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise InvalidVertex(f"vertex count must be non-negative, got {n}")
    normalized = set()
    for pair in edges:
        u, v = pair
        if u == v:
            raise InvalidEdge(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) out of range for n={n}")
        normalized.add((u, v) if u < v else (v, u))
    return Graph(n, frozenset(normalized))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidVertex(f"a cycle needs at least 3 vertices, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def hypercube(d: int) -> Graph:
    """The d-dimensional cube: labels are bit strings, edges join labels at Hamming distance 1."""
    if d < 0:
        raise InvalidVertex(f"dimension must be non-negative, got {d}")
    n = 1 << d
    return make_graph(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if not v >> b & 1])


def complement(g: Graph) -> Graph:
    all_pairs = combinations(range(g.n), 2)
    return Graph(g.n, frozenset(p for p in all_pairs if p not in g.edges))


def delete_vertices(g: Graph, w: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Remove ``w`` and relabel survivors compactly, preserving their relative order.

    Returns the reduced graph and the old-to-new label map of the survivors.
    """
    removed = set(normalize_vertex_set(w, g.n))
    relabel = {}
    for v in range(g.n):
        if v not in removed:
            relabel[v] = len(relabel)
    edges = frozenset(
        (relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel
    )
    return Graph(len(relabel), edges), relabel


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    keep = set(normalize_vertex_set(s, g.n))
    sub, _ = delete_vertices(g, [v for v in range(g.n) if v not in keep])
    return sub


def degree_sequence(g: Graph) -> list[int]:
    return [mask.bit_count() for mask in g.adjacency]


# --- graph6 -------------------------------------------------------------

def _graph6_pairs(n: int):
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def emit_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 short form supports n <= {GRAPH6_MAX_N}, got {g.n}")
    bits = [1 if p in g.edges else 0 for p in _graph6_pairs(g.n)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        value = 0
        for b in bits[i:i + 6]:
            value = (value << 1) | b
        out.append(chr(value + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string")
    codes = [ord(c) for c in s]
    for pos, c in enumerate(codes):
        if not (63 <= c <= 126):
            raise ParseError(f"byte {c} at position {pos} is outside the graph6 range 63..126")
    if codes[0] == 126:
        raise ParseError(f"multi-byte vertex counts (n > {GRAPH6_MAX_N}) are not supported")
    n = codes[0] - 63
    npairs = n * (n - 1) // 2
    expected = math.ceil(npairs / 6)
    body = codes[1:]
    if len(body) < expected:
        raise ParseError(f"truncated graph6 data: expected {expected} bytes after the header, got {len(body)}")
    if len(body) > expected:
        raise ParseError(f"trailing graph6 data: expected {expected} bytes after the header, got {len(body)}")
    bits = []
    for c in body:
        value = c - 63
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[npairs:]):
        raise ParseError("nonzero padding bits in graph6 data")
    edges = frozenset(p for p, b in zip(_graph6_pairs(n), bits) if b)
    return Graph(n, edges)


# --- edge list ----------------------------------------------------------

def emit_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty edge list")
    try:
        header = [int(t) for t in lines[0].split()]
        rows = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer token in edge list: {exc}") from None
    if len(header) != 2:
        raise ParseError("edge list header must be 'n m'")
    n, m = header
    if len(rows) != m:
        raise ParseError(f"edge list header announces {m} edges, found {len(rows)}")
    for row in rows:
        if len(row) != 2:
            raise ParseError(f"edge line must hold two endpoints, got {row}")
    try:
        return make_graph(n, rows)
    except (InvalidEdge, InvalidVertex) as exc:
        raise ParseError(str(exc)) from None


def parse_graph_text(text: str) -> Graph:
    """Parse either format: an 'n m' first line means edge list, otherwise graph6."""
    stripped = text.strip()
    first = stripped.splitlines()[0] if stripped else ""
    tokens = first.split()
    if len(tokens) == 2 and all(t.lstrip("-").isdigit() for t in tokens):
        return parse_edge_list(text)
    if len(stripped.splitlines()) > 1:
        raise ParseError("graph6 input must hold exactly one graph")
    return parse_graph6(stripped)
