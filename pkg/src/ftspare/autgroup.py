"""Automorphism groups of graphs by partition refinement and backtracking.

The search follows the usual individualize-and-refine scheme.  A first path
down the search tree fixes a base ``b_1, ..., b_m``.  Working from the deepest
level up, for every vertex ``w`` in the target cell at level ``i`` that is not
yet in the orbit of ``b_i`` under the generators found so far (all of which
fix ``b_1..b_{i-1}``), a backtracking search looks for an automorphism that
fixes ``b_1..b_{i-1}`` and sends ``b_i`` to ``w``.  Each success becomes a
generator, so at the end the generators reach every coset of every stabilizer
in the chain and generate the whole group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DegreeMismatch, FtspareError
from .graph import Graph
from .perm import DEFAULT_CAP, Permutation, PermGroup, is_k_homogeneous, is_k_transitive, orbit_of_point

Partition = tuple[tuple[int, ...], ...]


def _mask(cell) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def refine(adj: tuple[int, ...], cells: Partition) -> Partition:
    """Coarsest equitable refinement of an ordered partition.

    Cells are split by the number of neighbours each vertex has in a splitter
    cell; the pieces are ordered by that count.  The result depends only on the
    graph structure and the cell order, so it commutes with isomorphisms.
    """
    cells = [tuple(c) for c in cells]
    si = 0
    while si < len(cells):
        smask = _mask(cells[si])
        new_cells = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
                continue
            split = True
            for count in sorted(groups):
                new_cells.append(tuple(sorted(groups[count])))
        cells = new_cells
        si = 0 if split else si + 1
    return tuple(cells)


def _individualize(cells: Partition, i: int, v: int) -> Partition:
    rest = tuple(x for x in cells[i] if x != v)
    return cells[:i] + ((v,), rest) + cells[i + 1:]


def _target_cell(cells: Partition) -> int:
    for i, c in enumerate(cells):
        if len(c) > 1:
            return i
    return -1


def _quotient(adj: tuple[int, ...], cells: Partition) -> tuple:
    masks = [_mask(c) for c in cells]
    return tuple(
        (len(c), tuple((adj[c[0]] & m).bit_count() for m in masks)) for c in cells
    )


def _edge_preserving(adj: tuple[int, ...], images: list[int]) -> bool:
    for u, nbrs in enumerate(adj):
        image_nbrs = 0
        m = nbrs
        while m:
            low = m & -m
            image_nbrs |= 1 << images[low.bit_length() - 1]
            m ^= low
        if adj[images[u]] != image_nbrs:
            return False
    return True


def _search(adj, left: Partition, right: Partition) -> list[int] | None:
    if _quotient(adj, left) != _quotient(adj, right):
        return None
    i = _target_cell(left)
    if i < 0:
        images = [0] * len(adj)
        for lc, rc in zip(left, right):
            images[lc[0]] = rc[0]
        return images if _edge_preserving(adj, images) else None
    v = left[i][0]
    left_child = refine(adj, _individualize(left, i, v))
    for w in right[i]:
        found = _search(adj, left_child, refine(adj, _individualize(right, i, w)))
        if found is not None:
            return found
    return None


def automorphism_generators(g: Graph) -> list[Permutation]:
    n = g.n
    adj = g.adjacency
    if n == 0:
        return []
    partitions = [refine(adj, (tuple(range(n)),))]
    base = []
    while (i := _target_cell(partitions[-1])) >= 0:
        v = partitions[-1][i][0]
        base.append(v)
        partitions.append(refine(adj, _individualize(partitions[-1], i, v)))

    gens: list[Permutation] = []
    for level in reversed(range(len(base))):
        cells = partitions[level]
        i = _target_cell(cells)
        b = base[level]
        fixed = base[:level]
        stab = [h for h in gens if all(h.images[x] == x for x in fixed)]
        orbit = set(orbit_of_point(PermGroup(n, stab), b))
        for w in cells[i]:
            if w in orbit:
                continue
            images = _search(adj, partitions[level + 1], refine(adj, _individualize(cells, i, w)))
            if images is not None:
                h = Permutation(tuple(images))
                gens.append(h)
                stab.append(h)
                orbit = set(orbit_of_point(PermGroup(n, stab), b))
    return gens


def is_automorphism(g: Graph, p: Permutation) -> bool:
    if p.degree != g.n:
        raise DegreeMismatch(f"permutation of degree {p.degree} on a graph with {g.n} vertices")
    image = {tuple(sorted((p.images[u], p.images[v]))) for u, v in g.edges}
    return image == g.edges


@dataclass(frozen=True)
class AutomorphismGroupResult:
    group: PermGroup
    order: int
    vertex_transitive: bool
    # entry k is None when the k-subset universe exceeded the cap
    homogeneity: tuple[bool | None, ...]


def homogeneity_spectrum(group: PermGroup, cap: int = DEFAULT_CAP) -> tuple[bool | None, ...]:
    n = group.degree
    order = group.order()
    full = order == math.factorial(n)
    out = []
    for k in range(n + 1):
        size = math.comb(n, k)
        if full:
            out.append(True)
        elif order < size:
            # orbit-stabilizer: no orbit is longer than the group order
            out.append(False)
        else:
            try:
                out.append(is_k_homogeneous(group, k, cap))
            except FtspareError:
                out.append(None)
    return tuple(out)


@lru_cache(maxsize=256)
def automorphism_group(g: Graph, cap: int = DEFAULT_CAP) -> AutomorphismGroupResult:
    group = PermGroup(g.n, automorphism_generators(g))
    spectrum = homogeneity_spectrum(group, cap)
    vertex_transitive = len(orbit_of_point(group, 0)) == g.n if g.n else True
    return AutomorphismGroupResult(group, group.order(), vertex_transitive, spectrum)


def max_homogeneity(g: Graph, cap: int = DEFAULT_CAP) -> int:
    """Largest k such that Aut(g) is i-homogeneous for every i <= k."""
    spectrum = automorphism_group(g, cap).homogeneity
    k = 0
    while k + 1 < len(spectrum) and spectrum[k + 1] is True:
        k += 1
    return k


def transitivity_spectrum(group: PermGroup, cap: int = DEFAULT_CAP) -> tuple[bool | None, ...]:
    """Entry k says whether the group is k-transitive; None when the tuple orbit exceeded the cap."""
    n = group.degree
    order = group.order()
    full = order == math.factorial(n)
    out = []
    for k in range(n + 1):
        if full:
            out.append(True)
        elif order < math.perm(n, k):
            out.append(False)
        else:
            try:
                out.append(is_k_transitive(group, k, cap))
            except FtspareError:
                out.append(None)
    return tuple(out)
