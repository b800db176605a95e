"""Permutations, finitely generated permutation groups and their orbits.

Points are 0-based internally; cycle notation for input and output is
1-based.  Groups act on the right: ``apply(compose(p, q), a)`` is
``apply(q, apply(p, a))``, so a product is read left to right.

Group order and membership come from a stabilizer chain built with a
deterministic Schreier-Sims procedure.  Orbits on points, k-subsets and
k-tuples are computed by breadth-first closure under the generators only; the
group itself is never enumerated.
"""

from __future__ import annotations

import math
import re
import threading
from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .errors import (
    DegreeMismatch,
    InvalidPoint,
    InvalidRange,
    InvalidTuple,
    OrbitTooLarge,
    ParseError,
    UniverseTooLarge,
)

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"images {self.images} do not form a bijection")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, e: int) -> Permutation:
        base = self if e >= 0 else inverse(self)
        result = identity(self.degree)
        for _ in range(abs(e)):
            result = compose(result, base)
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            p = self.images[start]
            while p != start:
                cycle.append(p)
                seen.add(p)
                p = self.images[p]
            out.append(tuple(cycle))
        return out

    def __str__(self):
        return format_cycles(self)


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(degree)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product ``pq``: apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"cannot compose degrees {p.degree} and {q.degree}")
    qi = q.images
    return Permutation(tuple(qi[x] for x in p.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(tuple(inv))


def apply(p: Permutation, point: int) -> int:
    if not (0 <= point < p.degree):
        raise InvalidPoint(f"point {point} out of range for degree {p.degree}")
    return p.images[point]


def from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
    """Build a permutation from 0-based disjoint cycles."""
    images = list(range(degree))
    for cycle in cycles:
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            images[a] = b
    return Permutation(tuple(images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint-cycle notation such as ``(1 2 3)(4 7 6)``.

    Points inside a cycle are separated by spaces or commas.  For degree at
    most 9 a cycle may also be written without separators, as in ``(235)``.
    """
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise ParseError(f"unexpected characters outside cycles in {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(stripped):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        if len(tokens) == 1 and len(tokens[0]) > 1 and degree <= 9:
            tokens = list(tokens[0])
        try:
            points = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer point in cycle ({body})") from None
        for pt in points:
            if not (1 <= pt <= degree):
                raise ParseError(f"point {pt} outside 1..{degree}")
            if pt in used:
                raise ParseError(f"point {pt} repeated")
            used.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1
    return Permutation(tuple(images))


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


class _Level:
    __slots__ = ("base", "gens", "transversal", "checked")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[tuple[int, ...]] = []
        # point -> coset representative u with base^u = point
        self.transversal: dict[int, tuple[int, ...]] = {}
        self.checked: set[tuple[int, int]] = set()


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(b[x] for x in a)


def _inv(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def _is_id(a: tuple[int, ...]) -> bool:
    return all(i == x for i, x in enumerate(a))


def _first_moved(a: tuple[int, ...]) -> int:
    for i, x in enumerate(a):
        if i != x:
            return i
    raise ValueError("identity moves no point")


class StabilizerChain:
    """Base and strong generating set for a permutation group.

    Built once by a deterministic Schreier-Sims procedure; new base points are
    always the smallest point moved by the element that needs them.
    """

    def __init__(self, degree: int, generators: Iterable[tuple[int, ...]]):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.levels: list[_Level] = []
        gens = [g for g in generators if not _is_id(g)]
        for g in gens:
            if all(g[lv.base] == lv.base for lv in self.levels):
                self.levels.append(_Level(_first_moved(g)))
        for g in gens:
            for i, lv in enumerate(self.levels):
                if any(g[self.levels[j].base] != self.levels[j].base for j in range(i)):
                    break
                lv.gens.append(g)
        for i in range(len(self.levels)):
            self._rebuild_orbit(i)
        self._complete()

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def _rebuild_orbit(self, i: int) -> None:
        lv = self.levels[i]
        if not lv.transversal:
            lv.transversal[lv.base] = self.identity
        queue = deque(lv.transversal)
        while queue:
            p = queue.popleft()
            u = lv.transversal[p]
            for s in lv.gens:
                q = s[p]
                if q not in lv.transversal:
                    lv.transversal[q] = _mul(u, s)
                    queue.append(q)

    def strip(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        """Sift ``g`` from level ``start``; return the residue and the level where it stopped."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            p = g[lv.base]
            u = lv.transversal.get(p)
            if u is None:
                return g, i
            g = _mul(g, _inv(u))
        return g, len(self.levels)

    def _complete(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            restart = None
            for p in sorted(lv.transversal):
                u = lv.transversal[p]
                for gi, s in enumerate(lv.gens):
                    if (p, gi) in lv.checked:
                        continue
                    lv.checked.add((p, gi))
                    q = s[p]
                    y = _mul(_mul(u, s), _inv(lv.transversal[q]))
                    h, j = self.strip(y, i + 1)
                    if _is_id(h):
                        continue
                    if j == len(self.levels):
                        self.levels.append(_Level(_first_moved(h)))
                    for level_index in range(i + 1, j + 1):
                        self.levels[level_index].gens.append(h)
                        self._rebuild_orbit(level_index)
                    restart = j
                    break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1

    def order(self) -> int:
        return math.prod(len(lv.transversal) for lv in self.levels)

    def contains(self, g: tuple[int, ...]) -> bool:
        h, j = self.strip(g)
        return j == len(self.levels) and _is_id(h)


class PermGroup:
    """Permutation group given by a degree and a list of generators."""

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        self.degree = degree
        self.generators = tuple(generators)
        for g in self.generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
        self._chain: StabilizerChain | None = None
        self._subset_action: _SubsetAction | None = None
        self._lock = threading.Lock()

    def __repr__(self):
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, generators=[{gens}])"

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.degree, (g.images for g in self.generators))
        return self._chain

    @property
    def subset_action(self) -> _SubsetAction:
        if self._subset_action is None:
            self._subset_action = _SubsetAction(self)
        return self._subset_action

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"permutation of degree {p.degree} tested against degree {self.degree}")
        return self.chain.contains(p.images)

    def is_symmetric(self) -> bool:
        return self.order() == math.factorial(self.degree)


def symmetric_group(n: int) -> PermGroup:
    """Sym(n) generated by a transposition and an n-cycle."""
    if n < 2:
        return PermGroup(n, [])
    gens = [from_cycles([(0, 1)], n)]
    if n > 2:
        gens.append(from_cycles([tuple(range(n))], n))
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [from_cycles([tuple(range(n))], n)] if n > 1 else [])


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of an n-gon with vertices labelled 0..n-1 around the cycle."""
    rotation = from_cycles([tuple(range(n))], n)
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return PermGroup(n, [rotation, reflection])


def group_order(g: PermGroup) -> int:
    return g.order()


def enumerate_elements(g: PermGroup, limit: int = DEFAULT_CAP) -> Iterator[Permutation]:
    """Every element of the group, by closure of the identity under the generators.

    Exponential in general; intended for small groups and cross-checks.
    """
    start = tuple(range(g.degree))
    seen = {start}
    queue = deque([start])
    gens = [p.images for p in g.generators]
    while queue:
        a = queue.popleft()
        yield Permutation(a)
        for s in gens:
            b = _mul(a, s)
            if b not in seen:
                if len(seen) >= limit:
                    raise OrbitTooLarge(f"group has more than {limit} elements")
                seen.add(b)
                queue.append(b)


# --- orbits -----------------------------------------------------------------

@dataclass(frozen=True)
class OrbitDecomposition:
    kind: str  # "points", "k-subsets" or "k-tuples"
    k: int | None
    orbits: tuple[tuple, ...]

    def __len__(self):
        return len(self.orbits)


def _check_point(g: PermGroup, a: int) -> None:
    if not (0 <= a < g.degree):
        raise InvalidPoint(f"point {a} out of range for degree {g.degree}")


def orbit_of_point(g: PermGroup, a: int) -> list[int]:
    _check_point(g, a)
    seen = {a}
    order = [a]
    queue = deque([a])
    while queue:
        p = queue.popleft()
        for s in g.generators:
            q = s.images[p]
            if q not in seen:
                seen.add(q)
                order.append(q)
                queue.append(q)
    return order


class _SubsetAction:
    """Image of a subset bitmask under each generator via byte lookup tables."""

    def __init__(self, g: PermGroup):
        nchunks = (g.degree + 7) // 8
        self.tables = []
        for s in g.generators:
            chunk_tables = []
            for c in range(nchunks):
                table = [0] * 256
                for byte in range(1, 256):
                    low = byte & -byte
                    bit = low.bit_length() - 1
                    point = 8 * c + bit
                    image = 1 << s.images[point] if point < g.degree else 0
                    table[byte] = table[byte ^ low] | image
                chunk_tables.append(table)
            self.tables.append(chunk_tables)

    def images(self, mask: int) -> Iterator[int]:
        for chunk_tables in self.tables:
            out = 0
            m = mask
            c = 0
            while m:
                out |= chunk_tables[c][m & 0xFF]
                m >>= 8
                c += 1
            yield out


def _mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def _unmask(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _subset_closure(action: _SubsetAction, start: int, cap: int) -> list[int]:
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for img in action.images(m):
            if img not in seen:
                if len(seen) >= cap:
                    raise OrbitTooLarge(f"subset orbit exceeds the cap of {cap} elements")
                seen.add(img)
                order.append(img)
                queue.append(img)
    return order


def orbit_of_subset(g: PermGroup, s: Iterable[int], cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    members = sorted(set(s))
    for a in members:
        _check_point(g, a)
    closure = _subset_closure(g.subset_action, _mask(members), cap)
    return [_unmask(m) for m in closure]


def orbit_of_tuple(g: PermGroup, t: Sequence[int], cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    t = tuple(t)
    for a in t:
        _check_point(g, a)
    if len(set(t)) != len(t):
        raise InvalidTuple(f"tuple {t} has repeated entries")
    seen = {t}
    order = [t]
    queue = deque([t])
    while queue:
        cur = queue.popleft()
        for s in g.generators:
            img = tuple(s.images[x] for x in cur)
            if img not in seen:
                if len(seen) >= cap:
                    raise OrbitTooLarge(f"tuple orbit exceeds the cap of {cap} elements")
                seen.add(img)
                order.append(img)
                queue.append(img)
    return order


def _check_arity(g: PermGroup, k: int) -> None:
    if not (0 <= k <= g.degree):
        raise InvalidRange(f"k={k} outside 0..{g.degree}")


def ksubset_orbits(g: PermGroup, k: int, cap: int = DEFAULT_CAP) -> OrbitDecomposition:
    _check_arity(g, k)
    if math.comb(g.degree, k) > cap:
        raise UniverseTooLarge(f"C({g.degree},{k}) exceeds the cap of {cap} elements")
    action = g.subset_action
    visited: set[int] = set()
    orbits = []
    for combo in combinations(range(g.degree), k):
        m = _mask(combo)
        if m in visited:
            continue
        closure = _subset_closure(action, m, cap)
        visited.update(closure)
        orbits.append(tuple(_unmask(x) for x in closure))
    return OrbitDecomposition("k-subsets", k, tuple(orbits))


def point_orbits(g: PermGroup) -> OrbitDecomposition:
    visited: set[int] = set()
    orbits = []
    for a in range(g.degree):
        if a not in visited:
            orb = orbit_of_point(g, a)
            visited.update(orb)
            orbits.append(tuple(orb))
    return OrbitDecomposition("points", None, tuple(orbits))


def ktuple_orbits(g: PermGroup, k: int, cap: int = DEFAULT_CAP) -> OrbitDecomposition:
    _check_arity(g, k)
    if math.perm(g.degree, k) > cap:
        raise UniverseTooLarge(f"{g.degree}!/{g.degree - k}! exceeds the cap of {cap} elements")
    visited: set[tuple[int, ...]] = set()
    orbits = []
    for t in permutations(range(g.degree), k):
        if t not in visited:
            orb = orbit_of_tuple(g, t, cap)
            visited.update(orb)
            orbits.append(tuple(orb))
    return OrbitDecomposition("k-tuples", k, tuple(orbits))


def count_orbits_on_ksubsets(g: PermGroup, k: int, cap: int = DEFAULT_CAP) -> int:
    return len(ksubset_orbits(g, k, cap))


def is_k_homogeneous(g: PermGroup, k: int, cap: int = DEFAULT_CAP) -> bool:
    _check_arity(g, k)
    closure = _subset_closure(g.subset_action, (1 << k) - 1, cap)
    return len(closure) == math.comb(g.degree, k)


def is_k_transitive(g: PermGroup, k: int, cap: int = DEFAULT_CAP) -> bool:
    _check_arity(g, k)
    return len(orbit_of_tuple(g, tuple(range(k)), cap)) == math.perm(g.degree, k)


@dataclass(frozen=True)
class MonotonicityCheck:
    orbits_m: int
    orbits_k: int
    holds: bool


def orbit_count_monotonicity_check(g: PermGroup, m: int, k: int, cap: int = DEFAULT_CAP) -> MonotonicityCheck:
    """Compare orbit counts on m-subsets and k-subsets, for 0 <= m <= k with m + k <= degree.

    A group always has at least as many orbits on the larger subsets in that
    range, so ``holds`` is expected to be true.
    """
    if not (0 <= m <= k and m + k <= g.degree):
        raise InvalidRange(f"need 0 <= m <= k and m + k <= {g.degree}, got m={m}, k={k}")
    om = count_orbits_on_ksubsets(g, m, cap)
    ok = count_orbits_on_ksubsets(g, k, cap)
    return MonotonicityCheck(om, ok, ok >= om)


# --- generator-list text format -------------------------------------------

def parse_group_text(text: str) -> PermGroup:
    """Read ``degree n`` followed by one 1-based cycle-notation permutation per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty generator list")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree" or not head[1].isdigit():
        raise ParseError("generator list must start with 'degree n'")
    degree = int(head[1])
    return PermGroup(degree, [parse_cycles(ln, degree) for ln in lines[1:]])


def emit_group_text(g: PermGroup) -> str:
    lines = [f"degree {g.degree}"] + [format_cycles(p) for p in g.generators]
    return "\n".join(lines) + "\n"
