import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftspare.autgroup import (
    automorphism_group,
    homogeneity_spectrum,
    is_automorphism,
    max_homogeneity,
    refine,
    transitivity_spectrum,
)
from ftspare.errors import DegreeMismatch
from ftspare.graph import (
    complement,
    complete_graph,
    cycle_graph,
    degree_sequence,
    empty_graph,
    hypercube,
    make_graph,
    path_graph,
)
from ftspare.perm import Permutation, from_cycles, identity, orbit_of_point

from conftest import brute_aut_count, random_graph


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_graph(10, outer + spokes + inner)


class TestAutomorphismGroup:
    @pytest.mark.parametrize("n", range(0, 9))
    def test_complete_is_symmetric(self, n):
        assert automorphism_group(complete_graph(n)).order == math.factorial(n)

    def test_empty_is_symmetric(self):
        assert automorphism_group(empty_graph(6)).order == 720

    def test_q3(self, q3):
        assert automorphism_group(q3).order == 48
        assert brute_aut_count(q3) == 48

    def test_c4(self):
        assert automorphism_group(cycle_graph(4)).order == 8

    @pytest.mark.parametrize("g, order", [
        (petersen(), 120),
        (hypercube(4), 384),
        (cycle_graph(12), 24),
        (complete_graph(12), math.factorial(12)),
    ])
    def test_known_larger_groups(self, g, order):
        assert automorphism_group(g).order == order

    def test_generators_are_automorphisms(self, q3_spared):
        for g in (q3_spared, petersen(), hypercube(4)):
            for p in automorphism_group(g).group.generators:
                assert is_automorphism(g, p)

    @settings(max_examples=120, deadline=None)
    @given(st.integers(0, 7), st.randoms(use_true_random=False))
    def test_order_matches_brute_force(self, n, rnd):
        g = random_graph(rnd, n)
        assert automorphism_group(g).order == brute_aut_count(g)

    @pytest.mark.parametrize("seed", range(20))
    def test_complement_has_same_group(self, seed):
        g = random_graph(random.Random(seed), random.Random(seed).randint(2, 8))
        a = automorphism_group(g).group
        b = automorphism_group(complement(g)).group
        assert a.order() == b.order()
        assert all(b.contains(p) for p in a.generators)
        assert all(a.contains(p) for p in b.generators)

    @pytest.mark.parametrize("seed", range(20))
    def test_orbits_respect_degree(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 9))
        deg = degree_sequence(g)
        group = automorphism_group(g).group
        for v in range(g.n):
            assert {deg[u] for u in orbit_of_point(group, v)} == {deg[v]}

    def test_refinement_is_equitable(self, q3_spared):
        cells = refine(q3_spared.adjacency, (tuple(range(10)),))
        assert cells == (tuple(range(8)), (8, 9))


class TestIsAutomorphism:
    def test_identity(self, q3):
        assert is_automorphism(q3, identity(8))

    def test_rotation_of_c4(self):
        assert is_automorphism(cycle_graph(4), from_cycles([(0, 1, 2, 3)], 4))

    def test_transposition_on_path(self):
        assert not is_automorphism(path_graph(3), from_cycles([(0, 1)], 3))

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            is_automorphism(path_graph(3), identity(4))


class TestHomogeneity:
    def test_complete(self):
        assert max_homogeneity(complete_graph(6)) == 6
        assert all(automorphism_group(complete_graph(6)).homogeneity)

    def test_c4(self):
        # 4 edges and 2 diagonals are separate orbits on pairs
        res = automorphism_group(cycle_graph(4))
        assert res.homogeneity == (True, True, False, True, True)
        assert max_homogeneity(cycle_graph(4)) == 1

    def test_path(self):
        assert max_homogeneity(path_graph(3)) == 0
        assert not automorphism_group(path_graph(3)).vertex_transitive

    def test_spectrum_symmetry_and_vertex_transitivity(self):
        for g in (hypercube(3), petersen(), cycle_graph(7), path_graph(5)):
            res = automorphism_group(g)
            n = g.n
            assert all(res.homogeneity[k] == res.homogeneity[n - k] for k in range(n + 1))
            assert res.vertex_transitive == res.homogeneity[1]

    def test_unknown_entries_when_capped(self):
        group = automorphism_group(petersen()).group
        spectrum = homogeneity_spectrum(group, cap=5)
        assert spectrum[0] is True
        assert None in spectrum

    def test_shortcuts_agree_with_orbit_search(self):
        group = automorphism_group(petersen()).group
        from ftspare.perm import is_k_homogeneous, is_k_transitive

        assert homogeneity_spectrum(group) == tuple(is_k_homogeneous(group, k) for k in range(11))
        assert transitivity_spectrum(group) == tuple(is_k_transitive(group, k) for k in range(11))
        # Petersen is distance-transitive but not 2-homogeneous: edges vs non-edges
        assert transitivity_spectrum(group)[:3] == (True, True, False)

    def test_large_complete_uses_order(self):
        res = automorphism_group(complete_graph(40))
        assert res.order == math.factorial(40)
        assert all(res.homogeneity)


def test_permutation_type_used_for_generators(q3):
    assert all(isinstance(p, Permutation) for p in automorphism_group(q3).group.generators)
