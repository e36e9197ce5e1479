"""Tests for graph automorphism search and the normalizer identity."""

import random

import pytest

from cayleyforge.autgrp import (
    automorphism_group_brute,
    automorphism_group_of_graph,
    godsil_normalizer_check,
)
from cayleyforge.graphs import Graph, cayley_graph
from cayleyforge.grp import (
    catalog,
    cyclic,
    dihedral,
    generalized_inversion_product,
)
from cayleyforge.perm import BudgetError, Perm


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


class TestRefinementSearch:
    def test_k33(self):
        g = generalized_inversion_product(3, 1)
        graph, _ = cayley_graph(g, g.involutions())
        aut = automorphism_group_of_graph(graph)
        assert aut.order() == 72  # (3!)^2 * 2

    def test_c6(self):
        graph, _ = cayley_graph(cyclic(6), {1, 5})
        assert automorphism_group_of_graph(graph).order() == 12

    def test_complete_graph(self):
        k5 = Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
        assert automorphism_group_of_graph(k5).order() == 120

    def test_empty_graph(self):
        e4 = Graph(4, [])
        assert automorphism_group_of_graph(e4).order() == 24

    def test_petersen(self):
        assert automorphism_group_of_graph(petersen()).order() == 120

    def test_path(self):
        p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
        assert automorphism_group_of_graph(p4).order() == 2

    def test_k55(self):
        g = generalized_inversion_product(5, 1)
        graph, _ = cayley_graph(g, g.involutions())
        assert automorphism_group_of_graph(graph).order() == 28800  # (5!)^2 * 2

    def test_generators_preserve_arcs(self):
        graph = petersen()
        aut = automorphism_group_of_graph(graph)
        for g in aut.generators:
            assert graph.permutation_is_automorphism(g)

    def test_directed_cycle(self):
        graph, _ = cayley_graph(cyclic(5), {1})
        assert automorphism_group_of_graph(graph).order() == 5

    def test_budget(self):
        with pytest.raises(BudgetError):
            automorphism_group_of_graph(Graph(4, []), max_n=3)


class TestBruteForceAgreement:
    CORPUS = None

    def _corpus(self):
        rng = random.Random(42)
        graphs = [
            Graph(1, []),
            Graph(4, [(0, 1), (1, 2), (2, 3)]),
            Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
            Graph(6, [(i, (i + 1) % 6) for i in range(6)]),
            Graph(6, [(a, b) for a in range(3) for b in range(3, 6)]),
            petersen(),
            Graph(5, [(0, 1)], directed=True),
            Graph(7, [(i, (i + 1) % 7) for i in range(7)], directed=True),
        ]
        for _ in range(12):
            n = rng.randrange(2, 9)
            arcs = [(i, j) for i in range(n) for j in range(i + 1, n)
                    if rng.random() < 0.4]
            graphs.append(Graph(n, arcs))
        return graphs

    def test_refinement_equals_brute_force(self):
        for graph in self._corpus():
            fast = automorphism_group_of_graph(graph)
            slow = automorphism_group_brute(graph)
            assert fast.order() == slow.order(), graph
            assert fast.equals(slow)


class TestNormalizerIdentity:
    def test_z5_pair(self):
        res = godsil_normalizer_check(cyclic(5), {1, 4})
        assert res.ok
        assert res.normalizer_order == 10  # 5 * 2
        assert res.aut_g_s_order == 2

    def test_sym3_transpositions(self):
        g = dihedral(3)
        s = set(g.conjugacy_class_of(g.involutions()[0]))
        res = godsil_normalizer_check(g, s)
        assert res.ok
        assert res.normalizer_order == 36  # 6 * 6

    def test_complete_graph_instance(self):
        g = cyclic(5)
        res = godsil_normalizer_check(g, set(range(1, 5)))
        assert res.ok
        assert res.normalizer_order == 20  # the holomorph
        assert res.aut_graph_order == 120

    def test_small_catalog_normality(self):
        rng = random.Random(13)
        for g in catalog(8):
            if g.n < 3:
                continue
            pool = list(range(1, g.n))
            s = set()
            for x in rng.sample(pool, min(2, len(pool))):
                s.add(x)
                s.add(g.inverse(x))
            graph, _ = cayley_graph(g, s)
            if not graph.is_connected():
                continue
            res = godsil_normalizer_check(g, s)
            assert res.ok, (g.name, sorted(s))
