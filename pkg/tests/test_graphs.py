"""Tests for Cayley graphs, coset graphs, quotients, and recognition."""

import random

import pytest

from cayleyforge.graphs import (
    Graph,
    cayley_graph,
    coset_enumeration,
    coset_graph,
    coset_graph_connected,
    is_complete_bipartite,
    normal_quotient,
)
from cayleyforge.grp import (
    cyclic,
    dihedral,
    generalized_inversion_product,
    inner_closure,
    left_regular_rep,
    right_regular_rep,
)
from cayleyforge.perm import Perm, PermGroup


def sym_group(n):
    return PermGroup(n, [Perm.from_cycles(n, [list(range(n))]),
                         Perm.from_cycles(n, [[0, 1]])])


class TestGraphType:
    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 0)])

    def test_neighbors_sorted_unique(self):
        g = Graph(4, [(0, 1), (1, 0), (0, 3)])
        assert g.neighbors(0) == (1, 3)
        assert g.valencies() == {0, 1, 2}

    def test_json_roundtrip(self):
        g = Graph(5, [(0, 1), (1, 2), (3, 4)], labels=list("abcde"))
        back = Graph.from_json(g.to_json())
        assert back.arcs == g.arcs
        assert back.labels == g.labels

    def test_dot_output(self):
        g = Graph(3, [(0, 1)])
        dot = g.to_dot()
        assert "graph" in dot and "0 -- 1;" in dot
        d = Graph(3, [(0, 1)], directed=True)
        assert "0 -> 1;" in d.to_dot()

    def test_connectivity(self):
        assert Graph(3, [(0, 1), (1, 2)]).is_connected()
        assert not Graph(4, [(0, 1), (2, 3)]).is_connected()
        # weak connectivity for digraphs
        assert Graph(3, [(0, 1), (2, 1)], directed=True).is_connected()


class TestCayley:
    def test_cycle(self):
        graph, ctx = cayley_graph(cyclic(6), {1, 5})
        assert not graph.directed
        assert graph.valency == 2
        assert graph.is_connected()
        assert graph.neighbors(0) == (1, 5)

    def test_bipartite_from_inversion_product(self):
        g = generalized_inversion_product(3, 1)
        graph, ctx = cayley_graph(g, g.involutions())
        assert is_complete_bipartite(graph) == (3, 3)

    def test_directed_cycle(self):
        graph, _ = cayley_graph(cyclic(5), {1})
        assert graph.directed
        assert graph.neighbors(0) == (1,)
        assert graph.arc_count() == 5

    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            cayley_graph(cyclic(5), {0, 1})

    def test_regular_rep_acts_as_automorphisms(self):
        for g, s in ((cyclic(6), {2, 3, 4}), (dihedral(4), {1, 7})):
            s = {x for x in s if x < g.n and x != 0}
            s = s | {g.inverse(x) for x in s}
            graph, ctx = cayley_graph(g, s)
            assert graph.group_acts_as_automorphisms(ctx.regular_group())

    def test_left_rep_is_automorphism_iff_conjugation_closed(self):
        g = dihedral(3)
        transpositions = set(g.conjugacy_class_of(g.involutions()[0]))
        graph, ctx = cayley_graph(g, transpositions)
        assert graph.group_acts_as_automorphisms(ctx.left_regular_group())
        # a connection set that is not a union of classes loses the property
        graph2, ctx2 = cayley_graph(g, {transpositions.pop()})
        assert not graph2.group_acts_as_automorphisms(ctx2.left_regular_group())

    def test_undirected_iff_inverse_closed(self):
        rng = random.Random(5)
        g = dihedral(6)
        for _ in range(20):
            s = set(rng.sample(range(1, g.n), rng.randrange(1, 6)))
            graph, _ = cayley_graph(g, s)
            closed = all(g.inverse(x) in s for x in s)
            assert graph.directed == (not closed)


class TestCosetGraphs:
    def test_sym3_triangle(self):
        # X = Sym(3), H = <(0 1)>, g = (0 1 2): three cosets.
        # HgH = S3 minus H, so the coset graph is the triangle K3.
        x = sym_group(3)
        h = PermGroup(3, [Perm.from_cycles(3, [[0, 1]])])
        g = Perm.from_cycles(3, [[0, 1, 2]])
        graph, ctx = coset_graph(x, h, [g, g.inverse()])
        assert graph.n == 3
        assert not graph.directed
        assert graph.valency == 2

    def test_vertex_zero_is_subgroup(self):
        x = sym_group(4)
        h = x.point_stabilizer(0)
        g = Perm.from_cycles(4, [[0, 1]])
        graph, ctx = coset_graph(x, h, [g])
        assert ctx.coset_index(x.identity()) == 0
        for hgen in h.generators:
            assert ctx.coset_index(hgen) == 0

    def test_core_free_required(self):
        # Klein four-group is normal in Sym(4): not core-free
        x = sym_group(4)
        klein = PermGroup(4, [Perm.from_cycles(4, [[0, 1], [2, 3]]),
                              Perm.from_cycles(4, [[0, 2], [1, 3]])])
        with pytest.raises(ValueError):
            coset_graph(x, klein, [Perm.from_cycles(4, [[0, 1]])])

    def test_ambient_acts_as_automorphisms(self):
        x = sym_group(4)
        h = x.point_stabilizer(0)
        g = Perm.from_cycles(4, [[0, 1]])
        graph, ctx = coset_graph(x, h, [g])
        assert graph.group_acts_as_automorphisms(ctx.action_group())

    def test_connected_criterion(self):
        x = sym_group(3)
        h = PermGroup(3, [Perm.from_cycles(3, [[0, 1]])])
        g = Perm.from_cycles(3, [[0, 1, 2]])
        assert coset_graph_connected(x, h, [g])
        # g inside H closes over a single coset
        assert not coset_graph_connected(x, h, [Perm.from_cycles(3, [[0, 1]])])

    def test_connected_matches_bfs_randomized(self):
        rng = random.Random(17)
        x = sym_group(4)
        els = x.elements()
        checked = 0
        for _ in range(40):
            h_gen = rng.choice(els)
            h = PermGroup(4, [h_gen])
            g = rng.choice(els)
            if g in h:
                continue
            action = coset_enumeration(x, h)[2]
            if PermGroup(len(action[0].images), action).order() != x.order():
                continue  # not core-free; construction refuses
            graph, _ = coset_graph(x, h, [g, g.inverse()])
            assert graph.is_connected() == coset_graph_connected(
                x, h, [g, g.inverse()])
            checked += 1
        assert checked >= 10

    def test_pair_gset_always_undirected(self):
        rng = random.Random(29)
        x = sym_group(4)
        h = x.point_stabilizer(0)
        els = x.elements()
        for _ in range(20):
            g = rng.choice(els)
            if g in h:
                continue
            graph, _ = coset_graph(x, h, [g, g.inverse()])
            assert not graph.directed


class TestNormalQuotient:
    def test_c6_antipodal(self):
        graph, ctx = cayley_graph(cyclic(6), {1, 5})
        d6 = PermGroup(6, [Perm((1, 2, 3, 4, 5, 0)), Perm((0, 5, 4, 3, 2, 1))])
        antipodal = PermGroup(6, [Perm((3, 4, 5, 0, 1, 2))])
        q = normal_quotient(graph, d6, antipodal)
        assert q.quotient.n == 3
        assert q.quotient.valency == 2
        assert q.is_cover
        assert q.action.order() > 1

    def test_two_orbit_rejection(self):
        g = generalized_inversion_product(3, 1)
        graph, ctx = cayley_graph(g, g.involutions())
        ghat = ctx.regular_group()
        # subgroup of order 3 inside the regular group: two orbits of size 3
        rot = next(x for x in ghat.elements() if x.order() == 3)
        n = PermGroup(6, [rot])
        with pytest.raises(ValueError):
            normal_quotient(graph, ghat, n)

    def test_single_orbit_rejection(self):
        k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        s4 = sym_group(4)
        klein = PermGroup(4, [Perm.from_cycles(4, [[0, 1], [2, 3]]),
                              Perm.from_cycles(4, [[0, 2], [1, 3]])])
        with pytest.raises(ValueError):
            normal_quotient(k4, s4, klein)

    def test_normality_enforced(self):
        graph, _ = cayley_graph(cyclic(6), {1, 5})
        d6 = PermGroup(6, [Perm((1, 2, 3, 4, 5, 0)), Perm((0, 5, 4, 3, 2, 1))])
        flip = PermGroup(6, [Perm((0, 5, 4, 3, 2, 1))])
        with pytest.raises(ValueError):
            normal_quotient(graph, d6, flip)

    def test_valency_never_increases(self):
        # C12 quotient by rotation of order 3: C4, still a cover
        graph, ctx = cayley_graph(cyclic(12), {1, 11})
        rot = PermGroup(12, [Perm(tuple((i + 4) % 12 for i in range(12)))])
        y = ctx.regular_group()
        q = normal_quotient(graph, y, rot)
        assert q.quotient.valency <= graph.valency
        assert q.is_cover


class TestCompleteBipartite:
    def test_k33(self):
        g = generalized_inversion_product(3, 1)
        graph, _ = cayley_graph(g, g.involutions())
        assert is_complete_bipartite(graph) == (3, 3)

    def test_c6_not(self):
        graph, _ = cayley_graph(cyclic(6), {1, 5})
        assert is_complete_bipartite(graph) is None

    def test_k55(self):
        g = generalized_inversion_product(5, 1)
        graph, _ = cayley_graph(g, g.involutions())
        assert is_complete_bipartite(graph) == (5, 5)

    def test_complete_graph_not(self):
        k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert is_complete_bipartite(k4) is None

    def test_unbalanced(self):
        k23 = Graph(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
        assert is_complete_bipartite(k23) == (2, 3)
