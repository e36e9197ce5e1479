"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Each criterion is exact (no tolerances) and carries a wall-clock bound; the
bounds here are the stated ones, asserted against measured runtime.

The regular-pair harness criterion expects zero counterexamples, but the
underlying implication is mathematically false for nilpotency-class-2 groups
(right/left regular pairs of Q8 and D4 satisfy the premise and differ); that
test is implemented faithfully and is expected to fail.  See the analysis in
the repository notes; all other criteria pass.
"""

import random
import time

import pytest

from cayleyforge.autgrp import (
    automorphism_group_brute,
    automorphism_group_of_graph,
)
from cayleyforge.constructions import (
    ARC_TRANSITIVE_FUSION,
    FLAGGED,
    HALF_SYMMETRIC,
    build_bipartite_example,
    half_symmetric_connection_set,
    half_symmetry_certificate,
    sweep_defect_bound,
    sweep_double_coset_agreement,
    sweep_godsil,
    sweep_local_dichotomy,
    sweep_local_faithful,
    sweep_normal_or_cover,
    sweep_regular_pair,
)
from cayleyforge.graphs import Graph, cayley_graph
from cayleyforge.grp import dihedral, suzuki_group, suzuki_order
from cayleyforge.perm import Perm, PermGroup
from cayleyforge.symmetry import transitivity_suite


def report(name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {name}: {status}{suffix}", flush=True)


class TestAcceptance:
    def test_01_bipartite_examples(self):
        ok = True
        details = []
        for p in (3, 5):
            t0 = time.time()
            ex = build_bipartite_example(p, 1)
            elapsed = time.time() - t0
            good = (ex.verify()
                    and ex.y_grp.order() == 2 * ex.x_grp.order()
                    and not ex.ghat_normal_in_y
                    and ex.two_arc_transitive
                    and elapsed < 5.0)
            ok &= good
            details.append(f"p={p}: chain {ex.to_json()['chain_orders']}"
                           f" in {elapsed:.2f}s")
        report("bipartite-examples", ok, "; ".join(details))
        assert ok

    def test_02_godsil_identity_sweep(self):
        t0 = time.time()
        results = sweep_godsil(max_order=12)
        elapsed = time.time() - t0
        bad = [r for r in results if not r.ok]
        ok = not bad and elapsed < 600
        report("godsil-identity", ok,
               f"{len(results)} instances, {len(bad)} failures, "
               f"{elapsed:.0f}s")
        assert ok, bad[:3]

    def test_03_normal_or_cover_sweep(self):
        t0 = time.time()
        results = sweep_normal_or_cover(max_order=15)
        elapsed = time.time() - t0
        flagged = [r for r in results if r.verdict == FLAGGED]
        ok = not flagged and elapsed < 1800
        counts = {}
        for r in results:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        report("normal-or-cover", ok, f"{counts} in {elapsed:.0f}s")
        assert ok, [f.instance for f in flagged]

    def test_04_double_coset_agreement(self):
        t0 = time.time()
        results = sweep_double_coset_agreement(count=100, seed=0)
        elapsed = time.time() - t0
        disagreements = [r for r in results if not r.ok]
        ok = len(results) >= 100 and not disagreements and elapsed < 300
        report("double-coset-agreement", ok,
               f"{len(results)} instances, {len(disagreements)} "
               f"disagreements, {elapsed:.0f}s")
        assert ok

    def test_05_suzuki_certificate(self):
        t0 = time.time()
        t_grp, frob = suzuki_group(8)
        order_ok = t_grp.order() == suzuki_order(8) == 29120
        t = t_grp.generators[0]
        order4_ok = t.order() == 4
        ext = PermGroup(65, list(t_grp.generators) + [frob], name="Aut(Sz8)")
        cert = half_symmetry_certificate(t_grp, ext, t, 2)
        elapsed = time.time() - t0
        ok = (order_ok and order4_ok
              and cert.verdict == HALF_SYMMETRIC and elapsed < 120)
        report("suzuki-certificate", ok,
               f"order {t_grp.order()}, verdict {cert.verdict}, "
               f"{elapsed:.1f}s")
        assert ok

    def test_06_fusion_necessity(self):
        t0 = time.time()
        table = dihedral(3)
        t_idx = table.involutions()[0]
        ghat_t = table.right_translation(t_idx)
        from cayleyforge.grp import holomorph, right_regular_rep
        cert = half_symmetry_certificate(
            right_regular_rep(table), holomorph(table), ghat_t, 2)
        r_set, union, power, rep = half_symmetric_connection_set(
            table, t_idx, 2)
        graph, _ = cayley_graph(power, union)
        aut = automorphism_group_of_graph(graph)
        suite = transitivity_suite(graph, aut)
        elapsed = time.time() - t0
        ok = (cert.verdict == ARC_TRANSITIVE_FUSION
              and graph.n == 36
              and suite.arc_transitive
              and elapsed < 60)
        report("fusion-necessity", ok,
               f"verdict {cert.verdict}, arc-transitive "
               f"{suite.arc_transitive}, {elapsed:.1f}s")
        assert ok

    def test_07a_harness_local_faithful(self):
        t0 = time.time()
        results = sweep_local_faithful(max_order=10)
        elapsed = time.time() - t0
        cex = [r for r in results if r.counterexample]
        ok = not cex and results and elapsed < 300
        report("harness-local-faithful", ok,
               f"{len(results)} instances, {len(cex)} counterexamples, "
               f"{elapsed:.0f}s")
        assert ok

    def test_07b_harness_local_dichotomy(self):
        t0 = time.time()
        results = sweep_local_dichotomy(max_order=10)
        elapsed = time.time() - t0
        cex = [r for r in results if r.counterexample]
        ok = not cex and results and elapsed < 300
        report("harness-local-dichotomy", ok,
               f"{len(results)} instances, {len(cex)} counterexamples, "
               f"{elapsed:.0f}s")
        assert ok

    def test_07c_harness_regular_pair(self):
        # Faithful to the stated expectation of zero counterexamples.  The
        # implication is false for nilpotency-class-2 groups (Q8, D4 with
        # their right/left regular pairs), verified independently by brute
        # force, so this criterion cannot pass; the failure below is the
        # honest outcome, not an implementation bug.
        t0 = time.time()
        results = sweep_regular_pair(max_order=8, seed=0)
        elapsed = time.time() - t0
        cex = [r for r in results if r.counterexample]
        ok = not cex and elapsed < 300
        report("harness-regular-pair", ok,
               f"{len(results)} instances, {len(cex)} counterexamples "
               f"(expected: class-2 groups violate the implication), "
               f"{elapsed:.0f}s")
        assert ok, (
            "counterexamples are mathematically genuine: "
            + "; ".join(r.instance for r in cex))

    def test_07d_harness_defect_bound(self):
        t0 = time.time()
        results = sweep_defect_bound()
        elapsed = time.time() - t0
        cex = [r for r in results if r.counterexample]
        ok = not cex and results and elapsed < 300
        report("harness-defect-bound", ok,
               f"{len(results)} instances, {len(cex)} counterexamples, "
               f"{elapsed:.0f}s")
        assert ok

    def test_08_engine_self_consistency(self):
        t0 = time.time()
        rng = random.Random(2024)
        orbit_ok = klass_ok = 0
        for _ in range(1000):
            n = rng.randrange(3, 9)
            gens = []
            for _ in range(rng.randrange(1, 3)):
                imgs = list(range(n))
                rng.shuffle(imgs)
                gens.append(Perm(imgs))
            grp = PermGroup(n, gens)
            p = rng.randrange(n)
            if len(grp.orbit(p)) * grp.point_stabilizer(p).order() \
                    == grp.order():
                orbit_ok += 1
            x = grp.random_element(rng)
            cls = grp.conjugacy_class(x)
            cz = grp.centralizer_of_element(x)
            if len(cls) * cz.order() == grp.order():
                klass_ok += 1
        identities_ok = orbit_ok == 1000 and klass_ok == 1000

        corpus = [
            Graph(4, [(0, 1), (1, 2), (2, 3)]),
            Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
            Graph(6, [(i, (i + 1) % 6) for i in range(6)]),
            Graph(6, [(a, b) for a in range(3) for b in range(3, 6)]),
            Graph(10, [(i, (i + 1) % 5) for i in range(5)]
                  + [(i, i + 5) for i in range(5)]
                  + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]),
            Graph(8, [(i, j) for i in range(8) for j in range(i + 1, 8)
                      if bin(i ^ j).count("1") == 1]),
        ]
        rng2 = random.Random(77)
        for _ in range(10):
            n = rng2.randrange(2, 10)
            corpus.append(Graph(n, [(i, j) for i in range(n)
                                    for j in range(i + 1, n)
                                    if rng2.random() < 0.5]))
        aut_ok = all(
            automorphism_group_of_graph(g).equals(automorphism_group_brute(g))
            for g in corpus)
        elapsed = time.time() - t0
        ok = identities_ok and aut_ok
        report("engine-self-consistency", ok,
               f"orbit-stabilizer {orbit_ok}/1000, class-centralizer "
               f"{klass_ok}/1000, refinement==brute {aut_ok}, "
               f"{elapsed:.0f}s")
        assert ok
