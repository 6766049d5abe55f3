import random

import pytest

from fbset.graphs import DiGraph, UGraph, degree_profile, trim_non_cyclic
from fbset.planarity import Embedding
from fbset.planarity import test_planarity as planarity_test
from fbset.reductions import (
    NeighborOrdering,
    double_edges,
    path_split_gadget,
    split_vertices,
    verify_reduction,
)
from fbset.solvers import Instance, solve, validate

import bruteforce as bf


def k4():
    return UGraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def triangle():
    return UGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])


def doubled(g):
    return double_edges(g, "arcs").output


def random_digraph(rng, n, p):
    return DiGraph.from_arcs(
        n, [(u, v) for u in range(n) for v in range(n) if rng.random() < p])


def random_ugraph(rng, n, p):
    return UGraph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def registry_counts(art):
    seen = []
    for verts in art.registry.values():
        seen.extend(verts)
    assert len(seen) == len(set(seen))
    return set(seen)


class TestDoubleEdges:
    def test_k2_two_cycle(self):
        art = double_edges(UGraph.from_edges(2, [(0, 1)]), "arcs")
        assert art.output.arcs == ((0, 1), (1, 0))
        assert bf.brute_fvs_directed(art.output)[0] == 1

    @pytest.mark.parametrize("mode", ["arcs", "parallel_edges", "subdivided"])
    def test_triangle_all_modes(self, mode):
        art = double_edges(triangle(), mode)
        assert art.budget == (1, 0)
        brute = (bf.brute_fvs_directed if mode == "arcs"
                 else bf.brute_fvs_undirected)
        assert brute(art.output)[0] == bf.brute_vc(triangle())[0] == 2

    def test_subdivided_output_simple(self):
        art = double_edges(k4(), "subdivided")
        g = art.output
        seen = set()
        for e in g.live_edges():
            u, v = g.endpoints(e)
            assert u != v and (u, v) not in seen
            seen.add((u, v))

    @pytest.mark.parametrize("mode", ["arcs", "parallel_edges", "subdivided"])
    def test_planarity_preserved(self, mode):
        art = double_edges(k4(), mode)
        out = art.output.underlying() if art.output.directed else art.output
        assert isinstance(planarity_test(out), Embedding)

    @pytest.mark.parametrize("mode", ["arcs", "parallel_edges", "subdivided"])
    def test_oracle_equality_random(self, mode):
        rng = random.Random(900)
        for _ in range(8):
            g = random_ugraph(rng, rng.randint(1, 6), 0.5)
            rep = verify_reduction(double_edges(g, mode), g, solve)
            assert rep.ok, rep.details

    def test_project_handles_subdivision_vertices(self):
        g = UGraph.from_edges(2, [(0, 1)])
        art = double_edges(g, "subdivided")
        x = art.registry["e0"][0]
        projected = art.project(frozenset([x]))
        assert projected == frozenset([0])  # smaller endpoint of the edge
        assert validate(Instance(g, "vc"), projected).ok


class TestSplitVertices:
    def test_two_cycle(self):
        d = DiGraph.from_arcs(2, [(0, 1), (1, 0)])
        art = split_vertices(d)
        assert art.output.num_live_vertices() == 4
        assert bf.brute_fas(art.output)[0] == 1

    def test_sigma_at_most_one(self):
        rng = random.Random(901)
        for _ in range(20):
            d = random_digraph(rng, rng.randint(1, 6), 0.4)
            art = split_vertices(d)
            assert degree_profile(art.output).sym_degree <= 1

    def test_doubled_triangle(self):
        art = split_vertices(doubled(triangle()))
        assert bf.brute_fas(art.output)[0] == 2

    def test_registry_covers_output(self):
        d = random_digraph(random.Random(3), 5, 0.4)
        art = split_vertices(d)
        assert registry_counts(art) == set(art.output.live_vertices())
        assert all(len(v) == 2 for v in art.registry.values())

    def test_bridge_deletion_disconnects_gadget(self):
        d = DiGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0), (1, 1)])
        art = split_vertices(d)
        # with the bridge arc of v removed, nothing entering v- leaves v+
        for v in d.live_vertices():
            minus, plus = art.registry[f"v{v}"]
            lifted = art.lift(frozenset([v]))
            out = art.output
            reach = {minus}
            frontier = [minus]
            while frontier:
                x = frontier.pop()
                for a in out.live_edges():
                    if a in lifted:
                        continue
                    t, h = out.arcs[a]
                    if t == x and h not in reach:
                        reach.add(h)
                        frontier.append(h)
            assert plus not in reach

    def test_oracle_equality_random(self):
        rng = random.Random(902)
        for _ in range(10):
            d = random_digraph(rng, rng.randint(1, 6), 0.35)
            rep = verify_reduction(split_vertices(d), d, solve)
            assert rep.ok, rep.details


class TestPathSplitGadget:
    def test_two_cycle_becomes_c4(self):
        d = DiGraph.from_arcs(2, [(0, 1), (1, 0)])
        art = path_split_gadget(d)
        assert art.output.num_live_vertices() == 4
        assert bf.brute_fvs_directed(art.output)[0] == 1
        assert bf.brute_fas(art.output)[0] == 1

    def test_doubled_k4(self):
        art = path_split_gadget(doubled(k4()))
        prof = degree_profile(art.output)
        assert prof.max_degree <= 3
        assert solve(art.output, "fvs").value == 3  # = vc(K4)

    def test_registry_matches_degree_sum(self):
        rng = random.Random(903)
        for _ in range(10):
            d = random_digraph(rng, rng.randint(1, 6), 0.4)
            art = path_split_gadget(d)
            prof = degree_profile(d)
            total = sum(prof.degree[v] for v in d.live_vertices())
            assert art.output.num_live_vertices() == total
            assert registry_counts(art) == set(art.output.live_vertices())

    def test_corollary_degrees_after_trim(self):
        rng = random.Random(904)
        for _ in range(10):
            d = random_digraph(rng, rng.randint(1, 6), 0.4)
            t = trim_non_cyclic(path_split_gadget(d).output)
            for v in t.live_vertices():
                assert t.in_degree(v) <= 2 and t.out_degree(v) <= 2

    def test_gadget_internally_acyclic_and_cut_by_plus1(self):
        d = doubled(triangle())
        art = path_split_gadget(d)
        out = art.output
        for v in d.live_vertices():
            gadget = set(art.registry[f"v{v}"])
            internal = [a for a in out.live_edges()
                        if out.arcs[a][0] in gadget and out.arcs[a][1] in gadget]
            assert bf.acyclic_directed(
                out, removed_vertices=frozenset(set(out.live_vertices()) - gadget))
            # deleting v+_1 leaves no cycle through the rest of the gadget
            plus1 = sorted(art.lift(frozenset([v])))[0]
            assert bf.acyclic_directed(
                out, removed_vertices=frozenset(
                    (set(out.live_vertices()) - gadget) | {plus1}))

    def test_isolated_vertices_dropped(self):
        d = DiGraph.from_arcs(3, [(0, 1), (1, 0)])
        art = path_split_gadget(d)
        assert art.registry["v2"] == ()
        assert art.output.num_live_vertices() == 4

    def test_self_loop_supported(self):
        d = DiGraph.from_arcs(1, [(0, 0)])
        art = path_split_gadget(d)
        assert bf.brute_fvs_directed(art.output)[0] == 1

    def test_vertex_and_arc_oracle_equality(self):
        rng = random.Random(905)
        for _ in range(8):
            d = random_digraph(rng, rng.randint(1, 5), 0.4)
            art = path_split_gadget(d)
            rep = verify_reduction(art, d, solve)
            assert rep.ok, rep.details
            rep_arc = verify_reduction(art, d, solve, use_arc_maps=True)
            assert rep_arc.ok, rep_arc.details

    def test_explicit_ordering_respected(self):
        d = DiGraph.from_arcs(3, [(1, 0), (2, 0), (0, 1), (0, 2)])
        ordering = NeighborOrdering(
            in_slots=((1, 0), (2,), (3,)),
            out_slots=((2, 3), (0,), (1,)),
        )
        art = path_split_gadget(d, ordering)
        out = art.output
        minus = art.registry["v0"][:2]
        # slot 0 of vertex 0 receives arc 1 (from vertex 2) under this ordering
        assert any(out.arcs[a] == (art.registry["v2"][1], minus[0])
                   for a in out.live_edges())


class TestVerifyReduction:
    def test_decision_mode(self):
        d = doubled(triangle())
        art = split_vertices(d)
        rep = verify_reduction(art, d, solve, mode="decision_equivalence", budget=2)
        assert rep.ok
        rep_no = verify_reduction(art, d, solve, mode="decision_equivalence", budget=1)
        assert rep_no.ok  # no/no also counts as equivalent

    def test_failure_carries_counterexample(self):
        d = doubled(triangle())
        art = split_vertices(d)
        broken = type(art)(art.problem_kind, art.output, (1, 5), art.lift,
                           art.project, art.registry)
        rep = verify_reduction(broken, d, solve)
        assert not rep.ok and rep.counterexample is not None

    def test_mode_gate(self):
        d = doubled(triangle())
        art = split_vertices(d)
        gated = type(art)(art.problem_kind, art.output, art.budget, art.lift,
                          art.project, art.registry,
                          modes=("decision_equivalence",))
        with pytest.raises(ValueError):
            verify_reduction(gated, d, solve, mode="optimum_equality")
