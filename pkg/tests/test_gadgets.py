import random

import pytest

from fbset.gadgets import (
    cfvs_gadget,
    irregular_doubling,
    planar_dfvs_gadget,
    speckenmeyer_reduce,
    widget_count,
)
from fbset.generators import (
    complete_graph,
    cube,
    cubic_planar_catalog,
    octahedron,
    path_graph,
    prism,
    random_connected_planar_maxdeg4,
    random_planar_high_degree,
    triangle,
    wheel,
)
from fbset.graphs import DiGraph, degree_profile
from fbset.linear_forest import F1, linear_forest_cover
from fbset.planarity import (
    Embedding,
    PatternClass,
    classify_pattern,
    sign_pattern,
)
from fbset.planarity import test_planarity as planarity_test
from fbset.reductions import verify_reduction
from fbset.solvers import Instance, solve, validate

import bruteforce as bf


def registry_live_cover(art):
    seen = []
    for verts in art.registry.values():
        seen.extend(verts)
    assert len(seen) == len(set(seen))
    assert set(seen) == set(art.output.live_vertices())


class TestSpeckenmeyer:
    def test_octahedron_unchanged(self):
        art = speckenmeyer_reduce(octahedron())
        assert widget_count(art) == 0 and art.output == octahedron()

    @pytest.mark.parametrize("rim", [5, 6, 7])
    def test_wheels_oracle_equality(self, rim):
        g = wheel(rim)
        art = speckenmeyer_reduce(g)
        assert degree_profile(art.output).max_degree <= 4
        assert isinstance(planarity_test(art.output), Embedding)
        fin = solve(g, "fvs").value
        fout = solve(art.output, "fvs").value
        assert fout == fin + 2 * widget_count(art)

    def test_w5_one_widget(self):
        art = speckenmeyer_reduce(wheel(5))
        assert widget_count(art) == 1
        assert solve(art.output, "fvs").value == solve(wheel(5), "fvs").value + 2

    def test_lift_and_project(self):
        g = wheel(6)
        art = speckenmeyer_reduce(g)
        rep = verify_reduction(art, g, solve)
        assert rep.ok, rep.details

    def test_registry_partition(self):
        art = speckenmeyer_reduce(wheel(6))
        registry_live_cover(art)
        assert set(art.registry) == {f"v{v}" for v in wheel(6).live_vertices()}

    def test_random_planar_high_degree_suite(self):
        rng = random.Random(77)
        for _ in range(6):
            g = random_planar_high_degree(rng)
            art = speckenmeyer_reduce(g)
            assert degree_profile(art.output).max_degree <= 4
            assert isinstance(planarity_test(art.output), Embedding)
            rep = verify_reduction(art, g, solve)
            assert rep.ok, rep.details

    def test_rejects_nonplanar(self):
        from fbset.generators import k33
        g = complete_graph(5)
        with pytest.raises(ValueError):
            speckenmeyer_reduce(g)
        with pytest.raises(ValueError):
            speckenmeyer_reduce(k33())


class TestIrregularDoubling:
    @pytest.mark.parametrize("g", cubic_planar_catalog(),
                             ids=["k4", "prism", "cube"])
    def test_all_vertices_irregular(self, g):
        art = irregular_doubling(g)
        assert art.embedding is not None
        for v in art.output.live_vertices():
            pat = sign_pattern(art.output, art.embedding, v)
            assert classify_pattern(pat) is PatternClass.IRREGULAR

    def test_one_forest_edge_pattern(self):
        g = complete_graph(4)
        art = irregular_doubling(g)
        cover = linear_forest_cover(g)
        f1 = cover.class_edges(g, F1)
        target = ("+", "+", "-", "-", "+", "-")
        for v in g.live_vertices():
            if sum(1 for e in f1 if v in g.endpoints(e)) == 1:
                signs = sign_pattern(art.output, art.embedding, v).signs
                assert any(tuple(signs[(r + i) % 6] for i in range(6)) == target
                           for r in range(6))

    def test_budget_and_oracle(self):
        g = complete_graph(4)
        art = irregular_doubling(g)
        assert art.budget == (1, 0)
        assert solve(art.output, "fvs").value == solve(g, "vc").value == 3
        rep = verify_reduction(art, g, solve)
        assert rep.ok, rep.details

    def test_output_is_3_regular(self):
        from fbset.graphs import structural_predicates
        art = irregular_doubling(prism())
        assert structural_predicates(art.output).is_3_regular_digraph

    def test_rejects_noncubic(self):
        with pytest.raises(ValueError):
            irregular_doubling(path_graph(4))


class TestPlanarDfvsGadget:
    def setup_method(self):
        art1 = irregular_doubling(complete_graph(4))
        self.d = art1.output
        self.emb = art1.embedding
        self.art = planar_dfvs_gadget(self.d, self.emb)

    def test_sizes_and_budget(self):
        assert self.art.output.num_live_vertices() == 44
        assert self.art.output.m == 16 * 4 + 12
        assert self.art.budget_map(3) == 11
        registry_live_cover(self.art)
        assert all(len(v) == 11 for v in self.art.registry.values())

    def test_degree_bounds_and_planarity(self):
        prof = degree_profile(self.art.output)
        assert max(prof.indegree) <= 2 and max(prof.outdegree) <= 2
        assert self.art.embedding is not None

    def test_disjoint_triangles_per_gadget(self):
        out = self.art.output
        for key, verts in self.art.registry.items():
            names = dict(zip(
                ("m12", "p12", "m3", "p3", "ma", "pa", "b", "bp", "c", "d", "dp"),
                verts))
            t1 = {names["ma"], names["p3"], names["b"]}
            t2 = {names["m3"], names["pa"], names["d"]}
            assert not (t1 & t2)
            for tri_set in (t1, t2):
                sub = set(out.live_vertices()) - tri_set
                assert not bf.acyclic_directed(out, removed_vertices=frozenset(sub))

    def test_selected_blocks_unselected_passes(self):
        out = self.art.output
        arcs = {out.arcs[a] for a in out.live_edges()}
        for v in self.d.live_vertices():
            verts = self.art.registry[f"v{v}"]
            names = dict(zip(
                ("m12", "p12", "m3", "p3", "ma", "pa", "b", "bp", "c", "d", "dp"),
                verts))
            gadget = set(verts)
            others = set(out.live_vertices()) - gadget
            selected = {names["ma"], names["c"], names["m3"]}
            unselected = {names["b"], names["d"]}
            # a mirrored gadget carries the reversed arcs: roles swap
            if (names["m3"], names["p3"]) in arcs:
                entries = {names["m12"], names["m3"]}
                exits = {names["p12"], names["p3"]}
            else:
                entries = {names["p12"], names["p3"]}
                exits = {names["m12"], names["m3"]}
            # both removals leave the gadget internally acyclic
            for removal in (selected, unselected):
                assert bf.acyclic_directed(
                    out, removed_vertices=frozenset(others | removal))
            # with only the pair removed, both exits stay reachable
            reach = _reachable_inside(out, gadget - unselected, entries)
            assert exits <= reach
            # with the triple removed, no entry reaches any exit
            reach = _reachable_inside(out, gadget - selected, entries)
            assert not (exits & reach)

    def test_oracle_equality_on_k4(self):
        assert solve(self.art.output, "fvs", budget=10).feasible is False
        yes = solve(self.art.output, "fvs", budget=11)
        assert yes.feasible is True

    def test_lift_leaves_gadgets_acyclic(self):
        lifted = self.art.lift(frozenset({0, 1, 2}))
        assert len(lifted) == 11
        assert validate(Instance(self.art.output, "fvs"), lifted).ok

    def test_project_recovers(self):
        lifted = self.art.lift(frozenset({0, 1, 2}))
        assert self.art.project(lifted) == frozenset({0, 1, 2})

    def test_rejects_non_irregular(self):
        d = DiGraph.from_arcs(2, [(0, 1), (1, 0)])
        from fbset.planarity import digraph_embedding
        emb = digraph_embedding(d)
        with pytest.raises(ValueError):
            planar_dfvs_gadget(d, emb)


def _reachable_inside(out, allowed, starts):
    reach = set(starts) & allowed
    frontier = list(reach)
    arcs = [out.arcs[a] for a in out.live_edges()]
    while frontier:
        x = frontier.pop()
        for t, h in arcs:
            if t == x and h in allowed and h not in reach:
                reach.add(h)
                frontier.append(h)
    return reach


class TestCfvsGadget:
    def test_p3_counts(self):
        art = cfvs_gadget(path_graph(3), 1)
        assert art.output.num_live_vertices() == 8 * 3 + 16 * 3 * 2 == 120
        assert art.budget_map(1) == 8
        prof = degree_profile(art.output)
        assert prof.max_degree <= 3
        assert art.embedding is not None
        registry_live_cover(art)

    def test_budget_map_formula(self):
        art = cfvs_gadget(triangle(), 2)
        n = 3
        for k in (1, 2, 3):
            assert art.budget_map(k) == 8 * k + 8 * n * (k - 1)

    def test_p3_decision_yes(self):
        art = cfvs_gadget(path_graph(3), 1)
        rep = verify_reduction(art, path_graph(3), solve,
                               mode="decision_equivalence", budget=1)
        assert rep.ok, rep.details

    def test_triangle_decision_no(self):
        art = cfvs_gadget(triangle(), 1)
        rep = verify_reduction(art, triangle(), solve,
                               mode="decision_equivalence", budget=1)
        assert rep.ok, rep.details

    def test_triangle_k2_lift_exact_size(self):
        art = cfvs_gadget(triangle(), 2)
        lifted = art.lift(frozenset({0, 1}))
        assert len(lifted) == 40
        assert validate(Instance(art.output, "cfvs"), lifted).ok

    def test_lift_pads_small_covers(self):
        art = cfvs_gadget(path_graph(3), 2)
        lifted = art.lift(frozenset({1}))  # padded up to k=2
        assert len(lifted) == art.budget_map(2)
        assert validate(Instance(art.output, "cfvs"), lifted).ok

    def test_random_cover_lifts(self):
        rng = random.Random(55)
        done = 0
        while done < 6:
            g = random_connected_planar_maxdeg4(rng, rng.randint(3, 5))
            if g.num_live_edges() < 2:
                continue
            res = solve(g, "cvc")
            if res.value is None or not 1 <= res.value <= g.n:
                continue
            art = cfvs_gadget(g, res.value)
            lifted = art.lift(frozenset(res.certificate))
            assert len(lifted) == art.budget_map(res.value)
            assert validate(Instance(art.output, "cfvs"), lifted).ok
            done += 1

    def test_optimum_mode_refused(self):
        art = cfvs_gadget(triangle(), 1)
        with pytest.raises(ValueError):
            verify_reduction(art, triangle(), solve, mode="optimum_equality")

    def test_preconditions(self):
        with pytest.raises(ValueError):
            cfvs_gadget(path_graph(2), 1)  # only one edge
        from fbset.graphs import UGraph
        with pytest.raises(ValueError):
            cfvs_gadget(UGraph.from_edges(4, [(0, 1), (2, 3)]), 1)  # disconnected
        star5 = UGraph.from_edges(6, [(0, i) for i in range(1, 6)])
        with pytest.raises(ValueError) as err:
            cfvs_gadget(star5, 1)
        assert "max degree" in str(err.value) and "vertex 0" in str(err.value)
