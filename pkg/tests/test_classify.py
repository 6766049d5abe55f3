from pathlib import Path

import pytest

from fbset.classify import classify, complexity_table, verdict_for
from fbset.gadgets import irregular_doubling
from fbset.generators import complete_graph, cycle_graph, k33, octahedron, wheel
from fbset.graphs import DiGraph, UGraph

GOLDEN = Path(__file__).parent / "golden" / "complexity_table.txt"


def oriented_k33():
    g = k33()
    return DiGraph.from_arcs(6, [g.endpoints(e) for e in g.live_edges()])


class TestGoldenTable:
    def test_all_eight_rows(self):
        assert complexity_table() == GOLDEN.read_text()

    def test_verdict_total_over_grid(self):
        for problem in ("vertex", "arc"):
            for directed in (False, True):
                for planar in (False, True):
                    for delta in range(0, 9):
                        for sigma in range(0, delta + 1):
                            v, tag = verdict_for(problem, directed, planar,
                                                 delta, sigma)
                            assert v in ("P", "NP-complete", "P-by-structure")
                            assert tag


class TestInstanceClassification:
    def test_directed_delta3_vertex_hard(self):
        # a non-planar max-degree-3 digraph: an orientation of K3,3
        v = classify(oriented_k33(), "vertex")
        assert v.row == "directed, vertex"
        assert v.max_degree == 3 and v.verdict == "NP-complete"

    def test_planar_directed_arc_always_p(self):
        d = DiGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0), (1, 0)])
        v = classify(d, "arc")
        assert v.row == "planar directed, arc" and v.verdict == "P"

    def test_planar_directed_sigma1_vertex_p(self):
        d = DiGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        v = classify(d, "vertex")
        assert v.sym_degree <= 1 and v.verdict == "P"

    def test_planar_directed_sigma2_hard_or_rescued(self):
        art = irregular_doubling(complete_graph(4))
        v = classify(art.output, "vertex")
        assert v.row == "planar directed, vertex"
        assert v.sym_degree == 3
        assert v.verdict in ("NP-complete", "P-by-structure")

    def test_p_by_structure_requires_planar_split(self):
        # sigma >= 2 yet the split graph embeds: a doubled path
        d = DiGraph.from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
        v = classify(d, "vertex")
        assert v.sym_degree == 2
        assert v.verdict == "P-by-structure"

    def test_undirected_rows(self):
        assert classify(complete_graph(4), "vertex").verdict == "P"
        assert classify(octahedron(), "vertex").verdict == "NP-complete"
        assert classify(complete_graph(5), "vertex").row == "undirected, vertex"
        assert classify(complete_graph(5), "arc").verdict == "P"

    def test_degree2_digraph_p(self):
        d = DiGraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert classify(d, "vertex").verdict == "P"

    def test_bad_problem(self):
        with pytest.raises(ValueError):
            classify(cycle_graph(3), "edge")
