import random
from itertools import combinations

import pytest

from fbset.graphs import DiGraph, UGraph
from fbset.planarity import (
    Embedding,
    NonPlanarVerdict,
    PatternClass,
    SignPattern,
    classify_pattern,
    digraph_embedding,
    face_count,
    faces,
    is_bipolar_embedding,
    sign_pattern,
    validate_embedding,
)
from fbset.planarity import test_planarity as planarity_test


# --- Independent oracle: brute-force search for K5/K3,3 subdivisions -------


def _simple_adj(g):
    adj = {v: set() for v in g.live_vertices()}
    for e in g.live_edges():
        u, v = g.endpoints(e)
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def _disjoint_paths(adj, pairs, forbidden, used):
    if not pairs:
        return True
    (a, b), rest = pairs[0], pairs[1:]

    def extend(path, seen):
        u = path[-1]
        if u == b:
            if _disjoint_paths(adj, rest, forbidden, used | seen - {a, b}):
                return True
            return False
        for w in sorted(adj[u]):
            if w == b or (w not in forbidden and w not in used and w not in seen):
                if w in seen:
                    continue
                if extend(path + [w], seen | {w}):
                    return True
        return False

    return extend([a], {a})


def has_kuratowski_subdivision(g) -> bool:
    """True iff g contains a subdivision of K5 or K3,3 (ignoring loops and
    parallel edges, which never contribute)."""
    adj = _simple_adj(g)
    verts = sorted(adj)
    for branch in combinations(verts, 5):
        if all(len(adj[v]) >= 4 for v in branch):
            pairs = list(combinations(branch, 2))
            if _disjoint_paths(adj, pairs, set(branch), set()):
                return True
    for six in combinations(verts, 6):
        if any(len(adj[v]) < 3 for v in six):
            continue
        rest = six[1:]
        for two in combinations(rest, 2):
            left = (six[0],) + two
            right = tuple(v for v in six if v not in left)
            pairs = [(a, b) for a in left for b in right]
            if _disjoint_paths(adj, pairs, set(six), set()):
                return True
    return False


# --- Fixtures ---------------------------------------------------------------


def k4():
    return UGraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k5():
    return UGraph.from_edges(5, list(combinations(range(5), 2)))


def k33():
    return UGraph.from_edges(6, [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)])


def doubled(g):
    arcs = []
    for e in g.live_edges():
        u, v = g.endpoints(e)
        arcs.append((u, v))
        arcs.append((v, u))
    return DiGraph.from_arcs(g.n, arcs)


def random_ugraph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return UGraph.from_edges(n, edges)


# --- Tests ------------------------------------------------------------------


class TestPlanarityVerdicts:
    def test_k4_embedding_has_four_faces(self):
        emb = planarity_test(k4())
        assert isinstance(emb, Embedding)
        assert len(faces(k4(), emb)) == 4
        assert face_count(k4(), emb) == 4

    def test_k5_not_planar(self):
        assert isinstance(planarity_test(k5()), NonPlanarVerdict)

    def test_k33_not_planar(self):
        assert isinstance(planarity_test(k33()), NonPlanarVerdict)

    def test_doubled_k4_multigraph_planar(self):
        d = doubled(k4())
        emb = digraph_embedding(d)
        assert isinstance(emb, Embedding)
        validate_embedding(d.underlying(), emb)

    def test_self_loops_and_parallels(self):
        g = UGraph.from_edges(2, [(0, 0), (0, 1), (0, 1), (1, 1)])
        emb = planarity_test(g)
        assert isinstance(emb, Embedding)
        validate_embedding(g, emb)

    def test_disconnected_with_isolated(self):
        g = UGraph.from_edges(5, [(0, 1), (1, 2), (2, 0)])
        emb = planarity_test(g)
        assert isinstance(emb, Embedding)
        # triangle: 2 faces; two isolated vertices share the plane
        assert face_count(g, emb) == 1 + 3 - 5 + 3  # F = 1 + C - V + E
        validate_embedding(g, emb)

    def test_masked_vertices_ignored(self):
        emb = planarity_test(k5().delete_vertices([4]))
        assert isinstance(emb, Embedding)
        assert emb.rotations[4] == ()

    def test_directed_k5_orientation_not_planar(self):
        arcs = [(u, v) for u, v in combinations(range(5), 2)]
        assert isinstance(digraph_embedding(DiGraph.from_arcs(5, arcs)),
                          NonPlanarVerdict)

    def test_two_cycle_digraph(self):
        d = DiGraph.from_arcs(2, [(0, 1), (1, 0)])
        emb = digraph_embedding(d)
        assert isinstance(emb, Embedding)
        assert len(faces(d.underlying(), emb)) == 2

    @pytest.mark.parametrize("seed", range(8))
    def test_agrees_with_kuratowski_search(self, seed):
        rng = random.Random(1000 + seed)
        for _ in range(25):
            n = rng.randint(1, 8)
            g = random_ugraph(rng, n, rng.uniform(0.2, 0.9))
            got = planarity_test(g)
            if isinstance(got, Embedding):
                validate_embedding(g, got)
                assert not has_kuratowski_subdivision(g)
            else:
                assert has_kuratowski_subdivision(g)

    def test_every_embedding_is_validated(self):
        rng = random.Random(7)
        for _ in range(40):
            g = random_ugraph(rng, rng.randint(2, 9), 0.35)
            got = planarity_test(g)
            if isinstance(got, Embedding):
                validate_embedding(g, got)


class TestSignPatterns:
    def test_all_incoming(self):
        d = DiGraph.from_arcs(4, [(1, 0), (2, 0), (3, 0)])
        emb = digraph_embedding(d)
        assert sign_pattern(d, emb, 0).signs == ("-", "-", "-")

    def test_self_loop_gives_both_signs(self):
        d = DiGraph.from_arcs(1, [(0, 0)])
        emb = digraph_embedding(d)
        assert sorted(sign_pattern(d, emb, 0).signs) == ["+", "-"]

    def test_dead_vertex_rejected(self):
        d = DiGraph.from_arcs(2, [(0, 1)]).delete_vertices([0])
        emb = digraph_embedding(d)
        with pytest.raises(ValueError):
            sign_pattern(d, emb, 0)
        with pytest.raises(ValueError):
            sign_pattern(d, emb, 5)

    def test_pattern_counts_match_degrees(self):
        d = DiGraph.from_arcs(3, [(0, 1), (1, 0), (2, 1), (1, 2), (1, 1)])
        emb = digraph_embedding(d)
        p = sign_pattern(d, emb, 1)
        assert p.signs.count("-") == d.in_degree(1)
        assert p.signs.count("+") == d.out_degree(1)


class TestClassifyPattern:
    def test_bipolar(self):
        assert classify_pattern(SignPattern(tuple("---+++"))) is PatternClass.BIPOLAR

    def test_alternating(self):
        assert classify_pattern(SignPattern(tuple("-+-+-+"))) is PatternClass.ALTERNATING

    def test_irregular_both_orders(self):
        assert classify_pattern(SignPattern(tuple("--++-+"))) is PatternClass.IRREGULAR
        assert classify_pattern(SignPattern(tuple("++--+-"))) is PatternClass.IRREGULAR

    def test_other(self):
        assert classify_pattern(SignPattern(tuple("--++--++"))) is PatternClass.OTHER

    def test_small_patterns_trivially_bipolar(self):
        for s in ["", "-", "+", "-+", "--+", "-++-"]:
            assert classify_pattern(SignPattern(tuple(s))) is PatternClass.BIPOLAR

    def test_rotation_invariance(self):
        rng = random.Random(3)
        for _ in range(200):
            n = rng.randint(0, 8)
            p = SignPattern(tuple(rng.choice("-+") for _ in range(n)))
            cls = classify_pattern(p)
            for k in range(n):
                assert classify_pattern(p.rotated(k)) is cls


class TestBipolarEmbedding:
    def test_two_cycle_bipolar(self):
        d = DiGraph.from_arcs(2, [(0, 1), (1, 0)])
        emb = digraph_embedding(d)
        assert is_bipolar_embedding(d, emb)

    def test_sigma_le_1_always_bipolar(self):
        # With indegree or outdegree <= 1 everywhere, any embedding is bipolar.
        rng = random.Random(11)
        found = 0
        while found < 20:
            n = rng.randint(2, 7)
            arcs = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(1, 10))]
            d = DiGraph.from_arcs(n, arcs)
            prof_ok = all(d.in_degree(v) <= 1 or d.out_degree(v) <= 1
                          for v in d.live_vertices())
            if not prof_ok:
                continue
            emb = digraph_embedding(d)
            if isinstance(emb, Embedding):
                assert is_bipolar_embedding(d, emb)
                found += 1

    def test_mixed_vertex_not_bipolar(self):
        d = DiGraph.from_arcs(5, [(1, 0), (0, 2), (3, 0), (0, 4), (0, 0)])
        emb = digraph_embedding(d)
        if classify_pattern(sign_pattern(d, emb, 0)) is not PatternClass.BIPOLAR:
            assert not is_bipolar_embedding(d, emb)
