"""Named graphs, seeded random families, and exhaustive small catalogs.

Every random generator takes an explicit ``random.Random`` so that seeded
runs are bit-reproducible.  The cubic-graph enumerator produces one
representative per isomorphism class (counts 1, 2, 5, 19 for n = 4, 6, 8,
10), each verified connected and 3-regular.
"""

from __future__ import annotations

import random
from itertools import combinations

from .graphs import DiGraph, UGraph, degree_profile, is_connected
from .planarity import Embedding, test_planarity


# ---------------------------------------------------------------------------
# Named graphs.
# ---------------------------------------------------------------------------


def path_graph(n: int) -> UGraph:
    return UGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> UGraph:
    return UGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> UGraph:
    return UGraph.from_edges(n, list(combinations(range(n), 2)))


def k33() -> UGraph:
    return UGraph.from_edges(6, [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)])


def triangle() -> UGraph:
    return cycle_graph(3)


def wheel(rim: int) -> UGraph:
    """Hub vertex ``rim`` joined to every vertex of an outer ``rim``-cycle."""
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, rim) for i in range(rim)]
    return UGraph.from_edges(rim + 1, edges)


def prism() -> UGraph:
    return UGraph.from_edges(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def cube() -> UGraph:
    return UGraph.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0),
                                 (4, 5), (5, 6), (6, 7), (7, 4),
                                 (0, 4), (1, 5), (2, 6), (3, 7)])


def octahedron() -> UGraph:
    return UGraph.from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4),
                                 (1, 2), (2, 3), (3, 4), (4, 1),
                                 (5, 1), (5, 2), (5, 3), (5, 4)])


def cubic_planar_catalog() -> list[UGraph]:
    return [complete_graph(4), prism(), cube()]


# ---------------------------------------------------------------------------
# Seeded random families.
# ---------------------------------------------------------------------------


def random_digraph(rng: random.Random, n: int, p: float) -> DiGraph:
    return DiGraph.from_arcs(
        n, [(u, v) for u in range(n) for v in range(n)
            if u != v and rng.random() < p])


def random_ugraph(rng: random.Random, n: int, p: float) -> UGraph:
    return UGraph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n)
            if rng.random() < p])


def random_deg2_digraph(rng: random.Random, n: int) -> DiGraph:
    """Random digraph with total degree at most 2: disjoint directed paths
    and cycles over a shuffled vertex set."""
    verts = list(range(n))
    rng.shuffle(verts)
    arcs = []
    i = 0
    while i < n:
        size = rng.randint(1, min(5, n - i))
        chunk = verts[i:i + size]
        i += size
        arcs.extend(zip(chunk, chunk[1:]))
        if size >= 1 and rng.random() < 0.6:
            arcs.append((chunk[-1], chunk[0]))
    return DiGraph.from_arcs(n, arcs)


def random_planar_high_degree(rng: random.Random) -> UGraph:
    """Planar graph containing a vertex of degree in {5, 6, 7}: a wheel with
    planarity-preserving random chords and pendant trees."""
    d = rng.randint(5, 7)
    g = wheel(d)
    edges = list(g.edges)
    n = g.n
    for _ in range(rng.randint(0, 3)):
        kind = rng.random()
        if kind < 0.5:
            a, b = rng.sample(range(d), 2)
            cand = UGraph.from_edges(n, edges + [(a, b)])
            prof = degree_profile(cand)
            if prof.max_degree <= 7 and isinstance(test_planarity(cand), Embedding):
                edges.append((a, b))
        else:
            a = rng.randrange(d)
            edges.append((a, n))
            n += 1
    g = UGraph.from_edges(n, edges)
    assert isinstance(test_planarity(g), Embedding)
    return g


def random_connected_planar_maxdeg4(rng: random.Random, n: int) -> UGraph:
    """Connected planar graph with maximum degree at most 4: a random tree
    plus planarity-preserving chords."""
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    tries = rng.randint(0, 2 * n)
    for _ in range(tries):
        u, v = rng.sample(range(n), 2) if n >= 2 else (0, 0)
        if u == v or deg[u] >= 4 or deg[v] >= 4:
            continue
        pair = (min(u, v), max(u, v))
        if pair in edges:
            continue
        cand = UGraph.from_edges(n, edges + [pair])
        if isinstance(test_planarity(cand), Embedding):
            edges.append(pair)
            deg[u] += 1
            deg[v] += 1
    return UGraph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Exhaustive small catalogs.
# ---------------------------------------------------------------------------


def enumerate_ugraphs(n: int, connected_only: bool = False,
                      min_edges: int = 0):
    """All simple undirected graphs on exactly n labeled vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(edges) < min_edges:
            continue
        g = UGraph.from_edges(n, edges)
        if connected_only and not is_connected(g):
            continue
        yield g


def enumerate_digraphs(n: int, allow_loops: bool = True):
    """All simple digraphs on exactly n labeled vertices (opposite arc pairs
    allowed; parallel arcs not)."""
    slots = [(u, v) for u in range(n) for v in range(n)
             if allow_loops or u != v]
    for mask in range(1 << len(slots)):
        yield DiGraph.from_arcs(
            n, [slots[i] for i in range(len(slots)) if mask >> i & 1])


def _isomorphic_cubic(adj_a: list[frozenset], adj_b: list[frozenset]) -> bool:
    """Backtracking isomorphism test for two connected cubic graphs given as
    neighbor sets."""
    n = len(adj_a)
    mapping = [-1] * n
    used = [False] * n

    def extend(order_pos: int, order: list[int]) -> bool:
        if order_pos == len(order):
            return True
        a = order[order_pos]
        anchored = [mapping[x] for x in adj_a[a] if mapping[x] >= 0]
        for b in range(n):
            if used[b] or len(adj_b[b]) != len(adj_a[a]):
                continue
            if any(m not in adj_b[b] for m in anchored):
                continue
            mapping[a] = b
            used[b] = True
            if extend(order_pos + 1, order):
                return True
            mapping[a] = -1
            used[b] = False
        return False

    # BFS order keeps each new vertex anchored to already-mapped neighbors.
    order = [0]
    seen = {0}
    qi = 0
    while qi < len(order):
        for w in sorted(adj_a[order[qi]]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        qi += 1
    return extend(0, order)


def _cubic_fingerprint(adj: list[frozenset]) -> tuple:
    n = len(adj)
    tri = [0] * n
    for v in range(n):
        tri[v] = sum(1 for a, b in combinations(sorted(adj[v]), 2)
                     if b in adj[a])
    # distance profile from each vertex plus triangle census
    profs = []
    for s in range(n):
        dist = {s: 0}
        queue = [s]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for w in adj[x]:
                if w not in dist:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        profs.append((tri[s], tuple(sorted(dist.values()))))
    return tuple(sorted(profs))


def connected_cubic_graphs(n: int) -> list[UGraph]:
    """One representative per isomorphism class of connected cubic graphs on
    n vertices, by degree-constrained backtracking with first-use vertex
    ordering and fingerprint-bucketed exact isomorphism dedup."""
    if n % 2 or n < 4:
        return []
    adj: list[set[int]] = [set() for _ in range(n)]
    reps: list[UGraph] = []
    buckets: dict[tuple, list[list[frozenset]]] = {}

    def finish() -> None:
        frozen = [frozenset(a) for a in adj]
        # connectivity
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for w in frozen[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            return
        fp = _cubic_fingerprint(frozen)
        for other in buckets.get(fp, []):
            if _isomorphic_cubic(frozen, other):
                return
        buckets.setdefault(fp, []).append(frozen)
        edges = [(u, v) for u in range(n) for v in sorted(frozen[u]) if u < v]
        reps.append(UGraph.from_edges(n, edges))

    def rec(u: int, max_used: int) -> None:
        while u < n and len(adj[u]) == 3:
            u += 1
        if u == n:
            finish()
            return
        if u > 0 and not adj[u]:
            # all smaller vertices are complete and u is untouched, so the
            # graph would be disconnected (and the labeling not first-use)
            return
        last = max((w for w in adj[u] if w > u), default=u)
        for w in range(last + 1, min(n, max_used + 2)):
            if len(adj[w]) < 3 and w not in adj[u]:
                adj[u].add(w)
                adj[w].add(u)
                rec(u, max(max_used, w))
                adj[u].discard(w)
                adj[w].discard(u)

    rec(0, 0)
    return reps
