"""Multigraph and multidigraph cores with stable ids and mask-based deletion.

Vertex ids are dense ``0..n-1`` and are never renumbered: deletion works by
masking, so id-based maps stay valid across graph transformations.  Parallel
edges, opposite arc pairs and self-loops are all representable and distinct.
A self-loop contributes 2 to an undirected degree and 1 to each of indegree
and outdegree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class UGraph:
    """Undirected multigraph.  Immutable; transformations return new graphs.

    ``edges[e]`` is the endpoint pair of edge id ``e``; an edge is live iff
    both endpoints are live.  Endpoints built through :meth:`from_edges` are
    stored in canonical (min, max) order.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    alive: tuple[bool, ...]

    directed = False

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   alive: Sequence[bool] | None = None) -> "UGraph":
        canon = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge endpoint out of range: ({u}, {v}) with n={n}")
            canon.append((u, v) if u <= v else (v, u))
        mask = tuple(bool(a) for a in alive) if alive is not None else (True,) * n
        if len(mask) != n:
            raise ValueError("alive mask length must equal n")
        return UGraph(n, tuple(canon), mask)

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def is_live_vertex(self, v: int) -> bool:
        return self.alive[v]

    def is_live_edge(self, e: int) -> bool:
        u, v = self.edges[e]
        return self.alive[u] and self.alive[v]

    def live_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.alive[v]]

    def live_edges(self) -> list[int]:
        return [e for e in range(len(self.edges)) if self.is_live_edge(e)]

    def num_live_vertices(self) -> int:
        return sum(self.alive)

    def num_live_edges(self) -> int:
        return len(self.live_edges())

    def degree(self, v: int) -> int:
        if not self.alive[v]:
            return 0
        d = 0
        for e in self.live_edges():
            a, b = self.edges[e]
            d += (a == v) + (b == v)
        return d

    def incident_ends(self, v: int) -> list[tuple[int, int]]:
        """Live edge-ends at ``v`` as (edge id, endpoint slot), id-ordered.
        A self-loop contributes both its ends."""
        out = []
        for e in self.live_edges():
            a, b = self.edges[e]
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        return out

    def neighbors(self, v: int) -> list[int]:
        """Distinct live neighbors of ``v`` (self excluded), ascending."""
        seen = set()
        for e, s in self.incident_ends(v):
            other = self.edges[e][1 - s]
            if other != v:
                seen.add(other)
        return sorted(seen)

    def delete_vertices(self, drop: Iterable[int]) -> "UGraph":
        dead = set(drop)
        mask = tuple(self.alive[v] and v not in dead for v in range(self.n))
        return UGraph(self.n, self.edges, mask)

    def compact(self) -> tuple["UGraph", dict[int, int]]:
        """Renumbered copy without dead vertices, plus the old->new id map."""
        remap = {}
        for v in range(self.n):
            if self.alive[v]:
                remap[v] = len(remap)
        edges = tuple((remap[u], remap[v]) for u, v in
                      (self.edges[e] for e in self.live_edges()))
        return UGraph(len(remap), edges, (True,) * len(remap)), remap


@dataclass(frozen=True)
class DiGraph:
    """Directed multigraph; ``arcs[a]`` is the (tail, head) pair of arc id ``a``."""

    n: int
    arcs: tuple[tuple[int, int], ...]
    alive: tuple[bool, ...]

    directed = True

    @staticmethod
    def from_arcs(n: int, arcs: Iterable[tuple[int, int]],
                  alive: Sequence[bool] | None = None) -> "DiGraph":
        arcs = tuple((int(t), int(h)) for t, h in arcs)
        for t, h in arcs:
            if not (0 <= t < n and 0 <= h < n):
                raise ValueError(f"arc endpoint out of range: ({t}, {h}) with n={n}")
        mask = tuple(bool(a) for a in alive) if alive is not None else (True,) * n
        if len(mask) != n:
            raise ValueError("alive mask length must equal n")
        return DiGraph(n, arcs, mask)

    @property
    def m(self) -> int:
        return len(self.arcs)

    # Shared surface with UGraph so generic code can treat both uniformly.
    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.arcs

    def endpoints(self, a: int) -> tuple[int, int]:
        return self.arcs[a]

    def is_live_vertex(self, v: int) -> bool:
        return self.alive[v]

    def is_live_edge(self, a: int) -> bool:
        t, h = self.arcs[a]
        return self.alive[t] and self.alive[h]

    def live_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.alive[v]]

    def live_edges(self) -> list[int]:
        return [a for a in range(len(self.arcs)) if self.is_live_edge(a)]

    live_arcs = live_edges

    def num_live_vertices(self) -> int:
        return sum(self.alive)

    def num_live_edges(self) -> int:
        return len(self.live_edges())

    def in_degree(self, v: int) -> int:
        return sum(1 for a in self.live_edges() if self.arcs[a][1] == v)

    def out_degree(self, v: int) -> int:
        return sum(1 for a in self.live_edges() if self.arcs[a][0] == v)

    def degree(self, v: int) -> int:
        return self.in_degree(v) + self.out_degree(v)

    def incident_ends(self, v: int) -> list[tuple[int, int]]:
        """Live arc-ends at ``v``; slot 0 is the tail end, slot 1 the head end."""
        out = []
        for a in self.live_edges():
            t, h = self.arcs[a]
            if t == v:
                out.append((a, 0))
            if h == v:
                out.append((a, 1))
        return out

    def delete_vertices(self, drop: Iterable[int]) -> "DiGraph":
        dead = set(drop)
        mask = tuple(self.alive[v] and v not in dead for v in range(self.n))
        return DiGraph(self.n, self.arcs, mask)

    def underlying(self) -> UGraph:
        """Underlying undirected multigraph with identical vertex and edge ids.

        Endpoint slots are kept in (tail, head) order rather than canonical
        order so that edge-end slot 0 always marks the outgoing end of the
        arc; embeddings of the underlying graph then transfer to the digraph
        without any end renaming.
        """
        return UGraph(self.n, self.arcs, self.alive)

    def reversed(self) -> "DiGraph":
        return DiGraph(self.n, tuple((h, t) for t, h in self.arcs), self.alive)

    def compact(self) -> tuple["DiGraph", dict[int, int]]:
        remap = {}
        for v in range(self.n):
            if self.alive[v]:
                remap[v] = len(remap)
        arcs = tuple((remap[t], remap[h]) for t, h in
                     (self.arcs[a] for a in self.live_edges()))
        return DiGraph(len(remap), arcs, (True,) * len(remap)), remap


Graph = UGraph | DiGraph


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex degrees of the live subgraph plus the two aggregates:
    max_degree is the largest total degree, sym_degree the largest
    min(indegree, outdegree) (0 for undirected graphs)."""

    directed: bool
    degree: tuple[int, ...]
    indegree: tuple[int, ...] | None
    outdegree: tuple[int, ...] | None
    max_degree: int
    sym_degree: int


def degree_profile(g: Graph) -> DegreeProfile:
    """Exact per-vertex degree bookkeeping, counting parallel-edge and
    self-loop multiplicity."""
    if g.directed:
        din = [0] * g.n
        dout = [0] * g.n
        for a in g.live_edges():
            t, h = g.arcs[a]
            dout[t] += 1
            din[h] += 1
        deg = [i + o for i, o in zip(din, dout)]
        live = g.live_vertices()
        delta = max((deg[v] for v in live), default=0)
        sigma = max((min(din[v], dout[v]) for v in live), default=0)
        return DegreeProfile(True, tuple(deg), tuple(din), tuple(dout), delta, sigma)
    deg = [0] * g.n
    for e in g.live_edges():
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    delta = max((deg[v] for v in g.live_vertices()), default=0)
    return DegreeProfile(False, tuple(deg), None, None, delta, 0)


def subdivide_all(g: Graph) -> Graph:
    """Replace every live edge/arc by a length-2 path through a fresh vertex.

    The result is bipartite and has the same minimum feedback vertex/arc set
    value as the input.  Fresh vertices get ids ``n, n+1, ...`` in live edge
    id order; dead vertices of the input stay dead.
    """
    live = g.live_edges()
    n2 = g.n + len(live)
    mask = list(g.alive) + [True] * len(live)
    new_edges = []
    for i, e in enumerate(live):
        u, v = g.endpoints(e)
        x = g.n + i
        new_edges.append((u, x))
        new_edges.append((x, v))
    if g.directed:
        return DiGraph.from_arcs(n2, new_edges, mask)
    return UGraph.from_edges(n2, new_edges, mask)


def trim_non_cyclic(d: DiGraph) -> DiGraph:
    """Delete vertices with live indegree or outdegree 0 until a fixpoint.

    Such vertices lie on no directed cycle, so every cycle of the input
    survives intact; in the output min(indegree, outdegree) >= 1 everywhere.
    """
    din = [0] * d.n
    dout = [0] * d.n
    out_arcs: list[list[int]] = [[] for _ in range(d.n)]
    in_arcs: list[list[int]] = [[] for _ in range(d.n)]
    for a in d.live_edges():
        t, h = d.arcs[a]
        dout[t] += 1
        din[h] += 1
        out_arcs[t].append(a)
        in_arcs[h].append(a)
    alive = list(d.alive)
    queue = deque(v for v in range(d.n)
                  if alive[v] and (din[v] == 0 or dout[v] == 0))
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for a in out_arcs[v]:
            h = d.arcs[a][1]
            if alive[h]:
                din[h] -= 1
                if din[h] == 0:
                    queue.append(h)
        for a in in_arcs[v]:
            t = d.arcs[a][0]
            if alive[t]:
                dout[t] -= 1
                if dout[t] == 0:
                    queue.append(t)
    return DiGraph(d.n, d.arcs, tuple(alive))


def is_connected(g: Graph) -> bool:
    """Connectivity of the live subgraph (weak connectivity for digraphs).
    Graphs with at most one live vertex count as connected."""
    live = g.live_vertices()
    if len(live) <= 1:
        return True
    adj: dict[int, list[int]] = {v: [] for v in live}
    for e in g.live_edges():
        u, v = g.endpoints(e)
        adj[u].append(v)
        adj[v].append(u)
    seen = {live[0]}
    queue = deque([live[0]])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(live)


@dataclass(frozen=True)
class StructuralPredicates:
    is_cubic: bool
    is_3_regular_digraph: bool
    is_connected: bool
    has_min_edges: bool


def structural_predicates(g: Graph) -> StructuralPredicates:
    """Predicates consumed by reduction preconditions.  ``has_min_edges``
    means the live subgraph has at least two edges."""
    prof = degree_profile(g)
    live = g.live_vertices()
    cubic = (not g.directed and bool(live)
             and all(prof.degree[v] == 3 for v in live))
    reg3 = (g.directed and bool(live)
            and all(prof.indegree[v] == 3 and prof.outdegree[v] == 3 for v in live))
    return StructuralPredicates(
        is_cubic=cubic,
        is_3_regular_digraph=reg3,
        is_connected=is_connected(g),
        has_min_edges=g.num_live_edges() >= 2,
    )
