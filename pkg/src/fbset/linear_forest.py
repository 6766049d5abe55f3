"""Covers of subcubic graphs by two linear forests.

A linear forest is a disjoint union of simple paths: within one label class
every vertex has at most two incident edges and the class is acyclic.  Every
graph of maximum degree 3 splits into two such classes (its linear arboricity
is 2); the exhaustive backtracking below always finds a split and is
deterministic for a fixed input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import UGraph, degree_profile

F1 = 0
F2 = 1


@dataclass(frozen=True)
class LinearForestCover:
    """Per-edge label in {F1, F2}, indexed by edge id (dead edges get F1 but
    are excluded from the class views)."""

    labels: tuple[int, ...]

    def class_edges(self, g: UGraph, cls: int) -> list[int]:
        return [e for e in g.live_edges() if self.labels[e] == cls]


class _ClassState:
    """Degree counters and a union-find per class for acyclicity checks."""

    def __init__(self, n: int):
        self.deg = [0] * n
        self.parent = list(range(n))
        self.trail: list[tuple[int, int, int]] = []

    def _find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def can_add(self, u: int, v: int) -> bool:
        if u == v:
            return False  # a self-loop is a cycle in any class
        if self.deg[u] >= 2 or self.deg[v] >= 2:
            return False
        return self._find(u) != self._find(v)

    def add(self, u: int, v: int) -> None:
        ru, rv = self._find(u), self._find(v)
        self.trail.append((ru, self.parent[ru], 0))
        self.parent[ru] = rv
        self.deg[u] += 1
        self.deg[v] += 1

    def undo(self, u: int, v: int) -> None:
        ru, old, _ = self.trail.pop()
        self.parent[ru] = old
        self.deg[u] -= 1
        self.deg[v] -= 1


def _bfs_edge_order(g: UGraph) -> list[int]:
    """Live edges ordered so consecutive decisions share vertices, which lets
    the degree/acyclicity constraints prune early."""
    order: list[int] = []
    seen_e: set[int] = set()
    seen_v: set[int] = set()
    incident: dict[int, list[int]] = {v: [] for v in g.live_vertices()}
    for e in g.live_edges():
        u, v = g.endpoints(e)
        incident[u].append(e)
        if u != v:
            incident[v].append(e)
    for start in g.live_vertices():
        if start in seen_v:
            continue
        queue = deque([start])
        seen_v.add(start)
        while queue:
            x = queue.popleft()
            for e in incident[x]:
                if e in seen_e:
                    continue
                seen_e.add(e)
                order.append(e)
                other = sum(g.endpoints(e)) - x
                if other not in seen_v:
                    seen_v.add(other)
                    queue.append(other)
    return order


def linear_forest_cover(g: UGraph) -> LinearForestCover:
    """Deterministic 2-labeling of the live edges into linear forests.

    Raises ValueError when the maximum degree exceeds 3 (no cover is
    guaranteed there) or when the graph has a self-loop, which no linear
    forest can absorb.
    """
    prof = degree_profile(g)
    if prof.max_degree > 3:
        raise ValueError(f"linear forest cover requires max degree <= 3, "
                         f"found {prof.max_degree}")
    for e in g.live_edges():
        u, v = g.endpoints(e)
        if u == v:
            raise ValueError("self-loops cannot be covered by linear forests")

    order = _bfs_edge_order(g)
    states = (_ClassState(g.n), _ClassState(g.n))
    labels: dict[int, int] = {}

    def search(i: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        u, v = g.endpoints(e)
        for cls in (F1, F2):
            if cls == F2 and i == 0:
                break  # first edge pinned to F1: kills the label-swap symmetry
            st = states[cls]
            if st.can_add(u, v):
                st.add(u, v)
                labels[e] = cls
                if search(i + 1):
                    return True
                st.undo(u, v)
                del labels[e]
        return False

    if not search(0):
        raise AssertionError("subcubic graphs always admit a 2-forest cover")
    return LinearForestCover(tuple(labels.get(e, F1) for e in range(g.m)))


def validate_cover(g: UGraph, cover: LinearForestCover) -> None:
    """Raise ValueError unless both classes are linear forests covering E(g)."""
    if len(cover.labels) != g.m:
        raise ValueError("label table length differs from edge count")
    for cls in (F1, F2):
        st = _ClassState(g.n)
        for e in cover.class_edges(g, cls):
            u, v = g.endpoints(e)
            if not st.can_add(u, v):
                raise ValueError(f"class {cls} is not a linear forest at edge {e}")
            st.add(u, v)
