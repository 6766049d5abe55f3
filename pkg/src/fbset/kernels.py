"""Cycle-search kernels behind the exact solvers.

These inner loops dominate branch-and-bound runtime, so the module compiles
one shared source two ways: with ``numba.njit`` (the default when numba is
importable) or as plain Python over numpy arrays.  Select with the
``FBA_BACKEND`` environment variable (``numba`` or ``python``); both paths
return bit-identical results.  ``benchmarks/bench_kernels.py`` compares them.

The module is deliberately free of package imports so it can be loaded
standalone under either backend.  Graphs arrive as flat arrays: arc/edge
endpoint vectors, a CSR index over them, and uint8 liveness masks.
"""

from __future__ import annotations

import os

import numpy as np


def _resolve_backend() -> str:
    req = os.environ.get("FBA_BACKEND", "auto").strip().lower()
    if req in ("", "auto"):
        try:
            import numba  # noqa: F401
            return "numba"
        except ImportError:
            return "python"
    if req == "numba":
        import numba  # noqa: F401  (raise loudly if explicitly requested)
        return "numba"
    if req == "python":
        return "python"
    raise ValueError(f"FBA_BACKEND must be 'numba' or 'python', got {req!r}")


BACKEND = _resolve_backend()

if BACKEND == "numba":
    from numba import njit

    def _compile(fn):
        return njit(cache=True)(fn)
else:
    def _compile(fn):
        return fn


@_compile
def shortest_cycle_directed(tails, heads, out_start, out_arcs, v_alive, a_alive):
    """Arc ids of a shortest live directed cycle, in cycle order (empty array
    when the live subgraph is acyclic).  Deterministic: arcs are scanned
    ascending and only strict improvements are kept."""
    n = v_alive.shape[0]
    m = tails.shape[0]
    for a in range(m):
        if a_alive[a] != 0:
            t = tails[a]
            if t == heads[a] and v_alive[t] != 0:
                out = np.empty(1, np.int32)
                out[0] = a
                return out
    best_len = n + 1
    best = np.empty(0, np.int32)
    dist = np.empty(n, np.int32)
    par = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    for a0 in range(m):
        if best_len <= 2:
            break
        if a_alive[a0] == 0:
            continue
        u = tails[a0]
        v = heads[a0]
        if v_alive[u] == 0 or v_alive[v] == 0 or u == v:
            continue
        for i in range(n):
            dist[i] = -1
        dist[v] = 0
        par[v] = -1
        queue[0] = v
        qh = 0
        qt = 1
        found = False
        while qh < qt and not found:
            x = queue[qh]
            qh += 1
            if dist[x] + 2 >= best_len:
                continue
            for idx in range(out_start[x], out_start[x + 1]):
                a = out_arcs[idx]
                if a_alive[a] == 0:
                    continue
                y = heads[a]
                if v_alive[y] == 0 or dist[y] >= 0:
                    continue
                dist[y] = dist[x] + 1
                par[y] = a
                if y == u:
                    found = True
                    break
                queue[qt] = y
                qt += 1
        if found:
            length = dist[u] + 1
            out = np.empty(length, np.int32)
            out[0] = a0
            cur = u
            pos = length - 1
            while par[cur] >= 0:
                arc = par[cur]
                out[pos] = arc
                pos -= 1
                cur = tails[arc]
            best = out
            best_len = length
    return best


@_compile
def pack_cycles_directed(tails, heads, out_start, out_arcs, v_alive, a_alive,
                         vertex_mode, limit):
    """Greedy count of disjoint live directed cycles (vertex-disjoint when
    vertex_mode != 0, else arc-disjoint), capped at ``limit``.  A valid lower
    bound on the feedback vertex/arc number of the live subgraph."""
    va = v_alive.copy()
    aa = a_alive.copy()
    count = 0
    while count < limit:
        cyc = shortest_cycle_directed(tails, heads, out_start, out_arcs, va, aa)
        if cyc.shape[0] == 0:
            break
        count += 1
        if vertex_mode != 0:
            for i in range(cyc.shape[0]):
                a = cyc[i]
                va[tails[a]] = 0
                va[heads[a]] = 0
        else:
            for i in range(cyc.shape[0]):
                aa[cyc[i]] = 0
    return count


@_compile
def shortest_cycle_undirected(eu, ev, inc_start, inc_edge, inc_other,
                              v_alive, e_alive):
    """Edge ids of a shortest live cycle of an undirected multigraph, in
    cycle order: self-loops count as length 1, parallel pairs as length 2."""
    n = v_alive.shape[0]
    m = eu.shape[0]
    for e in range(m):
        if e_alive[e] != 0 and eu[e] == ev[e] and v_alive[eu[e]] != 0:
            out = np.empty(1, np.int32)
            out[0] = e
            return out
    best_len = n + 2
    best = np.empty(0, np.int32)
    dist = np.empty(n, np.int32)
    par = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    for e0 in range(m):
        if best_len <= 2:
            break
        if e_alive[e0] == 0:
            continue
        u = eu[e0]
        v = ev[e0]
        if v_alive[u] == 0 or v_alive[v] == 0 or u == v:
            continue
        for i in range(n):
            dist[i] = -1
        dist[u] = 0
        par[u] = -1
        queue[0] = u
        qh = 0
        qt = 1
        found = False
        while qh < qt and not found:
            x = queue[qh]
            qh += 1
            if dist[x] + 2 >= best_len:
                continue
            for idx in range(inc_start[x], inc_start[x + 1]):
                e = inc_edge[idx]
                if e == e0 or e_alive[e] == 0:
                    continue
                y = inc_other[idx]
                if v_alive[y] == 0 or dist[y] >= 0:
                    continue
                dist[y] = dist[x] + 1
                par[y] = e
                if y == v:
                    found = True
                    break
                queue[qt] = y
                qt += 1
        if found:
            length = dist[v] + 1
            out = np.empty(length, np.int32)
            out[length - 1] = e0
            cur = v
            pos = length - 2
            while par[cur] >= 0:
                e = par[cur]
                out[pos] = e
                pos -= 1
                cur = eu[e] + ev[e] - cur
            best = out
            best_len = length
    return best


@_compile
def pack_cycles_undirected(eu, ev, inc_start, inc_edge, inc_other,
                           v_alive, e_alive, limit):
    """Greedy count of vertex-disjoint live cycles, capped at ``limit``."""
    va = v_alive.copy()
    ea = e_alive.copy()
    count = 0
    while count < limit:
        cyc = shortest_cycle_undirected(eu, ev, inc_start, inc_edge, inc_other,
                                        va, ea)
        if cyc.shape[0] == 0:
            break
        count += 1
        for i in range(cyc.shape[0]):
            e = cyc[i]
            va[eu[e]] = 0
            va[ev[e]] = 0
    return count


# ---------------------------------------------------------------------------
# Plain-Python array builders (not compiled; shared by both backends).
# ---------------------------------------------------------------------------


class DiArrays:
    """Flat-array view of a directed multigraph for the kernels above."""

    def __init__(self, n: int, arcs, v_alive):
        self.n = n
        m = len(arcs)
        self.tails = np.array([t for t, _ in arcs], dtype=np.int32)
        self.heads = np.array([h for _, h in arcs], dtype=np.int32)
        order = sorted(range(m), key=lambda a: (arcs[a][0], a))
        self.out_arcs = np.array(order, dtype=np.int32)
        start = np.zeros(n + 1, dtype=np.int32)
        for t, _ in arcs:
            start[t + 1] += 1
        self.out_start = np.cumsum(start, dtype=np.int32)
        self.v_alive = np.array([1 if a else 0 for a in v_alive], dtype=np.uint8)
        self.a_alive = np.ones(m, dtype=np.uint8)

    def shortest_cycle(self):
        return shortest_cycle_directed(self.tails, self.heads, self.out_start,
                                       self.out_arcs, self.v_alive, self.a_alive)

    def pack(self, vertex_mode: bool, limit: int) -> int:
        return int(pack_cycles_directed(self.tails, self.heads, self.out_start,
                                        self.out_arcs, self.v_alive, self.a_alive,
                                        1 if vertex_mode else 0, limit))


class UArrays:
    """Flat-array view of an undirected multigraph for the kernels above."""

    def __init__(self, n: int, edges, v_alive):
        self.n = n
        m = len(edges)
        self.eu = np.array([u for u, _ in edges], dtype=np.int32)
        self.ev = np.array([v for _, v in edges], dtype=np.int32)
        inc = []
        for e, (u, v) in enumerate(edges):
            inc.append((u, e, v))
            inc.append((v, e, u))
        inc.sort()
        self.inc_edge = np.array([e for _, e, _ in inc], dtype=np.int32)
        self.inc_other = np.array([o for _, _, o in inc], dtype=np.int32)
        start = np.zeros(n + 1, dtype=np.int32)
        for x, _, _ in inc:
            start[x + 1] += 1
        self.inc_start = np.cumsum(start, dtype=np.int32)
        self.v_alive = np.array([1 if a else 0 for a in v_alive], dtype=np.uint8)
        self.e_alive = np.ones(m, dtype=np.uint8)

    def shortest_cycle(self):
        return shortest_cycle_undirected(self.eu, self.ev, self.inc_start,
                                         self.inc_edge, self.inc_other,
                                         self.v_alive, self.e_alive)

    def pack(self, limit: int) -> int:
        return int(pack_cycles_undirected(self.eu, self.ev, self.inc_start,
                                          self.inc_edge, self.inc_other,
                                          self.v_alive, self.e_alive, limit))
