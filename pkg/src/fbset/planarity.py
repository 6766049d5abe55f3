"""Planarity testing with combinatorial-embedding output.

An embedding is a rotation system: for every vertex, a cyclic sequence of
incident edge-ends ("darts").  A dart is a pair (edge id, endpoint slot),
which disambiguates the two ends of a self-loop and the members of a
parallel class.  Faces are the orbits of the permutation
``dart -> successor of its twin in the rotation at the other endpoint``;
genus 0 is certified by the Euler relation V - E + F = 2 on every connected
component that has edges.

The embedder is a quadratic path-addition procedure: each biconnected block
is grown from a cycle by repeatedly routing a path of a remaining bridge
fragment through a face containing all of the fragment's attachment points.
Multigraphs are handled by subdividing internally and un-subdividing the
resulting rotation.  Correctness is gated by the Euler/face invariant plus
an exhaustive small-graph cross-check in the test suite, not by the
algorithm's pedigree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .graphs import DiGraph, Graph, UGraph

Dart = tuple[int, int]


@dataclass(frozen=True)
class Embedding:
    """Rotation system; ``rotations[v]`` lists the live edge-ends at v in
    cyclic order (dead vertices carry an empty rotation)."""

    rotations: tuple[tuple[Dart, ...], ...]

    def rotation(self, v: int) -> tuple[Dart, ...]:
        return self.rotations[v]


@dataclass(frozen=True)
class NonPlanarVerdict:
    reason: str


def _dart_vertex(g: Graph, d: Dart) -> int:
    e, s = d
    return g.endpoints(e)[s]


def _dart_other(g: Graph, d: Dart) -> int:
    e, s = d
    return g.endpoints(e)[1 - s]


def faces(g: Graph, emb: Embedding) -> list[tuple[Dart, ...]]:
    """Face orbits of the rotation system, each starting at its smallest dart."""
    pos: dict[Dart, tuple[int, int]] = {}
    for v in range(g.n):
        for i, d in enumerate(emb.rotations[v]):
            pos[d] = (v, i)

    def nxt(d: Dart) -> Dart:
        twin = (d[0], 1 - d[1])
        v, i = pos[twin]
        rot = emb.rotations[v]
        return rot[(i + 1) % len(rot)]

    out = []
    seen: set[Dart] = set()
    for d0 in sorted(pos):
        if d0 in seen:
            continue
        orbit = []
        d = d0
        while True:
            orbit.append(d)
            seen.add(d)
            d = nxt(d)
            if d == d0:
                break
        out.append(tuple(orbit))
    return out


def _live_components(g: Graph) -> list[list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in g.live_vertices()}
    for e in g.live_edges():
        u, v = g.endpoints(e)
        adj[u].append(v)
        adj[v].append(u)
    comps = []
    seen: set[int] = set()
    for s in g.live_vertices():
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def face_count(g: Graph, emb: Embedding) -> int:
    """Global face count: components drawn side by side share the outer face,
    and an edgeless component sits inside a face it does not bound.  With
    this convention V - E + F = 1 + C holds for every planar embedding."""
    touched = {g.endpoints(e)[0] for e in g.live_edges()}
    edgeful = sum(1 for comp in _live_components(g)
                  if any(v in touched for v in comp))
    return len(faces(g, emb)) - edgeful + 1


def validate_embedding(g: Graph, emb: Embedding) -> None:
    """Raise ValueError unless ``emb`` is a genus-0 rotation system of the
    live subgraph of ``g``: every live edge-end appears exactly once, the
    rotation length at v equals d(v), and V - E + F = 2 holds on each
    connected component with edges."""
    if len(emb.rotations) != g.n:
        raise ValueError("rotation table length differs from vertex count")
    expected: set[Dart] = set()
    for e in g.live_edges():
        expected.add((e, 0))
        expected.add((e, 1))
    listed: list[Dart] = []
    for v in range(g.n):
        for d in emb.rotations[v]:
            if d not in expected:
                raise ValueError(f"unknown or dead edge-end {d} at vertex {v}")
            if _dart_vertex(g, d) != v:
                raise ValueError(f"edge-end {d} listed at wrong vertex {v}")
            listed.append(d)
        if not g.is_live_vertex(v) and emb.rotations[v]:
            raise ValueError(f"dead vertex {v} has a nonempty rotation")
    if len(listed) != len(set(listed)) or set(listed) != expected:
        raise ValueError("edge-ends are not partitioned by the rotations")

    face_of: dict[Dart, int] = {}
    for i, f in enumerate(faces(g, emb)):
        for d in f:
            face_of[d] = i
    for comp in _live_components(g):
        comp_set = set(comp)
        comp_edges = [e for e in g.live_edges() if g.endpoints(e)[0] in comp_set]
        if not comp_edges:
            continue
        comp_faces = {face_of[(e, s)] for e in comp_edges for s in (0, 1)}
        euler = len(comp) - len(comp_edges) + len(comp_faces)
        if euler != 2:
            raise ValueError(
                f"Euler check failed on a component: V-E+F = {euler} != 2")


# ---------------------------------------------------------------------------
# Path-addition embedder on a simple graph.
# ---------------------------------------------------------------------------


def _find_cycle(verts: list[int], adj: dict[int, list[tuple[int, int]]]):
    """A cycle in a biconnected block: alternating [v0, e0, v1, e1, ..., v0]."""
    start = verts[0]
    parent_edge: dict[int, tuple[int, int] | None] = {start: None}
    stack = [start]
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for w, e in adj[u]:
            if w not in parent_edge:
                parent_edge[w] = (u, e)
                stack.append(w)
            elif parent_edge[u] is None or parent_edge[u][1] != e:
                # Non-tree edge closing a cycle through the tree paths.
                anc_u, anc_w = [], []
                x = u
                while x is not None:
                    anc_u.append(x)
                    x = parent_edge[x][0] if parent_edge[x] else None
                x = w
                set_u = {y: i for i, y in enumerate(anc_u)}
                path_w = []
                while x not in set_u:
                    path_w.append(x)
                    x = parent_edge[x][0]
                meet = x
                # Cycle order: meet ->tree-> u -e- w ->tree parents-> meet.
                cyc_vertices = anc_u[:set_u[meet] + 1][::-1] + path_w
                # stitch edge ids between consecutive cycle vertices
                walk: list[int] = []
                seq = cyc_vertices + [cyc_vertices[0]]
                for a, b in zip(seq, seq[1:]):
                    if parent_edge.get(b) and parent_edge[b][0] == a:
                        walk.extend([a, parent_edge[b][1]])
                    elif parent_edge.get(a) and parent_edge[a][0] == b:
                        walk.extend([a, parent_edge[a][1]])
                    else:
                        walk.extend([a, e])
                return walk
    return None


def _embed_block(edge_ids: list[int], endpoints: list[tuple[int, int]]):
    """Rotations for one biconnected block of a simple graph, or None."""
    verts = sorted({v for e in edge_ids for v in endpoints[e]})
    nv = len(verts)
    if len(edge_ids) == 1:
        e = edge_ids[0]
        u, v = endpoints[e]
        return {u: [(e, 0)], v: [(e, 1)]}
    if nv >= 3 and len(edge_ids) > 3 * nv - 6:
        return None

    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for e in edge_ids:
        u, v = endpoints[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    for v in verts:
        adj[v].sort()

    def dart_at(e: int, v: int) -> Dart:
        return (e, 0) if endpoints[e][0] == v else (e, 1)

    walk = _find_cycle(verts, adj)
    assert walk is not None, "a multi-edge block must contain a cycle"
    cyc_v = walk[0::2]
    cyc_e = walk[1::2]
    rot: dict[int, list[Dart]] = {}
    k = len(cyc_v)
    for i, v in enumerate(cyc_v):
        rot[v] = [dart_at(cyc_e[(i - 1) % k], v), dart_at(cyc_e[i], v)]
    embedded_e = set(cyc_e)
    embedded_v = set(cyc_v)

    def current_faces() -> list[tuple[Dart, ...]]:
        pos = {}
        for v, r in rot.items():
            for i, d in enumerate(r):
                pos[d] = (v, i)
        out, seen = [], set()
        for d0 in sorted(pos):
            if d0 in seen:
                continue
            orbit, d = [], d0
            while True:
                orbit.append(d)
                seen.add(d)
                twin = (d[0], 1 - d[1])
                v, i = pos[twin]
                d = rot[v][(i + 1) % len(rot[v])]
                if d == d0:
                    break
            out.append(tuple(orbit))
        return out

    def corner_slot(face: tuple[Dart, ...], v: int) -> Dart:
        """Twin-dart after which a new dart at v must be inserted so the new
        edge lands inside ``face``: the face corner at v sits between
        twin(d_i) and its rotation successor, for any face dart d_i whose
        far endpoint is v."""
        for d in face:
            e, s = d
            if endpoints[e][1 - s] == v:
                return (e, 1 - s)
        raise AssertionError("vertex not on face")

    while len(embedded_e) < len(edge_ids):
        fragments = []  # (attachments sorted, path [v, e, v, ..., v])
        for e in edge_ids:
            if e in embedded_e:
                continue
            u, v = endpoints[e]
            if u in embedded_v and v in embedded_v:
                fragments.append((tuple(sorted((u, v))), [u, e, v]))
        comp_seen: set[int] = set()
        for s in verts:
            if s in embedded_v or s in comp_seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                u = stack.pop()
                for w, e in adj[u]:
                    if w not in embedded_v and w not in comp:
                        comp.add(w)
                        stack.append(w)
            comp_seen |= comp
            attach = sorted({w for u in comp for w, _ in adj[u] if w in embedded_v})
            # BFS a path between two distinct attachments through the fragment.
            a = attach[0]
            prev: dict[int, tuple[int, int]] = {}
            queue = [x for x in sorted(comp) if any(w == a for w, _ in adj[x])]
            for x in queue:
                for w, e in adj[x]:
                    if w == a and x not in prev:
                        prev[x] = (a, e)
            b = None
            qi = 0
            while qi < len(queue) and b is None:
                u = queue[qi]
                qi += 1
                for w, e in sorted(adj[u]):
                    if w in embedded_v and w != a:
                        b = (u, w, e)
                        break
                    if w not in embedded_v and w not in prev:
                        prev[w] = (u, e)
                        queue.append(w)
            assert b is not None, "fragment with a single attachment in a block"
            u, w, e = b
            path = [w, e, u]
            while u != a:
                p, pe = prev[u]
                path.extend([pe, p])
                u = p
            fragments.append((tuple(attach), path[::-1]))

        face_list = current_faces()
        face_verts = []
        for f in face_list:
            fv = set()
            for d in f:
                e, s = d
                fv.add(endpoints[e][s])
                fv.add(endpoints[e][1 - s])
            face_verts.append(fv)

        best = None
        for attach, path in fragments:
            admissible = [i for i, fv in enumerate(face_verts)
                          if all(x in fv for x in attach)]
            if not admissible:
                return None
            key = (len(admissible), attach, path[1])
            if best is None or key < best[0]:
                best = (key, admissible[0], path)
        _, face_idx, path = best
        f = face_list[face_idx]

        a, b = path[0], path[-1]
        slot_a = corner_slot(f, a)
        slot_b = corner_slot(f, b)
        rot[a].insert(rot[a].index(slot_a) + 1, dart_at(path[1], a))
        rot[b].insert(rot[b].index(slot_b) + 1, dart_at(path[-2], b))
        inner = path[2:-2]
        for j in range(0, len(inner), 2):
            x = inner[j]
            e_prev = path[1 + j]
            e_next = path[3 + j]
            rot[x] = [dart_at(e_prev, x), dart_at(e_next, x)]
            embedded_v.add(x)
        for e in path[1::2]:
            embedded_e.add(e)

    return rot


def _tarjan_blocks(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    """Biconnected components (as edge-id lists) of a simple graph."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for e, (u, v) in enumerate(edges):
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    for v in adj:
        adj[v].sort()
    visited: set[int] = set()
    blocks: list[list[int]] = []
    num: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = [0]
    estack: list[int] = []

    for root in sorted(adj):
        if root in visited:
            continue
        stack = [(root, None, iter(adj[root]))]
        visited.add(root)
        num[root] = low[root] = counter[0]
        counter[0] += 1
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == pe:
                    continue
                if w not in visited:
                    estack.append(e)
                    visited.add(w)
                    num[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                if num[w] < num[u]:
                    estack.append(e)
                    low[u] = min(low[u], num[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= num[p]:
                    block = []
                    while estack:
                        e = estack.pop()
                        block.append(e)
                        if e == pe:
                            break
                    blocks.append(sorted(block))
    return blocks


def _embed_simple(n: int, edges: list[tuple[int, int]]):
    """Rotations (list of dart lists) of a simple planar graph, or None."""
    rot: list[list[Dart]] = [[] for _ in range(n)]
    for block in _tarjan_blocks(n, edges):
        br = _embed_block(block, edges)
        if br is None:
            return None
        # Concatenating block rotations at cut vertices embeds each further
        # block inside a face of the earlier ones, preserving genus 0.
        for v, darts in sorted(br.items()):
            rot[v].extend(darts)
    return rot


def test_planarity(g: UGraph) -> Embedding | NonPlanarVerdict:
    """Planarity test returning a rotation system on success.

    Parallel edges and self-loops are handled by subdividing internally and
    un-subdividing the rotation afterward (subdivision preserves planarity
    in both directions).  The returned embedding always passes
    :func:`validate_embedding`.
    """
    live = g.live_edges()
    aux_n = g.n
    aux_edges: list[tuple[int, int]] = []
    # tag: original dart represented by each auxiliary edge, or None
    tags: list[Dart | None] = []
    touch: dict[tuple[int, int], Dart] = {}
    for e in live:
        u, v = g.endpoints(e)
        if u == v:
            p, q = aux_n, aux_n + 1
            aux_n += 2
            aux_edges += [(u, p), (p, q), (q, v)]
            tags += [(e, 0), None, (e, 1)]
        else:
            p = aux_n
            aux_n += 1
            aux_edges += [(u, p), (p, v)]
            tags += [(e, 0), (e, 1)]

    rot_aux = _embed_simple(aux_n, aux_edges)
    if rot_aux is None:
        return NonPlanarVerdict("no face can host a remaining bridge fragment")

    rotations = []
    for v in range(g.n):
        darts = []
        for (ae, s) in rot_aux[v] if v < len(rot_aux) else []:
            tag = tags[ae]
            assert tag is not None, "untagged auxiliary edge at an original vertex"
            darts.append(tag)
        rotations.append(tuple(darts))
    emb = Embedding(tuple(rotations))
    validate_embedding(g, emb)
    return emb


def is_planar(g: Graph) -> bool:
    target = g.underlying() if g.directed else g
    return isinstance(test_planarity(target), Embedding)


def digraph_embedding(d: DiGraph) -> Embedding | NonPlanarVerdict:
    """Embedding of the underlying undirected multigraph; arc directions are
    retained for sign-pattern queries because slot 0 of every dart is the
    tail end of its arc."""
    return test_planarity(d.underlying())


# ---------------------------------------------------------------------------
# Sign patterns around embedded digraph vertices.
# ---------------------------------------------------------------------------


MINUS = "-"
PLUS = "+"


@dataclass(frozen=True)
class SignPattern:
    """Circular sequence over {-, +} at a digraph vertex, in rotation order:
    '-' marks an incoming arc-end, '+' an outgoing one."""

    signs: tuple[str, ...]

    def rotated(self, k: int) -> "SignPattern":
        n = len(self.signs)
        if n == 0:
            return self
        k %= n
        return SignPattern(self.signs[k:] + self.signs[:k])

    def __str__(self) -> str:
        return "(" + ",".join(self.signs) + ")"


def sign_pattern(d: DiGraph, emb: Embedding, v: int) -> SignPattern:
    if not (0 <= v < d.n) or not d.is_live_vertex(v):
        raise ValueError(f"vertex {v} is dead or out of range")
    return SignPattern(tuple(PLUS if s == 0 else MINUS for (_, s) in emb.rotations[v]))


class PatternClass(Enum):
    BIPOLAR = "bipolar"
    IRREGULAR = "irregular"
    ALTERNATING = "alternating"
    OTHER = "other"


_IRREGULAR_A = (MINUS, MINUS, PLUS, PLUS, MINUS, PLUS)
_IRREGULAR_B = (PLUS, PLUS, MINUS, MINUS, PLUS, MINUS)


def _is_rotation_of(seq: tuple[str, ...], target: tuple[str, ...]) -> bool:
    n = len(seq)
    return len(target) == n and any(
        seq[k:] + seq[:k] == target for k in range(n))


def classify_pattern(p: SignPattern) -> PatternClass:
    """Classification up to cyclic rotation only: reflection is NOT applied,
    so the two irregular orders are listed explicitly and both accepted."""
    s = p.signs
    n = len(s)
    minus = s.count(MINUS)
    if minus == 0 or minus == n:
        return PatternClass.BIPOLAR
    transitions = sum(s[i] != s[(i + 1) % n] for i in range(n))
    if transitions == 2:
        return PatternClass.BIPOLAR
    if _is_rotation_of(s, _IRREGULAR_A) or _is_rotation_of(s, _IRREGULAR_B):
        return PatternClass.IRREGULAR
    if transitions == n:
        return PatternClass.ALTERNATING
    return PatternClass.OTHER


def is_bipolar_embedding(d: DiGraph, emb: Embedding) -> bool:
    """True iff every live vertex has its incoming arc-ends consecutive in
    rotation order.  Vertices with indegree or outdegree at most 1 are
    trivially bipolar."""
    return all(
        classify_pattern(sign_pattern(d, emb, v)) is PatternClass.BIPOLAR
        for v in d.live_vertices())
