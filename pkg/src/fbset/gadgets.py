"""Planar gadget reductions: degree reduction for undirected feedback vertex
set, irregular orientations of doubled cubic graphs, the 11-vertex digraph
vertex gadget, and the connected-feedback path gadget.

Each construction consumes an embedding where the cyclic order of edge-ends
matters, reattaches the original edges to gadget ports in rotation order,
and returns a :class:`~fbset.reductions.ReductionArtifact` whose lift and
project maps mirror the correctness argument vertex by vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import DiGraph, UGraph, degree_profile, is_connected, structural_predicates
from .linear_forest import F1, linear_forest_cover
from .planarity import (
    Embedding,
    PatternClass,
    classify_pattern,
    digraph_embedding,
    sign_pattern,
    test_planarity,
    validate_embedding,
)
from .reductions import ReductionArtifact, Registry


# ---------------------------------------------------------------------------
# Iterated degree reduction for undirected FVS (planar, down to max degree 4).
# ---------------------------------------------------------------------------

# Widget wiring shared by the degree-6+ and degree-5 variants: two anchor
# triangles (va,v1,v2) and (vc,v5,v4), two ear triangles through vb, and a
# cross connection v2..v4 (direct edge for the 6+ widget, subdivided through
# v3 for the 5 widget).  Deleting {va,vc} leaves the through-path
# v1-v2-..-v4-v5 so outside cycles survive; deleting {v2,v4,vb} severs every
# entry from every exit.
_WIDGET_CORE = [("va", "v1"), ("v1", "v2"), ("v2", "va"),
                ("vc", "v5"), ("v5", "v4"), ("v4", "vc"),
                ("vb", "va"), ("va", "em"), ("em", "vb"),
                ("vb", "vc"), ("vc", "ep"), ("ep", "vb")]
_WIDGET_A_NAMES = ("v1", "v2", "v4", "v5", "va", "vb", "vc", "em", "ep")
_WIDGET_B_NAMES = ("v1", "v2", "v3", "v4", "v5", "va", "vb", "vc", "em", "ep")


@dataclass(frozen=True)
class _WidgetStep:
    replaced: int
    gadget_ids: frozenset
    selected: frozenset    # stand-ins when the replaced vertex is chosen
    unselected: frozenset  # mandatory pair when it is not


def _insert_widget(g: UGraph, emb: Embedding, v: int):
    """Replace v (degree 5 for the subdivided widget, 6+ for the direct one)
    by the widget, assigning its incident edge-ends to the ports in rotation
    order.  Returns the new graph and the step record."""
    rot = emb.rotations[v]
    d = len(rot)
    base = g.n
    names = _WIDGET_A_NAMES if d >= 6 else _WIDGET_B_NAMES
    ids = {name: base + i for i, name in enumerate(names)}
    widget_edges = [(ids[a], ids[b]) for a, b in _WIDGET_CORE]
    if d >= 6:
        widget_edges.append((ids["v2"], ids["v4"]))
        ports = (["v1"] + ["v2"] * ((d - 2) // 2)
                 + ["v4"] * ((d - 2 + 1) // 2) + ["v5"])
    else:
        widget_edges += [(ids["v2"], ids["v3"]), (ids["v3"], ids["v4"])]
        ports = ["v1", "v2", "v3", "v4", "v5"]
    port_of = {dart: ids[ports[i]] for i, dart in enumerate(rot)}

    new_edges = []
    for e in g.live_edges():
        x, y = g.endpoints(e)
        if v not in (x, y):
            new_edges.append((x, y))
            continue
        nx = port_of[(e, 0)] if x == v else x
        ny = port_of[(e, 1)] if y == v else y
        new_edges.append((nx, ny))
    new_edges.extend(widget_edges)
    alive = [a and w != v for w, a in enumerate(g.alive)] + [True] * len(names)
    out = UGraph.from_edges(base + len(names), new_edges, alive)
    step = _WidgetStep(
        replaced=v,
        gadget_ids=frozenset(ids.values()),
        selected=frozenset((ids["v2"], ids["v4"], ids["vb"])),
        unselected=frozenset((ids["va"], ids["vc"])),
    )
    return out, step


def speckenmeyer_reduce(g: UGraph,
                        emb: Embedding | None = None) -> ReductionArtifact:
    """Iteratively replace every vertex of degree >= 6, then every vertex of
    degree 5, by the planar widget, bringing the maximum degree to 4 while
    raising the feedback vertex number by exactly 2 per widget.  Planarity is
    re-verified after every insertion (the fresh embedding also feeds the
    next port assignment)."""
    for e in g.live_edges():
        u, w = g.endpoints(e)
        if u == w:
            raise ValueError("degree reduction requires a loop-free graph")
    if emb is None:
        emb = test_planarity(g)
    if not isinstance(emb, Embedding):
        raise ValueError("input graph is not planar")
    validate_embedding(g, emb)

    cur, cur_emb = g, emb
    steps: list[_WidgetStep] = []
    owner = {v: v for v in g.live_vertices()}
    while True:
        prof = degree_profile(cur)
        live = cur.live_vertices()
        high = [v for v in live if prof.degree[v] >= 6]
        if not high:
            high = [v for v in live if prof.degree[v] == 5]
        if not high:
            break
        v = high[0]
        cur, step = _insert_widget(cur, cur_emb, v)
        steps.append(step)
        root = owner.pop(v)
        for x in step.gadget_ids:
            owner[x] = root
        cur_emb = test_planarity(cur)
        assert isinstance(cur_emb, Embedding), \
            "widget insertion must preserve planarity"

    registry: Registry = {}
    for x, root in owner.items():
        registry.setdefault(f"v{root}", [])
        registry[f"v{root}"].append(x)
    registry = {k: tuple(sorted(v)) for k, v in registry.items()}

    def lift(s: frozenset) -> frozenset:
        cur_set = frozenset(s)
        for st in steps:
            if st.replaced in cur_set:
                cur_set = (cur_set - {st.replaced}) | st.selected
            else:
                cur_set = cur_set | st.unselected
        return cur_set

    def project(t: frozenset) -> frozenset:
        cur_set = frozenset(t)
        for st in reversed(steps):
            inside = cur_set & st.gadget_ids
            cur_set = cur_set - st.gadget_ids
            if len(inside) >= 3:
                cur_set = cur_set | {st.replaced}
        return cur_set

    art = ReductionArtifact(("fvs", "fvs"), cur, (1, 2 * len(steps)),
                            lift, project, registry, embedding=cur_emb)
    return art


def widget_count(art: ReductionArtifact) -> int:
    """Number of widgets a degree-reduction artifact inserted (its additive
    budget term is 2 per widget)."""
    return art.budget[1] // 2


# ---------------------------------------------------------------------------
# Irregular orientation of a doubled planar cubic graph.
# ---------------------------------------------------------------------------


def irregular_doubling(g: UGraph) -> ReductionArtifact:
    """Double each edge of a planar cubic graph into a 2-cycle, choosing each
    2-cycle's local orientation by a two-linear-forest split of the edges, so
    that around every vertex the six arc-ends read (-,-,+,+,-,+) or
    (+,+,-,-,+,-) up to rotation.  Vertex cover maps to feedback vertex set
    with unchanged budget."""
    preds = structural_predicates(g)
    if not preds.is_cubic:
        raise ValueError("irregular doubling requires a cubic graph")
    emb_in = test_planarity(g)
    if not isinstance(emb_in, Embedding):
        raise ValueError("irregular doubling requires a planar graph")
    cover = linear_forest_cover(g)

    live = g.live_edges()
    arc_ids = {}
    arcs = []
    for e in live:
        u, v = g.endpoints(e)
        arc_ids[e] = (len(arcs), len(arcs) + 1)
        arcs.append((u, v))
        arcs.append((v, u))
    out = DiGraph.from_arcs(g.n, arcs, g.alive)

    rotations = []
    for v in range(g.n):
        darts = []
        for (e, s) in emb_in.rotations[v]:
            fwd, rev = arc_ids[e]
            # outgoing end of the arc leaving v, incoming end of the arc
            # arriving at v
            out_dart = (fwd, 0) if s == 0 else (rev, 0)
            in_dart = (rev, 1) if s == 0 else (fwd, 1)
            if cover.labels[e] == F1:
                darts += [out_dart, in_dart]
            else:
                darts += [in_dart, out_dart]
        rotations.append(tuple(darts))
    emb_out = Embedding(tuple(rotations))
    validate_embedding(out.underlying(), emb_out)
    for v in out.live_vertices():
        cls = classify_pattern(sign_pattern(out, emb_out, v))
        assert cls is PatternClass.IRREGULAR, \
            f"vertex {v} embedded with pattern {sign_pattern(out, emb_out, v)}"

    registry: Registry = {f"v{v}": (v,) for v in g.live_vertices()}

    def lift(cover_set: frozenset) -> frozenset:
        return frozenset(cover_set)

    def project(feedback: frozenset) -> frozenset:
        return frozenset(feedback)

    return ReductionArtifact(("vc", "fvs"), out, (1, 0), lift, project,
                             registry, embedding=emb_out)


# ---------------------------------------------------------------------------
# The 11-vertex gadget: planar digraph FVS with in/out degree at most 2.
# ---------------------------------------------------------------------------

_H_NAMES = ("m12", "p12", "m3", "p3", "ma", "pa", "b", "bp", "c", "d", "dp")
_H_ARCS = [("m3", "p3"),
           ("m12", "ma"), ("ma", "pa"), ("pa", "p12"),
           ("b", "c"), ("c", "bp"), ("bp", "b"),
           ("c", "d"), ("d", "dp"), ("dp", "c"),
           ("ma", "p3"), ("p3", "b"), ("b", "ma"),
           ("m3", "pa"), ("pa", "d"), ("d", "m3")]
_PATTERN_A = ("-", "-", "+", "+", "-", "+")
_PATTERN_B = ("+", "+", "-", "-", "+", "-")

# Port names by rotation position from the pattern's canonical offset: the
# consecutive pair uses the "12" ports, the lone arcs the "3" ports.  The
# same table serves both patterns because the mirrored gadget swaps every
# port's entry/exit role along with its arcs.
_PORTS = ("m12", "m12", "p12", "p12", "m3", "p3")


def _pattern_offset(signs: tuple[str, ...]) -> tuple[tuple[str, ...], int] | None:
    if len(signs) != 6:
        return None
    for target in (_PATTERN_A, _PATTERN_B):
        for r in range(6):
            if tuple(signs[(r + i) % 6] for i in range(6)) == target:
                return target, r
    return None


def _build_dfvs(d: DiGraph, emb: Embedding, live: list[int],
                ids: dict[int, dict[str, int]], flip: bool) -> DiGraph | None:
    """One of the two globally consistent gadget assignments: vertices whose
    pattern matches the first irregular order get the normal (flip=False) or
    the arc-reversed (flip=True) gadget, the others the opposite.  Exactly
    one choice matches the embedding's handedness and stays planar."""
    in_port: dict[int, dict[int, str]] = {}
    out_port: dict[int, dict[int, str]] = {}
    mirrored: dict[int, bool] = {}
    for v in live:
        pat = sign_pattern(d, emb, v)
        hit = _pattern_offset(pat.signs)
        if hit is None:
            raise ValueError(
                f"vertex {v} has pattern {pat}, not one of the two irregular orders")
        target, off = hit
        mirrored[v] = (target == _PATTERN_B) != flip
        rot = emb.rotations[v]
        in_port[v] = {}
        out_port[v] = {}
        for i in range(6):
            arc, slot = rot[(off + i) % 6]
            if slot == 0:
                out_port[v][arc] = _PORTS[i]
            else:
                in_port[v][arc] = _PORTS[i]

    arcs: list[tuple[int, int]] = []
    for v in live:
        table = ids[v]
        for a_name, b_name in _H_ARCS:
            if mirrored[v]:
                arcs.append((table[b_name], table[a_name]))
            else:
                arcs.append((table[a_name], table[b_name]))
    for a in d.live_edges():
        t, h = d.arcs[a]
        arcs.append((ids[t][out_port[t][a]], ids[h][in_port[h][a]]))
    return DiGraph.from_arcs(11 * len(live), arcs)


def planar_dfvs_gadget(d: DiGraph, emb: Embedding) -> ReductionArtifact:
    """Replace each vertex of an irregularly embedded 3-regular digraph by an
    11-vertex gadget with 16 internal arcs; the consecutive in-pair enters at
    one port, the consecutive out-pair leaves at another, and the lone arcs
    get ports of their own.  Mirrored vertices get the arc-reversed gadget.
    Budget k' = k + 2n; the output is planar with indegree and outdegree at
    most 2 everywhere."""
    validate_embedding(d.underlying(), emb)
    live = d.live_vertices()
    ids: dict[int, dict[str, int]] = {}
    for i, v in enumerate(live):
        ids[v] = {name: 11 * i + j for j, name in enumerate(_H_NAMES)}

    out = _build_dfvs(d, emb, live, ids, flip=False)
    emb_out = digraph_embedding(out)
    if not isinstance(emb_out, Embedding):
        out = _build_dfvs(d, emb, live, ids, flip=True)
        emb_out = digraph_embedding(out)
    assert isinstance(emb_out, Embedding), "gadget insertion must stay planar"
    registry: Registry = {
        f"v{v}": tuple(ids[v][name] for name in _H_NAMES) for v in live}
    n_live = len(live)

    def lift(s: frozenset) -> frozenset:
        picked = []
        for v in live:
            if v in s:
                picked += [ids[v]["ma"], ids[v]["c"], ids[v]["m3"]]
            else:
                picked += [ids[v]["b"], ids[v]["d"]]
        return frozenset(picked)

    def project(t: frozenset) -> frozenset:
        picked = []
        for v in live:
            gadget = set(ids[v].values())
            if len(t & gadget) >= 3:
                picked.append(v)
        return frozenset(picked)

    return ReductionArtifact(("fvs", "fvs"), out, (1, 2 * n_live),
                             lift, project, registry, embedding=emb_out)


# ---------------------------------------------------------------------------
# Connected FVS: vertex paths and long edge paths, max degree 3.
# ---------------------------------------------------------------------------


def cfvs_gadget(g: UGraph, k: int) -> ReductionArtifact:
    """Threshold reduction from connected vertex cover (budget k) on a
    connected planar graph of maximum degree 4 to connected feedback vertex
    set at budget k' = 8k + 8n(k-1).

    Each vertex becomes an 8-vertex path whose odd/even slot pairs serve its
    incident edges in rotation order; each edge becomes two disjoint paths of
    8n vertices closing one long cycle per edge.  Only decision equivalence
    is claimed: the output optimum can sit far below k'."""
    prof = degree_profile(g)
    preds = structural_predicates(g)
    if not preds.is_connected:
        raise ValueError("cfvs reduction requires a connected graph")
    if prof.max_degree > 4:
        offender = next(v for v in g.live_vertices() if prof.degree[v] > 4)
        raise ValueError(f"cfvs requires max degree <= 4, found "
                         f"{prof.degree[offender]} at vertex {offender}")
    if g.num_live_edges() < 2:
        raise ValueError("cfvs requires at least two edges")
    seen_pairs = set()
    for e in g.live_edges():
        u, v = g.endpoints(e)
        if u == v or (u, v) in seen_pairs:
            raise ValueError("cfvs requires a simple graph")
        seen_pairs.add((u, v))
    emb = test_planarity(g)
    if not isinstance(emb, Embedding):
        raise ValueError("cfvs requires a planar graph")
    n = g.num_live_vertices()
    if not 1 <= k <= n:
        raise ValueError(f"budget must be between 1 and n={n}")

    live_v = g.live_vertices()
    live_e = g.live_edges()
    seg = 8 * n
    vpath: dict[int, list[int]] = {}
    nxt = 0
    for v in live_v:
        vpath[v] = list(range(nxt, nxt + 8))
        nxt += 8
    epath: dict[tuple[int, int], list[int]] = {}
    for e in live_e:
        epath[(e, 0)] = list(range(nxt, nxt + seg))          # from slot-0 end
        nxt += seg
        epath[(e, 1)] = list(range(nxt, nxt + seg))          # from slot-1 end
        nxt += seg

    edges: list[tuple[int, int]] = []
    for v in live_v:
        edges.extend(zip(vpath[v], vpath[v][1:]))
    for key, path in epath.items():
        edges.extend(zip(path, path[1:]))
    for v in live_v:
        for i, (e, s) in enumerate(emb.rotations[v], start=1):
            out_path = epath[(e, s)]
            in_path = epath[(e, 1 - s)]
            edges.append((vpath[v][2 * i - 2], out_path[0]))     # v_{2i-1} e^1
            edges.append((vpath[v][2 * i - 1], in_path[-1]))     # v_{2i} e^{8n}
    out = UGraph.from_edges(nxt, edges)
    emb_out = test_planarity(out)
    assert isinstance(emb_out, Embedding), "cfvs construction must stay planar"

    registry: Registry = {f"v{v}": tuple(vpath[v]) for v in live_v}
    for e in live_e:
        registry[f"e{e}"] = tuple(epath[(e, 0)] + epath[(e, 1)])

    adj: dict[int, set[int]] = {v: set() for v in live_v}
    slot_of = {}
    for e in live_e:
        u, v = g.endpoints(e)
        adj[u].add(v)
        adj[v].add(u)

    def lift(cover: frozenset) -> frozenset:
        s = set(cover)
        if not s or len(s) > k:
            raise ValueError(f"lift needs a cover of size 1..{k}")
        while len(s) < k:  # pad: the graph is connected and k <= n
            s.add(min(w for v in s for w in adj[v] if w not in s))
        root = min(s)
        parent: dict[int, tuple[int, int] | None] = {root: None}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in live_e:
                a, b = g.endpoints(e)
                if a == x and b in s and b not in parent:
                    parent[b] = (x, e)
                    queue.append(b)
                elif b == x and a in s and a not in parent:
                    parent[a] = (x, e)
                    queue.append(a)
        if len(parent) != len(s):
            raise ValueError("lift needs a connected cover")
        picked: list[int] = []
        for v in s:
            picked.extend(vpath[v])
        for child, link in parent.items():
            if link is None:
                continue
            par, e = link
            slot = 0 if g.endpoints(e)[0] == par else 1
            picked.extend(epath[(e, slot)])  # the path directed parent->child
        return frozenset(picked)

    def project(t: frozenset) -> frozenset:
        return frozenset(v for v in live_v if t & set(vpath[v]))

    return ReductionArtifact(("cvc", "cfvs"), out, (8 + 8 * n, -8 * n),
                             lift, project, registry, embedding=emb_out,
                             modes=("decision_equivalence",))
