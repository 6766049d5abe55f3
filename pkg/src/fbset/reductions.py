"""Composable problem reductions with executable budget and solution maps.

Every reduction returns a :class:`ReductionArtifact`: the transformed graph,
the affine budget map k' = a*k + b, a ``lift`` turning input solutions into
output solutions, a ``project`` for the reverse direction, and a registry
mapping each input vertex (or edge) to the output vertices it spawned.
Lifts are total on feasible inputs and projects are total on feasible
outputs; both are exercised against exact oracles by
:func:`verify_reduction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

from .graphs import DiGraph, Graph, UGraph, degree_profile

Budget = tuple[int, int]
Registry = dict[str, tuple[int, ...]]


@dataclass(frozen=True)
class ReductionArtifact:
    """Contract of a reduction between two feedback/covering problems.

    ``problem_kind`` names the (input, output) problems.  ``budget`` is the
    affine pair (a, b) with k' = a*k + b.  ``registry`` keys are ``v<id>``
    for vertex-spawned and ``e<id>`` for edge-spawned output vertices; every
    output vertex appears exactly once.  ``modes`` lists the verification
    modes the reduction supports (a threshold construction is decision-only).
    """

    problem_kind: tuple[str, str]
    output: Graph
    budget: Budget
    lift: Callable[[frozenset], frozenset]
    project: Callable[[frozenset], frozenset]
    registry: Registry
    embedding: object | None = None
    modes: tuple[str, ...] = ("optimum_equality", "decision_equivalence")
    arc_lift: Callable[[frozenset], frozenset] | None = None
    arc_project: Callable[[frozenset], frozenset] | None = None

    def budget_map(self, k: int) -> int:
        a, b = self.budget
        return a * k + b


@dataclass(frozen=True)
class NeighborOrdering:
    """Numbered in-arc and out-arc slots per vertex.  Entries are arc ids
    (not neighbor vertices), so parallel arcs and self-loops get distinct
    slots.  The default ordering is arc-insertion order, which pins down the
    otherwise arbitrary numbering for reproducible outputs."""

    in_slots: tuple[tuple[int, ...], ...]
    out_slots: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_graph(d: DiGraph) -> "NeighborOrdering":
        ins: list[list[int]] = [[] for _ in range(d.n)]
        outs: list[list[int]] = [[] for _ in range(d.n)]
        for a in d.live_edges():
            t, h = d.arcs[a]
            outs[t].append(a)
            ins[h].append(a)
        return NeighborOrdering(tuple(tuple(x) for x in ins),
                                tuple(tuple(x) for x in outs))


def _registry_vertex_owners(registry: Registry) -> dict[int, str]:
    owners: dict[int, str] = {}
    for key, verts in registry.items():
        for v in verts:
            owners[v] = key
    return owners


# ---------------------------------------------------------------------------
# Doubling: vertex cover -> feedback vertex set.
# ---------------------------------------------------------------------------

DoubleMode = Literal["arcs", "parallel_edges", "subdivided"]


def double_edges(g: UGraph, mode: DoubleMode = "arcs") -> ReductionArtifact:
    """Turn vertex cover into feedback vertex set by making every edge a
    short cycle: a pair of opposite arcs, a parallel edge pair, or (for a
    simple output) a triangle through a fresh subdivision vertex."""
    live_e = g.live_edges()
    live_v = g.live_vertices()
    registry: Registry = {f"v{v}": (v,) for v in live_v}

    if mode == "arcs":
        arcs = []
        for e in live_e:
            u, v = g.endpoints(e)
            arcs.append((u, v))
            arcs.append((v, u))
        out: Graph = DiGraph.from_arcs(g.n, arcs, g.alive)
        project_extra: dict[int, int] = {}
    elif mode == "parallel_edges":
        edges = []
        for e in live_e:
            u, v = g.endpoints(e)
            edges.append((u, v))
            edges.append((u, v))
        out = UGraph.from_edges(g.n, edges, g.alive)
        project_extra = {}
    elif mode == "subdivided":
        edges = []
        project_extra = {}
        alive = list(g.alive)
        nxt = g.n
        for e in live_e:
            u, v = g.endpoints(e)
            x = nxt
            nxt += 1
            alive.append(True)
            edges.append((u, v))
            edges.append((u, x))
            edges.append((x, v))
            registry[f"e{e}"] = (x,)
            # a chosen subdivision vertex projects to the smaller endpoint
            project_extra[x] = min(u, v)
        out = UGraph.from_edges(nxt, edges, alive)
    else:
        raise ValueError(f"unknown doubling mode {mode!r}")

    def lift(cover: frozenset) -> frozenset:
        return frozenset(cover)

    def project(feedback: frozenset) -> frozenset:
        return frozenset(project_extra.get(v, v) for v in feedback)

    return ReductionArtifact(("vc", "fvs"), out, (1, 0), lift, project, registry)


# ---------------------------------------------------------------------------
# Splitting: feedback vertex set -> feedback arc set.
# ---------------------------------------------------------------------------


def split_vertices(d: DiGraph) -> ReductionArtifact:
    """Replace each vertex v by an arc v- -> v+, rerouting incoming arcs to
    v- and outgoing arcs from v+.  Every output vertex then has indegree or
    outdegree at most 1, and cutting the bridge arc of v acts exactly like
    deleting v."""
    minus = {v: 2 * v for v in range(d.n)}
    plus = {v: 2 * v + 1 for v in range(d.n)}
    arcs: list[tuple[int, int]] = []
    bridge: dict[int, int] = {}
    alive = [False] * (2 * d.n)
    for v in d.live_vertices():
        bridge[v] = len(arcs)
        arcs.append((minus[v], plus[v]))
        alive[minus[v]] = alive[plus[v]] = True
    arc_owner_head: dict[int, int] = {}
    for a in d.live_edges():
        t, h = d.arcs[a]
        arc_owner_head[len(arcs)] = h
        arcs.append((plus[t], minus[h]))
    out = DiGraph.from_arcs(2 * d.n, arcs, alive)
    registry: Registry = {f"v{v}": (minus[v], plus[v]) for v in d.live_vertices()}
    bridge_owner = {aid: v for v, aid in bridge.items()}

    def lift(feedback_vertices: frozenset) -> frozenset:
        return frozenset(bridge[v] for v in feedback_vertices)

    def project(feedback_arcs: frozenset) -> frozenset:
        # Bridge arcs name their owner; a rerouted arc t+ -> h- is dominated
        # by deleting its head's owner h, which lies on every cycle using it.
        named = set()
        for a in feedback_arcs:
            named.add(bridge_owner[a] if a in bridge_owner else arc_owner_head[a])
        return frozenset(named)

    return ReductionArtifact(("fvs", "fas"), out, (1, 0), lift, project, registry)


# ---------------------------------------------------------------------------
# Path-split: degree reduction to max degree 3.
# ---------------------------------------------------------------------------


def path_split_gadget(d: DiGraph,
                      ordering: NeighborOrdering | None = None) -> ReductionArtifact:
    """Replace each vertex v by a directed path on d(v) new vertices: first
    the receivers v-_1..v-_in, then the emitters v+_1..v+_out; the i-th
    incoming arc lands on v-_i and the i-th outgoing arc leaves from v+_i.
    The output has maximum degree 3 and the same feedback vertex and arc
    numbers.  Isolated vertices spawn nothing (flagged with an empty
    registry entry); they lie on no cycle.

    The vertex-level maps are ``lift``/``project`` (feedback vertex set to
    feedback vertex set); ``arc_lift``/``arc_project`` give the feedback arc
    set reading of the same construction.
    """
    if ordering is None:
        ordering = NeighborOrdering.from_graph(d)

    minus_ids: dict[int, list[int]] = {}
    plus_ids: dict[int, list[int]] = {}
    registry: Registry = {}
    nxt = 0
    for v in d.live_vertices():
        din = len(ordering.in_slots[v])
        dout = len(ordering.out_slots[v])
        minus_ids[v] = list(range(nxt, nxt + din))
        nxt += din
        plus_ids[v] = list(range(nxt, nxt + dout))
        nxt += dout
        registry[f"v{v}"] = tuple(minus_ids[v] + plus_ids[v])

    arcs: list[tuple[int, int]] = []
    entry_arc: dict[int, int] = {}   # first path arc deleted when v is chosen
    arc_owner: dict[int, int] = {}   # gadget-internal arc -> owner vertex
    cross_head_owner: dict[int, int] = {}
    for v in d.live_vertices():
        chain = minus_ids[v] + plus_ids[v]
        din = len(minus_ids[v])
        for i in range(len(chain) - 1):
            aid = len(arcs)
            arc_owner[aid] = v
            if din >= 1 and i == din - 1:
                # the unique bridge between the receiving and emitting halves
                entry_arc[v] = aid
            arcs.append((chain[i], chain[i + 1]))
    in_slot_of: dict[int, dict[int, int]] = {
        v: {a: i for i, a in enumerate(ordering.in_slots[v])}
        for v in d.live_vertices()}
    for a in d.live_edges():
        t, h = d.arcs[a]
        q = ordering.out_slots[t].index(a)
        p = in_slot_of[h][a]
        aid = len(arcs)
        cross_head_owner[aid] = h
        arcs.append((plus_ids[t][q], minus_ids[h][p]))

    out = DiGraph.from_arcs(nxt, arcs)
    owners = _registry_vertex_owners(registry)

    def lift(feedback_vertices: frozenset) -> frozenset:
        # v+_1 pins its gadget; a vertex without emitters lies on no cycle,
        # so an optimal input solution never needs a stand-in for it.
        return frozenset(plus_ids[v][0] for v in feedback_vertices if plus_ids[v])

    def project(feedback_vertices: frozenset) -> frozenset:
        return frozenset(int(owners[x][1:]) for x in feedback_vertices)

    def arc_lift(feedback_vertices: frozenset) -> frozenset:
        return frozenset(entry_arc[v] for v in feedback_vertices if v in entry_arc)

    def arc_project(feedback_arcs: frozenset) -> frozenset:
        named = set()
        for a in feedback_arcs:
            named.add(arc_owner[a] if a in arc_owner else cross_head_owner[a])
        return frozenset(named)

    return ReductionArtifact(("fvs", "fvs"), out, (1, 0), lift, project,
                             registry, arc_lift=arc_lift, arc_project=arc_project)


# ---------------------------------------------------------------------------
# Mechanized verification of a reduction against exact oracles.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    mode: str
    details: tuple[str, ...]
    counterexample: str | None = None


def verify_reduction(artifact: ReductionArtifact,
                     input_graph: Graph,
                     oracle: Callable,
                     mode: str = "optimum_equality",
                     budget: int | None = None,
                     use_arc_maps: bool = False,
                     output_oracle: Callable | None = None) -> VerificationReport:
    """Check a reduction's if-and-only-if claims on one instance.

    ``oracle(graph, problem, budget=None)`` must solve exactly, returning an
    object with ``value``/``feasible``/``certificate`` fields (decision mode
    is used when a budget is passed).  ``optimum_equality`` asserts
    opt(output) = a*opt(input) + b plus lift/project feasibility at the
    predicted sizes; ``decision_equivalence`` asserts yes(input, k) iff
    yes(output, k').
    """
    from .solvers import validate, Instance  # local import: no cycle at load

    if mode not in artifact.modes:
        raise ValueError(f"reduction {artifact.problem_kind} does not support "
                         f"{mode} verification")
    in_problem, out_problem = artifact.problem_kind
    lift = artifact.lift
    project = artifact.project
    if use_arc_maps:
        if artifact.arc_lift is None:
            raise ValueError("reduction has no arc-level maps")
        out_problem = "fas"
        lift, project = artifact.arc_lift, artifact.arc_project
    out_oracle = output_oracle or oracle
    a, b = artifact.budget
    details: list[str] = []
    problems: list[str] = []

    def check(cond: bool, msg: str) -> None:
        details.append(("ok  " if cond else "FAIL") + " " + msg)
        if not cond:
            problems.append(msg)

    if mode == "optimum_equality":
        rin = oracle(input_graph, in_problem)
        rout = out_oracle(artifact.output, out_problem)
        check(rout.value == a * rin.value + b,
              f"opt(out) = {rout.value} vs {a}*{rin.value}+{b}")
        lifted = lift(frozenset(rin.certificate))
        ok_lift = validate(Instance(artifact.output, out_problem), lifted).ok
        check(ok_lift, f"lift of an optimal input solution is feasible")
        check(len(lifted) == a * rin.value + b,
              f"lift size {len(lifted)} matches predicted {a * rin.value + b}")
        projected = project(frozenset(rout.certificate))
        ok_proj = validate(Instance(input_graph, in_problem), projected).ok
        check(ok_proj, "project of an optimal output solution is feasible")
        check(len(projected) <= rin.value,
              f"projected size {len(projected)} within budget {rin.value}")
    elif mode == "decision_equivalence":
        if budget is None:
            raise ValueError("decision_equivalence needs a budget")
        kk = a * budget + b
        rin = oracle(input_graph, in_problem, budget)
        rout = out_oracle(artifact.output, out_problem, kk)
        check(rin.feasible == rout.feasible,
              f"yes(in,{budget}) = {rin.feasible} iff yes(out,{kk}) = {rout.feasible}")
        if rin.feasible:
            lifted = lift(frozenset(rin.certificate))
            ok_lift = validate(Instance(artifact.output, out_problem), lifted).ok
            check(ok_lift, "lift of a witness is feasible")
            check(len(lifted) <= kk, f"lifted witness size {len(lifted)} <= {kk}")
        if rout.feasible:
            projected = project(frozenset(rout.certificate))
            ok_proj = validate(Instance(input_graph, in_problem), projected).ok
            check(ok_proj, "project of a witness is feasible")
            check(len(projected) <= budget,
                  f"projected witness size {len(projected)} <= {budget}")
    else:
        raise ValueError(f"unknown verification mode {mode!r}")

    counterexample = None
    if problems:
        from .fileio import serialize
        counterexample = serialize(input_graph if all(input_graph.alive)
                                   else input_graph.compact()[0])
    return VerificationReport(not problems, mode, tuple(details), counterexample)
