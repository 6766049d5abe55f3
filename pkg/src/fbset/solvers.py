"""Exact solvers and validators for the five feedback/covering problems.

``solve_exact`` is the arbiter the reductions are tested against: shortest-
cycle branch-and-bound with a greedy disjoint-cycle packing bound for the
feedback problems, matching-bounded branching for vertex cover, and a
connectivity-respecting growth search for the connected variants.  Decision
mode (budget set) returns a feasible certificate or a proof of exhaustion;
optimum mode returns the exact value.  A size envelope refuses oversized
instances outright rather than ever answering slowly or wrongly; override it
with the FBA_SIZE_ENVELOPE environment variable.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .graphs import DiGraph, Graph, UGraph, degree_profile, structural_predicates, trim_non_cyclic
from .planarity import Embedding, digraph_embedding
from .reductions import split_vertices

PROBLEMS = ("fvs", "fas", "vc", "cvc", "cfvs")


class SizeEnvelopeError(Exception):
    """Instance exceeds the configured solver envelope."""


@dataclass(frozen=True)
class SizeEnvelope:
    """Refusal limits: optimum mode by vertex count (separately for the
    connected variants), decision mode by budget and vertex count."""

    optimum_vertices: int = 64
    optimum_connected: int = 48
    decision_budget: int = 16
    decision_vertices: int = 200

    @staticmethod
    def from_env() -> "SizeEnvelope":
        spec = os.environ.get("FBA_SIZE_ENVELOPE", "").strip()
        if not spec:
            return SizeEnvelope()
        if spec.isdigit():
            v = int(spec)
            return SizeEnvelope(v, v, v, v)
        vals = {}
        for part in spec.split(","):
            key, _, num = part.partition("=")
            key = key.strip()
            if key not in ("optimum", "connected", "budget", "vertices"):
                raise ValueError(f"unknown FBA_SIZE_ENVELOPE key {key!r}")
            vals[key] = int(num)
        base = SizeEnvelope()
        return SizeEnvelope(
            vals.get("optimum", base.optimum_vertices),
            vals.get("connected", base.optimum_connected),
            vals.get("budget", base.decision_budget),
            vals.get("vertices", base.decision_vertices),
        )


@dataclass(frozen=True)
class Instance:
    graph: Graph
    problem: str
    budget: int | None = None

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.problem == "fas" and not self.graph.directed:
            raise ValueError("fas requires a digraph")
        if self.problem in ("vc", "cvc", "cfvs") and self.graph.directed:
            raise ValueError(f"{self.problem} requires an undirected graph")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")


@dataclass(frozen=True)
class SolveResult:
    """``value`` is the optimum size (None in decision mode); ``feasible`` is
    the decision verdict at the budget (None in optimum mode).  A connected
    variant with witnesses in two components has no solution at all: optimum
    mode then reports value None with feasible False."""

    problem: str
    value: int | None
    feasible: bool | None
    certificate: tuple[int, ...]
    explored: int


@dataclass(frozen=True)
class Cycle:
    """Closed simple walk: ``vertices`` has first == last; ``edges[i]`` joins
    vertices[i] and vertices[i+1]."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    witness: object = None


def _di_arrays(d: DiGraph) -> kernels.DiArrays:
    return kernels.DiArrays(d.n, list(d.arcs), list(d.alive))


def _u_arrays(g: UGraph) -> kernels.UArrays:
    return kernels.UArrays(g.n, list(g.edges), list(g.alive))


def _cycle_from_edges(g: Graph, edge_ids: list[int]) -> Cycle:
    if g.directed:
        verts = [g.arcs[edge_ids[0]][0]]
        for a in edge_ids:
            t, h = g.arcs[a]
            assert t == verts[-1], "arc sequence is not a walk"
            verts.append(h)
        return Cycle(tuple(verts), tuple(edge_ids))
    if len(edge_ids) == 1:
        u, v = g.endpoints(edge_ids[0])
        return Cycle((u, v), tuple(edge_ids))
    first, last = g.endpoints(edge_ids[0]), g.endpoints(edge_ids[-1])
    start = first[0] if first[0] in last else first[1]
    verts = [start]
    for e in edge_ids:
        u, v = g.endpoints(e)
        verts.append(v if u == verts[-1] else u)
    return Cycle(tuple(verts), tuple(edge_ids))


def shortest_cycle(g: Graph,
                   removed_vertices: frozenset = frozenset(),
                   removed_edges: frozenset = frozenset()) -> Cycle | None:
    """A minimum-length (directed) cycle of the live subgraph, or None iff it
    is acyclic.  The branching primitive of the exact solvers."""
    if g.directed:
        arr = _di_arrays(g)
        for v in removed_vertices:
            arr.v_alive[v] = 0
        for a in removed_edges:
            arr.a_alive[a] = 0
        cyc = arr.shortest_cycle()
    else:
        arr = _u_arrays(g)
        for v in removed_vertices:
            arr.v_alive[v] = 0
        for e in removed_edges:
            arr.e_alive[e] = 0
        cyc = arr.shortest_cycle()
    if cyc.shape[0] == 0:
        return None
    return _cycle_from_edges(g, [int(x) for x in cyc])


def _induced_connected(g: UGraph, subset: frozenset) -> tuple[bool, object]:
    """Connectivity of the induced subgraph; on failure returns a pair of
    subset vertices lying in different components."""
    if len(subset) <= 1:
        return True, None
    adj = {v: set() for v in subset}
    for e in g.live_edges():
        u, v = g.endpoints(e)
        if u in subset and v in subset and u != v:
            adj[u].add(v)
            adj[v].add(u)
    order = sorted(subset)
    seen = {order[0]}
    queue = deque([order[0]])
    while queue:
        x = queue.popleft()
        for w in adj[x]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) == len(subset):
        return True, None
    stranded = next(v for v in order if v not in seen)
    return False, (order[0], stranded)


def validate(inst: Instance, candidate: frozenset | set | tuple) -> ValidationResult:
    """Feasibility of a candidate solution, with a witness on failure: a
    surviving cycle, an uncovered edge id, or a disconnected vertex pair."""
    s = frozenset(candidate)
    g = inst.graph
    if inst.problem == "fas":
        live = set(g.live_edges())
        if not s <= live:
            raise ValueError("candidate contains unknown or dead arc ids")
        cyc = shortest_cycle(g, removed_edges=s)
        return ValidationResult(cyc is None, cyc)
    live_v = set(g.live_vertices())
    if not s <= live_v:
        raise ValueError("candidate contains unknown or dead vertex ids")
    if inst.problem == "fvs":
        cyc = shortest_cycle(g, removed_vertices=s)
        return ValidationResult(cyc is None, cyc)
    if inst.problem == "vc":
        for e in g.live_edges():
            u, v = g.endpoints(e)
            if u not in s and v not in s:
                return ValidationResult(False, e)
        return ValidationResult(True)
    if inst.problem == "cvc":
        base = validate(Instance(g, "vc"), s)
        if not base.ok:
            return base
        ok, pair = _induced_connected(g, s)
        return ValidationResult(ok, pair)
    if inst.problem == "cfvs":
        base = validate(Instance(g, "fvs"), s)
        if not base.ok:
            return base
        ok, pair = _induced_connected(g, s)
        return ValidationResult(ok, pair)
    raise AssertionError(inst.problem)


# ---------------------------------------------------------------------------
# Feedback problems: shortest-cycle branching with a packing bound.
# ---------------------------------------------------------------------------


def _dec_feedback(arr, directed_vertex: bool | None, k: int, counter: list) -> tuple | None:
    """Decision search shared by fvs (directed/undirected) and fas.
    ``directed_vertex``: True = directed fvs, False = fas, None = undirected
    fvs.  Returns a certificate tuple or None."""
    counter[0] += 1
    cyc = arr.shortest_cycle()
    if cyc.shape[0] == 0:
        return ()
    if k <= 0:
        return None
    if directed_vertex is None:
        if arr.pack(k + 1) > k:
            return None
        branch = sorted({int(x) for e in cyc
                         for x in (arr.eu[e], arr.ev[e])})
        mask = arr.v_alive
    elif directed_vertex:
        if arr.pack(True, k + 1) > k:
            return None
        branch = sorted({int(x) for a in cyc
                         for x in (arr.tails[a], arr.heads[a])})
        mask = arr.v_alive
    else:
        if arr.pack(False, k + 1) > k:
            return None
        branch = sorted(int(a) for a in cyc)
        mask = arr.a_alive
    for x in branch:
        mask[x] = 0
        sub = _dec_feedback(arr, directed_vertex, k - 1, counter)
        mask[x] = 1
        if sub is not None:
            return sub + (x,)
    return None


def _feedback_arrays(g: Graph, problem: str):
    if problem == "fas" or (problem == "fvs" and g.directed):
        return _di_arrays(g)
    return _u_arrays(g)


def _feedback_mode(g: Graph, problem: str):
    if problem == "fas":
        return False
    return True if g.directed else None


def _solve_feedback(g: Graph, problem: str, budget: int | None,
                    counter: list) -> SolveResult:
    arr = _feedback_arrays(g, problem)
    mode = _feedback_mode(g, problem)
    if budget is not None:
        cert = _dec_feedback(arr, mode, budget, counter)
        return SolveResult(problem, None, cert is not None,
                           tuple(sorted(cert)) if cert is not None else (),
                           counter[0])
    universe = g.num_live_edges() if problem == "fas" else g.num_live_vertices()
    if mode is None:
        lb = arr.pack(universe + 1)
    else:
        lb = arr.pack(mode, universe + 1)
    for k in range(lb, universe + 1):
        cert = _dec_feedback(arr, mode, k, counter)
        if cert is not None:
            return SolveResult(problem, k, None, tuple(sorted(cert)), counter[0])
    return SolveResult(problem, universe, None, tuple(sorted(
        g.live_edges() if problem == "fas" else g.live_vertices())), counter[0])


# ---------------------------------------------------------------------------
# Vertex cover: lowest-uncovered-edge branching with a matching bound.
# ---------------------------------------------------------------------------


def _vc_state(g: UGraph):
    edges = [(e,) + g.endpoints(e) for e in g.live_edges()
             ]
    return edges


def _vc_first_uncovered(edges, chosen: set):
    for e, u, v in edges:
        if u not in chosen and v not in chosen:
            return e, u, v
    return None


def _vc_matching_bound(edges, chosen: set, limit: int) -> int:
    used: set[int] = set()
    count = 0
    for _, u, v in edges:
        if u in chosen or v in chosen or u in used or v in used:
            continue
        used.add(u)
        used.add(v)
        count += 1
        if count >= limit:
            break
    return count


def _dec_vc(edges, chosen: set, k: int, counter: list) -> tuple | None:
    counter[0] += 1
    nxt = _vc_first_uncovered(edges, chosen)
    if nxt is None:
        return ()
    if k <= 0:
        return None
    if _vc_matching_bound(edges, chosen, k + 1) > k:
        return None
    e, u, v = nxt
    if u == v:
        branch = [u]  # a self-loop can only be covered by its vertex
    else:
        branch = [u, v]
    for x in branch:
        chosen.add(x)
        sub = _dec_vc(edges, chosen, k - 1, counter)
        chosen.discard(x)
        if sub is not None:
            return sub + (x,)
    return None


def _solve_vc(g: UGraph, budget: int | None, counter: list) -> SolveResult:
    edges = _vc_state(g)
    if budget is not None:
        cert = _dec_vc(edges, set(), budget, counter)
        return SolveResult("vc", None, cert is not None,
                           tuple(sorted(cert)) if cert is not None else (),
                           counter[0])
    n = g.num_live_vertices()
    lb = _vc_matching_bound(edges, set(), n + 1)
    for k in range(lb, n + 1):
        cert = _dec_vc(edges, set(), k, counter)
        if cert is not None:
            return SolveResult("vc", k, None, tuple(sorted(cert)), counter[0])
    return SolveResult("vc", n, None, tuple(g.live_vertices()), counter[0])


# ---------------------------------------------------------------------------
# Connected variants: rooted growth restricted to the neighborhood of the
# partial solution, with reachability pruning.
# ---------------------------------------------------------------------------


class _ConnectedSearch:
    def __init__(self, g: UGraph, problem: str, counter: list):
        self.g = g
        self.problem = problem
        self.counter = counter
        self.arr = _u_arrays(g)
        self.adj: dict[int, set[int]] = {v: set() for v in g.live_vertices()}
        for e in g.live_edges():
            u, v = g.endpoints(e)
            if u != v:
                self.adj[u].add(v)
                self.adj[v].add(u)

    def feasible(self, s: frozenset) -> bool:
        if self.problem == "cfvs":
            for v in s:
                self.arr.v_alive[v] = 0
            acyclic = self.arr.shortest_cycle().shape[0] == 0
            for v in s:
                self.arr.v_alive[v] = 1
            if not acyclic:
                return False
        else:
            for e in self.g.live_edges():
                u, v = self.g.endpoints(e)
                if u not in s and v not in s:
                    return False
        return _induced_connected(self.g, s)[0]

    def _witness_targets(self, s: frozenset) -> list[int] | None:
        """Vertices every solution extending s must reach, or None if s is
        already feasible apart from connectivity."""
        if self.problem == "cfvs":
            for v in s:
                self.arr.v_alive[v] = 0
            cyc = self.arr.shortest_cycle()
            for v in s:
                self.arr.v_alive[v] = 1
            if cyc.shape[0] == 0:
                return None
            return sorted({int(x) for e in cyc
                           for x in (self.arr.eu[e], self.arr.ev[e])})
        for e in self.g.live_edges():
            u, v = self.g.endpoints(e)
            if u not in s and v not in s:
                return sorted({u, v})
        return None

    def _dist_to(self, s: frozenset, targets: list[int]) -> int:
        """BFS steps from s to the nearest target; each step is one new
        solution vertex.  Ignores exclusions, so it is a valid lower bound."""
        tset = set(targets)
        dist = {v: 0 for v in s}
        queue = deque(sorted(s))
        while queue:
            x = queue.popleft()
            if x in tset:
                return dist[x]
            for w in self.adj[x]:
                if w not in dist:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        return 10 ** 9  # unreachable: no connected extension can be feasible

    def grow(self, s: frozenset, excluded: frozenset, k: int) -> frozenset | None:
        self.counter[0] += 1
        if self.feasible(s):
            return s
        if len(s) >= k:
            return None
        targets = self._witness_targets(s)
        if targets is not None:
            need = self._dist_to(s, targets)
            if len(s) + need > k:
                return None
        candidates = sorted(
            w for v in s for w in self.adj[v]
            if w not in s and w not in excluded)
        if not candidates:
            return None
        v = candidates[0]
        found = self.grow(s | {v}, excluded, k)
        if found is not None:
            return found
        return self.grow(s, excluded | {v}, k)

    def decide(self, k: int) -> frozenset | None:
        if self.feasible(frozenset()):
            return frozenset()
        if k == 0:
            return None
        roots = sorted(self.adj)
        for i, r in enumerate(roots):
            found = self.grow(frozenset([r]), frozenset(roots[:i]), k)
            if found is not None:
                return found
        return None


_BRUTE_CONNECTED_MAX = 16


def _solve_connected(g: UGraph, problem: str, budget: int | None,
                     counter: list) -> SolveResult:
    n = g.num_live_vertices()
    # Connected instances whose witnesses live in two components are
    # infeasible outright; optimum mode reports that as value None.
    if budget is None and n <= _BRUTE_CONNECTED_MAX:
        live = g.live_vertices()
        inst = Instance(g, problem)
        for k in range(n + 1):
            for subset in combinations(live, k):
                counter[0] += 1
                if validate(inst, frozenset(subset)).ok:
                    return SolveResult(problem, k, None, subset, counter[0])
        return SolveResult(problem, None, False, (), counter[0])
    search = _ConnectedSearch(g, problem, counter)
    if budget is not None:
        cert = search.decide(budget)
        return SolveResult(problem, None, cert is not None,
                           tuple(sorted(cert)) if cert is not None else (),
                           counter[0])
    for k in range(n + 1):
        cert = search.decide(k)
        if cert is not None:
            return SolveResult(problem, len(cert), None, tuple(sorted(cert)),
                               counter[0])
    return SolveResult(problem, None, False, (), counter[0])


# ---------------------------------------------------------------------------
# Lexicographic certificate refinement (opt-in).
# ---------------------------------------------------------------------------


def _lex_refine(g: Graph, problem: str, value: int, counter: list) -> tuple[int, ...]:
    """Lexicographically smallest optimal certificate, by forcing candidate
    ids in ascending order and re-deciding the remainder."""
    arr = _feedback_arrays(g, problem) if problem in ("fvs", "fas") else None
    chosen: list[int] = []
    if problem in ("fvs", "fas"):
        mode = _feedback_mode(g, problem)
        mask = arr.a_alive if problem == "fas" else arr.v_alive
        universe = g.live_edges() if problem == "fas" else g.live_vertices()
        remaining = value
        for x in universe:
            if remaining == 0:
                break
            mask[x] = 0
            sub = _dec_feedback(arr, mode, remaining - 1, counter)
            if sub is not None:
                chosen.append(x)
                remaining -= 1
            else:
                mask[x] = 1
        return tuple(chosen)
    if problem == "vc":
        edges = _vc_state(g)
        fixed: set[int] = set()
        remaining = value
        for v in g.live_vertices():
            if remaining == 0:
                break
            fixed.add(v)
            sub = _dec_vc(edges, set(fixed), remaining - 1, counter)
            if sub is not None:
                remaining -= 1
            else:
                fixed.discard(v)
        return tuple(sorted(fixed))
    raise ValueError(f"canonical certificates are not supported for {problem}")


# ---------------------------------------------------------------------------
# Public entry points.
# ---------------------------------------------------------------------------


def solve_exact(inst: Instance, envelope: SizeEnvelope | None = None,
                canonical_certificate: bool = False) -> SolveResult:
    """Exact optimum (or decision at ``inst.budget``) with a feasible,
    validator-checked certificate.  Refuses instances beyond the envelope."""
    env = envelope or SizeEnvelope.from_env()
    g = inst.graph
    n = g.num_live_vertices()
    if inst.budget is not None:
        if n > env.decision_vertices or inst.budget > env.decision_budget:
            raise SizeEnvelopeError(
                f"decision mode envelope: n <= {env.decision_vertices} and "
                f"budget <= {env.decision_budget}, got n={n}, k={inst.budget}")
    else:
        limit = (env.optimum_connected if inst.problem in ("cvc", "cfvs")
                 else env.optimum_vertices)
        if n > limit:
            raise SizeEnvelopeError(
                f"optimum mode envelope: n <= {limit}, got n={n}")

    counter = [0]
    if inst.problem in ("fvs", "fas"):
        res = _solve_feedback(g, inst.problem, inst.budget, counter)
    elif inst.problem == "vc":
        res = _solve_vc(g, inst.budget, counter)
    else:
        res = _solve_connected(g, inst.problem, inst.budget, counter)

    if canonical_certificate and inst.budget is None and res.value is not None:
        if inst.problem in ("fvs", "fas", "vc"):
            cert = _lex_refine(g, inst.problem, res.value, counter)
            res = SolveResult(res.problem, res.value, None, cert, counter[0])
    if res.value is not None or res.feasible:
        check = validate(Instance(g, inst.problem), frozenset(res.certificate))
        assert check.ok, f"solver produced an infeasible certificate: {check.witness}"
    return res


def solve(graph: Graph, problem: str, budget: int | None = None,
          envelope: SizeEnvelope | None = None,
          canonical_certificate: bool = False) -> SolveResult:
    """Convenience oracle wrapper used throughout verification code."""
    return solve_exact(Instance(graph, problem, budget), envelope,
                       canonical_certificate)


def solve_deg2(d: DiGraph, problem: str = "fvs") -> SolveResult:
    """Polynomial procedure for digraphs of maximum total degree 2: after
    trimming acyclic fringe, what remains is a disjoint union of directed
    cycles, and one vertex (or arc) per cycle is optimal."""
    if problem not in ("fvs", "fas"):
        raise ValueError("solve_deg2 answers fvs or fas")
    prof = degree_profile(d)
    if prof.max_degree > 2:
        raise ValueError(f"max degree {prof.max_degree} exceeds 2")
    core = trim_non_cyclic(d)
    comp_of: dict[int, int] = {}
    arcs_of: dict[int, list[int]] = {}
    for a in core.live_edges():
        t, h = core.arcs[a]
        ct = comp_of.get(t)
        ch = comp_of.get(h)
        if ct is None and ch is None:
            cid = len(arcs_of)
            arcs_of[cid] = [a]
            comp_of[t] = comp_of[h] = cid
        elif ct is None:
            comp_of[t] = ch
            arcs_of[ch].append(a)
        elif ch is None:
            comp_of[h] = ct
            arcs_of[ct].append(a)
        else:
            arcs_of[ct].append(a)
            if ct != ch:
                for v, c in list(comp_of.items()):
                    if c == ch:
                        comp_of[v] = ct
                arcs_of[ct].extend(arcs_of.pop(ch))
    certificate: list[int] = []
    for cid, arcs in arcs_of.items():
        if problem == "fvs":
            certificate.append(min(core.arcs[a][0] for a in arcs))
        else:
            certificate.append(min(arcs))
    certificate.sort()
    res = SolveResult(problem, len(arcs_of), None, tuple(certificate), 0)
    check = validate(Instance(d, problem), frozenset(res.certificate))
    assert check.ok, "degree-2 procedure produced an infeasible certificate"
    return res


@dataclass(frozen=True)
class BipolarPipelineResult:
    applicable: bool
    reason: str
    result: SolveResult | None


def solve_bipolar_pipeline(d: DiGraph,
                           envelope: SizeEnvelope | None = None) -> BipolarPipelineResult:
    """Split every vertex, embed the split digraph, and if it is planar
    solve feedback arc set there and project back: the feedback vertex
    number of the input equals the feedback arc number of the split graph.
    Non-planar split graphs yield an explicit not-applicable verdict."""
    art = split_vertices(d)
    emb = digraph_embedding(art.output)
    if not isinstance(emb, Embedding):
        return BipolarPipelineResult(False, "split digraph is not planar", None)
    fas = solve_exact(Instance(art.output, "fas"), envelope)
    cert = tuple(sorted(art.project(frozenset(fas.certificate))))
    assert len(cert) == fas.value, "projection collapsed an optimal arc set"
    check = validate(Instance(d, "fvs"), frozenset(cert))
    assert check.ok, "pipeline produced an infeasible certificate"
    return BipolarPipelineResult(
        True, "split digraph is planar",
        SolveResult("fvs", fas.value, None, cert, fas.explored))


@dataclass(frozen=True)
class CubicIdentityReport:
    n: int
    fvs_value: int
    cvc_value: int
    holds: bool


def check_cubic_identity(g: UGraph,
                         envelope: SizeEnvelope | None = None) -> CubicIdentityReport:
    """On a connected cubic graph, the minimum feedback vertex set and the
    minimum connected vertex cover differ by exactly n/2 - 1; both sides are
    computed by exact search and compared."""
    preds = structural_predicates(g)
    if not preds.is_cubic or not preds.is_connected:
        raise ValueError("requires a connected cubic graph")
    n = g.num_live_vertices()
    fvs = solve_exact(Instance(g, "fvs"), envelope).value
    cvc = solve_exact(Instance(g, "cvc"), envelope).value
    return CubicIdentityReport(n, fvs, cvc, fvs == cvc - n // 2 + 1)
