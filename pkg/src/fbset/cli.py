"""Command line interface: classify, transform, solve, verify, export-dot.

Exit codes: 0 ok, 1 verification failure, 2 usage or parse error, 3 size
envelope refusal.  The FBA_SIZE_ENVELOPE environment variable overrides the
solver refusal limits (a single integer, or ``optimum=..,connected=..,
budget=..,vertices=..``).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .classify import PROBLEM_KINDS, classify
from .dot import export_dot
from .fileio import ParseError, parse, parse_manifest, serialize, serialize_manifest
from .gadgets import cfvs_gadget, irregular_doubling, planar_dfvs_gadget, speckenmeyer_reduce
from .generators import (
    cubic_planar_catalog,
    enumerate_digraphs,
    enumerate_ugraphs,
    random_digraph,
    random_planar_high_degree,
    random_ugraph,
    wheel,
)
from .graphs import DiGraph, UGraph, degree_profile, is_connected, structural_predicates
from .planarity import Embedding
from .reductions import ReductionArtifact, double_edges, path_split_gadget, split_vertices, verify_reduction
from .solvers import (
    Instance,
    SizeEnvelope,
    SizeEnvelopeError,
    solve,
    solve_bipolar_pipeline,
    solve_deg2,
    solve_exact,
)

TRANSFORM_OPS = ("double", "split", "path-split", "speckenmeyer",
                 "irregular-double", "planar-dfvs", "cfvs")
VERIFY_REDUCTIONS = ("double", "split", "path-split", "speckenmeyer",
                     "irregular-double", "planar-dfvs", "cfvs")


def _read_graph(path: str):
    return parse(Path(path).read_text(encoding="utf-8"))


def _compact_artifact(art: ReductionArtifact):
    """Renumber a (possibly masked) artifact output for file serialization,
    remapping the registry and the embedding alongside."""
    out = art.output
    if all(out.alive):
        return out, art.registry, art.embedding
    emap = {e: i for i, e in enumerate(out.live_edges())}
    g2, vmap = out.compact()
    reg2 = {k: tuple(vmap[x] for x in verts)
            for k, verts in art.registry.items()}
    emb2 = None
    if art.embedding is not None:
        rots: list[tuple] = [()] * g2.n
        for v, nv in vmap.items():
            rots[nv] = tuple((emap[e], s) for (e, s) in art.embedding.rotations[v])
        emb2 = Embedding(tuple(rots))
    return g2, reg2, emb2


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    g, _ = _read_graph(args.input)
    problems = [args.problem] if args.problem else list(PROBLEM_KINDS)
    for problem in problems:
        print(classify(g, problem).line())
    return 0


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------


def _run_transform(op: str, g, emb, k, mode: str):
    if op == "double":
        if g.directed:
            raise ValueError("double expects an undirected graph")
        return double_edges(g, mode)
    if op == "split":
        if not g.directed:
            raise ValueError("split expects a digraph")
        return split_vertices(g)
    if op == "path-split":
        if not g.directed:
            raise ValueError("path-split expects a digraph")
        return path_split_gadget(g)
    if op == "speckenmeyer":
        if g.directed:
            raise ValueError("speckenmeyer expects an undirected graph")
        return speckenmeyer_reduce(g, emb)
    if op == "irregular-double":
        if g.directed:
            raise ValueError("irregular-double expects an undirected graph")
        return irregular_doubling(g)
    if op == "planar-dfvs":
        if not g.directed:
            raise ValueError("planar-dfvs expects a digraph")
        if emb is None:
            raise ValueError("planar-dfvs needs rotation records in the input "
                             "file (chain it after irregular-double)")
        return planar_dfvs_gadget(g, emb)
    if op == "cfvs":
        if g.directed:
            raise ValueError("cfvs expects an undirected graph")
        if k is None:
            raise ValueError("cfvs needs --k")
        return cfvs_gadget(g, k)
    raise ValueError(f"unknown op {op!r}")


def cmd_transform(args) -> int:
    g, emb = _read_graph(args.input)
    art = _run_transform(args.op, g, emb, args.k, args.mode)
    out, registry, emb_out = _compact_artifact(art)
    Path(args.out).write_text(serialize(out, emb_out), encoding="utf-8")
    manifest = serialize_manifest(
        ReductionArtifact(art.problem_kind, out, art.budget, art.lift,
                          art.project, registry))
    Path(args.out + ".manifest").write_text(manifest, encoding="utf-8")
    print(f"wrote {args.out} ({out.n} vertices, {out.m} edges) "
          f"and {args.out}.manifest")
    if args.k is not None:
        print(f"k' = {art.budget_map(args.k)}")
    return 0


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    g, _ = _read_graph(args.input)
    inst = Instance(g, args.problem, args.budget)
    if args.poly:
        if degree_profile(g).max_degree <= 2 and g.directed:
            res = solve_deg2(g, args.problem if args.problem in ("fvs", "fas")
                             else "fvs")
            print("method deg2")
        elif g.directed and args.problem == "fvs":
            pipe = solve_bipolar_pipeline(g)
            if not pipe.applicable:
                raise ValueError(f"--poly not applicable: {pipe.reason}")
            res = pipe.result
            print("method bipolar-pipeline")
        else:
            raise ValueError("--poly needs a digraph with max degree <= 2, "
                             "or fvs with a planar split graph")
        if args.verify_against_exact:
            exact = solve_exact(Instance(g, res.problem))
            ok = exact.value == res.value
            print(f"cross-check {'ok' if ok else 'MISMATCH'}")
            if not ok:
                return 1
    else:
        res = solve_exact(inst, canonical_certificate=args.canonical)
    if res.value is not None:
        print(f"optimum {res.value}")
    elif res.feasible is not None and inst.budget is not None:
        print(f"feasible {'yes' if res.feasible else 'no'} at budget {inst.budget}")
    else:
        print("infeasible (no connected solution exists)")
    print("certificate " + " ".join(str(x) for x in res.certificate))
    print(f"explored {res.explored}")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _digraph_instances(rng, trials, max_n):
    if max_n <= 3:
        pool = [d for n in range(1, max_n + 1)
                for d in enumerate_digraphs(n)]
        return pool[:trials] if trials < len(pool) else pool
    return [random_digraph(rng, rng.randint(1, max_n), rng.uniform(0.15, 0.5))
            for _ in range(trials)]


def _ugraph_instances(rng, trials, max_n):
    if max_n <= 4:
        pool = [g for n in range(1, max_n + 1)
                for g in enumerate_ugraphs(n)]
        return pool[:trials] if trials < len(pool) else pool
    return [random_ugraph(rng, rng.randint(1, max_n), rng.uniform(0.2, 0.7))
            for _ in range(trials)]


def _describe(g) -> str:
    kind = "digraph" if g.directed else "graph"
    return f"{kind} n={g.num_live_vertices()} m={g.num_live_edges()}"


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    env = SizeEnvelope.from_env()
    failures = 0
    runs = 0

    def report(tag, g, rep):
        nonlocal failures, runs
        runs += 1
        status = "ok" if rep.ok else "FAIL"
        print(f"{args.reduction} {tag}: {_describe(g)} {status}")
        if not rep.ok:
            failures += 1
            for line in rep.details:
                print("  " + line)
            if rep.counterexample:
                print("counterexample:")
                print(rep.counterexample, end="")

    name = args.reduction
    if name == "double":
        for i, g in enumerate(_ugraph_instances(rng, args.trials, args.max_n)):
            for mode in ("arcs", "parallel_edges", "subdivided"):
                report(f"trial {i} mode={mode}", g,
                       verify_reduction(double_edges(g, mode), g, solve))
    elif name == "split":
        for i, d in enumerate(_digraph_instances(rng, args.trials, args.max_n)):
            report(f"trial {i}", d, verify_reduction(split_vertices(d), d, solve))
    elif name == "path-split":
        for i, d in enumerate(_digraph_instances(rng, args.trials, args.max_n)):
            art = path_split_gadget(d)
            report(f"trial {i} vertex", d, verify_reduction(art, d, solve))
            report(f"trial {i} arc", d,
                   verify_reduction(art, d, solve, use_arc_maps=True))
    elif name == "speckenmeyer":
        pool = [wheel(5), wheel(6)]
        pool += [random_planar_high_degree(rng) for _ in range(max(0, args.trials - 2))]
        for i, g in enumerate(pool[:args.trials] if args.trials else pool):
            report(f"trial {i}", g,
                   verify_reduction(speckenmeyer_reduce(g), g, solve))
    elif name == "irregular-double":
        for i, g in enumerate(cubic_planar_catalog()):
            report(f"catalog {i}", g, verify_reduction(irregular_doubling(g), g, solve))
    elif name == "planar-dfvs":
        for i, g in enumerate(cubic_planar_catalog()):
            base = irregular_doubling(g)
            art = planar_dfvs_gadget(base.output, base.embedding)
            k = solve(g, "vc").value
            for budget in (k, k - 1):
                kk = art.budget_map(budget)
                if kk > env.decision_budget or \
                        art.output.num_live_vertices() > env.decision_vertices:
                    print(f"planar-dfvs catalog {i} k={budget}: skipped "
                          f"(k'={kk} beyond envelope)")
                    continue
                report(f"catalog {i} k={budget}", base.output,
                       verify_reduction(art, base.output, solve,
                                        mode="decision_equivalence", budget=budget))
    elif name == "cfvs":
        count = 0
        for n in range(3, args.max_n + 1):
            for g in enumerate_ugraphs(n, connected_only=True, min_edges=2):
                prof = degree_profile(g)
                if prof.max_degree > 4:
                    continue
                from .planarity import test_planarity
                if not isinstance(test_planarity(g), Embedding):
                    continue
                art = cfvs_gadget(g, 1)
                kk = art.budget_map(1)
                if kk > env.decision_budget or \
                        art.output.num_live_vertices() > env.decision_vertices:
                    print(f"cfvs n={n} #{count}: skipped (output beyond envelope)")
                else:
                    report(f"n={n} #{count}", g,
                           verify_reduction(art, g, solve,
                                            mode="decision_equivalence", budget=1))
                count += 1
                if args.trials and count >= args.trials:
                    break
            if args.trials and count >= args.trials:
                break
    else:
        raise ValueError(f"unknown reduction {name!r}")

    print(f"{runs} checks, {failures} failures")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# export-dot
# ---------------------------------------------------------------------------


def cmd_export_dot(args) -> int:
    g, emb = _read_graph(args.input)
    owners = None
    if args.manifest:
        _, registry = parse_manifest(Path(args.manifest).read_text(encoding="utf-8"))
        owners = {}
        for key, verts in registry.items():
            for v in verts:
                owners[v] = key
    text = export_dot(g, emb, owners)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="fbset",
        description="Feedback set problems: classification, reductions, "
                    "exact solving, and machine verification.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="measure parameters and print the "
                                        "complexity row of an instance")
    p.add_argument("input")
    p.add_argument("--problem", choices=PROBLEM_KINDS)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("transform", help="apply a reduction; writes the "
                                         "output graph plus a manifest")
    p.add_argument("--op", required=True, choices=TRANSFORM_OPS)
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=("arcs", "parallel_edges", "subdivided"),
                   default="arcs", help="doubling flavor (double op only)")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("solve", help="exact optimum or decision at a budget")
    p.add_argument("--problem", required=True,
                   choices=("fvs", "fas", "vc", "cvc", "cfvs"))
    p.add_argument("input")
    p.add_argument("--budget", type=int)
    p.add_argument("--poly", action="store_true",
                   help="polynomial routes: degree-2 procedure or the "
                        "split-embed-arc pipeline")
    p.add_argument("--canonical", action="store_true",
                   help="lexicographically smallest optimal certificate")
    p.add_argument("--verify-against-exact", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run a reduction against exact oracles "
                                      "on generated instances")
    p.add_argument("--reduction", required=True, choices=VERIFY_REDUCTIONS)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="render a graph file as DOT")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--manifest", help="color vertices by gadget origin")
    p.set_defaults(func=cmd_export_dot)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except SizeEnvelopeError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
