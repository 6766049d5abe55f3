"""Text graph format with optional rotation systems, plus reduction manifests.

Grammar (line-oriented UTF-8, ``#`` starts a comment, trailing newline
required)::

    graph <directed|undirected> <n> <m>
    e <u> <v>            # exactly m lines; ids are the line order 0..m-1
    rot <v> <end> ...    # optional; an end is <edgeId>a or <edgeId>b

End ``a`` is the first endpoint slot of the edge, ``b`` the second, which
disambiguates self-loops and parallel edges.  Parsing is exact: a file with
rotation records must list every live edge-end exactly once.  Serialization
is canonical (no comments, one space between tokens), so
``parse(serialize(g)) == g`` and ``serialize(parse(f))`` is the canonical
form of ``f``.
"""

from __future__ import annotations

import re

from .graphs import DiGraph, Graph, UGraph
from .planarity import Embedding, validate_embedding
from .reductions import Budget, Registry, ReductionArtifact


class ParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_END_RE = re.compile(r"^(\d+)([ab])$")


def _tokens(line: str) -> list[tuple[str, int]]:
    """(token, 1-based column) pairs of a comment-stripped line."""
    content = line.split("#", 1)[0]
    out = []
    col = 0
    for tok in content.split():
        col = content.index(tok, col)
        out.append((tok, col + 1))
        col += len(tok)
    return out


def _int_token(tok: str, lineno: int, col: int, what: str) -> int:
    if not tok.isdigit():
        raise ParseError(lineno, col, f"expected {what}, got {tok!r}")
    return int(tok)


def parse(text: str) -> tuple[Graph, Embedding | None]:
    if not text.endswith("\n"):
        n = text.count("\n") + 1
        raise ParseError(n, len(text.split("\n")[-1]) + 1,
                         "trailing newline required")
    header = None
    edges: list[tuple[int, int]] = []
    rot_lines: list[tuple[int, list[tuple[int, int]], int]] = []
    directed = False
    n = m = 0
    for lineno, line in enumerate(text.split("\n")[:-1], start=1):
        toks = _tokens(line)
        if not toks:
            continue
        kind, col0 = toks[0]
        if kind == "graph":
            if header is not None:
                raise ParseError(lineno, col0, "duplicate header")
            if len(toks) != 4:
                raise ParseError(lineno, col0,
                                 "header must be: graph <directed|undirected> <n> <m>")
            mode = toks[1][0]
            if mode not in ("directed", "undirected"):
                raise ParseError(lineno, toks[1][1],
                                 f"expected directed or undirected, got {mode!r}")
            directed = mode == "directed"
            n = _int_token(toks[2][0], lineno, toks[2][1], "vertex count")
            m = _int_token(toks[3][0], lineno, toks[3][1], "edge count")
            header = (directed, n, m)
        elif kind == "e":
            if header is None:
                raise ParseError(lineno, col0, "edge before header")
            if len(toks) != 3:
                raise ParseError(lineno, col0, "edge line must be: e <u> <v>")
            u = _int_token(toks[1][0], lineno, toks[1][1], "vertex id")
            v = _int_token(toks[2][0], lineno, toks[2][1], "vertex id")
            for x, (_, c) in zip((u, v), toks[1:]):
                if x >= n:
                    raise ParseError(lineno, c, f"vertex id {x} out of range (n={n})")
            if len(edges) == m:
                raise ParseError(lineno, col0, f"more than {m} edge lines")
            edges.append((u, v))
        elif kind == "rot":
            if header is None:
                raise ParseError(lineno, col0, "rotation before header")
            if len(toks) < 2:
                raise ParseError(lineno, col0, "rotation line must be: rot <v> <end>...")
            v = _int_token(toks[1][0], lineno, toks[1][1], "vertex id")
            if v >= n:
                raise ParseError(lineno, toks[1][1], f"vertex id {v} out of range")
            ends = []
            for tok, col in toks[2:]:
                match = _END_RE.match(tok)
                if not match:
                    raise ParseError(lineno, col,
                                     f"expected <edgeId>a or <edgeId>b, got {tok!r}")
                e = int(match.group(1))
                if e >= m:
                    raise ParseError(lineno, col, f"edge id {e} out of range (m={m})")
                ends.append((e, 0 if match.group(2) == "a" else 1))
            rot_lines.append((v, ends, lineno))
        else:
            raise ParseError(lineno, col0, f"unknown record {kind!r}")
    if header is None:
        raise ParseError(1, 1, "missing header")
    if len(edges) != m:
        raise ParseError(text.count("\n"), 1,
                         f"expected {m} edge lines, found {len(edges)}")
    graph: Graph = (DiGraph.from_arcs(n, edges) if directed
                    else UGraph.from_edges(n, edges))

    if not rot_lines:
        return graph, None
    rotations: list[tuple[int, int], ...] = [() for _ in range(n)]
    for v, ends, lineno in rot_lines:
        if rotations[v]:
            raise ParseError(lineno, 1, f"duplicate rotation for vertex {v}")
        rotations[v] = tuple(ends)
    emb = Embedding(tuple(rotations))
    try:
        validate_embedding(graph, emb)
    except ValueError as exc:
        raise ParseError(rot_lines[0][2], 1, f"inconsistent rotation: {exc}") from None
    return graph, emb


def serialize(g: Graph, emb: Embedding | None = None) -> str:
    """Canonical text form; requires a fully live graph (compact() first)."""
    if not all(g.alive):
        raise ValueError("serialize requires a fully live graph; compact() first")
    lines = [f"graph {'directed' if g.directed else 'undirected'} {g.n} {g.m}"]
    for e in range(g.m):
        u, v = g.endpoints(e)
        lines.append(f"e {u} {v}")
    if emb is not None:
        validate_embedding(g, emb)
        for v in range(g.n):
            rot = emb.rotations[v]
            if rot:
                ends = " ".join(f"{e}{'a' if s == 0 else 'b'}" for e, s in rot)
                lines.append(f"rot {v} {ends}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Reduction manifests: the budget map plus the gadget registry.
# ---------------------------------------------------------------------------


def _registry_sort_key(key: str) -> tuple[int, int]:
    return (0 if key[0] == "v" else 1, int(key[1:]))


def serialize_manifest(artifact: ReductionArtifact) -> str:
    a, b = artifact.budget
    lines = [f"map {a} {b}"]
    for key in sorted(artifact.registry, key=_registry_sort_key):
        verts = " ".join(str(x) for x in artifact.registry[key])
        lines.append(f"gadget {key} {verts}".rstrip())
    return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> tuple[Budget, Registry]:
    budget: Budget | None = None
    registry: Registry = {}
    for lineno, line in enumerate(text.split("\n"), start=1):
        toks = [t for t, _ in _tokens(line)]
        if not toks:
            continue
        if toks[0] == "map":
            if len(toks) != 3:
                raise ParseError(lineno, 1, "map line must be: map <a> <b>")
            budget = (int(toks[1]), int(toks[2]))
        elif toks[0] == "gadget":
            if len(toks) < 2 or not re.match(r"^[ve]\d+$", toks[1]):
                raise ParseError(lineno, 1,
                                 "gadget line must be: gadget <v<id>|e<id>> <outId>...")
            registry[toks[1]] = tuple(int(x) for x in toks[2:])
        else:
            raise ParseError(lineno, 1, f"unknown manifest record {toks[0]!r}")
    if budget is None:
        raise ParseError(1, 1, "manifest missing map line")
    return budget, registry
