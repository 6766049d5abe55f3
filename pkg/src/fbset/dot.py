"""DOT export, with gadget coloring and rotation-order hints."""

from __future__ import annotations

from .graphs import Graph
from .planarity import Embedding

_PALETTE = ("#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854", "#ffd92f",
            "#e5c494", "#b3b3b3", "#7fc97f", "#beaed4", "#fdc086", "#ffff99")


def export_dot(g: Graph, emb: Embedding | None = None,
               owners: dict[int, str] | None = None) -> str:
    """Valid DOT text for the live subgraph.

    With ``owners`` (output vertex -> registry key), vertices spawned by the
    same input vertex or edge share a fill color.  With an embedding, nodes
    carry ``ordering=out`` and edges are emitted in rotation-first-seen order
    so layout engines that honor statement order keep the cyclic structure.
    """
    kind = "digraph" if g.directed else "graph"
    op = "->" if g.directed else "--"
    lines = [f"{kind} G {{"]
    color_of: dict[str, str] = {}
    if owners:
        for key in sorted(set(owners.values())):
            color_of[key] = _PALETTE[len(color_of) % len(_PALETTE)]
        lines.append("  node [style=filled];")
    if emb is not None:
        lines.append("  node [ordering=out];")
    for v in g.live_vertices():
        attrs = []
        if owners and v in owners:
            attrs.append(f'fillcolor="{color_of[owners[v]]}"')
            attrs.append(f'tooltip="{owners[v]}"')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    if emb is not None:
        emitted = set()
        for v in g.live_vertices():
            for e, _ in emb.rotations[v]:
                if e not in emitted:
                    emitted.add(e)
                    u, w = g.endpoints(e)
                    lines.append(f"  {u} {op} {w};")
        for e in g.live_edges():
            if e not in emitted:
                u, w = g.endpoints(e)
                lines.append(f"  {u} {op} {w};")
    else:
        for e in g.live_edges():
            u, w = g.endpoints(e)
            lines.append(f"  {u} {op} {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"
