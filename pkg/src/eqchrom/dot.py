"""Graphviz DOT export.  Output is deterministic; no graphviz dependency."""

from __future__ import annotations

from .balmer import INF, ClosedSet, format_height, point_covers, points
from .groups import SubgroupLattice

SHADE = 'style=filled, fillcolor="gray80"'


def _q(s: str) -> str:
    return '"' + str(s).replace('"', '\\"') + '"'


def point_name(P) -> str:
    b, n = P
    return f"B:{b},n:{format_height(n)}"


def hasse_dot(lat: SubgroupLattice, shaded=()) -> str:
    """Subgroup lattice with the trivial subgroup on top (edges point to larger subgroups)."""
    shaded = {lat[s].id for s in shaded}
    lines = [f"digraph {_q('Sub(' + lat.spec.name() + ')')} {{", "  rankdir=TB;"]
    for s in lat:
        label = f"{s.id}\\n|B|={s.order}"
        attrs = [f"label={_q(label)}"] + ([SHADE] if s.id in shaded else [])
        lines.append(f"  {_q(s.id)} [{', '.join(attrs)}];")
    for b1, b2 in lat.hasse:
        lines.append(f"  {_q(b1)} -> {_q(b2)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def balmer_dot(lat: SubgroupLattice, n_max: int, closed: ClosedSet | None = None) -> str:
    """Finite window of the point poset; an edge ``P -> Q`` is a cover ``P <= Q``."""
    pts = points(lat, n_max, with_infinity=True)
    lines = [f"digraph {_q('Spc(' + lat.spec.name() + ')')} {{", "  rankdir=BT;"]
    for P in pts:
        attrs = [f"label={_q(point_name(P))}"]
        if closed is not None and closed.contains(P):
            attrs.append(SHADE)
        if P[1] == INF:
            attrs.append("shape=doublecircle")
        lines.append(f"  {_q(point_name(P))} [{', '.join(attrs)}];")
    for P, Q in point_covers(lat, pts):
        lines.append(f"  {_q(point_name(P))} -> {_q(point_name(Q))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def sd_dot(lat: SubgroupLattice) -> str:
    """Barycentric subdivision: vertices ``B`` and edge objects ``B1<B2`` with both projections."""
    sd = lat.sd_diagram()
    lines = [f"digraph {_q('Sd(' + lat.spec.name() + ')')} {{", "  rankdir=TB;"]
    for v in sd.vertices:
        lines.append(f"  {_q(v)} [shape=box];")
    for b1, b2 in sd.edges:
        lines.append(f"  {_q(b1 + '<' + b2)} [shape=ellipse];")
    for src, (b1, b2) in sd.arrows:
        lines.append(f"  {_q(src)} -> {_q(b1 + '<' + b2)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def count_nodes(dot: str) -> int:
    return sum(1 for ln in dot.splitlines() if ln.strip().endswith("];") and "->" not in ln)


def count_shaded(dot: str) -> int:
    return sum(1 for ln in dot.splitlines() if "fillcolor" in ln)
