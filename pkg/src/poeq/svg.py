"""Drawings of the item simplex: SVG for people, DOT for graph tools.

Player I sits bottom-left, II bottom-right and III at the top.  Output is
a pure function of its inputs, so identical runs give identical bytes.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

from .core import PLAYER_NAMES, PLAYERS, Instance
from .descent import SolveReport
from .geometry import CENTER, corner, item_point
from .graph import FaceClass, RnsGraph

WIDTH = 600
HEIGHT = 540
MARGIN = 40

CLASS_COLORS = {
    FaceClass.F1: "#1f77b4",
    FaceClass.F2: "#2ca02c",
    FaceClass.F3: "#d62728",
    FaceClass.F4: "#9467bd",
    FaceClass.F5: "#8c564b",
    FaceClass.F6: "#e377c2",
    FaceClass.DEGENERATE: "#7f7f7f",
}

_CORNERS = (
    (MARGIN, HEIGHT - MARGIN),
    (WIDTH - MARGIN, HEIGHT - MARGIN),
    (WIDTH / 2, MARGIN),
)


def to_xy(b: Sequence) -> tuple:
    x = sum(float(b[i]) * _CORNERS[i][0] for i in PLAYERS)
    y = sum(float(b[i]) * _CORNERS[i][1] for i in PLAYERS)
    return x, y


def _f(v: float) -> str:
    return f"{v:.3f}"


def _line(a, b, cls: str) -> str:
    (x1, y1), (x2, y2) = to_xy(a), to_xy(b)
    return f'<line class="{cls}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>'


def render_svg(inst: Instance, graph: RnsGraph, report: Optional[SolveReport] = None,
               path: Optional[str] = None) -> str:
    """Return the SVG text, also writing it to ``path`` when given."""
    out: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        "<style>"
        ".tri{fill:none;stroke:#000;stroke-width:1.5}"
        ".seg{stroke:#bbb;stroke-width:0.8}"
        ".arc{stroke:#555;stroke-width:1.2}"
        ".path{fill:none;stroke:#ff7f0e;stroke-width:3}"
        ".item{fill:#000}"
        ".opt{fill:none;stroke:#ff7f0e;stroke-width:2.5}"
        ".center{stroke:#000;stroke-width:1}"
        "text{font-family:sans-serif;font-size:14px}"
        "</style>",
    ]
    pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in _CORNERS)
    out.append(f'<polygon class="tri" points="{pts}"/>')
    for i, (x, y) in enumerate(_CORNERS):
        dy = 20 if i < 2 else -10
        out.append(f'<text x="{_f(x)}" y="{_f(y + dy)}" text-anchor="middle">{PLAYER_NAMES[i]}</text>')

    out.append('<g id="segments">')
    for j in range(inst.m):
        p = item_point(inst, j)
        for v in PLAYERS:
            out.append(_line(p.b, corner(v).b, "seg"))
    out.append("</g>")

    out.append('<g id="arcs">')
    for a in graph.arcs:
        out.append(_line(graph.vertices[a.u].location.b, graph.vertices[a.v].location.b, "arc"))
    out.append("</g>")

    cx, cy = to_xy(CENTER.b)
    out.append(f'<path class="center" d="M{_f(cx - 6)},{_f(cy)}H{_f(cx + 6)}M{_f(cx)},{_f(cy - 6)}V{_f(cy + 6)}"/>')

    if report is not None and len(report.path) > 1:
        coords = " ".join("{},{}".format(*map(_f, to_xy(v.location.b))) for v in report.path)
        out.append(f'<polyline class="path" points="{coords}"/>')

    out.append('<g id="vertices">')
    for v in graph.vertices:
        x, y = to_xy(v.location.b)
        out.append(f'<circle class="vertex" cx="{_f(x)}" cy="{_f(y)}" r="5" '
                   f'fill="{CLASS_COLORS[v.face_class]}"><title>v{v.index} {v.face_class}</title></circle>')
    out.append("</g>")

    out.append('<g id="items">')
    for j in range(inst.m):
        x, y = to_xy(item_point(inst, j).b)
        out.append(f'<circle class="item" cx="{_f(x)}" cy="{_f(y)}" r="2.5"/>')
        out.append(f'<text x="{_f(x + 6)}" y="{_f(y - 6)}" font-size="11">{inst.item_labels[j]}</text>')
    out.append("</g>")

    if report is not None:
        x, y = to_xy(report.optimal_vertex.location.b)
        out.append(f'<circle class="opt" cx="{_f(x)}" cy="{_f(y)}" r="9"/>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _pairs(seq: Iterable) -> set:
    seq = list(seq)
    return {frozenset((a.index, b.index)) for a, b in zip(seq, seq[1:])}


def render_dot(graph: RnsGraph, report: Optional[SolveReport] = None,
               path: Optional[str] = None) -> str:
    on_path = _pairs(report.path) if report else set()
    best = report.optimal_vertex.index if report else None
    lines = ["graph rns {", "  node [shape=circle, fontsize=10];"]
    for v in graph.vertices:
        attrs = [f'label="v{v.index}\\n{v.face_class}"', f'color="{CLASS_COLORS[v.face_class]}"']
        if v.index == best:
            attrs.append("penwidth=3")
        lines.append(f"  v{v.index} [{', '.join(attrs)}];")
    for a in graph.arcs:
        j, c = a.carrier
        style = ", style=bold" if frozenset((a.u, a.v)) in on_path else ""
        lines.append(f'  v{a.u} -- v{a.v} [label="{j + 1}->{PLAYER_NAMES[c]}"{style}];')
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
