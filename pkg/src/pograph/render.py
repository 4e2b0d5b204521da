"""Deterministic SVG and DOT renderings of diagrams.

Vertices sit equally spaced on one circle per block (blocks side by side),
boundary edges follow the circle, chords are straight segments, and
crossed chords are highlighted.  Identical input yields identical bytes.
"""

from __future__ import annotations

import math

from .diagram import Diagram

_R = 120.0
_GAP = 60.0
_PAD = 40.0


def render_svg(d: Diagram) -> str:
    parts: list[str] = []
    crossed = d.crossed_chords
    cx = _PAD + _R
    height = 2 * (_R + _PAD)
    for blk, geo in zip(d.blocks, d.geometries):
        b = len(blk.order)
        pts = {}
        for i, v in enumerate(blk.order):
            ang = -math.pi / 2 + 2 * math.pi * i / max(b, 1)
            pts[v] = (cx + _R * math.cos(ang), _R + _PAD + _R * math.sin(ang))
        for e in sorted(geo.boundary | geo.chords):
            (x1, y1), (x2, y2) = pts[e[0]], pts[e[1]]
            if e in crossed:
                style = 'stroke="#c0392b" stroke-width="2.5"'
            elif e in geo.chords:
                style = 'stroke="#2c3e50" stroke-width="1.5"'
            else:
                style = 'stroke="#7f8c8d" stroke-width="1.5"'
            parts.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" {style}/>'
            )
        for v in blk.order:
            x, y = pts[v]
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="9" fill="#ecf0f1" stroke="#2c3e50"/>')
            parts.append(
                f'<text x="{x:.2f}" y="{y + 4:.2f}" text-anchor="middle" font-size="11">{v}</text>'
            )
        cx += 2 * _R + _GAP
    width = cx - _R + _PAD - _GAP if d.blocks else 2 * _PAD
    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}">\n'
        f"{body}\n</svg>\n"
    )


def render_dot(d: Diagram) -> str:
    crossed = d.crossed_chords
    pair_of = {}
    for e, f in sorted(d.crossing_pairs):
        pair_of[e] = f
        pair_of[f] = e
    lines = ["graph diagram {", "  layout=circo;"]
    for v in sorted(set(v for blk in d.blocks for v in blk.order)):
        lines.append(f"  {v};")
    for e in sorted(d.graph.edges):
        attrs = []
        if e in crossed:
            f = pair_of[e]
            attrs.append('color="red"')
            attrs.append(f'crosses="{f[0]}-{f[1]}"')
        suffix = f' [{", ".join(attrs)}]' if attrs else ""
        lines.append(f"  {e[0]} -- {e[1]}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
