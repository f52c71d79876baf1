"""Deterministic SVG rendering of folded ribbons.

Layers, bottom to top: strips, overlap regions (filled with the colour of
the upper strip), triple regions, conflict highlights, fold lines, the
centre line with orientation arrows, and the boundary polylines.  Every
coordinate is written with six decimals and elements are emitted in a fixed
order, so equal inputs give byte-identical files.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import geometry as geo
from .diagram import DEFAULT_TOL, KnotDiagram, diagram_length
from .ribbon import AllowedCertificate, build_ribbon, is_allowed

CANVAS = 600.0
MARGIN = 20.0


@dataclass
class RenderResult:
    svg: str
    allowed: bool
    certificate: AllowedCertificate


def strip_colour(i: int, n: int) -> str:
    r, g, b = colorsys.hls_to_rgb((i / max(n, 1)) % 1.0, 0.72, 0.55)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


class _Frame:
    """Maps diagram coordinates to SVG user units with y pointing up."""

    def __init__(self, points: Sequence[geo.Point]):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), 1e-300)
        self.k = (CANVAS - 2 * MARGIN) / span
        self.width = (max(xs) - self.x0) * self.k + 2 * MARGIN
        self.height = (self.y1 - min(ys)) * self.k + 2 * MARGIN

    def pt(self, p: geo.Point) -> str:
        x = (p[0] - self.x0) * self.k + MARGIN
        y = (self.y1 - p[1]) * self.k + MARGIN
        return f"{x + 0.0:.6f},{y + 0.0:.6f}"

    def pts(self, seq) -> str:
        return " ".join(self.pt(p) for p in seq)


def painter_order(n: int, cert: AllowedCertificate) -> list[int]:
    """Strip indices bottom to top, when the above relation is acyclic;
    index order otherwise (overlap regions are then repainted on top)."""
    if cert.order_assignment is None:
        return list(range(n))
    below = {i: set() for i in range(n)}
    for (a, b), v in sorted(cert.order_assignment.items()):
        hi, lo = (a, b) if v > 0 else (b, a)
        below[hi].add(lo)
    order, done = [], set()
    while len(order) < n:
        ready = [i for i in range(n) if i not in done and below[i] <= done]
        if not ready:
            return list(range(n))
        order.append(ready[0])
        done.add(ready[0])
    return order


def _top(cert: AllowedCertificate, strips: Sequence[int]) -> int:
    for s in strips:
        if all(cert.above(s, t) for t in strips if t != s):
            return s
    return strips[0]


def _arrow(frame: _Frame, a: geo.Point, b: geo.Point, size: float) -> str:
    mid = geo.scale(geo.add(a, b), 0.5)
    u = geo.unit(geo.sub(b, a))
    nrm = geo.left_normal(u)
    tip = geo.add(mid, geo.scale(u, size))
    back = geo.sub(mid, geo.scale(u, size))
    p1 = geo.add(back, geo.scale(nrm, 0.6 * size))
    p2 = geo.sub(back, geo.scale(nrm, 0.6 * size))
    return f'<polygon class="arrow" points="{frame.pts((tip, p1, p2))}"/>'


def render_svg(d: KnotDiagram, w: float, path: Optional[str] = None,
               tol: float = DEFAULT_TOL) -> RenderResult:
    """Render the width-``w`` ribbon; ``tol`` is relative to diagram length.

    Raises WidthError when the ribbon cannot be built at ``w``.  A width that
    builds but is not allowed still renders, with the conflicting regions
    outlined in red, and ``allowed`` is False on the result.
    """
    ribbon = build_ribbon(d, w)
    L = diagram_length(d)
    cert = is_allowed(d, w, tol * L)
    n = d.n
    pts = [p for s in ribbon.strips for p in s] + list(d.vertices)
    fr = _Frame(pts)
    colours = [strip_colour(i, n) for i in range(n)]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fr.width:.6f}" height="{fr.height:.6f}" '
        f'viewBox="0 0 {fr.width:.6f} {fr.height:.6f}">',
    ]
    title = d.name or "diagram"
    out.append(f"<title>{title} w={w:.6f} {'allowed' if cert.allowed else 'not allowed'}</title>")

    out.append('<g id="strips" stroke="#555555" stroke-width="0.5" fill-opacity="0.9">')
    for i in painter_order(n, cert):
        out.append(f'<polygon class="strip" data-edge="{i + 1}" fill="{colours[i]}" '
                   f'points="{fr.pts(ribbon.strips[i])}"/>')
    out.append("</g>")

    st = cert.structure
    if cert.allowed and st is not None:
        out.append('<g id="overlaps" stroke="none">')
        for c in st.constraints:
            top = c.strip_a if cert.above(c.strip_a, c.strip_b) else c.strip_b
            out.append(f'<polygon class="overlap" data-strips="{c.strip_a + 1} {c.strip_b + 1}" '
                       f'fill="{colours[top]}" points="{fr.pts(c.region)}"/>')
        out.append("</g>")
        out.append('<g id="triples" stroke="none">')
        for t in st.triples:
            top = _top(cert, t.strips)
            out.append(f'<polygon class="triple" fill="{colours[top]}" '
                       f'points="{fr.pts(t.region)}"/>')
        out.append("</g>")
    else:
        out.append('<g id="conflicts" fill="#ff0000" fill-opacity="0.35" '
                   'stroke="#cc0000" stroke-width="1.5">')
        for c in cert.conflict or []:
            out.append(f'<polygon class="conflict" points="{fr.pts(c.region)}"/>')
        for t in cert.conflict_regions:
            out.append(f'<polygon class="conflict" points="{fr.pts(t.region)}"/>')
        for tie in cert.conflict_ties:
            out.append(f'<polygon class="conflict" points="{fr.pts(ribbon.strips[tie.strip])}"/>')
        out.append("</g>")

    out.append('<g id="fold-lines" stroke="#000000" stroke-width="1" stroke-dasharray="4 3">')
    for seg in ribbon.fold_lines:
        if seg is not None:
            out.append(f'<polyline class="fold-line" fill="none" points="{fr.pts(seg)}"/>')
    out.append("</g>")

    size = 0.04 * max(fr.width, fr.height) / fr.k
    out.append('<g id="centerline" stroke="#000000" stroke-width="1.5">')
    out.append(f'<polygon class="centerline" fill="none" points="{fr.pts(d.vertices)}"/>')
    for a, b in d.edges():
        out.append(_arrow(fr, a, b, min(size, 0.25 * geo.dist(a, b))))
    out.append("</g>")

    out.append('<g id="boundaries" fill="none" stroke="#1f3a93" stroke-width="2">')
    for poly in ribbon.boundaries:
        out.append(f'<path class="boundary" d="M {fr.pts(poly)} Z"/>')
    out.append("</g>")
    out.append("</svg>")
    svg = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    return RenderResult(svg, cert.allowed, cert)
