"""Closed-form constructions and bounds: regular n-gons and triangle inradii."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union

from . import geometry as geo
from .diagram import FoldingInfo, FoldType, KnotDiagram
from .errors import RibbonError
from .geometry import Point


class FoldPattern(str, enum.Enum):
    ALL_SAME = "all-same"
    ONE_DIFFERENT = "one-different"


def pattern_folds(n: int, pattern: Union[FoldPattern, str, Sequence]) -> FoldingInfo:
    """Folding information for a named pattern or an explicit list of types."""
    if isinstance(pattern, FoldingInfo):
        return pattern
    if isinstance(pattern, str):
        try:
            pattern = FoldPattern(pattern)
        except ValueError:
            pattern = FoldType(pattern)
    if pattern is FoldPattern.ALL_SAME:
        return FoldingInfo.all_same(n)
    if pattern is FoldPattern.ONE_DIFFERENT:
        return FoldingInfo.one_different(n)
    if isinstance(pattern, FoldType):
        return FoldingInfo.all_same(n, pattern)
    folds = FoldingInfo(tuple(pattern))
    if len(folds) != n:
        raise ValueError(f"{len(folds)} fold types for {n} vertices")
    return folds


def regular_ngon_diagram(n: int, side: float = 1.0,
                         folds: Union[FoldPattern, str, Sequence] = FoldPattern.ALL_SAME,
                         name: str = None) -> KnotDiagram:
    """Counterclockwise regular n-gon centred at the origin, ``v_1`` on +x."""
    if n < 3:
        raise ValueError("a regular polygon needs n >= 3")
    if not side > 0:
        raise ValueError("side must be positive")
    R = side / (2.0 * math.sin(math.pi / n))
    verts = [(R * math.cos(2 * math.pi * k / n), R * math.sin(2 * math.pi * k / n))
             for k in range(n)]
    return KnotDiagram(tuple(verts), pattern_folds(n, folds), (), "unknot",
                       name or f"ngon-{n}")


def ngon_ribbonlength_bound(n: int) -> float:
    """``n cot(pi/n)``: ribbonlength of the regular n-gon unknot, n >= 4."""
    if n < 4:
        raise ValueError("the n-gon bound applies for n >= 4; use three_stick_bounds for n = 3")
    return n / math.tan(math.pi / n)


def three_stick_bounds(pattern: Union[FoldPattern, str]) -> float:
    pattern = FoldPattern(pattern)
    if pattern is FoldPattern.ALL_SAME:
        return 3.0 * math.sqrt(3.0)
    return math.sqrt(3.0)


@dataclass(frozen=True)
class TriangleMetrics:
    area: float
    perimeter: float
    inradius: float
    incenter: Point


def triangle_metrics(p1: Point, p2: Point, p3: Point) -> TriangleMetrics:
    a = geo.dist(p2, p3)
    b = geo.dist(p1, p3)
    c = geo.dist(p1, p2)
    area = 0.5 * abs(geo.orient(p1, p2, p3))
    P = a + b + c
    if area <= 1e-15 * P * P:
        raise RibbonError("degenerate (collinear) triangle")
    x = (a * p1[0] + b * p2[0] + c * p3[0]) / P
    y = (a * p1[1] + b * p2[1] + c * p3[1]) / P
    return TriangleMetrics(area, P, 2.0 * area / P, (x, y))


def max_inradius_fixed_perimeter(P: float) -> tuple[float, str]:
    """Largest inradius among triangles of perimeter ``P`` (the equilateral one)."""
    if not P > 0:
        raise ValueError("perimeter must be positive")
    return P / (6.0 * math.sqrt(3.0)), "equilateral"


def corners_coherent(corners: Sequence[tuple[int, int]]) -> bool:
    """Whether three corner relations ``(upper_side, lower_side)`` over the
    sides 0, 1, 2 of a triangle form a directed cycle.

    A corner can come from a fold or from a crossing; either way it says which
    of the two sides meeting there lies on top.
    """
    if len(corners) != 3:
        raise ValueError("a triangle has three corners")
    above = {}
    for hi, lo in corners:
        if {hi, lo} - {0, 1, 2} or hi == lo:
            raise ValueError(f"bad corner relation {(hi, lo)}")
        above[hi] = lo
    if len(above) != 3:
        return False
    # each side is above exactly one other and the map is a 3-cycle
    return above[above[above[0]]] == 0 and above[0] != 0


def triangle_face_bound(points: Sequence[Point], corners: Sequence[tuple[int, int]]) -> float:
    """Upper bound ``2 r_in`` on the width over a triangular face whose corner
    orders are coherent; ``inf`` when the corners say nothing."""
    if not corners_coherent(corners):
        return math.inf
    return 2.0 * triangle_metrics(*points).inradius


def triangle_width_bound(d: KnotDiagram) -> float:
    """Necessary bound on allowed widths for a 3-stick diagram.

    Sides are the edges; at vertex ``i`` edge ``i`` is above edge ``i-1`` for
    an overfold.  All-same folds give a directed cycle and the bound
    ``2 r_in``; otherwise there is no bound from this argument.
    """
    if d.n != 3:
        raise RibbonError(f"not a triangle: {d.n} vertices")
    corners = []
    for i in range(3):
        out_e, in_e = i, (i - 1) % 3
        if d.folds[i] is FoldType.OVER:
            corners.append((out_e, in_e))
        else:
            corners.append((in_e, out_e))
    return triangle_face_bound(d.vertices, corners)
