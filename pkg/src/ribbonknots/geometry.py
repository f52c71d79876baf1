"""Planar geometry primitives on plain ``(x, y)`` float tuples.

Everything here is deliberately numpy-free: the polygons involved are
quadrilaterals and their intersections, and tuple arithmetic is several
times faster than small-array numpy for that size.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple

Point = Tuple[float, float]
Segment = Tuple[Point, Point]
Polygon = Sequence[Point]


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, s: float) -> Point:
    return (a[0] * s, a[1] * s)


def dot(a: Point, b: Point) -> float:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Point, b: Point) -> float:
    return a[0] * b[1] - a[1] * b[0]


def norm(a: Point) -> float:
    return math.hypot(a[0], a[1])


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def unit(a: Point) -> Point:
    n = math.hypot(a[0], a[1])
    return (a[0] / n, a[1] / n)


def left_normal(a: Point) -> Point:
    return (-a[1], a[0])


def orient(a: Point, b: Point, c: Point) -> float:
    """Twice the signed area of triangle abc (positive when counterclockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def polygon_area(poly: Polygon) -> float:
    """Signed shoelace area; positive for counterclockwise vertex order.

    Coordinates are taken relative to the first vertex so the rounding error
    scales with the polygon's own size, not its distance from the origin.
    """
    n = len(poly)
    if n < 3:
        return 0.0
    ox, oy = poly[0]
    s = 0.0
    for i in range(1, n - 1):
        x1, y1 = poly[i][0] - ox, poly[i][1] - oy
        x2, y2 = poly[i + 1][0] - ox, poly[i + 1][1] - oy
        s += x1 * y2 - x2 * y1
    return 0.5 * s


def polygon_centroid(poly: Polygon) -> Point:
    a = polygon_area(poly)
    if abs(a) < 1e-300:
        n = len(poly)
        return (sum(p[0] for p in poly) / n, sum(p[1] for p in poly) / n)
    cx = cy = 0.0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        c = x1 * y2 - x2 * y1
        cx += (x1 + x2) * c
        cy += (y1 + y2) * c
    return (cx / (6.0 * a), cy / (6.0 * a))


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point,
                         tol: float = 0.0) -> Optional[Tuple[float, float]]:
    """Parameters ``(s, t)`` of the crossing of segments p1p2 and q1q2.

    Returns None for parallel segments or when the crossing falls outside
    either segment by more than ``tol`` (measured in length units).
    """
    r = sub(p2, p1)
    d = sub(q2, q1)
    denom = cross(r, d)
    if denom == 0.0:
        return None
    qp = sub(q1, p1)
    s = cross(qp, d) / denom
    t = cross(qp, r) / denom
    es = tol / norm(r)
    et = tol / norm(d)
    if -es <= s <= 1.0 + es and -et <= t <= 1.0 + et:
        return s, t
    return None


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ab = sub(b, a)
    L2 = dot(ab, ab)
    if L2 == 0.0:
        return dist(p, a)
    t = max(0.0, min(1.0, dot(sub(p, a), ab) / L2))
    return dist(p, (a[0] + t * ab[0], a[1] + t * ab[1]))


def line_distance(p: Point, a: Point, direction: Point) -> float:
    """Signed distance from p to the line through a with unit ``direction``
    (positive on the left)."""
    return cross(direction, sub(p, a))


# edges shorter than this fraction of the polygon's extent are rounding noise;
# their direction is meaningless, so they never act as half-planes
SHORT_EDGE = 1e-12


def bbox(poly: Polygon) -> tuple[float, float, float, float]:
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), min(ys), max(xs), max(ys)


def _extent(poly: Polygon) -> float:
    x0, y0, x1, y1 = bbox(poly)
    return max(x1 - x0, y1 - y0)


def dedupe(poly: Polygon, eps: float) -> list[Point]:
    """Drop consecutive (cyclically) vertices closer than ``eps``."""
    out: list[Point] = []
    for p in poly:
        if not out or dist(p, out[-1]) > eps:
            out.append(p)
    while len(out) > 1 and dist(out[0], out[-1]) <= eps:
        out.pop()
    return out


def clip_convex(subject: Polygon, clip: Polygon) -> list[Point]:
    """Sutherland-Hodgman clip of ``subject`` by convex counterclockwise ``clip``.

    Numerically coincident output vertices are merged.
    """
    out = list(subject)
    m = len(clip)
    if not out or not m:
        return []
    sx0, sy0, sx1, sy1 = bbox(subject)
    cx0, cy0, cx1, cy1 = bbox(clip)
    if sx0 > cx1 or cx0 > sx1 or sy0 > cy1 or cy0 > sy1:
        return []
    # the result lies inside clip, so clip's extent bounds it
    short = SHORT_EDGE * max(cx1 - cx0, cy1 - cy0)
    for i in range(m):
        if not out:
            break
        a = clip[i]
        b = clip[(i + 1) % m]
        ex, ey = b[0] - a[0], b[1] - a[1]
        if math.hypot(ex, ey) <= short:
            continue
        inp = out
        out = []
        k = len(inp)
        prev = inp[-1]
        dprev = ex * (prev[1] - a[1]) - ey * (prev[0] - a[0])
        for j in range(k):
            cur = inp[j]
            dcur = ex * (cur[1] - a[1]) - ey * (cur[0] - a[0])
            if dcur >= 0.0:
                if dprev < 0.0:
                    f = dprev / (dprev - dcur)
                    out.append((prev[0] + f * (cur[0] - prev[0]),
                                prev[1] + f * (cur[1] - prev[1])))
                out.append(cur)
            elif dprev >= 0.0:
                f = dprev / (dprev - dcur)
                out.append((prev[0] + f * (cur[0] - prev[0]),
                            prev[1] + f * (cur[1] - prev[1])))
            prev, dprev = cur, dcur
    if not out:
        return out
    return dedupe(out, short)


def segment_window(a: Point, b: Point, clip: Polygon) -> Optional[tuple[float, float]]:
    """Parameter interval ``(t0, t1)`` of segment ab inside convex
    counterclockwise ``clip``, or None when they do not meet."""
    t0, t1 = 0.0, 1.0
    d = sub(b, a)
    m = len(clip)
    short = SHORT_EDGE * _extent(clip)
    for i in range(m):
        p = clip[i]
        q = clip[(i + 1) % m]
        e = sub(q, p)
        if norm(e) <= short:
            continue
        num = cross(e, sub(a, p))
        den = cross(e, d)
        if den == 0.0:
            if num < 0.0:
                return None
            continue
        t = -num / den
        if den > 0.0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 >= t1:
            return None
    return t0, t1


def clip_segment_convex(a: Point, b: Point, clip: Polygon) -> float:
    """Length of the part of segment ab inside convex counterclockwise ``clip``."""
    win = segment_window(a, b, clip)
    if win is None:
        return 0.0
    return (win[1] - win[0]) * dist(a, b)


def point_in_convex(p: Point, poly: Polygon, tol: float = 0.0) -> bool:
    """Whether ``p`` is within ``tol`` of the inside of every edge of the
    convex counterclockwise ``poly``."""
    m = len(poly)
    short = SHORT_EDGE * _extent(poly)
    for i in range(m):
        a = poly[i]
        b = poly[(i + 1) % m]
        e = sub(b, a)
        L = norm(e)
        if L <= short:
            continue
        if cross(e, sub(p, a)) / L < -tol:
            return False
    return True
