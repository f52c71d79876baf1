"""Independent reference computations used to freeze expected values.

Nothing here calls the package's geometry or constraint code: strips are
rebuilt from line intersections in numpy, overlaps come from shapely, and
layer orders are found by brute-force enumeration.  The knot polynomials are
computed with sympy from crossing data read off the diagram.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import sympy as sp
from shapely.geometry import LineString, Polygon

t, A = sp.symbols("t A")


# -- strips and allowed widths ----------------------------------------------


def _line_hit(p, u, q, v):
    # p + s u = q + r v
    m = np.array([[u[0], -v[0]], [u[1], -v[1]]])
    s, _ = np.linalg.solve(m, np.asarray(q) - np.asarray(p))
    return np.asarray(p) + s * np.asarray(u)


def oracle_strips(verts, w):
    """Strip quadrilaterals of a fold-everywhere polygon, or None if a strip
    turns inside out.  Each fold line is perpendicular to the interior angle
    bisector at its vertex; each strip lies between the two offset lines."""
    P = np.asarray(verts, dtype=float)
    n = len(P)
    fold_dir = []
    for i in range(n):
        a = P[i] - P[i - 1]
        b = P[(i + 1) % n] - P[i]
        fold_dir.append(a / np.linalg.norm(a) + b / np.linalg.norm(b))
    strips = []
    for i in range(n):
        p, q = P[i], P[(i + 1) % n]
        u = (q - p) / np.linalg.norm(q - p)
        nrm = np.array([-u[1], u[0]])
        corners = {}
        for side in (1, -1):
            off = p + side * 0.5 * w * nrm
            c0 = _line_hit(off, u, p, fold_dir[i])
            c1 = _line_hit(off, u, q, fold_dir[(i + 1) % n])
            if np.dot(c1 - c0, u) < 0:
                return None
            corners[side] = (c0, c1)
        strips.append(Polygon([corners[-1][0], corners[-1][1], corners[1][1], corners[1][0]]))
    return strips


def oracle_allowed(verts, folds, w, area_tol=1e-12, max_free=18):
    """Brute-force decision for a crossing-free diagram with a fold at every
    vertex.  ``folds[i]`` is "over" or "under" at vertex i."""
    strips = oracle_strips(verts, w)
    if strips is None:
        return False
    n = len(strips)
    pairs = [(a, b) for a, b in itertools.combinations(range(n), 2)
             if strips[a].intersection(strips[b]).area > area_tol]
    forced = {}
    for a, b in pairs:
        if b == a + 1 or (a == 0 and b == n - 1):
            v = b if b == a + 1 else 0
            out_above = folds[v] == "over"
            forced[(a, b)] = 1 if (a == v) == out_above else -1
    free = [p for p in pairs if p not in forced]
    if len(free) > max_free:
        raise RuntimeError("too many free overlaps for enumeration")
    triples = [(a, b, c) for a, b, c in itertools.combinations(range(n), 3)
               if {(a, b), (b, c), (a, c)} <= set(pairs)
               and strips[a].intersection(strips[b]).intersection(strips[c]).area > area_tol]
    P = np.asarray(verts, dtype=float)
    ties = []
    for v in range(n):
        s_in, s_out = (v - 1) % n, v
        line = LineString([strips[s_out].exterior.coords[0], strips[s_out].exterior.coords[3]])
        for k in range(n):
            if k in (s_in, s_out):
                continue
            key_in, key_out = tuple(sorted((k, s_in))), tuple(sorted((k, s_out)))
            if key_in in pairs and key_out in pairs and \
                    line.intersection(strips[k].buffer(-1e-12)).length > 1e-12:
                ties.append((k, s_in, s_out))
    del P

    def above(x, a, b):
        return x[(a, b)] > 0 if a < b else x[(b, a)] < 0

    for bits in itertools.product((1, -1), repeat=len(free)):
        x = dict(forced)
        x.update(zip(free, bits))
        if any(above(x, a, b) == above(x, b, c) == above(x, c, a) for a, b, c in triples):
            continue
        if any(above(x, k, i) != above(x, k, o) for k, i, o in ties):
            continue
        return True
    return False


def sweep_max_width(verts, folds, w_max, points=1000):
    """Largest allowed width on a uniform grid of ``points`` widths in
    (0, w_max], with the next grid width (the first disallowed one)."""
    ws = [w_max * k / points for k in range(1, points + 1)]
    last = None
    for k, w in enumerate(ws):
        if oracle_allowed(verts, folds, w):
            last = k
        else:
            break
    nxt = ws[last + 1] if last is not None and last + 1 < len(ws) else math.inf
    return (ws[last] if last is not None else 0.0), nxt


# -- triangle facts -----------------------------------------------------------


def incircle_by_angles(p1, p2, p3):
    """Incenter as the meeting point of two angle bisectors and the inradius
    as its distance to a side; the area from the shoelace formula."""
    P = [np.asarray(p, dtype=float) for p in (p1, p2, p3)]

    def bis(i):
        a, b, c = P[i], P[(i + 1) % 3], P[(i + 2) % 3]
        d = (b - a) / np.linalg.norm(b - a) + (c - a) / np.linalg.norm(c - a)
        return a, d

    a0, d0 = bis(0)
    a1, d1 = bis(1)
    I = _line_hit(a0, d0, a1, d1)
    e = P[1] - P[0]
    r = abs(e[0] * (I - P[0])[1] - e[1] * (I - P[0])[0]) / np.linalg.norm(e)
    area = 0.5 * abs(e[0] * (P[2] - P[0])[1] - e[1] * (P[2] - P[0])[0])
    return I, r, area


# -- knot polynomials -----------------------------------------------------------


def _events(d):
    out = []
    for k, cr in enumerate(d.crossings):
        for e in (cr.edge_a, cr.edge_b):
            (x1, y1), (x2, y2) = d.edge(e)
            px, py = cr.point
            s = ((px - x1) * (x2 - x1) + (py - y1) * (y2 - y1)) / ((x2 - x1) ** 2 + (y2 - y1) ** 2)
            out.append((e, s, k, e == cr.under_edge))
    out.sort()
    return out


def _sign(d, k):
    cr = d.crossings[k]
    (o1, o2), (u1, u2) = d.edge(cr.over_edge), d.edge(cr.under_edge)
    o = (o2[0] - o1[0], o2[1] - o1[1])
    u = (u2[0] - u1[0], u2[1] - u1[1])
    return 1 if o[0] * u[1] - o[1] * u[0] > 0 else -1


def normalize_poly(p):
    p = sp.Poly(sp.expand(p), t)
    if p.is_zero:
        return sp.Integer(0)
    low = min(m[0] for m, _ in p.terms())
    q = sp.Poly(sp.expand(p.as_expr() / t ** low), t)
    if q.coeffs()[-1] < 0:
        q = -q
    return q.as_expr()


def alexander(d):
    """Alexander polynomial from a Fox-calculus minor of the Wirtinger
    presentation, normalised up to units."""
    c = len(d.crossings)
    if c == 0:
        return sp.Integer(1)
    events = _events(d)
    under_pos = [i for i, ev in enumerate(events) if ev[3]]
    m = len(under_pos)

    def arc_of(pos):
        return sum(1 for u in under_pos if u < pos) % m

    M = sp.zeros(c, c)
    for idx, u in enumerate(under_pos):
        k = events[u][2]
        inc, out = idx % m, (idx + 1) % m
        opos = next(i for i, ev in enumerate(events) if ev[2] == k and not ev[3])
        o = arc_of(opos)
        if _sign(d, k) > 0:
            M[k, o] += 1 - t
            M[k, inc] += t
            M[k, out] += -1
        else:
            M[k, o] += 1 - t
            M[k, inc] += 1
            M[k, out] += -t
    return normalize_poly(M[1:, 1:].det())


FIVE_ONE_ALEXANDER = normalize_poly(t ** 4 - t ** 3 + t ** 2 - t + 1)


def pd_code(d):
    events = _events(d)
    m = len(events)
    out = []
    for k, cr in enumerate(d.crossings):
        pos = {ev[3]: i for i, ev in enumerate(events) if ev[2] == k}
        pu, po = pos[True], pos[False]
        (o1, o2), (u1, u2) = d.edge(cr.over_edge), d.edge(cr.under_edge)
        u = (u2[0] - u1[0], u2[1] - u1[1])
        o = (o2[0] - o1[0], o2[1] - o1[1])
        items = [((-u[0], -u[1]), (pu - 1) % m), (u, pu),
                 ((-o[0], -o[1]), (po - 1) % m), (o, po)]
        base = math.atan2(-u[1], -u[0])
        items.sort(key=lambda it: (math.atan2(it[0][1], it[0][0]) - base) % (2 * math.pi))
        out.append(tuple(lbl for _, lbl in items))
    return out


def jones_normalized_bracket(d):
    """Writhe-normalised Kauffman bracket, a Jones polynomial in ``A``."""
    pd = pd_code(d)
    nlab = 2 * len(pd)
    loop = -A ** 2 - A ** -2
    total = 0
    for state in itertools.product((0, 1), repeat=len(pd)):
        parent = list(range(nlab))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        na = 0
        for (i, j, k, l), s in zip(pd, state):
            if s == 0:
                parent[find(i)] = find(j)
                parent[find(k)] = find(l)
                na += 1
            else:
                parent[find(i)] = find(l)
                parent[find(j)] = find(k)
        loops = len({find(x) for x in range(nlab)})
        total += A ** (2 * na - len(pd)) * loop ** (loops - 1)
    w = sum(_sign(d, k) for k in range(len(pd)))
    return sp.expand(sp.simplify((-A ** 3) ** (-w) * total))
