"""Folded ribbons over polygonal knot diagrams.

A ribbon of width ``w`` is a chain of flat strips, one per edge.  Strip
``i`` is the convex quadrilateral between the fold lines at ``v_i`` and
``v_{i+1}``, bounded by the two lines parallel to ``e_i`` at distance
``w/2``.  A fold reflects the ribbon across its fold line, so the left
boundary of ``e_{i-1}`` continues as the right boundary of ``e_i``; at a
straight vertex the boundary keeps its side.

Deciding whether a width is allowed reduces to a small constraint problem.
Any two strips overlap in at most one convex (hence path-connected) region,
so each overlapping pair carries a single above/below relation.  Relations
are forced by folds (adjacent strips) and by diagram crossings; the rest are
free.  A strip whose interior runs across a fold line must sit on the same
side of both strips meeting there, and wherever three strips share a region
of positive area their relations must not form a 3-cycle (a tournament
without directed triangles is transitive, so this is exactly transitivity).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import geometry as geo
from .diagram import (DEFAULT_TOL, FoldType, KnotDiagram, are_adjacent,
                      diagram_length, fold_angle, validate_diagram)
from .errors import (AllowedSetError, DegenerateFoldError, NoFoldLineError,
                     RibbonError, WidthError)
from .geometry import Point, Segment

# fold lines longer than this multiple of the width are rejected
MAX_FOLD_LINE_RATIO = 1e12


class Order(enum.IntEnum):
    """Relation of ``strip_a`` to ``strip_b`` on their overlap."""

    BELOW = -1
    UNCONSTRAINED = 0
    ABOVE = 1


class Source(str, enum.Enum):
    FOLD = "fold"
    CROSSING = "crossing"
    FREE = "free"


@dataclass(frozen=True)
class Joint:
    """Where strip ``i-1`` meets strip ``i`` (at vertex ``i``).

    ``in_left`` / ``in_right`` are the ends of the incoming strip's left and
    right boundary lines.  For a fold they are the fold-line endpoints and
    become the outgoing strip's right / left boundary ends respectively.
    """

    vertex: int
    in_left: Point
    in_right: Point
    folded: bool

    @property
    def out_left(self) -> Point:
        return self.in_right if self.folded else self.in_left

    @property
    def out_right(self) -> Point:
        return self.in_left if self.folded else self.in_right


@dataclass(frozen=True)
class FoldedRibbon:
    diagram: KnotDiagram
    width: float
    joints: tuple[Joint, ...]
    strips: tuple[tuple[Point, ...], ...]
    boundaries: tuple[tuple[Point, ...], ...]
    # per boundary component: the (strip, side) of each of its segments
    boundary_sides: tuple[tuple[tuple[int, str], ...], ...]

    @property
    def fold_lines(self) -> tuple[Optional[Segment], ...]:
        return tuple((j.in_left, j.in_right) if j.folded else None for j in self.joints)

    def to_dict(self) -> dict:
        def pts(seq):
            return [[x, y] for x, y in seq]

        return {
            "width": self.width,
            "strips": [pts(s) for s in self.strips],
            "fold_lines": [pts(f) if f is not None else None for f in self.fold_lines],
            "boundaries": [pts(b) for b in self.boundaries],
        }


def _joint(d: KnotDiagram, i: int, w: float) -> Joint:
    n = d.n
    prev, here, nxt = d.vertices[(i - 1) % n], d.vertices[i], d.vertices[(i + 1) % n]
    u_in = geo.unit(geo.sub(here, prev))
    u_out = geo.unit(geo.sub(nxt, here))
    angle = fold_angle(d, i)
    n_in = geo.left_normal(u_in)
    h = 0.5 * w
    if angle.straight:
        return Joint(i, geo.add(here, geo.scale(n_in, h)),
                     geo.add(here, geo.scale(n_in, -h)), False)
    p = geo.unit(geo.add(u_in, u_out))
    k = geo.dot(p, n_in)  # = +-cos(theta/2)
    if abs(k) * MAX_FOLD_LINE_RATIO < 1.0:
        raise DegenerateFoldError(f"degenerate fold line at vertex {i + 1}")
    s = h / k
    return Joint(i, geo.add(here, geo.scale(p, s)), geo.add(here, geo.scale(p, -s)), True)


def fold_line(d: KnotDiagram, i: int, w: float) -> Segment:
    """Fold line at ``v_i``: length ``w / cos(theta_i / 2)``, centred on ``v_i``."""
    if w <= 0:
        raise ValueError("width must be positive")
    if fold_angle(d, i).straight:
        raise NoFoldLineError(f"vertex {i + 1} is straight: no fold line")
    j = _joint(d, i, w)
    return j.in_left, j.in_right


def build_ribbon(d: KnotDiagram, w: float, tol: float = 0.0) -> FoldedRibbon:
    """Construct the width-``w`` folded ribbon.

    Raises WidthError when a strip's two fold lines cross (a boundary side
    of negative length beyond ``tol``).
    """
    if not w > 0:
        raise ValueError("width must be positive")
    n = d.n
    joints = tuple(_joint(d, i, w) for i in range(n))
    strips = []
    for i in range(n):
        a, b = d.edge(i)
        u = geo.unit(geo.sub(b, a))
        j0, j1 = joints[i], joints[(i + 1) % n]
        r0, l0 = j0.out_right, j0.out_left
        r1, l1 = j1.in_right, j1.in_left
        for p, q, side in ((r0, r1, "right"), (l0, l1, "left")):
            if geo.dot(geo.sub(q, p), u) < -tol:
                raise WidthError(
                    f"width {w:g} exceeds local geometry: {side} side of strip {i + 1} inverts")
        strips.append((r0, r1, l1, l0))
    boundaries, sides = _trace_boundaries(joints, strips)
    return FoldedRibbon(d, w, joints, tuple(strips), boundaries, sides)


def _trace_boundaries(joints, strips):
    n = len(strips)
    seen = set()
    polylines = []
    all_sides = []
    for start in ((0, "left"), (0, "right")):
        if start in seen:
            continue
        pts = []
        sides = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            i, side = cur
            q = strips[i]
            p0, p1 = (q[3], q[2]) if side == "left" else (q[0], q[1])
            pts.append(p0)
            sides.append(cur)
            nxt = (i + 1) % n
            if joints[nxt].folded:
                side = "right" if side == "left" else "left"
            cur = (nxt, side)
        polylines.append(tuple(pts))
        all_sides.append(tuple(sides))
    return tuple(polylines), tuple(all_sides)


def boundary_count(d: KnotDiagram, w: float) -> int:
    return len(build_ribbon(d, w).boundaries)


# ---------------------------------------------------------------------------
# overlaps and the allowed-width decision


@dataclass(frozen=True)
class OverlapConstraint:
    strip_a: int
    strip_b: int
    region: tuple[Point, ...]
    required: Order
    source: Source
    index: Optional[int] = None  # vertex for folds, crossing number for crossings

    @property
    def area(self) -> float:
        return abs(geo.polygon_area(self.region))

    @property
    def pair(self) -> tuple[int, int]:
        return self.strip_a, self.strip_b


@dataclass(frozen=True)
class TripleRegion:
    strips: tuple[int, int, int]
    region: tuple[Point, ...]


@dataclass(frozen=True)
class FoldTie:
    """Strip ``strip`` runs across the fold line at ``vertex``."""

    strip: int
    vertex: int


@dataclass
class OverlapStructure:
    ribbon: FoldedRibbon
    constraints: list[OverlapConstraint]
    triples: list[TripleRegion]
    ties: list[FoldTie]


@dataclass
class AllowedCertificate:
    allowed: bool
    order_assignment: Optional[dict[tuple[int, int], int]] = None
    conflict: Optional[list[OverlapConstraint]] = None
    conflict_regions: list[TripleRegion] = field(default_factory=list)
    conflict_ties: list[FoldTie] = field(default_factory=list)
    structure: Optional[OverlapStructure] = None
    reason: str = ""

    def above(self, a: int, b: int) -> bool:
        """True when strip ``a`` lies above strip ``b`` on their overlap."""
        if self.order_assignment is None:
            raise RibbonError("no order assignment: width not allowed")
        if a < b:
            return self.order_assignment[(a, b)] > 0
        return self.order_assignment[(b, a)] < 0


def _fold_vertex(n: int, a: int, b: int) -> Optional[int]:
    """Vertex shared by adjacent edges a < b, as the joint index."""
    if b == a + 1:
        return b
    if a == 0 and b == n - 1:
        return 0
    return None


def overlap_structure(d: KnotDiagram, w: float, tol: float = DEFAULT_TOL) -> OverlapStructure:
    ribbon = build_ribbon(d, w, tol)
    n = d.n
    strips = ribbon.strips
    min_area = tol * tol
    crossing_of = {(c.edge_a, c.edge_b): (k, c) for k, c in enumerate(d.crossings)}

    constraints: list[OverlapConstraint] = []
    by_pair: dict[tuple[int, int], OverlapConstraint] = {}
    for a, b in combinations(range(n), 2):
        v = _fold_vertex(n, a, b) if n > 2 else None
        if v is not None and not ribbon.joints[v].folded:
            continue  # collinear neighbours only touch along the joint
        region = geo.clip_convex(strips[a], strips[b])
        if len(region) < 3 or abs(geo.polygon_area(region)) <= min_area:
            continue
        region = tuple(region)
        if v is not None:
            # outgoing strip of vertex v is above the incoming one for an overfold
            out_strip = v
            out_above = d.folds[v] is FoldType.OVER
            a_above = out_above if a == out_strip else not out_above
            con = OverlapConstraint(a, b, region, Order.ABOVE if a_above else Order.BELOW,
                                    Source.FOLD, v)
        elif (a, b) in crossing_of:
            k, c = crossing_of[(a, b)]
            con = OverlapConstraint(a, b, region,
                                    Order.ABOVE if c.over == "a" else Order.BELOW,
                                    Source.CROSSING, k)
        else:
            con = OverlapConstraint(a, b, region, Order.UNCONSTRAINED, Source.FREE)
        constraints.append(con)
        by_pair[(a, b)] = con

    triples = []
    for a, b, c in combinations(range(n), 3):
        ab = by_pair.get((a, b))
        if ab is None or (b, c) not in by_pair or (a, c) not in by_pair:
            continue
        region = geo.clip_convex(ab.region, strips[c])
        if len(region) >= 3 and abs(geo.polygon_area(region)) > min_area:
            triples.append(TripleRegion((a, b, c), tuple(region)))

    ties = []
    for v, joint in enumerate(ribbon.joints):
        if not joint.folded:
            continue
        s_in, s_out = (v - 1) % n, v
        for k in range(n):
            if k in (s_in, s_out):
                continue
            if (min(k, s_in), max(k, s_in)) not in by_pair or \
                    (min(k, s_out), max(k, s_out)) not in by_pair:
                continue
            if _crosses_interior(joint.in_left, joint.in_right, strips[k], tol):
                ties.append(FoldTie(k, v))
    return OverlapStructure(ribbon, constraints, triples, ties)


def _crosses_interior(p: Point, q: Point, poly, tol: float) -> bool:
    # the clipped piece must be longer than tol and its midpoint inside by tol
    win = geo.segment_window(p, q, poly)
    if win is None:
        return False
    t0, t1 = win
    d = geo.sub(q, p)
    if (t1 - t0) * geo.norm(d) <= tol:
        return False
    mid = (p[0] + 0.5 * (t0 + t1) * d[0], p[1] + 0.5 * (t0 + t1) * d[1])
    return geo.point_in_convex(mid, poly, -tol)


def overlap_constraints(d: KnotDiagram, w: float, tol: float = DEFAULT_TOL) -> list[OverlapConstraint]:
    return overlap_structure(d, w, tol).constraints


# -- constraint solving -----------------------------------------------------
#
# Variables are the overlapping pairs; x[p] = +1 means strip_a above strip_b.
# Constraints are tuples:
#   ("force", p, value)            x[p] == value
#   ("tie", p, q, parity)          x[p] == parity * x[q]
#   ("triple", p_ab, p_bc, p_ac)   not (x_ab == x_bc == -x_ac)


def _solve(nvars: int, constraints) -> Optional[list[int]]:
    parent = list(range(nvars))
    par = [1] * nvars

    def find(x):
        if parent[x] == x:
            return x, 1
        r, p = find(parent[x])
        parent[x] = r
        par[x] *= p
        return r, par[x]

    forced: dict[int, int] = {}
    triples = []
    for con in constraints:
        if con[0] == "tie":
            _, p, q, parity = con
            rp, pp = find(p)
            rq, pq = find(q)
            if rp == rq:
                if pp * pq != parity:
                    return None
            else:
                parent[rp] = rq
                par[rp] = pp * pq * parity
        elif con[0] == "triple":
            triples.append(con[1:])
    for con in constraints:
        if con[0] == "force":
            _, p, value = con
            r, pp = find(p)
            want = value * pp
            if forced.get(r, want) != want:
                return None
            forced[r] = want

    roots = sorted({find(x)[0] for x in range(nvars)})
    lit = [find(x) for x in range(nvars)]
    value: dict[int, int] = dict(forced)
    watch: dict[int, list] = {r: [] for r in roots}
    for t in triples:
        for x in t:
            watch[lit[x][0]].append(t)

    def ok(t) -> bool:
        vals = []
        for x in t:
            r, p = lit[x]
            if r not in value:
                return True
            vals.append(value[r] * p)
        ab, bc, ac = vals
        return not (ab == bc == -ac)

    if not all(ok(t) for t in triples):
        return None
    free = [r for r in roots if r not in forced]

    def search(k: int) -> bool:
        if k == len(free):
            return True
        r = free[k]
        for v in (1, -1):
            value[r] = v
            if all(ok(t) for t in watch[r]) and search(k + 1):
                return True
        del value[r]
        return False

    if not search(0):
        return None
    return [value[lit[x][0]] * lit[x][1] for x in range(nvars)]


def _minimal_core(nvars: int, constraints) -> list[int]:
    """Indices of a minimal unsatisfiable subset (deletion filter)."""
    core = list(range(len(constraints)))
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        if _solve(nvars, [constraints[j] for j in trial]) is None:
            core = trial
        else:
            i += 1
    return core


def is_allowed(d: KnotDiagram, w: float, tol: float = DEFAULT_TOL,
               explain: bool = True) -> AllowedCertificate:
    """Decide whether width ``w`` gives an allowed folded ribbon.

    With ``explain=False`` a disallowed answer skips the (quadratic)
    minimal-conflict extraction.
    """
    try:
        st = overlap_structure(d, w, tol)
    except WidthError as exc:
        return AllowedCertificate(False, conflict=[], reason=str(exc))

    index = {c.pair: k for k, c in enumerate(st.constraints)}
    cons = []
    for k, c in enumerate(st.constraints):
        if c.required != Order.UNCONSTRAINED:
            cons.append(("force", k, int(c.required)))
    n = d.n
    for tie in st.ties:
        s_in, s_out = (tie.vertex - 1) % n, tie.vertex
        k = tie.strip
        p = index[(min(k, s_in), max(k, s_in))]
        q = index[(min(k, s_out), max(k, s_out))]
        # above(k, j) = x[pair] if k < j else -x[pair]
        sp = 1 if k < s_in else -1
        sq = 1 if k < s_out else -1
        cons.append(("tie", p, q, sp * sq, tie))
    for tri in st.triples:
        a, b, c = tri.strips
        cons.append(("triple", index[(a, b)], index[(b, c)], index[(a, c)], tri))

    plain = [con[:4] if con[0] != "force" else con for con in cons]
    sol = _solve(len(st.constraints), plain)
    if sol is not None:
        assignment = {c.pair: sol[k] for k, c in enumerate(st.constraints)}
        return AllowedCertificate(True, order_assignment=assignment, structure=st)

    cert = AllowedCertificate(False, conflict=[], structure=st,
                              reason="no consistent above/below assignment")
    if explain:
        for j in _minimal_core(len(st.constraints), plain):
            con = cons[j]
            if con[0] == "force":
                cert.conflict.append(st.constraints[con[1]])
            elif con[0] == "tie":
                cert.conflict_ties.append(con[4])
            else:
                cert.conflict_regions.append(con[4])
        # relations along the cycle, even when not forced
        for tri in cert.conflict_regions:
            a, b, c = tri.strips
            for pair in ((a, b), (b, c), (a, c)):
                con = st.constraints[index[pair]]
                if con not in cert.conflict:
                    cert.conflict.append(con)
    return cert


# ---------------------------------------------------------------------------
# widths


def _builds(d: KnotDiagram, w: float) -> bool:
    try:
        build_ribbon(d, w)
    except WidthError:
        return False
    return True


def structural_limit(d: KnotDiagram, rel_tol: float = 1e-15) -> float:
    """Smallest width at which some strip turns inside out (``inf`` if none).

    Found by doubling from ``length/n`` (capped at ``1e6 * length``) and then
    bisecting; strip side lengths are affine in ``w`` so failure is monotone.
    """
    L = diagram_length(d)
    w = L / d.n
    cap = 1e6 * L
    if _builds(d, w):
        lo = w
        while _builds(d, w):
            lo = w
            w *= 2.0
            if w > cap:
                return math.inf
        hi = w
    else:
        hi = w
        while not _builds(d, w):
            hi = w
            w *= 0.5
            if w < 1e-300:
                raise WidthError("no positive width builds a ribbon")
        lo = w
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _builds(d, mid):
            lo = mid
        else:
            hi = mid
    return hi


def max_width(d: KnotDiagram, tol: float = DEFAULT_TOL, grid: int = 100) -> float:
    """Width of ``d`` with its folding information: the widest allowed ribbon.

    ``tol`` is relative to the diagram length.  The allowed set is sampled on
    ``grid`` widths below the structural limit and must be an interval;
    bisection then refines its upper end.
    """
    rep = validate_diagram(d)
    if not rep.ok:
        raise RibbonError("invalid diagram: " + "; ".join(i.message for i in rep.issues))
    L = diagram_length(d)
    dn = d.scaled(1.0 / L)
    eps = tol

    def allowed(w: float) -> bool:
        return is_allowed(dn, w, eps, explain=False).allowed

    w_hi = structural_limit(dn)
    if math.isinf(w_hi):
        w_hi = 1e6
    ws = [w_hi * k / (grid + 1) for k in range(1, grid + 1)]
    flags = [allowed(w) for w in ws]
    if not flags[0]:
        lo = ws[0]
        for _ in range(200):
            lo *= 0.5
            if allowed(lo):
                break
        else:
            raise RibbonError("no allowed width found")
        hi = ws[0]
    else:
        last = max(k for k, f in enumerate(flags) if f)
        if not all(flags[: last + 1]) or any(flags[last + 1:]):
            raise AllowedSetError("allowed set not an interval")
        if any(not f for f in flags):
            first_bad = flags.index(False)
            if any(flags[first_bad:]):
                raise AllowedSetError("allowed set not an interval")
        lo = ws[last]
        hi = ws[last + 1] if last + 1 < len(ws) else w_hi
    # bracket well below tol so rescaled copies land on the same answer
    while hi - lo > 1e-3 * eps:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if allowed(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi) * L


def ribbonlength_at(d: KnotDiagram, w: float) -> float:
    if not w > 0:
        raise ValueError("width must be positive")
    return diagram_length(d) / w


def ribbonlength(d: KnotDiagram, tol: float = DEFAULT_TOL, grid: int = 100) -> float:
    return diagram_length(d) / max_width(d, tol, grid)
