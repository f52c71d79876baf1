"""Ribbon linking number, topological type and the ribbon equivalences."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from typing import Optional

from . import geometry as geo
from .diagram import (DEFAULT_TOL, FoldType, KnotDiagram, diagram_length,
                      fold_angle)
from .errors import RibbonError
from .ribbon import is_allowed, max_width


class TopoType(str, enum.Enum):
    ANNULUS = "annulus"
    MOBIUS = "mobius"


class Equivalence(str, enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "Unknown"


def _sign(x: float) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    raise RibbonError("strands are parallel at a crossing")


def strand_sign(over_dir, under_dir) -> int:
    """Right-handed crossing sign: +1 when the under strand points to the
    left of the over strand."""
    return _sign(geo.cross(over_dir, under_dir))


def crossing_sign(d: KnotDiagram, k: int) -> int:
    c = d.crossings[k]
    o1, o2 = d.edge(c.over_edge)
    u1, u2 = d.edge(c.under_edge)
    return strand_sign(geo.sub(o2, o1), geo.sub(u2, u1))


def fold_contribution(d: KnotDiagram, i: int) -> int:
    """+1 for left underfolds and right overfolds, -1 for the other two."""
    angle = fold_angle(d, i)
    if angle.straight:
        raise RibbonError(f"vertex {i + 1} is straight and has no fold")
    under = d.folds[i] is FoldType.UNDER
    return angle.sign if under else -angle.sign


def ribbon_linking_number(d: KnotDiagram) -> int:
    total = 0
    for i in range(d.n):
        if not fold_angle(d, i).straight:
            total += fold_contribution(d, i)
    for k in range(len(d.crossings)):
        total += 2 * crossing_sign(d, k)
    return total


@dataclass
class GeometricLinking:
    width: float
    total: int
    # half the signed crossing count with each boundary component separately
    per_component: list[float]


def geometric_linking_number(d: KnotDiagram, w: Optional[float] = None,
                             tol: float = DEFAULT_TOL) -> GeometricLinking:
    """Linking number of the centre line with the ribbon boundary, counted
    from the actual crossings between the two curves at width ``w``.

    The above/below relation at each such crossing comes from the order
    assignment that certifies ``w`` as allowed.  ``w`` defaults to a tenth
    of the maximal width.
    """
    if w is None:
        w = max_width(d, tol) / 10.0
    cert = is_allowed(d, w, tol * diagram_length(d))
    if not cert.allowed:
        raise RibbonError(f"width {w:g} is not allowed")
    ribbon = cert.structure.ribbon
    edges = d.edges()
    comps = []
    for pts, sides in zip(ribbon.boundaries, ribbon.boundary_sides):
        s = 0
        m = len(pts)
        for j in range(m):
            p, q = pts[j], pts[(j + 1) % m]
            b = sides[j][0]
            if p == q:
                continue
            bdir = geo.sub(q, p)
            for a, (k1, k2) in enumerate(edges):
                if a == b:
                    continue
                hit = geo.segment_intersection(k1, k2, p, q)
                if hit is None:
                    continue
                t_k, t_b = hit
                if not (0.0 < t_k < 1.0 and 0.0 < t_b < 1.0):
                    continue
                kdir = geo.sub(k2, k1)
                if cert.above(a, b):
                    s += strand_sign(kdir, bdir)
                else:
                    s += strand_sign(bdir, kdir)
        comps.append(s)
    total = sum(comps)
    if total % 2:
        raise RibbonError("odd crossing sum between a closed curve pair")
    return GeometricLinking(w, total // 2, [c / 2 for c in comps])


def fold_count(d: KnotDiagram) -> int:
    return sum(1 for i in range(d.n) if not fold_angle(d, i).straight)


def topological_type(d: KnotDiagram) -> TopoType:
    """Annulus for an even number of folds, Moebius band for odd.

    Every vertex of a diagram without straight vertices is a fold, so this is
    the parity of the edge count.
    """
    return TopoType.ANNULUS if fold_count(d) % 2 == 0 else TopoType.MOBIUS


@dataclass
class InvariantReport:
    name: Optional[str]
    knot_type: Optional[str]
    linking_number: int
    topo_type: TopoType
    length: float
    max_width: float
    ribbonlength: float

    def to_dict(self) -> dict:
        out = asdict(self)
        out["topo_type"] = self.topo_type.value
        return out


def invariant_report(d: KnotDiagram, tol: float = DEFAULT_TOL) -> InvariantReport:
    L = diagram_length(d)
    w = max_width(d, tol)
    return InvariantReport(d.name, d.knot_type, ribbon_linking_number(d),
                           topological_type(d), L, w, L / w)


def _label_logic(a: KnotDiagram, b: KnotDiagram, same_extra: bool) -> Equivalence:
    if not same_extra:
        return Equivalence.NOT_EQUIVALENT
    if a.knot_type is None or b.knot_type is None:
        return Equivalence.UNKNOWN
    if a.knot_type != b.knot_type:
        return Equivalence.NOT_EQUIVALENT
    return Equivalence.EQUIVALENT


def link_equivalent(a: KnotDiagram, b: KnotDiagram) -> Equivalence:
    return _label_logic(a, b, ribbon_linking_number(a) == ribbon_linking_number(b))


def topologically_equivalent(a: KnotDiagram, b: KnotDiagram) -> Equivalence:
    return _label_logic(a, b, topological_type(a) == topological_type(b))


def diagram_equivalent(a: KnotDiagram, b: KnotDiagram) -> Equivalence:
    return _label_logic(a, b, True)
