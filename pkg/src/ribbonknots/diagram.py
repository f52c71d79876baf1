"""Oriented polygonal knot diagrams with crossing and folding information.

Indices are 0-based in Python; the JSON file format uses 1-based edge
indices so that files read like the usual ``v_1 .. v_n`` labelling.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from . import geometry as geo
from .errors import DegenerateFoldError
from .geometry import Point

DEFAULT_TOL = 1e-9

# |sin| of the turning angle below which a vertex counts as straight.
STRAIGHT_EPS = 1e-12


class FoldType(str, enum.Enum):
    OVER = "over"
    UNDER = "under"

    def toggled(self) -> "FoldType":
        return FoldType.UNDER if self is FoldType.OVER else FoldType.OVER


class HandedFold(str, enum.Enum):
    LEFT_OVER = "left-over"
    RIGHT_OVER = "right-over"
    LEFT_UNDER = "left-under"
    RIGHT_UNDER = "right-under"


@dataclass(frozen=True)
class FoldAngle:
    """Interior angle between consecutive edges plus its turn direction.

    ``sign`` is +1 for a left turn, -1 for a right turn and None when the
    vertex is straight (``magnitude == pi``).
    """

    magnitude: float
    sign: Optional[int]

    @property
    def straight(self) -> bool:
        return self.sign is None

    @property
    def signed(self) -> float:
        return 0.0 if self.sign is None else self.sign * self.magnitude

    @property
    def turning(self) -> float:
        """Signed exterior (turning) angle, ``sign * (pi - magnitude)``."""
        return 0.0 if self.sign is None else self.sign * (math.pi - self.magnitude)


@dataclass(frozen=True)
class FoldingInfo:
    """One over/under fold type per vertex."""

    types: tuple[FoldType, ...]

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(FoldType(t) for t in self.types))

    def __len__(self) -> int:
        return len(self.types)

    def __getitem__(self, i: int) -> FoldType:
        return self.types[i]

    def __iter__(self):
        return iter(self.types)

    @classmethod
    def all_same(cls, n: int, kind: Union[FoldType, str] = FoldType.OVER) -> "FoldingInfo":
        return cls((FoldType(kind),) * n)

    @classmethod
    def one_different(cls, n: int, kind: Union[FoldType, str] = FoldType.OVER,
                      index: int = 0) -> "FoldingInfo":
        kind = FoldType(kind)
        types = [kind] * n
        types[index] = kind.toggled()
        return cls(tuple(types))

    def toggled(self) -> "FoldingInfo":
        return FoldingInfo(tuple(t.toggled() for t in self.types))

    def handed(self, diagram: "KnotDiagram", i: int) -> HandedFold:
        """Left/right over/underfold at vertex ``i``; straight vertices raise."""
        angle = fold_angle(diagram, i)
        if angle.straight:
            raise DegenerateFoldError(f"vertex {i + 1} is straight and has no handed fold type")
        left = angle.sign > 0
        if self.types[i] is FoldType.OVER:
            return HandedFold.LEFT_OVER if left else HandedFold.RIGHT_OVER
        return HandedFold.LEFT_UNDER if left else HandedFold.RIGHT_UNDER


@dataclass(frozen=True)
class Crossing:
    edge_a: int
    edge_b: int
    over: str = "a"
    point: Optional[Point] = None

    def __post_init__(self):
        if self.over not in ("a", "b"):
            raise ValueError(f"crossing 'over' must be 'a' or 'b', got {self.over!r}")

    @property
    def over_edge(self) -> int:
        return self.edge_a if self.over == "a" else self.edge_b

    @property
    def under_edge(self) -> int:
        return self.edge_b if self.over == "a" else self.edge_a


@dataclass(frozen=True)
class KnotDiagram:
    vertices: tuple[Point, ...]
    folds: FoldingInfo
    crossings: tuple[Crossing, ...] = ()
    knot_type: Optional[str] = None
    name: Optional[str] = None

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        folds = self.folds
        if not isinstance(folds, FoldingInfo):
            folds = FoldingInfo(tuple(folds))
        object.__setattr__(self, "folds", folds)
        crossings = []
        for c in self.crossings:
            if c.point is None:
                c = replace(c, point=_edge_crossing_point(verts, c.edge_a, c.edge_b))
            crossings.append(c)
        object.__setattr__(self, "crossings", tuple(crossings))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point, Point]:
        n = len(self.vertices)
        return self.vertices[i % n], self.vertices[(i + 1) % n]

    def edges(self) -> list[tuple[Point, Point]]:
        return [self.edge(i) for i in range(self.n)]

    def with_folds(self, folds: Union[FoldingInfo, Iterable]) -> "KnotDiagram":
        if not isinstance(folds, FoldingInfo):
            folds = FoldingInfo(tuple(folds))
        return replace(self, folds=folds)

    def with_vertices(self, vertices: Sequence[Point]) -> "KnotDiagram":
        crossings = tuple(replace(c, point=None) for c in self.crossings)
        return replace(self, vertices=tuple(vertices), crossings=crossings)

    def scaled(self, factor: float) -> "KnotDiagram":
        return self.with_vertices([(x * factor, y * factor) for x, y in self.vertices])


def _edge_crossing_point(verts, a, b) -> Optional[Point]:
    n = len(verts)
    if not (0 <= a < n and 0 <= b < n):
        return None
    p1, p2 = verts[a], verts[(a + 1) % n]
    q1, q2 = verts[b], verts[(b + 1) % n]
    hit = geo.segment_intersection(p1, p2, q1, q2)
    if hit is None:
        return None
    s, _ = hit
    return (p1[0] + s * (p2[0] - p1[0]), p1[1] + s * (p2[1] - p1[1]))


def are_adjacent(n: int, a: int, b: int) -> bool:
    return a == b or (a + 1) % n == b or (b + 1) % n == a


# ---------------------------------------------------------------------------
# fold angles and lengths


def fold_angle(d: KnotDiagram, i: int) -> FoldAngle:
    """Angle at ``v_i`` between ``e_{i-1}`` and ``e_i``, signed by turn direction."""
    n = d.n
    prev = d.vertices[(i - 1) % n]
    here = d.vertices[i % n]
    nxt = d.vertices[(i + 1) % n]
    u_in = geo.sub(here, prev)
    u_out = geo.sub(nxt, here)
    L_in, L_out = geo.norm(u_in), geo.norm(u_out)
    if L_in == 0.0 or L_out == 0.0:
        raise DegenerateFoldError(f"zero-length edge at vertex {i % n + 1}")
    u_in = (u_in[0] / L_in, u_in[1] / L_in)
    u_out = (u_out[0] / L_out, u_out[1] / L_out)
    s = geo.cross(u_in, u_out)
    c = geo.dot(u_in, u_out)
    if abs(s) <= STRAIGHT_EPS:
        if c > 0:
            return FoldAngle(math.pi, None)
        raise DegenerateFoldError(f"degenerate fold at vertex {i % n + 1}: edge doubles back")
    theta = math.atan2(abs(s), -c)
    return FoldAngle(theta, 1 if s > 0 else -1)


def fold_angles(d: KnotDiagram) -> list[FoldAngle]:
    return [fold_angle(d, i) for i in range(d.n)]


def diagram_length(d: KnotDiagram) -> float:
    return math.fsum(geo.dist(a, b) for a, b in d.edges())


def reverse_orientation(d: KnotDiagram) -> KnotDiagram:
    """Traverse the diagram backwards, keeping ``v_1`` first.

    New vertex ``j`` is old vertex ``-j``; new edge ``j`` is old edge
    ``-j-1`` reversed. Fold types flip because the roles of the incoming
    and outgoing strip swap.
    """
    n = d.n
    verts = [d.vertices[(-j) % n] for j in range(n)]
    folds = FoldingInfo(tuple(d.folds[(-j) % n].toggled() for j in range(n)))
    crossings = []
    for c in d.crossings:
        a, b = (-c.edge_a - 1) % n, (-c.edge_b - 1) % n
        over = c.over_edge
        over_new = (-over - 1) % n
        lo, hi = min(a, b), max(a, b)
        crossings.append(Crossing(lo, hi, "a" if over_new == lo else "b"))
    crossings.sort(key=lambda c: (c.edge_a, c.edge_b))
    return KnotDiagram(tuple(verts), folds, tuple(crossings), d.knot_type, d.name)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Issue:
    code: str
    message: str


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)
    recomputed: list[tuple[int, int, Point]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def codes(self) -> list[str]:
        return [i.code for i in self.issues]

    def add(self, code: str, message: str) -> None:
        self.issues.append(Issue(code, message))


def find_crossings(d: KnotDiagram, tol: float = DEFAULT_TOL,
                   report: Optional[ValidationReport] = None) -> list[tuple[int, int, Point]]:
    """All transverse double points between non-adjacent edges, by brute force.

    Non-regular contacts (touching, overlap, vertex on an edge) are recorded
    in ``report`` when one is given and are not returned as crossings.
    """
    n = d.n
    found = []
    for a in range(n):
        p1, p2 = d.edge(a)
        La = geo.dist(p1, p2)
        if La == 0.0:
            continue
        for b in range(a + 1, n):
            if are_adjacent(n, a, b):
                continue
            q1, q2 = d.edge(b)
            Lb = geo.dist(q1, q2)
            if Lb == 0.0:
                continue
            r = geo.sub(p2, p1)
            s_ = geo.sub(q2, q1)
            denom = geo.cross(r, s_)
            if abs(denom) <= STRAIGHT_EPS * La * Lb:
                # parallel: only a problem if collinear and overlapping
                if abs(geo.cross(r, geo.sub(q1, p1))) / La <= tol:
                    t0 = geo.dot(geo.sub(q1, p1), r) / La
                    t1 = geo.dot(geo.sub(q2, p1), r) / La
                    if max(t0, t1) >= -tol and min(t0, t1) <= La + tol and report is not None:
                        report.add("non-transverse",
                                   f"edges {a + 1} and {b + 1} overlap collinearly")
                continue
            # endpoint contacts
            touching = False
            for v, (x1, x2), other in ((p1, (q1, q2), b), (p2, (q1, q2), b),
                                        (q1, (p1, p2), a), (q2, (p1, p2), a)):
                if geo.point_segment_distance(v, x1, x2) <= tol:
                    touching = True
            if touching:
                if report is not None:
                    report.add("vertex-on-edge",
                               f"edges {a + 1} and {b + 1} meet at or near a vertex")
                continue
            hit = geo.segment_intersection(p1, p2, q1, q2)
            if hit is None:
                continue
            s, t = hit
            if 0.0 < s < 1.0 and 0.0 < t < 1.0:
                found.append((a, b, (p1[0] + s * r[0], p1[1] + s * r[1])))
    return found


def validate_diagram(d: KnotDiagram, tol: float = DEFAULT_TOL) -> ValidationReport:
    rep = ValidationReport()
    n = d.n
    if n < 2:
        rep.add("too-few-vertices", "a diagram needs at least two vertices")
        return rep
    if len(d.folds) != n:
        rep.add("fold-count", f"{len(d.folds)} fold types for {n} vertices")
    for i in range(n):
        a, b = d.edge(i)
        if geo.dist(a, b) <= tol:
            rep.add("zero-length-edge", f"edge {i + 1} has zero length")
    if rep.issues:
        return rep
    for i in range(n):
        try:
            fold_angle(d, i)
        except DegenerateFoldError:
            rep.add("degenerate-fold", f"fold angle 0 at vertex {i + 1}")

    found = find_crossings(d, tol, rep)
    rep.recomputed = found
    # triple points: two crossings at the same place
    for i in range(len(found)):
        for j in range(i + 1, len(found)):
            if geo.dist(found[i][2], found[j][2]) <= tol:
                rep.add("triple-point",
                        f"crossings of edges {found[i][0] + 1}/{found[i][1] + 1} and "
                        f"{found[j][0] + 1}/{found[j][1] + 1} coincide")

    actual = {(a, b) for a, b, _ in found}
    declared: dict[tuple[int, int], int] = {}
    for k, c in enumerate(d.crossings):
        if not (0 <= c.edge_a < n and 0 <= c.edge_b < n) or c.edge_a >= c.edge_b:
            rep.add("bad-crossing-record",
                    f"crossing {k + 1} must reference edges a < b in 1..{n}")
            continue
        if are_adjacent(n, c.edge_a, c.edge_b):
            rep.add("bad-crossing-record",
                    f"crossing {k + 1} joins adjacent edges {c.edge_a + 1} and {c.edge_b + 1}")
            continue
        key = (c.edge_a, c.edge_b)
        if key in declared:
            rep.add("extra-crossing", f"crossing of edges {key[0] + 1}/{key[1] + 1} listed twice")
            continue
        declared[key] = k
        if key not in actual:
            rep.add("extra-crossing",
                    f"edges {key[0] + 1} and {key[1] + 1} do not cross")
    for key in sorted(actual - set(declared)):
        rep.add("missing-crossing",
                f"edges {key[0] + 1} and {key[1] + 1} cross but no record is given")
    return rep


# ---------------------------------------------------------------------------
# JSON


def diagram_to_dict(d: KnotDiagram) -> dict:
    out: dict = {}
    if d.name is not None:
        out["name"] = d.name
    if d.knot_type is not None:
        out["knot_type"] = d.knot_type
    out["vertices"] = [[x, y] for x, y in d.vertices]
    out["folds"] = [f.value for f in d.folds]
    out["crossings"] = [
        {"edge_a": c.edge_a + 1, "edge_b": c.edge_b + 1, "over": c.over}
        for c in d.crossings
    ]
    return out


def diagram_from_dict(data: dict) -> KnotDiagram:
    try:
        verts = tuple((float(x), float(y)) for x, y in data["vertices"])
        folds = FoldingInfo(tuple(FoldType(f) for f in data["folds"]))
        crossings = tuple(
            Crossing(int(c["edge_a"]) - 1, int(c["edge_b"]) - 1, c.get("over", "a"))
            for c in data.get("crossings", [])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed diagram data: {exc}") from exc
    return KnotDiagram(verts, folds, crossings, data.get("knot_type"), data.get("name"))


def dumps_diagram(d: KnotDiagram) -> str:
    return _dumps_compact(diagram_to_dict(d)) + "\n"


def _dumps_compact(obj: dict) -> str:
    # one vertex / crossing per line; floats use repr (shortest round-trip form)
    lines = ["{"]
    items = list(obj.items())
    for k, (key, val) in enumerate(items):
        comma = "," if k < len(items) - 1 else ""
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            lines.append(f"  {json.dumps(key)}: [")
            for j, item in enumerate(val):
                c2 = "," if j < len(val) - 1 else ""
                lines.append(f"    {json.dumps(item)}{c2}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val)}{comma}")
    lines.append("}")
    return "\n".join(lines)


def loads_diagram(text: str) -> KnotDiagram:
    return diagram_from_dict(json.loads(text))


def load_diagram(path: Union[str, Path]) -> KnotDiagram:
    return loads_diagram(Path(path).read_text(encoding="utf-8"))


def save_diagram(d: KnotDiagram, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_diagram(d), encoding="utf-8")
