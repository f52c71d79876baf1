import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import LineString, Polygon

from ribbonknots import geometry as geo

from conftest import coord


def _convex(points):
    hull = Polygon(points).convex_hull
    if not isinstance(hull, Polygon) or hull.area < 1e-3:
        return None
    pts = list(hull.exterior.coords)[:-1]
    if geo.polygon_area(pts) < 0:
        pts.reverse()
    return pts


points = st.lists(st.tuples(coord, coord), min_size=3, max_size=7)


@settings(max_examples=200, deadline=None)
@given(points, points)
def test_clip_convex_matches_shapely(a, b):
    pa, pb = _convex(a), _convex(b)
    if pa is None or pb is None:
        return
    ours = geo.clip_convex(pa, pb)
    expect = Polygon(pa).intersection(Polygon(pb)).area
    got = abs(geo.polygon_area(ours)) if len(ours) >= 3 else 0.0
    assert got == pytest.approx(expect, abs=1e-9 * (1 + expect))


@settings(max_examples=200, deadline=None)
@given(st.tuples(coord, coord), st.tuples(coord, coord), points)
def test_clip_segment_matches_shapely(a, b, poly):
    pc = _convex(poly)
    if pc is None or a == b:
        return
    expect = LineString([a, b]).intersection(Polygon(pc)).length
    assert geo.clip_segment_convex(a, b, pc) == pytest.approx(expect, abs=1e-9)


def test_segment_intersection_parameters():
    s, t = geo.segment_intersection((0, 0), (2, 0), (1, -1), (1, 3))
    assert (s, t) == (0.5, 0.25)
    assert geo.segment_intersection((0, 0), (1, 0), (0, 1), (1, 1)) is None
    assert geo.segment_intersection((0, 0), (1, 0), (2, -1), (2, 1)) is None


def test_point_in_convex_ignores_rounding_slivers():
    # the duplicated first vertex forms a zero-length edge with a noisy direction
    poly = [(0.0113, 0.673), (0.0113 + 5e-17, 0.673), (-0.589, 0.327), (0.0113, -0.0196)]
    assert geo.point_in_convex((0.0, 0.0), poly)


def test_clip_merges_coincident_vertices():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    out = geo.clip_convex(sq, [(0, 0), (1, 0), (0, 1)])
    assert len(out) == 3
    assert abs(geo.polygon_area(out)) == pytest.approx(0.5)


def test_polygon_area_and_centroid():
    sq = [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert geo.polygon_area(sq) == 4.0
    assert geo.polygon_area(sq[::-1]) == -4.0
    assert geo.polygon_centroid(sq) == pytest.approx((1.0, 1.0))
    assert geo.left_normal((1.0, 0.0)) == pytest.approx((0.0, 1.0))
    assert geo.point_segment_distance((0, 1), (-1, 0), (1, 0)) == pytest.approx(1.0)
    assert geo.dist((0, 0), (3, 4)) == 5.0
    assert math.isclose(geo.norm(geo.unit((3.0, 4.0))), 1.0)
