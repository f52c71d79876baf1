import math

import numpy as np
import pytest
from hypothesis import strategies as st

from ribbonknots.bounds import regular_ngon_diagram


def random_triangle(rng, min_area_ratio=1e-3):
    """Uniform vertices in the unit square, rejecting slivers."""
    while True:
        pts = rng.uniform(-1.0, 1.0, size=(3, 2))
        a, b, c = pts
        area = 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        perim = sum(np.linalg.norm(pts[i] - pts[(i + 1) % 3]) for i in range(3))
        if area > min_area_ratio * perim * perim:
            return [tuple(map(float, p)) for p in pts]


coord = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)


@st.composite
def triangles(draw):
    pts = [(draw(coord), draw(coord)) for _ in range(3)]
    (ax, ay), (bx, by), (cx, cy) = pts
    area = 0.5 * abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    perim = sum(math.dist(pts[i], pts[(i + 1) % 3]) for i in range(3))
    from hypothesis import assume
    assume(perim > 1e-3 and area > 1e-2 * perim * perim)
    return pts


@pytest.fixture
def square():
    return regular_ngon_diagram(4)


@pytest.fixture
def triangle():
    return regular_ngon_diagram(3)


# one line per acceptance criterion, echoed again in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(':'))):
            terminalreporter.write_line(line)
