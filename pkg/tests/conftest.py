import random
from fractions import Fraction

import pytest

from lagpoly import PolygonalCurve


def _cross(o, a, b):
    return ((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def random_convex_polygon(rng: random.Random) -> PolygonalCurve:
    """Convex hull of random integer points, as an exact rational polygon."""
    while True:
        pts = sorted({(rng.randint(-9, 9), rng.randint(-9, 9))
                      for _ in range(10)})
        if len(pts) < 3:
            continue
        lower, upper = [], []
        for p in pts:
            while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
                lower.pop()
            lower.append(p)
        for p in reversed(pts):
            while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
                upper.pop()
            upper.append(p)
        hull = lower[:-1] + upper[:-1]
        if len(hull) >= 3:
            return PolygonalCurve([(Fraction(x), Fraction(y))
                                   for x, y in hull], closed=True)


@pytest.fixture
def rng():
    return random.Random(0)
