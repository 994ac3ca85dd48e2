"""Small worked datasets mirroring the figures' set-ups.

The figures themselves are not machine-readable; these are concrete
stand-ins with the same shape (documented per function).
"""
from __future__ import annotations

from fractions import Fraction

from .complex import SimplicialComplex
from .mapper import IndexedCover, Interval, Lens, PointCloud, SingleLinkage

_CIRCLE_PARAMS = [0, Fraction(1, 5), Fraction(1, 2), 1, 2, 5, Fraction(-1, 5), Fraction(-1, 2), -1, -2, -5]


def circle_points() -> PointCloud:
    """Twelve exact rational points on the unit circle (rational parametrization)."""
    pts = []
    for t in map(Fraction, _CIRCLE_PARAMS):
        pts.append(((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    pts.append((Fraction(-1), Fraction(0)))
    return PointCloud.from_rows(pts)


def height_lens() -> Lens:
    return Lens("projection", axis=1)


def height_cover() -> IndexedCover:
    """Five overlapping closed intervals on the height axis."""
    bounds = [("-1", "-7/10"), ("-9/10", "-3/10"), ("-2/5", "2/5"), ("3/10", "9/10"), ("7/10", "1")]
    return IndexedCover(tuple(Interval(a, b) for a, b in bounds))


def height_clustering() -> SingleLinkage:
    return SingleLinkage(Fraction(7, 10))


def seven_vertex_graph() -> SimplicialComplex:
    """Seven vertices, six edges, one isolated vertex (6)."""
    return SimplicialComplex.graph(range(7), [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5)])


def eight_points() -> PointCloud:
    """x1..x8 in the plane."""
    rows = [(0, 0), (1, 2), (3, 1), (2, 4), (5, 3), (4, 0), (6, 5), (7, 2)]
    return PointCloud({i + 1: r for i, r in enumerate(rows)})
