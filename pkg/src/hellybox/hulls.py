"""Exact convex-hull membership in dimensions 1 to 3."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .exact import convex_hull2, on_segment, orientation


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _rank(vectors) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def in_convex_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """Closed membership of ``point`` in conv(points), exactly, for d <= 3."""
    pts = sorted(set(tuple(p) for p in points))
    point = tuple(point)
    if not pts:
        return False
    d = len(point)
    if d > 3:
        raise DomainError("hull membership is implemented for d <= 3")
    base = pts[0]
    diffs = [_sub(p, base) for p in pts[1:]]
    k = _rank(diffs) if diffs else 0
    if k == 0:
        return point == base
    if _rank(diffs + [_sub(point, base)]) > k:
        return False
    if k == 1:
        # collinear: compare along the first coordinate that varies
        axis = next(i for i in range(d) if any(p[i] != base[i] for p in pts))
        lo = min(p[axis] for p in pts)
        hi = max(p[axis] for p in pts)
        return lo <= point[axis] <= hi
    if k == 2:
        # planar set: project onto a coordinate pair injective on its plane
        for i, j in itertools.combinations(range(d), 2):
            if _rank([(v[i], v[j]) for v in diffs]) == 2:
                proj = [(p[i], p[j]) for p in pts]
                q = (point[i], point[j])
                hull = convex_hull2(proj)
                n = len(hull)
                return all(orientation(hull[m - 1], hull[m], q) >= 0 for m in range(n))
        raise AssertionError("rank-2 set without an injective coordinate projection")
    # full-dimensional in R^3: facets from all supporting triples
    for a, b, c in itertools.combinations(pts, 3):
        n = _cross(_sub(b, a), _sub(c, a))
        if n == (0, 0, 0):
            continue
        sides = [_dot(n, _sub(p, a)) for p in pts]
        if all(s <= 0 for s in sides):
            if _dot(n, _sub(point, a)) > 0:
                return False
        elif all(s >= 0 for s in sides):
            if _dot(n, _sub(point, a)) < 0:
                return False
    return True


def closed_polygon_contains(polygon, p) -> bool:
    """Closed containment in a ccw convex polygon given by its vertices (any size)."""
    n = len(polygon)
    if n == 1:
        return tuple(p) == tuple(polygon[0])
    if n == 2:
        return on_segment(p, polygon[0], polygon[1])
    return all(orientation(polygon[i - 1], polygon[i], p) >= 0 for i in range(n))
