"""Exact planar predicates over integer coordinates.

Every test below is decided by the sign of a 2x2 integer cross product,
so there is no rounding anywhere.  Coordinates are required to fit in a
signed 32-bit range (checked at point-set construction) so the products
stay within 64 bits on any backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

LEFT = 1
COLLINEAR = 0
RIGHT = -1

# |x|, |y| must stay strictly below this bound.
COORD_LIMIT = 2**31


@dataclass(frozen=True, order=True)
class Point:
    """A labelled point; `id` is its index in the owning point set."""

    id: int
    x: int
    y: int


def cross(p: Point, q: Point, r: Point) -> int:
    """Twice the signed area of triangle (p, q, r); >0 iff r lies left of p->q."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orientation(p: Point, q: Point, r: Point) -> int:
    """LEFT, RIGHT or COLLINEAR for the turn p -> q -> r."""
    c = cross(p, q, r)
    if c > 0:
        return LEFT
    if c < 0:
        return RIGHT
    return COLLINEAR


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff open segments ab and cd share an interior point.

    Proper crossings only: touching at an endpoint, T-junctions and
    collinear overlap all report False.
    """
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def is_strictly_convex_quad(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff a, b, c, d in this cyclic order form a strictly convex quadrilateral.

    All four consecutive turns must have the same nonzero orientation;
    any collinear triple fails.
    """
    ring = (a, b, c, d)
    first = orientation(ring[0], ring[1], ring[2])
    if first == COLLINEAR:
        return False
    for i in (1, 2, 3):
        p, q, r = ring[i], ring[(i + 1) % 4], ring[(i + 2) % 4]
        if orientation(p, q, r) != first:
            return False
    return True


def triangle_area2(p: Point, q: Point, r: Point) -> int:
    """Twice the unsigned area of triangle (p, q, r)."""
    return abs(cross(p, q, r))


def polygon_area2(ring: Sequence[Point]) -> int:
    """Twice the signed shoelace area of a polygon; positive for ccw order."""
    total = 0
    for i, p in enumerate(ring):
        q = ring[(i + 1) % len(ring)]
        total += p.x * q.y - q.x * p.y
    return total


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Strict convex hull in ccw order; collinear boundary points are dropped.

    Returns fewer than 3 points when the input is degenerate (all collinear).
    """
    pts = sorted(points, key=lambda p: (p.x, p.y))
    if len(pts) < 3:
        return pts

    def chain(seq: list[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # all points collinear
        return hull[:2] if len(hull) >= 2 else hull
    return hull


def hull_boundary_chain(points: Sequence[Point]) -> list[Point] | None:
    """All points on the convex hull boundary, in ccw order.

    Unlike convex_hull this keeps points that lie strictly inside a hull
    edge, inserted along that edge.  Returns None for degenerate input.
    """
    hull = convex_hull(points)
    if len(hull) < 3:
        return None
    hull_ids = {p.id for p in hull}
    chain: list[Point] = []
    for i, u in enumerate(hull):
        v = hull[(i + 1) % len(hull)]
        on_edge = []
        for w in points:
            if w.id in hull_ids or orientation(u, v, w) != COLLINEAR:
                continue
            t = (w.x - u.x) * (v.x - u.x) + (w.y - u.y) * (v.y - u.y)
            span = (v.x - u.x) ** 2 + (v.y - u.y) ** 2
            if 0 < t < span:
                on_edge.append((t, w))
        chain.append(u)
        chain.extend(w for _, w in sorted(on_edge))
    return chain
