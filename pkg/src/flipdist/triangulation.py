"""Triangulations of a fixed planar point set and the edge-flip operation.

A triangulation is stored as a frozen set of vertex triples plus a map
from each edge to the apex vertices of its incident triangles (one apex
for a boundary edge, two for an interior edge).  Flipping an interior
edge whose two triangles form a strictly convex quadrilateral replaces
it with the other diagonal of that quadrilateral; the point set never
changes, so two triangulations compare equal iff their triangle sets do.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .geometry import (
    Point,
    cross,
    hull_boundary_chain,
    is_strictly_convex_quad,
    polygon_area2,
    triangle_area2,
    COORD_LIMIT,
)

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


class InvalidTriangulation(ValueError):
    """The given triangles do not triangulate the point set."""


class InadmissibleFlip(ValueError):
    """Edge absent, on the boundary, or its quadrilateral not strictly convex."""


class PointSetMismatch(ValueError):
    """Two triangulations that must share one point set do not."""


def make_edge(u: int, v: int) -> Edge:
    """Canonical edge: smaller vertex id first."""
    return (u, v) if u < v else (v, u)


def make_triangle(a: int, b: int, c: int) -> Triangle:
    """Canonical triangle: vertex ids sorted ascending."""
    x, y, z = sorted((a, b, c))
    return (x, y, z)


def triangle_edges(t: Triangle) -> tuple[Edge, Edge, Edge]:
    a, b, c = t
    return ((a, b), (a, c), (b, c))


class PointSet:
    """An immutable labelled point set shared by many triangulations.

    Construction validates coordinates (integers within 32-bit range, no
    duplicates, not all collinear) and precomputes everything every
    triangulation of the set has in common: the hull boundary chain, the
    boundary edge set, the triangle/edge counts forced by Euler's formula,
    one bit per point pair for edge-set fingerprints, and a cache of
    convex-quadrilateral verdicts.
    """

    __slots__ = (
        "coords",
        "points",
        "boundary_chain",
        "boundary_edges",
        "hull_size",
        "expected_triangles",
        "expected_edges",
        "hull_area2",
        "_edge_bits",
        "_quad_cache",
    )

    def __init__(self, coords: Iterable[tuple[int, int]]):
        cs = tuple((int(x), int(y)) for x, y in coords)
        if len(cs) < 3:
            raise InvalidTriangulation("need at least 3 points")
        seen: dict[tuple[int, int], int] = {}
        for i, (x, y) in enumerate(cs):
            if not (-COORD_LIMIT < x < COORD_LIMIT and -COORD_LIMIT < y < COORD_LIMIT):
                raise InvalidTriangulation(f"coordinate out of 32-bit range at point {i}: ({x}, {y})")
            if (x, y) in seen:
                raise InvalidTriangulation(f"duplicate point: {i} and {seen[(x, y)]} are both ({x}, {y})")
            seen[(x, y)] = i
        self.coords = cs
        self.points = tuple(Point(i, x, y) for i, (x, y) in enumerate(cs))

        chain = hull_boundary_chain(self.points)
        if chain is None:
            raise InvalidTriangulation("all points are collinear")
        self.boundary_chain = tuple(p.id for p in chain)
        h = len(chain)
        self.boundary_edges = frozenset(
            make_edge(chain[i].id, chain[(i + 1) % h].id) for i in range(h)
        )
        self.hull_size = h
        n = len(cs)
        # Euler counts; h counts every point on the hull boundary, not just corners.
        self.expected_triangles = 2 * n - h - 2
        self.expected_edges = 3 * n - h - 3
        self.hull_area2 = polygon_area2(chain)

        self._edge_bits: dict[Edge, int] = {}
        bit = 1
        for pair in combinations(range(n), 2):
            self._edge_bits[pair] = bit
            bit <<= 1
        self._quad_cache: dict[tuple[int, int, int, int], bool] = {}

    def __len__(self) -> int:
        return len(self.coords)

    def edge_bit(self, e: Edge) -> int:
        return self._edge_bits[e]

    def quad_convex(self, a: int, c: int, b: int, d: int) -> bool:
        """Memoized: is the quadrilateral a, c, b, d (cyclic) strictly convex?"""
        key = (a, c, b, d)
        hit = self._quad_cache.get(key)
        if hit is None:
            pts = self.points
            hit = is_strictly_convex_quad(pts[a], pts[c], pts[b], pts[d])
            self._quad_cache[key] = hit
        return hit

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PointSet) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"PointSet({len(self.coords)} points, hull {self.hull_size})"


class Triangulation:
    """An immutable triangulation of a PointSet with value semantics.

    `edge_mask` ORs one bit per present edge; over a fixed point set the
    edge set determines the triangulation, so the mask doubles as a cheap
    in-process fingerprint for dedup tables.  The byte string returned by
    canonical_key() is the stable, inspectable encoding of the triangle set.

    Instances are created by build() (validating) or by apply_flip(); the
    bare constructor trusts its arguments.
    """

    __slots__ = ("ps", "triangles", "edge_mask", "_opp", "_ckey", "_edges")

    def __init__(
        self,
        ps: PointSet,
        triangles: frozenset[Triangle],
        opp: dict[Edge, tuple[int, ...]],
        edge_mask: int,
    ):
        self.ps = ps
        self.triangles = triangles
        self._opp = opp
        self.edge_mask = edge_mask
        self._ckey: bytes | None = None
        self._edges: tuple[Edge, ...] | None = None

    @classmethod
    def build(
        cls,
        points: PointSet | Iterable[tuple[int, int]],
        triangles: Iterable[Sequence[int]],
    ) -> "Triangulation":
        """Validate `triangles` as a triangulation of `points` and build it.

        Raises InvalidTriangulation naming the first violated invariant:
        duplicate point, degenerate triangle, overlapping triangles, wrong
        counts, or bad edge incidence.
        """
        ps = points if isinstance(points, PointSet) else PointSet(points)
        n = len(ps)
        pts = ps.points

        tris: list[Triangle] = []
        tri_seen: set[Triangle] = set()
        for raw in triangles:
            ids = tuple(int(v) for v in raw)
            if len(ids) != 3:
                raise InvalidTriangulation(f"triangle needs 3 vertices, got {raw!r}")
            for v in ids:
                if not 0 <= v < n:
                    raise InvalidTriangulation(f"triangle {ids} references unknown point {v}")
            if len(set(ids)) != 3:
                raise InvalidTriangulation(f"degenerate triangle {ids}: repeated vertex")
            t = make_triangle(*ids)
            if cross(pts[t[0]], pts[t[1]], pts[t[2]]) == 0:
                raise InvalidTriangulation(f"degenerate triangle {t}: collinear points")
            if t in tri_seen:
                raise InvalidTriangulation(f"duplicate triangle {t}")
            tri_seen.add(t)
            tris.append(t)

        ccw = [_ccw_triangle(pts, t) for t in tris]
        for i in range(len(tris)):
            for j in range(i + 1, len(tris)):
                if _triangles_overlap(pts, ccw[i], ccw[j]):
                    raise InvalidTriangulation(f"overlapping triangles {tris[i]} and {tris[j]}")

        if len(tris) != ps.expected_triangles:
            raise InvalidTriangulation(
                f"wrong counts: expected {ps.expected_triangles} triangles, got {len(tris)}"
            )

        opp: dict[Edge, list[int]] = {}
        for t in tris:
            a, b, c = t
            opp.setdefault((a, b), []).append(c)
            opp.setdefault((a, c), []).append(b)
            opp.setdefault((b, c), []).append(a)
        for e, ws in opp.items():
            if len(ws) > 2:
                raise InvalidTriangulation(f"bad edge incidence: edge {e} is in {len(ws)} triangles")
        boundary = {e for e, ws in opp.items() if len(ws) == 1}
        if boundary != ps.boundary_edges:
            raise InvalidTriangulation(
                "bad edge incidence: boundary edges do not match the hull boundary"
            )
        if len(opp) != ps.expected_edges:
            raise InvalidTriangulation(
                f"wrong counts: expected {ps.expected_edges} edges, got {len(opp)}"
            )
        used = {v for t in tris for v in t}
        if len(used) != n:
            missing = sorted(set(range(n)) - used)
            raise InvalidTriangulation(f"point {missing[0]} is not used by any triangle")
        if sum(triangle_area2(pts[a], pts[b], pts[c]) for a, b, c in tris) != ps.hull_area2:
            raise InvalidTriangulation("triangle areas do not cover the hull")

        opp_sorted = {e: tuple(sorted(ws)) for e, ws in opp.items()}
        mask = 0
        for e in opp_sorted:
            mask |= ps.edge_bit(e)
        return cls(ps, frozenset(tris), opp_sorted, mask)

    # -- queries ---------------------------------------------------------

    def __contains__(self, edge: Edge) -> bool:
        return edge in self._opp

    def edges(self) -> tuple[Edge, ...]:
        """All edges in canonical sorted order."""
        if self._edges is None:
            self._edges = tuple(sorted(self._opp))
        return self._edges

    def is_boundary(self, e: Edge) -> bool:
        return len(self._opp[e]) == 1

    def triangles_of_edge(self, e: Edge) -> list[Triangle]:
        ws = self._opp.get(e)
        if ws is None:
            raise ValueError(f"edge {e} is not in the triangulation")
        return [make_triangle(e[0], e[1], w) for w in ws]

    def quadrilateral_of(self, e: Edge) -> tuple[int, int, int, int]:
        """Cyclic quadrilateral (a, c, b, d) around interior edge e = (a, b).

        c is the apex from the canonically smaller incident triangle, so
        the result is deterministic.  The flip of e is the diagonal (c, d).
        """
        ws = self._opp.get(e)
        if ws is None:
            raise ValueError(f"edge {e} is not in the triangulation")
        if len(ws) == 1:
            raise ValueError(f"edge {e} is on the boundary and has no quadrilateral")
        a, b = e
        c, d = ws
        return (a, c, b, d)

    def is_admissible(self, e: Edge) -> bool:
        """True iff e is present, interior, and its quadrilateral is strictly convex."""
        ws = self._opp.get(e)
        if ws is None or len(ws) == 1:
            return False
        return self.ps.quad_convex(e[0], ws[0], e[1], ws[1])

    def admissible_edges(self) -> list[Edge]:
        return [e for e in self.edges() if self.is_admissible(e)]

    def edges_sharing_triangle(self, e: Edge) -> tuple[Edge, ...]:
        """Edges that lie in a common triangle with e, canonically sorted.

        Exactly 4 for an interior edge, 2 for a boundary edge.
        """
        ws = self._opp.get(e)
        if ws is None:
            raise ValueError(f"edge {e} is not in the triangulation")
        a, b = e
        out = {make_edge(a, w) for w in ws} | {make_edge(b, w) for w in ws}
        return tuple(sorted(out))

    def edges_share_triangle(self, e1: Edge, e2: Edge) -> bool:
        """True iff distinct edges e1 and e2 are sides of one common triangle."""
        if e1 == e2 or e1 not in self._opp or e2 not in self._opp:
            return False
        common = set(e1) & set(e2)
        if len(common) != 1:
            return False
        u = common.pop()
        (v,) = set(e1) - {u}
        (w,) = set(e2) - {u}
        return make_triangle(u, v, w) in self.triangles

    # -- the flip --------------------------------------------------------

    def apply_flip(self, e: Edge) -> tuple["Triangulation", Edge]:
        """Flip interior edge e; returns (new triangulation, created diagonal).

        Raises InadmissibleFlip if e is absent, on the boundary, or its
        quadrilateral is not strictly convex.
        """
        ws = self._opp.get(e)
        if ws is None:
            raise InadmissibleFlip(f"edge {e} is not in the triangulation")
        if len(ws) == 1:
            raise InadmissibleFlip(f"edge {e} is on the boundary")
        a, b = e
        c, d = ws
        if not self.ps.quad_convex(a, c, b, d):
            raise InadmissibleFlip(f"quadrilateral around {e} is not strictly convex")

        created = (c, d)  # already sorted
        opp = dict(self._opp)
        del opp[e]
        opp[created] = (a, b)
        # The four quadrilateral sides keep existing; each swaps one apex.
        for x, y, old, new in ((a, c, b, d), (b, c, a, d), (a, d, b, c), (b, d, a, c)):
            side = make_edge(x, y)
            sw = opp[side]
            if len(sw) == 1:
                opp[side] = (new,)
            else:
                other = sw[0] if sw[1] == old else sw[1]
                opp[side] = (other, new) if other < new else (new, other)

        tris = set(self.triangles)
        tris.discard(make_triangle(a, b, c))
        tris.discard(make_triangle(a, b, d))
        tris.add(make_triangle(a, c, d))
        tris.add(make_triangle(b, c, d))

        mask = self.edge_mask ^ self.ps.edge_bit(e) ^ self.ps.edge_bit(created)
        return Triangulation(self.ps, frozenset(tris), opp, mask), created

    # -- identity --------------------------------------------------------

    def canonical_key(self) -> bytes:
        """Byte encoding of the sorted triangle set; equal iff triangulations equal."""
        if self._ckey is None:
            self._ckey = b";".join(b"%d,%d,%d" % t for t in sorted(self.triangles))
        return self._ckey

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        if self.ps is not other.ps and self.ps != other.ps:
            return False
        return self.edge_mask == other.edge_mask

    def __hash__(self) -> int:
        return hash(self.edge_mask)

    def __repr__(self) -> str:
        return f"Triangulation({len(self.ps)} points, {len(self.triangles)} triangles)"


def ensure_same_points(a: Triangulation, b: Triangulation) -> None:
    if a.ps is not b.ps and a.ps != b.ps:
        raise PointSetMismatch("triangulations are over different point sets")


def changed_edges(a: Triangulation, b: Triangulation) -> set[Edge]:
    """Edges of `a` that are absent from `b`."""
    ensure_same_points(a, b)
    return {e for e in a._opp if e not in b._opp}


def _ccw_triangle(pts: Sequence[Point], t: Triangle) -> Triangle:
    a, b, c = t
    if cross(pts[a], pts[b], pts[c]) < 0:
        return (a, c, b)
    return t


def _triangles_overlap(pts: Sequence[Point], t1: Triangle, t2: Triangle) -> bool:
    """Exact interior-overlap test for two ccw triangles (shared edges are fine)."""

    def separated_by_edge_of(s: Triangle, o: Triangle) -> bool:
        for i in range(3):
            u, v = pts[s[i]], pts[s[(i + 1) % 3]]
            if all(cross(u, v, pts[w]) <= 0 for w in o):
                return True
        return False

    return not (separated_by_edge_of(t1, t2) or separated_by_edge_of(t2, t1))
