"""Flat-file instances: parsing, rendering, and random generation.

The format, line by line (blank lines are ignored):

    flipdist v1
    points N
    x y            (N lines, integer coordinates)
    initial M
    a b c          (M lines, point indices of one triangle)
    final M
    a b c          (M lines)
    k K            (optional flip budget)
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .geometry import COLLINEAR, Point, convex_hull, cross, hull_boundary_chain, orientation
from .triangulation import PointSet, Triangle, Triangulation, make_triangle

HEADER = "flipdist v1"


class InstanceFormatError(ValueError):
    """Syntax error in an instance file; carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line


class GenerationError(RuntimeError):
    """Random generation could not satisfy its constraints."""


@dataclass
class Instance:
    points: list[tuple[int, int]]
    initial: list[Triangle]
    final: list[Triangle]
    k: int | None = None

    def triangulations(self) -> tuple[Triangulation, Triangulation]:
        """Build and validate both triangulations over one shared point set."""
        ps = PointSet(self.points)
        return Triangulation.build(ps, self.initial), Triangulation.build(ps, self.final)


class _Lines:
    """Non-blank lines of the file with their 1-based numbers."""

    def __init__(self, text: str):
        self.items = [
            (no, line.strip())
            for no, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        self.pos = 0
        self.last_no = self.items[-1][0] if self.items else 0

    def next(self, what: str) -> tuple[int, str]:
        if self.pos >= len(self.items):
            raise InstanceFormatError(self.last_no + 1, f"unexpected end of file, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def peek(self) -> tuple[int, str] | None:
        return self.items[self.pos] if self.pos < len(self.items) else None


def _ints(no: int, line: str, count: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise InstanceFormatError(no, f"expected {count} fields for {what}, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InstanceFormatError(no, f"non-integer field in {what}: {line!r}") from None


def _counted(lines: _Lines, keyword: str) -> int:
    no, line = lines.next(f"'{keyword} N'")
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise InstanceFormatError(no, f"expected '{keyword} N', got {line!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise InstanceFormatError(no, f"non-integer count in {line!r}") from None
    if n < 0:
        raise InstanceFormatError(no, f"negative count in {line!r}")
    return n


def parse_instance(text: str) -> Instance:
    """Parse the flat format; InstanceFormatError carries the offending line."""
    lines = _Lines(text)
    no, line = lines.next("header")
    if line != HEADER:
        raise InstanceFormatError(no, f"expected header {HEADER!r}, got {line!r}")
    n = _counted(lines, "points")
    points = []
    for _ in range(n):
        no, line = lines.next("a coordinate line")
        x, y = _ints(no, line, 2, "a point")
        points.append((x, y))
    tris: dict[str, list[Triangle]] = {}
    for section in ("initial", "final"):
        m = _counted(lines, section)
        rows = []
        for _ in range(m):
            no, line = lines.next("a triangle line")
            a, b, c = _ints(no, line, 3, "a triangle")
            rows.append((a, b, c))
        tris[section] = rows
    k = None
    tail = lines.peek()
    if tail is not None:
        no, line = lines.next("'k K' or end of file")
        parts = line.split()
        if len(parts) != 2 or parts[0] != "k":
            raise InstanceFormatError(no, f"expected 'k K' or end of file, got {line!r}")
        try:
            k = int(parts[1])
        except ValueError:
            raise InstanceFormatError(no, f"non-integer k in {line!r}") from None
        if k < 0:
            raise InstanceFormatError(no, "k must be nonnegative")
        extra = lines.peek()
        if extra is not None:
            raise InstanceFormatError(extra[0], f"trailing content: {extra[1]!r}")
    return Instance(points, tris["initial"], tris["final"], k)


def render_instance(inst: Instance) -> str:
    """Inverse of parse_instance (up to whitespace)."""
    out = [HEADER, f"points {len(inst.points)}"]
    out.extend(f"{x} {y}" for x, y in inst.points)
    for name, tris in (("initial", inst.initial), ("final", inst.final)):
        out.append(f"{name} {len(tris)}")
        out.extend(f"{a} {b} {c}" for a, b, c in tris)
    if inst.k is not None:
        out.append(f"k {inst.k}")
    return "\n".join(out) + "\n"


def scan_triangulation(points: list[tuple[int, int]]) -> list[Triangle]:
    """Some triangulation of the point set, by lexicographic incremental scan.

    Each point is connected to every boundary-chain edge of the already
    placed points that faces it; collinear prefixes are fanned out when
    the first off-line point arrives.
    """
    pts = [Point(i, x, y) for i, (x, y) in enumerate(points)]
    order = sorted(range(len(pts)), key=lambda i: (pts[i].x, pts[i].y))
    placed: list[Point] = []
    tris: list[Triangle] = []
    for pid in order:
        p = pts[pid]
        if len(placed) >= 2:
            chain = hull_boundary_chain(placed)
            if chain is not None:
                m = len(chain)
                for i in range(m):
                    u, v = chain[i], chain[(i + 1) % m]
                    if cross(u, v, p) < 0:
                        tris.append(make_triangle(u.id, v.id, p.id))
            else:
                # placed points are collinear; fan p over consecutive pairs
                row = sorted(placed, key=lambda q: (q.x, q.y))
                for u, v in zip(row, row[1:]):
                    if cross(u, v, p) != 0:
                        tris.append(make_triangle(u.id, v.id, p.id))
        placed.append(p)
    return sorted(tris)


def _general_position(pts: list[tuple[int, int]], cand: tuple[int, int]) -> bool:
    c = Point(-1, *cand)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if orientation(Point(-2, *pts[i]), Point(-3, *pts[j]), c) == COLLINEAR:
                return False
    return True


def _random_points(rng: random.Random, n: int, span: int) -> list[tuple[int, int]]:
    for _ in range(2000):
        pts: list[tuple[int, int]] = []
        tries = 0
        while len(pts) < n and tries < 500:
            tries += 1
            cand = (rng.randrange(0, span + 1), rng.randrange(0, span + 1))
            if cand in pts or not _general_position(pts, cand):
                continue
            pts.append(cand)
        if len(pts) == n:
            return pts
    raise GenerationError(f"could not place {n} points in general position (span {span})")


def _convex_points(rng: random.Random, n: int, span: int) -> list[tuple[int, int]]:
    radius = max(span, 10 * n)
    for _ in range(2000):
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
        pts = [
            (round(radius * math.cos(a)), round(radius * math.sin(a)))
            for a in angles
        ]
        if len(set(pts)) != n:
            continue
        hull = convex_hull([Point(i, x, y) for i, (x, y) in enumerate(pts)])
        if len(hull) != n:
            continue
        return pts
    raise GenerationError(f"could not place {n} points in convex position")


def generate_instance(
    n: int,
    hull: str = "random",
    scramble: int = 0,
    seed: int | None = None,
    span: int = 1000,
) -> Instance:
    """A random valid instance: scanned initial triangulation, final obtained
    by up to `scramble` random admissible flips.  Deterministic per seed.

    hull="convex" places all points in convex position; "random" rejects
    collinear triples but allows interior points.  Stops scrambling early
    in the rare case no flip is admissible.
    """
    if n < 3:
        raise GenerationError("n must be at least 3")
    if scramble < 0:
        raise GenerationError("scramble must be nonnegative")
    if hull not in ("random", "convex"):
        raise GenerationError(f"unknown hull mode {hull!r}")
    rng = random.Random(seed)
    points = _convex_points(rng, n, span) if hull == "convex" else _random_points(rng, n, span)
    initial = scan_triangulation(points)
    ps = PointSet(points)
    t0 = Triangulation.build(ps, initial)
    cur = t0
    for _ in range(scramble):
        choices = cur.admissible_edges()
        if not choices:
            break
        cur, _ = cur.apply_flip(rng.choice(choices))
    return Instance(points, sorted(t0.triangles), sorted(cur.triangles), None)
