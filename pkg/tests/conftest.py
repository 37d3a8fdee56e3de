"""Shared fixtures: small hand-checked point sets and walk helpers."""

from __future__ import annotations

import random

import pytest

from flipdist import PointSet, Triangulation, generate_instance

SQUARE_POINTS = [(0, 0), (1, 0), (1, 1), (0, 1)]
# convex, no three collinear
PENTAGON_POINTS = [(0, 0), (4, 0), (5, 3), (2, 6), (-1, 3)]
# convex hexagon whose triangulation below allows two independent flips
HEXAGON_POINTS = [(0, 0), (2, 0), (3, 2), (2, 4), (0, 4), (-1, 2)]
# triangle with one interior point: every interior edge is inadmissible
PINWHEEL_POINTS = [(0, 0), (4, 0), (2, 3), (2, 1)]


def square_triangulation() -> Triangulation:
    return Triangulation.build(SQUARE_POINTS, [(0, 1, 2), (0, 2, 3)])


def pentagon_fan(ps: PointSet, apex: int) -> Triangulation:
    tris = [
        (apex, u, (u + 1) % 5)
        for u in range(5)
        if apex not in (u, (u + 1) % 5)
    ]
    return Triangulation.build(ps, tris)


def random_walk(
    tri: Triangulation, steps: int, rng: random.Random
) -> list[tuple[Triangulation, tuple[int, int]]]:
    """Up to `steps` random admissible flips; returns (state, flipped edge) pairs."""
    out = []
    cur = tri
    for _ in range(steps):
        choices = cur.admissible_edges()
        if not choices:
            break
        e = rng.choice(choices)
        out.append((cur, e))
        cur, _ = cur.apply_flip(e)
    return out


def random_pair(n: int, scramble: int, seed: int) -> tuple[Triangulation, Triangulation]:
    inst = generate_instance(n, "random", scramble, seed)
    return inst.triangulations()


@pytest.fixture
def square() -> Triangulation:
    return square_triangulation()


@pytest.fixture
def pentagon_ps() -> PointSet:
    return PointSet(PENTAGON_POINTS)


@pytest.fixture
def fans(pentagon_ps) -> list[Triangulation]:
    return [pentagon_fan(pentagon_ps, i) for i in range(5)]


@pytest.fixture
def hexagon() -> Triangulation:
    return Triangulation.build(HEXAGON_POINTS, [(0, 1, 5), (1, 4, 5), (1, 2, 4), (2, 3, 4)])


@pytest.fixture
def pinwheel() -> Triangulation:
    return Triangulation.build(PINWHEEL_POINTS, [(0, 1, 3), (0, 2, 3), (1, 2, 3)])
