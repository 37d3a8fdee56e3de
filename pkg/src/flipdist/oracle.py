"""Exhaustive search over the flip graph: exact distances and geodesics.

Only meant for small point sets; everything here walks the implicit
graph whose vertices are triangulations and whose edges are single
admissible flips, deduplicating states by their edge-set fingerprint.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flip_dag import FlipSequence, apply_sequence
from .triangulation import Edge, Triangulation, ensure_same_points

DEFAULT_CAP = 10
DEFAULT_NODE_BUDGET = 1_000_000


class SearchBudgetExceeded(RuntimeError):
    """The search visited more triangulations than the node budget allows."""


@dataclass
class OracleStats:
    nodes_visited: int = 0


def bfs_distance(
    start: Triangulation,
    goal: Triangulation,
    cap: int = DEFAULT_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
    stats: OracleStats | None = None,
) -> int | None:
    """Exact flip distance by breadth-first search, or None when it exceeds `cap`.

    Raises SearchBudgetExceeded after visiting more than `node_budget`
    distinct triangulations.
    """
    ensure_same_points(start, goal)
    goal_mask = goal.edge_mask
    if start.edge_mask == goal_mask:
        if stats:
            stats.nodes_visited += 1
        return 0
    visited = {start.edge_mask}
    frontier = [start]
    for depth in range(1, cap + 1):
        nxt = []
        for tri in frontier:
            for e in tri.admissible_edges():
                t2, _ = tri.apply_flip(e)
                m = t2.edge_mask
                if m in visited:
                    continue
                if m == goal_mask:
                    if stats:
                        stats.nodes_visited += len(visited) + 1
                    return depth
                visited.add(m)
                if len(visited) > node_budget:
                    raise SearchBudgetExceeded(
                        f"flip-graph BFS exceeded {node_budget} triangulations"
                    )
                nxt.append(t2)
        if not nxt:
            break
        frontier = nxt
    if stats:
        stats.nodes_visited += len(visited)
    return None


def enumerate_minimal_solutions(
    start: Triangulation,
    goal: Triangulation,
    distance: int,
    limit: int = 20,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[FlipSequence]:
    """Up to `limit` shortest flip sequences from start to goal, in
    lexicographic order of their edge lists.

    `distance` must be the exact flip distance (bfs_distance).  Works by
    labelling every triangulation within distance-1 of the goal with its
    distance to the goal, then walking label-descending paths from start.
    """
    ensure_same_points(start, goal)
    if distance == 0:
        if start.edge_mask != goal.edge_mask:
            raise ValueError("distance 0 given for distinct triangulations")
        return [apply_sequence(start, [])]

    labels = {goal.edge_mask: 0}
    frontier = [goal]
    for depth in range(1, distance):
        nxt = []
        for tri in frontier:
            for e in tri.admissible_edges():
                t2, _ = tri.apply_flip(e)
                if t2.edge_mask in labels:
                    continue
                labels[t2.edge_mask] = depth
                if len(labels) > node_budget:
                    raise SearchBudgetExceeded(
                        f"geodesic labelling exceeded {node_budget} triangulations"
                    )
                nxt.append(t2)
        frontier = nxt

    found: list[list[Edge]] = []

    def walk(tri: Triangulation, remaining: int, prefix: list[Edge]) -> None:
        if len(found) >= limit:
            return
        if remaining == 0:
            if tri.edge_mask == goal.edge_mask:
                found.append(list(prefix))
            return
        for e in tri.admissible_edges():
            t2, _ = tri.apply_flip(e)
            if labels.get(t2.edge_mask) == remaining - 1:
                prefix.append(e)
                walk(t2, remaining - 1, prefix)
                prefix.pop()
                if len(found) >= limit:
                    return

    walk(start, distance, [])
    if not found:
        raise ValueError("no geodesics found; `distance` does not match the pair")
    return [apply_sequence(start, edges) for edges in found]


def enumerate_triangulations(
    seed: Triangulation, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[Triangulation]:
    """Every triangulation reachable from `seed` by flips, sorted by key.

    Flip graphs of planar point sets are connected, so this is every
    triangulation of the point set.
    """
    visited = {seed.edge_mask}
    out = [seed]
    stack = [seed]
    while stack:
        tri = stack.pop()
        for e in tri.admissible_edges():
            t2, _ = tri.apply_flip(e)
            if t2.edge_mask in visited:
                continue
            visited.add(t2.edge_mask)
            if len(visited) > node_budget:
                raise SearchBudgetExceeded(
                    f"triangulation enumeration exceeded {node_budget} states"
                )
            out.append(t2)
            stack.append(t2)
    return sorted(out, key=Triangulation.canonical_key)
