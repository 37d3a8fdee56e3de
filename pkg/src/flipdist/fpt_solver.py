"""Fixed-parameter search deciding "flip distance equals k".

The search simulates a small nondeterministic machine instead of walking
the whole flip graph.  A machine state is (triangulation, current edge,
stack of edges, flips done, actions done), and the five action kinds are

  move            hop to an edge sharing a triangle with the current one
  flip_move       flip the current edge, then hop to an edge that shared
                  a triangle with it before the flip (all four survive
                  the flip, being sides of its quadrilateral)
  flip_push_move  same, but first push the created diagonal on the stack
  flip_jump       flip the current edge and land on the stack's top edge,
                  provided that edge is present after the flip
  flip_jump_pop   same, and pop the top

The move-bearing kinds offer at most 4 targets each and the jump kinds
at most 1, so no state ever has more than 14 legal actions.

A full run splits k into a composition (k_1, .., k_t); iteration l
starts at the next not-yet-restored edge of the initial triangulation
that is absent from the target (in canonical order, already-absent ones
skipped) and must perform exactly k_l flips within at most 2*k_l
actions on a fresh stack.  The run accepts iff after all t iterations
the current triangulation is the target.  Trying every composition
makes the overall decision exact for k equal to the flip distance, and
every accepted run is a genuine k-flip transformation, so smaller k
never accepts; that pair of facts is what decide_flip_distance_eq needs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .triangulation import Edge, Triangulation, changed_edges, ensure_same_points

MOVE = "move"
FLIP_MOVE = "flip_move"
FLIP_PUSH_MOVE = "flip_push_move"
FLIP_JUMP = "flip_jump"
FLIP_JUMP_POP = "flip_jump_pop"
ACTION_KINDS = (MOVE, FLIP_MOVE, FLIP_PUSH_MOVE, FLIP_JUMP, FLIP_JUMP_POP)

# 4 moves + 4 flip-moves + 4 flip-push-moves + jump + jump-pop
MAX_ACTIONS_PER_STATE = 14


class Action(NamedTuple):
    """One machine choice; `choice` indexes the move target of the
    move-bearing kinds and is 0 for the jump kinds."""

    kind: str
    choice: int = 0


class MachineState(NamedTuple):
    tri: Triangulation
    at: Edge
    stack: tuple[Edge, ...]
    flips_done: int
    actions_done: int


@dataclass
class SolverStats:
    """Counters the searches fill in; pass one instance around to aggregate."""

    states_expanded: int = 0
    actions_generated: int = 0
    max_branching: int = 0
    compositions_tried: int = 0
    iterations_run: int = 0


def compositions(k: int) -> Iterator[tuple[int, ...]]:
    """All compositions of k into positive parts, lexicographically.

    k = 0 yields the single empty composition; k >= 1 yields 2^(k-1).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        yield ()
        return
    acc: list[int] = []

    def rec(rem: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield tuple(acc)
            return
        for first in range(1, rem + 1):
            acc.append(first)
            yield from rec(rem - first)
            acc.pop()

    yield from rec(k)


def legal_actions(state: MachineState) -> list[tuple[Action, MachineState]]:
    """Every legal (action, successor) pair of `state`, in kind order.

    Budgets are the caller's business; this only encodes the machine
    semantics.  The result never exceeds MAX_ACTIONS_PER_STATE entries.
    """
    tri, at, stack, flips, acts = state
    nbrs = tri.edges_sharing_triangle(at)
    out: list[tuple[Action, MachineState]] = []
    for idx, e in enumerate(nbrs):
        out.append((Action(MOVE, idx), MachineState(tri, e, stack, flips, acts + 1)))
    if tri.is_admissible(at):
        t2, created = tri.apply_flip(at)
        for idx, e in enumerate(nbrs):
            out.append((Action(FLIP_MOVE, idx), MachineState(t2, e, stack, flips + 1, acts + 1)))
        pushed = stack + (created,)
        for idx, e in enumerate(nbrs):
            out.append(
                (Action(FLIP_PUSH_MOVE, idx), MachineState(t2, e, pushed, flips + 1, acts + 1))
            )
        if stack and stack[-1] in t2:
            top = stack[-1]
            out.append((Action(FLIP_JUMP), MachineState(t2, top, stack, flips + 1, acts + 1)))
            out.append(
                (Action(FLIP_JUMP_POP), MachineState(t2, top, stack[:-1], flips + 1, acts + 1))
            )
    assert len(out) <= MAX_ACTIONS_PER_STATE, f"{len(out)} actions from one state"
    return out


def iter_iteration_outcomes(
    tri: Triangulation,
    start: Edge,
    flips_target: int,
    prune: bool = True,
    stats: SolverStats | None = None,
) -> Iterator[Triangulation]:
    """Triangulations reachable from (tri, start) by one machine iteration:
    exactly `flips_target` flips within at most 2*flips_target actions,
    starting with an empty stack.  Each outcome is yielded once.

    With prune=True states are deduplicated on (edge-set fingerprint,
    current edge, stack, flips done) while expanding in action-count
    order, so the first visit of a key is the one with the fewest actions
    spent and dropping later visits loses no outcome.  With prune=False
    the raw choice tree is walked depth-first.
    """
    if flips_target <= 0:
        raise ValueError("an iteration must flip at least once")
    if start not in tri:
        raise ValueError(f"start edge {start} is not in the triangulation")
    budget = 2 * flips_target
    init = MachineState(tri, start, (), 0, 0)
    if prune:
        queue: deque[MachineState] = deque([init])
        pop = queue.popleft
        seen = {(tri.edge_mask, start, (), 0)}
    else:
        queue = deque([init])
        pop = queue.pop
        seen = None
    emitted: set[int] = set()
    while queue:
        state = pop()
        if stats:
            stats.states_expanded += 1
        pairs = legal_actions(state)
        if stats:
            stats.actions_generated += len(pairs)
            if len(pairs) > stats.max_branching:
                stats.max_branching = len(pairs)
        for _, nxt in pairs:
            if nxt.flips_done == flips_target:
                m = nxt.tri.edge_mask
                if m not in emitted:
                    emitted.add(m)
                    yield nxt.tri
                continue
            if nxt.actions_done >= budget:
                continue
            # each remaining flip costs at least one action
            if nxt.flips_done + (budget - nxt.actions_done) < flips_target:
                continue
            if seen is not None:
                key = (nxt.tri.edge_mask, nxt.at, nxt.stack, nxt.flips_done)
                if key in seen:
                    continue
                seen.add(key)
            queue.append(nxt)


def run_iteration(
    tri: Triangulation,
    start: Edge,
    flips_target: int,
    prune: bool = True,
    stats: SolverStats | None = None,
) -> set[Triangulation]:
    """The outcome set of iter_iteration_outcomes, materialized."""
    return set(iter_iteration_outcomes(tri, start, flips_target, prune, stats))


def exists_solution_with_exactly_k_flips(
    start: Triangulation,
    goal: Triangulation,
    k: int,
    prune: bool = True,
    stats: SolverStats | None = None,
) -> bool:
    """Can some composition of k into iteration budgets drive `start` to `goal`?

    Accepting is sound for every k (an accepting run performs exactly k
    admissible flips ending at goal) and complete when k is the flip
    distance, which is all the distance decision needs.
    """
    ensure_same_points(start, goal)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return start.edge_mask == goal.edge_mask
    order = sorted(changed_edges(start, goal))
    if not order:
        # start equals goal: no changed edge to start an iteration from
        return False
    goal_mask = goal.edge_mask
    # known-failed (remaining parts, cursor, triangulation) combinations;
    # keyed by the parts suffix because the memo outlives one composition
    failed: set[tuple[tuple[int, ...], int, int]] = set()

    def attempt(tri: Triangulation, cursor: int, parts: tuple[int, ...], idx: int) -> bool:
        if idx == len(parts):
            return tri.edge_mask == goal_mask
        # skip edges already absent; they never return once their
        # component has run (absent edges of `order` stay absent)
        while cursor < len(order) and order[cursor] not in tri:
            cursor += 1
        if cursor == len(order):
            return False
        key = (parts[idx:], cursor, tri.edge_mask)
        if prune and key in failed:
            return False
        if stats:
            stats.iterations_run += 1
        for outcome in iter_iteration_outcomes(tri, order[cursor], parts[idx], prune, stats):
            if attempt(outcome, cursor + 1, parts, idx + 1):
                return True
        if prune:
            failed.add(key)
        return False

    for comp in compositions(k):
        if len(comp) > len(order):
            continue
        if stats:
            stats.compositions_tried += 1
        if attempt(start, 0, comp, 0):
            return True
    return False


def decide_flip_distance_eq(
    start: Triangulation,
    goal: Triangulation,
    k: int,
    prune: bool = True,
    stats: SolverStats | None = None,
) -> bool:
    """True iff the flip distance from start to goal is exactly k."""
    if not exists_solution_with_exactly_k_flips(start, goal, k, prune, stats):
        return False
    return not any(
        exists_solution_with_exactly_k_flips(start, goal, smaller, prune, stats)
        for smaller in range(k)
    )
