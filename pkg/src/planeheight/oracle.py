"""Exact brute-force solver for whole trees and local disks.

Searches the space of sweep states directly: iterative deepening on the
height bound H, breadth-first with a visited set per level, so the returned
value is the true bottleneck optimum.  Intended for small instances only;
it certifies the polynomial solver on everything up to the configured cap.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from math import ceil

from .sweep import (
    IllegalMove,
    MoveSequence,
    SweepProblem,
    apply_move,
    initial_state,
    replay,
)
from .tree import OrderedTree

DEFAULT_EDGE_CAP = 8


class OracleScaleError(ValueError):
    """Instance exceeds the configured oracle scale."""


@dataclass(frozen=True)
class OracleProblem:
    """A disk (or whole tree) plus search options."""

    problem: SweepProblem
    allow_bends: bool = True
    height_cap: int | None = None
    edge_cap: int = DEFAULT_EDGE_CAP

    @staticmethod
    def whole_tree(t: OrderedTree, allow_bends: bool = True,
                   edge_cap: int = DEFAULT_EDGE_CAP) -> "OracleProblem":
        return OracleProblem(SweepProblem(t), allow_bends, None, edge_cap)


def lower_bound(problem: SweepProblem) -> int:
    t = problem.tree
    inside = problem.interior_vertices()
    lb = max(len(problem.boundary_in), len(problem.boundary_out), 1 if inside else 0)
    for v in inside:
        lb = max(lb, ceil(t.degree(v) / 2))
    return lb


def _successors(problem: SweepProblem, state, cap: int, allow_bends: bool):
    """Yield (move, next_state) pairs legal under the frontier cap."""
    entries, swept, done = state
    t = problem.tree
    width = len(entries)
    inside = problem.interior_vertices()
    # vertex moves: group frontier positions by incident unswept vertex
    for v in inside:
        if swept >> v & 1:
            continue
        rot = t.rotation[v]
        d = len(rot)
        if d == 0:
            yield from _try(problem, state, ("V", v, 0, 0, 0))
            continue
        pos_of_edge: dict[int, list[int]] = {}
        rot_set = set(rot)
        for i, (e, k, aux) in enumerate(entries):
            if e in rot_set:
                pos_of_edge.setdefault(e, []).append(i)
        # nonempty arcs: every contiguous frontier block matching a rotation arc
        for arc_len in range(1, d + 1):
            if width - arc_len + (d - arc_len) > cap:
                continue
            for arc_start in range(d):
                arc = [rot[(arc_start + i) % d] for i in range(arc_len)]
                first = arc[-1]  # top entry of the block
                for gap in pos_of_edge.get(first, ()):
                    if gap + arc_len > width:
                        continue
                    yield from _try(
                        problem, state, ("V", v, arc_start, arc_len, gap))
        # empty arc: pure emission
        if width + d <= cap:
            for gap in range(width + 1):
                for arc_start in range(d):
                    yield from _try(problem, state, ("V", v, arc_start, 0, gap))
    if allow_bends:
        if width + 2 <= cap:
            for e in problem.allowed_edges():
                if done >> e & 1:
                    continue
                for gap in range(width + 1):
                    yield from _try(problem, state, ("L", e, gap))
        for pos in range(width - 1):
            if entries[pos][0] == entries[pos + 1][0]:
                yield from _try(problem, state, ("R", pos))


def _try(problem, state, move):
    try:
        yield move, apply_move(problem, state, move)
    except IllegalMove:
        return


def _search_at(problem: SweepProblem, cap: int, allow_bends: bool):
    """BFS over states at frontier cap `cap`; returns a witness or None."""
    start = initial_state(problem)
    if len(start[0]) > cap:
        return None
    goal_entries = tuple(problem.boundary_out)
    inside_mask = 0
    for v in problem.interior_vertices():
        inside_mask |= 1 << v
    seen = {start}
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        entries, swept, _ = state
        if swept & inside_mask == inside_mask and \
                tuple(e for e, _, _ in entries) == goal_entries and \
                all(k != "u" for _, k, _ in entries):
            moves = []
            cur = state
            while parent[cur] is not None:
                prev, mv = parent[cur]
                moves.append(mv)
                cur = prev
            moves.reverse()
            return MoveSequence(tuple(problem.boundary_in), tuple(moves),
                                goal_entries)
        for mv, nxt in _successors(problem, state, cap, allow_bends):
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = (state, mv)
                queue.append(nxt)
    return None


def optimal_height_exact(op: OracleProblem) -> tuple[int, MoveSequence]:
    """Minimum height over all drawings, with a witness achieving it."""
    problem = op.problem
    problem.validate()
    inside = problem.interior_vertices()
    edges_inside = sum(
        1 for a, b in problem.tree.edges if a in inside and b in inside)
    if edges_inside > op.edge_cap:
        raise OracleScaleError(
            f"oracle scale exceeded: {edges_inside} interior edges > cap {op.edge_cap}")
    h = lower_bound(problem)
    hard_cap = op.height_cap if op.height_cap is not None else (
        len(inside) + len(problem.boundary_in) + len(problem.boundary_out) + 2)
    while h <= hard_cap:
        witness = _search_at(problem, h, op.allow_bends)
        if witness is not None:
            _, peak = replay(problem, witness)
            return max(peak, 1 if inside else 0), witness
        h += 1
    raise OracleScaleError(f"no drawing within height cap {hard_cap}")


def optimal_height_bendfree(op: OracleProblem) -> tuple[int, MoveSequence]:
    """Optimum with bends disabled (vertex moves only)."""
    return optimal_height_exact(
        OracleProblem(op.problem, False, op.height_cap, op.edge_cap))


def exposed_height_exact(t: OrderedTree, anchor: int, root: int,
                         edge_cap: int = DEFAULT_EDGE_CAP) -> int:
    """Optimal height of the bubble of the subtree at `root` hanging via
    `anchor` (the anchor is the single boundary edge)."""
    interior = t.subtree_vertices(anchor, root)
    problem = SweepProblem(t, (), (anchor,), interior)
    h, _ = optimal_height_exact(OracleProblem(problem, True, None, edge_cap))
    return h


def random_drawing(t: OrderedTree, seed: int, height_cap: int | None = None,
                   max_bends: int = 4) -> MoveSequence:
    """A pseudo-random legal whole-tree drawing (deterministic per seed).

    Randomized depth-first search over legal moves with a bend budget; the
    first completed drawing is returned.
    """
    rng = random.Random(seed)
    problem = SweepProblem(t)
    cap = height_cap if height_cap is not None else max(
        lower_bound(problem) + 2, 4)
    inside_mask = (1 << t.n) - 1

    state = initial_state(problem)
    stack = [(state, [], 0)]
    seen = {state}
    while stack:
        state, moves, bends = stack.pop()
        entries, swept, _ = state
        if swept == inside_mask and not entries:
            return MoveSequence((), tuple(moves), ())
        succ = []
        for mv, nxt in _successors(problem, state, cap, True):
            if nxt in seen:
                continue
            if mv[0] != "V" and bends >= max_bends:
                continue
            succ.append((mv, nxt))
        rng.shuffle(succ)
        for mv, nxt in succ:
            seen.add(nxt)
            stack.append((nxt, moves + [mv], bends + (mv[0] != "V")))
    raise AssertionError("random drawing search exhausted unexpectedly")
