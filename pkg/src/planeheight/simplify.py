"""Simplification and balancing rewrites on move sequences.

Adjacent move pairs are rewritten by five rules (stuck slide, bend-bend
separation, bend-bend cancellation, vertex-bend separation, vertex-bend
cancellation) plus their mirror images; a vertex-bend cancellation is
"strong" when it does not decrease |#left - #right| at the vertex.
Balancing bends the outermost heavy-side edge over a lopsided vertex.
"""

from __future__ import annotations

from .sweep import (
    IllegalMove,
    MoveSequence,
    SweepProblem,
    height_of,
    replay,
    rot180_drawing,
    rot180_problem,
)

CANCEL_RULES = {"bend-bend-cancel", "vertex-bend-cancel"}
SEP_RULES = {"bend-bend-sep", "vertex-bend-sep"}
RULE_PRIORITY = {
    "bend-bend-cancel": 0,
    "vertex-bend-cancel": 0,
    "bend-bend-sep": 1,
    "vertex-bend-sep": 1,
    "stuck-slide": 2,
}


def _emit_count(problem: SweepProblem, mv) -> int:
    if mv[0] != "V":
        raise ValueError("vertex move expected")
    return problem.tree.degree(mv[1]) - mv[3]


def _point_site_after(problem: SweepProblem, mv):
    """Collapse point of a move in the coordinates of the next frontier,
    or None if the move leaves inserted material (cannot be enclosed)."""
    if mv[0] == "R":
        return mv[1]
    if mv[0] == "V" and _emit_count(problem, mv) == 0:
        return mv[4]
    return None


def _point_site_before(problem: SweepProblem, mv):
    """Insertion point of a move in the coordinates of the previous
    frontier, or None if the move consumes material."""
    if mv[0] == "L":
        return mv[2]
    if mv[0] == "V" and mv[3] == 0:
        return mv[4]
    return None


def classify_stuck(problem: SweepProblem, drawing: MoveSequence, i: int) -> str:
    """'stuck', 'not-stuck', or 'not-a-bend' for the move at index i."""
    replay(problem, drawing)  # validity
    moves = drawing.moves
    if not 0 <= i < len(moves):
        raise IndexError(f"move index {i} out of range")
    mv = moves[i]
    if mv[0] == "R":
        if i == 0:
            return "not-stuck"
        site = _point_site_after(problem, moves[i - 1])
        return "stuck" if site == mv[1] + 1 else "not-stuck"
    if mv[0] == "L":
        if i == len(moves) - 1:
            return "not-stuck"
        site = _point_site_before(problem, moves[i + 1])
        return "stuck" if site == mv[2] + 1 else "not-stuck"
    return "not-a-bend"


def applicable_simplifications(problem: SweepProblem, drawing: MoveSequence):
    """Every adjacent pair matching a rule: [(index, rule, strong)]."""
    replay(problem, drawing)
    moves = drawing.moves
    out = []
    seen = set()

    def add(i, rule, strong=False):
        if (i, rule) not in seen:
            seen.add((i, rule))
            out.append((i, rule, strong))

    for i in range(len(moves) - 1):
        a, b = moves[i], moves[i + 1]
        a_stuck = a[0] in "LR" and classify_stuck(problem, drawing, i) == "stuck"
        b_stuck = b[0] in "LR" and classify_stuck(problem, drawing, i + 1) == "stuck"
        if b[0] == "R" and not b_stuck:
            pos = b[1]
            if a[0] == "R" and a_stuck:
                add(i, "stuck-slide")
            elif a[0] == "L":
                g = a[2]
                if {pos, pos + 1} & {g, g + 1}:
                    add(i, "bend-bend-cancel")
                else:
                    add(i, "bend-bend-sep")
            elif a[0] == "V":
                g, rc = a[4], _emit_count(problem, a)
                if {pos, pos + 1} & set(range(g, g + rc)):
                    add(i, "vertex-bend-cancel", strong=a[3] >= rc - 1)
                else:
                    add(i, "vertex-bend-sep")
        if a[0] == "L" and not a_stuck:
            gi = a[2]
            if b[0] == "L" and b_stuck:
                add(i, "stuck-slide")
            elif b[0] == "R":
                if {b[1], b[1] + 1} & {gi, gi + 1}:
                    add(i, "bend-bend-cancel")
                else:
                    add(i, "bend-bend-sep")
            elif b[0] == "V":
                g, lc = b[4], b[3]
                if set(range(g, g + lc)) & {gi, gi + 1}:
                    add(i, "vertex-bend-cancel",
                        strong=problem.tree.degree(b[1]) - lc >= lc - 1)
                else:
                    add(i, "vertex-bend-sep")
    out.sort(key=lambda r: (RULE_PRIORITY[r[1]], r[0]))
    return out


def _rewrite_pair(problem: SweepProblem, moves, i, rule):
    """Replace moves i, i+1 per the rule; returns the new move list."""
    a, b = moves[i], moves[i + 1]
    t = problem.tree

    def repl(new):
        return list(moves[:i]) + new + list(moves[i + 2 :])

    if rule == "bend-bend-cancel":
        return repl([])

    if rule == "bend-bend-sep":
        if a[0] == "L" and b[0] == "R":
            g, pos = a[2], b[1]
            if pos + 1 < g:
                return repl([("R", pos), ("L", a[1], g - 2)])
            return repl([("R", pos - 2), ("L", a[1], g)])
        raise AssertionError(rule)

    if rule == "stuck-slide":
        if a[0] == "R" and b[0] == "R":
            p0, p1 = a[1], b[1]
            if p1 + 1 < p0:
                return repl([("R", p1), ("R", p0 - 2)])
            return repl([("R", p1 + 2), ("R", p0)])
        if a[0] == "L" and b[0] == "L":
            g0, g1 = a[2], b[2]
            if g1 <= g0:
                return repl([("L", b[1], g1), ("L", a[1], g0 + 2)])
            return repl([("L", b[1], g1 - 2), ("L", a[1], g0)])
        raise AssertionError(rule)

    if rule == "vertex-bend-sep":
        if a[0] == "V" and b[0] == "R":
            _, v, s, lc, g = a
            rc, pos = _emit_count(problem, a), b[1]
            if pos + 1 < g:
                return repl([("R", pos), ("V", v, s, lc, g - 2)])
            return repl([("R", pos - rc + lc), ("V", v, s, lc, g)])
        if a[0] == "L" and b[0] == "V":
            gi = a[2]
            _, v, s, lc, g = b
            rc = _emit_count(problem, b)
            if g + lc <= gi:
                return repl([("V", v, s, lc, g), ("L", a[1], gi - lc + rc)])
            return repl([("V", v, s, lc, g - 2), ("L", a[1], gi)])
        raise AssertionError(rule)

    if rule == "vertex-bend-cancel":
        if a[0] == "V" and b[0] == "R":
            _, v, s, lc, g = a
            d = t.degree(v)
            rc, pos = d - lc, b[1]
            if pos == g - 1:
                # merge with the entry just above: top emission joins the arc
                return repl([("V", v, s, lc + 1, g - 1)])
            if pos == g + rc - 1:
                return repl([("V", v, (s - 1) % d, lc + 1, g)])
            raise AssertionError("disconnected vertex-bend cancel")
        if a[0] == "L" and b[0] == "V":
            gi = a[2]
            _, v, s, lc, g = b
            d = t.degree(v)
            if g == gi + 1:
                # pair entry consumed at block top: drop it from the arc
                return repl([("V", v, s, lc - 1, gi)])
            if g + lc - 1 == gi:
                return repl([("V", v, (s + 1) % d, lc - 1, g)])
            raise AssertionError("disconnected bend-vertex cancel")
    raise AssertionError(f"unknown rule {rule}")


def apply_simplification(problem: SweepProblem, drawing: MoveSequence,
                         i: int, rule: str) -> MoveSequence:
    new = MoveSequence(drawing.boundary_in,
                       tuple(_rewrite_pair(problem, drawing.moves, i, rule)),
                       drawing.boundary_out)
    replay(problem, new)
    return new


def simplify(problem: SweepProblem, drawing: MoveSequence,
             mode: str = "non-strong") -> MoveSequence:
    """Apply rules to a fixpoint (deterministic order; height never grows).

    mode "non-strong": strong vertex-bend cancellations are left alone (the
    result is simplified); mode "all": every rule (strongly simplified).
    """
    if mode not in ("non-strong", "all"):
        raise ValueError("mode must be 'non-strong' or 'all'")
    h = height_of(problem, drawing)
    guard = 4 * (len(drawing.moves) + 2) ** 2 + 16
    for _ in range(guard):
        rules = applicable_simplifications(problem, drawing)
        if mode == "non-strong":
            rules = [r for r in rules if not r[2]]
        if not rules:
            return drawing
        i, rule, _ = rules[0]
        drawing = apply_simplification(problem, drawing, i, rule)
        h2 = height_of(problem, drawing)
        if h2 > h:
            raise AssertionError("simplification increased the height")
        h = h2
    raise AssertionError("simplification failed to terminate")


def simplification_potential(problem: SweepProblem, drawing: MoveSequence):
    """(bend count, sorted bend index vector, stuck potential); decreases
    lexicographically at every simplification step."""
    moves = drawing.moves
    m = len(moves)
    bends = [i for i, mv in enumerate(moves) if mv[0] in "LR"]
    # separations move right bends earlier and left bends later
    vec = sorted(
        ([i + 1 for i, mv in enumerate(moves) if mv[0] == "R"]
         + [m - i for i, mv in enumerate(moves) if mv[0] == "L"]),
        reverse=True,
    )
    stuck = 0
    for i, mv in enumerate(moves):
        if mv[0] in "LR" and classify_stuck(problem, drawing, i) == "stuck":
            stuck += (m - i) ** 2 if mv[0] == "R" else (i + 1) ** 2
    return len(bends), tuple(vec), stuck


def unbalanced_vertices(problem: SweepProblem, drawing: MoveSequence):
    out = []
    for i, mv in enumerate(drawing.moves):
        if mv[0] != "V":
            continue
        _, v, _, lc, _ = mv
        d = problem.tree.degree(v)
        if abs(2 * lc - d) > 1:
            out.append((i, v, lc, d - lc))
    return out


def balance(problem: SweepProblem, drawing: MoveSequence) -> MoveSequence:
    """Make every vertex balanced without increasing the height.

    Bends the topmost left edge over the top of any left-heavy vertex (the
    right-heavy case by 180-degree symmetry), re-simplifying after each step.
    """
    drawing = simplify(problem, drawing, "non-strong")
    h = height_of(problem, drawing)
    guard = 2 * sum(problem.tree.degree(v) for v in problem.interior_vertices()) + 8
    for _ in range(guard):
        bad = unbalanced_vertices(problem, drawing)
        if not bad:
            return drawing
        i, v, lc, rc = bad[0]
        if lc >= rc + 2:
            drawing = _bend_top_left(problem, drawing, i)
        else:
            flipped = rot180_drawing(problem, drawing)
            fp = rot180_problem(problem)
            j = len(drawing.moves) - 1 - i
            flipped = _bend_top_left(fp, flipped, j)
            drawing = rot180_drawing(fp, flipped)
        drawing = simplify(problem, drawing, "non-strong")
        h2 = height_of(problem, drawing)
        if h2 > h:
            raise AssertionError("balancing increased the height")
        h = h2
    raise AssertionError("balancing failed to terminate")


def _bend_top_left(problem: SweepProblem, drawing: MoveSequence, i: int) -> MoveSequence:
    """Turn the topmost left edge of the vertex move at i into a bent-over
    right edge (one balancing step; the vertex must be left-heavy)."""
    mv = drawing.moves[i]
    _, v, s, lc, g = mv
    if lc < 1:
        raise ValueError("no left edge to bend")
    new = (list(drawing.moves[:i])
           + [("V", v, s, lc - 1, g + 1), ("R", g)]
           + list(drawing.moves[i + 1 :]))
    out = MoveSequence(drawing.boundary_in, tuple(new), drawing.boundary_out)
    replay(problem, out)
    return out
