"""Move-sequence semantics of drawings.

A drawing of a tree (or of a local disk with prescribed boundary edges) is
replayed as a left-to-right sweep.  The frontier is the top-to-bottom list
of edge crossings on the sweep line; moves are vertices, left bends (local
x-minima) and right bends (local x-maxima).

Frontier entries are (edge, kind, aux):
  kind "u": one open end of a U-shaped strand, aux = partner index
  kind "a": strand anchored at swept vertex aux
  kind "b": strand anchored at the left boundary (aux = -1)
Moves are plain tuples:
  ("V", vertex, arc_start, arc_len, gap)   vertex move; the consumed
      left-edge arc is rotation[arc_start : arc_start+arc_len] (cyclic) and
      matches the frontier block starting at `gap` read bottom-to-top; the
      remaining edges are emitted at `gap` top-to-bottom in rotation order
  ("L", edge, gap)   left bend: insert a fresh strand pair at `gap`
  ("R", pos)         right bend: merge crossings pos, pos+1
"""

from __future__ import annotations

from dataclasses import dataclass

from .tree import OrderedTree

Entry = tuple[int, str, int]
Move = tuple


class IllegalMove(ValueError):
    """A move violated a replay precondition."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"move {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class SweepProblem:
    """A tree or local disk to be drawn.

    interior: vertices inside the disk (None = the whole tree).
    boundary_in / boundary_out: edge ids crossing the left / right boundary,
    top to bottom.  Every edge with exactly one interior endpoint must appear
    in exactly one of them.
    """

    tree: OrderedTree
    boundary_in: tuple[int, ...] = ()
    boundary_out: tuple[int, ...] = ()
    interior: frozenset[int] | None = None

    def interior_vertices(self) -> frozenset[int]:
        if self.interior is None:
            return frozenset(range(self.tree.n))
        return self.interior

    def allowed_edges(self) -> frozenset[int]:
        inside = self.interior_vertices()
        t = self.tree
        return frozenset(
            e for e, (a, b) in enumerate(t.edges) if a in inside or b in inside
        )

    def validate(self):
        inside = self.interior_vertices()
        t = self.tree
        cross = list(self.boundary_in) + list(self.boundary_out)
        if len(set(cross)) != len(cross):
            raise ValueError("boundary edge listed twice")
        for e, (a, b) in enumerate(t.edges):
            ins = (a in inside) + (b in inside)
            if ins == 1 and e not in cross:
                raise ValueError(f"edge {e} leaves the disk but is not boundary")
            if ins != 1 and e in cross:
                raise ValueError(f"boundary edge {e} does not cross the boundary")


@dataclass(frozen=True)
class MoveSequence:
    """A drawing: initial frontier, moves, required final frontier."""

    boundary_in: tuple[int, ...]
    moves: tuple[Move, ...]
    boundary_out: tuple[int, ...]

    def to_json(self) -> dict:
        def enc(m):
            if m[0] == "V":
                return {"kind": "vertex", "vertex": m[1], "arc_start": m[2],
                        "arc_len": m[3], "gap": m[4]}
            if m[0] == "L":
                return {"kind": "left-bend", "edge": m[1], "gap": m[2]}
            return {"kind": "right-bend", "pos": m[1]}

        return {
            "boundary_in": list(self.boundary_in),
            "moves": [enc(m) for m in self.moves],
            "boundary_out": list(self.boundary_out),
        }

    @staticmethod
    def from_json(data: dict) -> "MoveSequence":
        moves = []
        for m in data["moves"]:
            if m["kind"] == "vertex":
                moves.append(("V", m["vertex"], m["arc_start"], m["arc_len"], m["gap"]))
            elif m["kind"] == "left-bend":
                moves.append(("L", m["edge"], m["gap"]))
            elif m["kind"] == "right-bend":
                moves.append(("R", m["pos"]))
            else:
                raise ValueError(f"unknown move kind {m['kind']!r}")
        return MoveSequence(tuple(data["boundary_in"]), tuple(moves),
                            tuple(data["boundary_out"]))


State = tuple[tuple[Entry, ...], int, int]  # frontier, swept mask, done mask


def initial_state(problem: SweepProblem) -> State:
    entries = tuple((e, "b", -1) for e in problem.boundary_in)
    return entries, 0, 0


def vertex_arc_edges(t: OrderedTree, v: int, arc_start: int, arc_len: int):
    """(left arc, emitted arc) edge lists of a vertex move."""
    rot = t.rotation[v]
    d = len(rot)
    if d == 0:
        return [], []
    left = [rot[(arc_start + i) % d] for i in range(arc_len)]
    right = [rot[(arc_start + arc_len + i) % d] for i in range(d - arc_len)]
    return left, right


def apply_move(problem: SweepProblem, state: State, move: Move) -> State:
    """Apply one move; returns the successor state or raises IllegalMove."""
    entries, swept, done = state
    t = problem.tree
    kind = move[0]
    # working form: [edge, kind, token]; u-partners share a token object
    work = []
    tokens: dict[int, list] = {}
    for i, (e, k, aux) in enumerate(entries):
        if k == "u":
            tok = tokens.get(min(i, aux))
            if tok is None:
                tok = tokens[min(i, aux)] = [None]
            work.append([e, "u", tok])
        else:
            work.append([e, k, aux])

    if kind == "L":
        _, e, gap = move
        if e not in problem.allowed_edges():
            raise IllegalMove(f"edge {e} outside the disk")
        if done >> e & 1:
            raise IllegalMove(f"edge {e} already completely drawn")
        if not 0 <= gap <= len(work):
            raise IllegalMove("left bend gap out of range")
        tok = [None]
        work[gap:gap] = [[e, "u", tok], [e, "u", tok]]
        return _freeze(work), swept, done

    if kind == "R":
        _, pos = move
        if not 0 <= pos <= len(work) - 2:
            raise IllegalMove("right bend position out of range")
        x, y = work[pos], work[pos + 1]
        if x[0] != y[0]:
            raise IllegalMove("right bend needs two adjacent crossings of one edge")
        if x[1] == "u" and y[1] == "u" and x[2] is y[2]:
            raise IllegalMove("right bend would close a loop")
        if x[1] != "u" and y[1] != "u":
            # both anchored: the edge is completed
            if x[1] == "b" and y[1] == "b":
                raise IllegalMove("cannot merge two boundary-anchored strands")
            if x[1] == "a" and y[1] == "a" and x[2] == y[2]:
                raise IllegalMove("strands anchored at the same vertex")
            done |= 1 << x[0]
            del work[pos : pos + 2]
        elif x[1] == "u" and y[1] == "u":
            # fuse: the two far ends become partners
            far_x = _other_end(work, pos, x[2])
            far_y = _other_end(work, pos + 1, y[2])
            tok = [None]
            work[far_x][2] = tok
            work[far_y][2] = tok
            del work[pos : pos + 2]
        else:
            u_at = pos if x[1] == "u" else pos + 1
            anchored = y if x[1] == "u" else x
            far = _other_end(work, u_at, work[u_at][2])
            work[far][1] = anchored[1]
            work[far][2] = anchored[2]
            del work[pos : pos + 2]
        return _freeze(work), swept, done

    if kind != "V":
        raise IllegalMove(f"unknown move kind {kind!r}")
    _, v, arc_start, arc_len, gap = move
    if v not in problem.interior_vertices():
        raise IllegalMove(f"vertex {v} outside the disk")
    if swept >> v & 1:
        raise IllegalMove(f"vertex {v} already swept")
    rot = t.rotation[v]
    d = len(rot)
    if d == 0:
        if arc_len != 0:
            raise IllegalMove("isolated vertex has no edges")
    elif not (0 <= arc_start < d and 0 <= arc_len <= d):
        raise IllegalMove("rotation arc out of range")
    left, emitted = vertex_arc_edges(t, v, arc_start, arc_len)
    if not 0 <= gap <= len(work) - arc_len:
        raise IllegalMove("vertex block out of range")
    for i, e in enumerate(left):
        if work[gap + arc_len - 1 - i][0] != e:
            raise IllegalMove(f"frontier block does not match left arc at vertex {v}")
    for i in range(arc_len):
        entry = work[gap + i]
        if entry[1] == "u":
            far = _other_end(work, gap + i, entry[2])
            if gap <= far < gap + arc_len:
                raise IllegalMove("left arc consumes both ends of one strand")
            work[far][1] = "a"
            work[far][2] = v
        else:
            # anchored ("a" at the far endpoint, or "b"): edge completed at v
            done |= 1 << entry[0]
    del work[gap : gap + arc_len]
    for e in emitted:
        if done >> e & 1:
            raise IllegalMove(f"edge {e} already completely drawn")
    work[gap:gap] = [[e, "a", v] for e in emitted]
    return _freeze(work), swept | 1 << v, done


def _other_end(work, idx, tok):
    for j, z in enumerate(work):
        if j != idx and z[1] == "u" and z[2] is tok:
            return j
    raise AssertionError("unpaired strand end")


def _freeze(work) -> tuple[Entry, ...]:
    out: list[Entry] = []
    for i, (e, k, aux) in enumerate(work):
        if k == "u":
            partner = next(
                j for j, z in enumerate(work)
                if j != i and z[1] == "u" and z[2] is aux
            )
            out.append((e, "u", partner))
        else:
            out.append((e, k, aux))
    return tuple(out)


def replay(problem: SweepProblem, drawing: MoveSequence, collect: bool = False):
    """Replay a drawing; returns (states, peak height) or raises IllegalMove.

    states lists len(moves)+1 frontier states when collect=True.
    """
    if drawing.boundary_in != tuple(problem.boundary_in):
        raise IllegalMove("drawing boundary_in differs from the problem's")
    state = initial_state(problem)
    states = [state]
    peak = len(state[0])
    for idx, mv in enumerate(drawing.moves):
        try:
            state = apply_move(problem, state, mv)
        except IllegalMove as err:
            raise IllegalMove(str(err), index=idx) from None
        peak = max(peak, len(state[0]))
        if collect:
            states.append(state)
    entries, swept, _ = state
    if tuple(e for e, _, _ in entries) != tuple(problem.boundary_out):
        raise IllegalMove("final frontier does not match boundary_out")
    for e, k, _ in entries:
        if k == "u":
            raise IllegalMove(f"edge {e} ends in a floating strand")
    for v in problem.interior_vertices():
        if not swept >> v & 1:
            raise IllegalMove(f"vertex {v} never swept")
    if not collect:
        states = [state]
    return states, peak


def height_of(problem: SweepProblem, drawing: MoveSequence) -> int:
    """Maximum frontier size over the sweep; at least 1 if any vertex."""
    _, peak = replay(problem, drawing)
    floor = 1 if problem.interior_vertices() else 0
    return max(peak, floor)


def is_balanced(problem: SweepProblem, drawing: MoveSequence):
    """Per-vertex balance report: [(vertex, left, right, balanced?)]."""
    replay(problem, drawing)
    report = []
    for mv in drawing.moves:
        if mv[0] != "V":
            continue
        _, v, _, arc_len, _ = mv
        d = problem.tree.degree(v)
        left, right = arc_len, d - arc_len
        report.append((v, left, right, abs(left - right) == d % 2))
    return report


def rot180_drawing(problem: SweepProblem, drawing: MoveSequence) -> MoveSequence:
    """The drawing rotated by 180 degrees (sweep direction and top/bottom
    both flipped); a valid drawing of the same tree with boundaries swapped
    and reversed."""
    states, _ = replay(problem, drawing, collect=True)
    t = problem.tree
    out = []
    for i in range(len(drawing.moves) - 1, -1, -1):
        mv = drawing.moves[i]
        before = len(states[i][0])
        after = len(states[i + 1][0])
        if mv[0] == "L":
            _, e, gap = mv
            out.append(("R", before - gap))
        elif mv[0] == "R":
            _, pos = mv
            e = states[i][0][pos][0]
            out.append(("L", e, before - pos - 2))
        else:
            _, v, arc_start, arc_len, gap = mv
            d = t.degree(v)
            emit = d - arc_len
            start = (arc_start + arc_len) % d if d else 0
            out.append(("V", v, start, emit, after - gap - emit))
    return MoveSequence(
        tuple(reversed(drawing.boundary_out)),
        tuple(out),
        tuple(reversed(drawing.boundary_in)),
    )


def rot180_problem(problem: SweepProblem) -> SweepProblem:
    """The problem solved by a rot180'd drawing of `problem`."""
    return SweepProblem(
        problem.tree,
        tuple(reversed(problem.boundary_out)),
        tuple(reversed(problem.boundary_in)),
        problem.interior,
    )
