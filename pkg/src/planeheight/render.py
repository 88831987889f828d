"""Rendering of move sequences to coordinates and SVG.

Move i happens at x = i + 1; frontier crossings occupy integer y-slots that
preserve the top-to-bottom order between moves.  Every edge becomes a
piecewise-linear curve; planarity and the height can then be re-checked
directly on the geometry, independently of the sweep bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .sweep import MoveSequence, SweepProblem, apply_move, initial_state


@dataclass
class Geometry:
    """Polylines per edge plus vertex positions."""

    edge_paths: dict[int, list[tuple[float, float]]]
    vertex_pos: dict[int, tuple[float, float]]
    width: float
    height_claimed: int


class RenderError(ValueError):
    pass


def _slot(pos: int, total_hint: int) -> float:
    # top entry (index 0) gets the largest y
    return float(total_hint - pos)


def render(problem: SweepProblem, drawing: MoveSequence) -> Geometry:
    """Realize a drawing with integer move x-coordinates.

    Strands are tracked as growing polylines keyed by frontier position;
    vertex moves pin their polylines to the vertex point, bends join or
    split them.
    """
    state = initial_state(problem)
    hint = 2 * (len(drawing.moves) + len(state[0])) + 4
    paths: list[list[tuple[float, float]]] = [
        [(0.0, _slot(i, hint))] for i in range(len(state[0]))
    ]
    owner: list[int] = list(range(len(paths)))  # frontier pos -> path index
    all_paths: list[list[tuple[float, float]]] = list(paths)
    path_edge: list[int] = [e for e, _, _ in state[0]]
    edge_pieces: dict[int, list[list[tuple[float, float]]]] = {}
    vertex_pos: dict[int, tuple[float, float]] = {}
    peak = len(state[0])

    def extend_all(x):
        for pos, pi in enumerate(owner):
            all_paths[pi].append((x, _slot(pos, hint)))

    for idx, mv in enumerate(drawing.moves):
        x = float(idx + 1)
        extend_all(x)
        if mv[0] == "V":
            _, v, arc_start, arc_len, gap = mv
            d = problem.tree.degree(v)
            emit = d - arc_len
            block = owner[gap : gap + arc_len]
            ymid = _slot(gap + (arc_len - 1) / 2.0 if arc_len else gap - 0.5, hint)
            vx = x + 0.5
            vertex_pos[v] = (vx, ymid)
            for pi in block:
                all_paths[pi].append((vx, ymid))
                edge_pieces.setdefault(path_edge[pi], []).append(all_paths[pi])
            new_entries = apply_move(problem, state, mv)[0][gap : gap + emit]
            fresh = []
            for j, (e, _, _) in enumerate(new_entries):
                pnew = [(vx, ymid)]
                all_paths.append(pnew)
                path_edge.append(e)
                fresh.append(len(all_paths) - 1)
            owner[gap : gap + arc_len] = fresh
        elif mv[0] == "L":
            _, e, gap = mv
            ymid = _slot(gap - 0.5, hint)
            start = (x + 0.5, ymid)
            ia, ib = len(all_paths), len(all_paths) + 1
            all_paths.append([start])
            all_paths.append([start])
            path_edge.extend([e, e])
            owner[gap:gap] = [ia, ib]
        else:
            _, pos = mv
            pa, pb = owner[pos], owner[pos + 1]
            ymid = _slot(pos + 0.5, hint)
            joint = (x + 0.5, ymid)
            all_paths[pa].append(joint)
            all_paths[pb].append(joint)
            merged = all_paths[pa] + all_paths[pb][-2::-1]
            e = path_edge[pa]
            owner[pos : pos + 2] = []
            edge_pieces.setdefault(e, []).append(merged)
        state = apply_move(problem, state, mv)
        peak = max(peak, len(state[0]))

    xf = float(len(drawing.moves) + 1)
    extend_all(xf)
    for pos, pi in enumerate(owner):
        edge_pieces.setdefault(path_edge[pi], []).append(all_paths[pi])

    edge_paths = {}
    for e, pieces in edge_pieces.items():
        edge_paths[e] = _assemble(e, pieces)
    floor = 1 if problem.interior_vertices() else 0
    return Geometry(edge_paths, vertex_pos, xf, max(peak, floor))


def _assemble(e: int, pieces: list[list[tuple[float, float]]]):
    """Join the drawn pieces of one edge into a single polyline."""
    pieces = [p for p in pieces if len(p) >= 1]
    if not pieces:
        return []
    chain = list(pieces[0])
    rest = pieces[1:]
    while rest:
        for i, p in enumerate(rest):
            if p[0] == chain[-1]:
                chain.extend(p[1:])
            elif p[-1] == chain[-1]:
                chain.extend(p[-2::-1])
            elif p[-1] == chain[0]:
                chain = p + chain[1:]
            elif p[0] == chain[0]:
                chain = p[::-1] + chain[1:]
            else:
                continue
            rest.pop(i)
            break
        else:
            raise RenderError(f"edge {e} pieces do not chain")
    chain = [pt for i, pt in enumerate(chain) if i == 0 or pt != chain[i - 1]]
    return chain


def verify_rendering(geom: Geometry) -> int:
    """Sweep vertical lines between distinct x-coordinates and return the
    maximum crossing count; rejects vertical segments."""
    xs = set()
    segs = []
    for e, path in geom.edge_paths.items():
        for (x1, y1), (x2, y2) in zip(path, path[1:]):
            if x1 == x2:
                raise RenderError("vertical segment in rendering")
            xs.update((x1, x2))
            segs.append((min(x1, x2), max(x1, x2)))
    if not segs:
        return 1 if geom.vertex_pos else 0
    xs = sorted(xs)
    best = 0
    for a, b in zip(xs, xs[1:]):
        mid = (a + b) / 2
        best = max(best, sum(1 for lo, hi in segs if lo < mid < hi))
    return max(best, 1 if geom.vertex_pos else 0)


def check_planar(geom: Geometry) -> bool:
    """No two edge images intersect except at shared endpoints."""
    items = []
    for e, path in geom.edge_paths.items():
        for seg in zip(path, path[1:]):
            items.append((e, seg))
    for i in range(len(items)):
        e1, s1 = items[i]
        for j in range(i + 1, len(items)):
            e2, s2 = items[j]
            if not _segments_ok(e1, s1, e2, s2):
                return False
    return True


def _segments_ok(e1, s1, e2, s2) -> bool:
    (ax, ay), (bx, by) = s1
    (cx, cy), (dx, dy) = s2
    shared = {(ax, ay), (bx, by)} & {(cx, cy), (dx, dy)}
    inter = _segment_intersection(s1, s2)
    if inter is None:
        return True
    if inter == "overlap":
        # consecutive segments of one edge may share only an endpoint
        return False
    if inter in shared:
        return True
    return False


def _segment_intersection(s1, s2):
    (ax, ay), (bx, by) = [(Fraction(x), Fraction(y)) for x, y in s1]
    (cx, cy), (dx, dy) = [(Fraction(x), Fraction(y)) for x, y in s2]
    r = (bx - ax, by - ay)
    s = (dx - cx, dy - cy)
    denom = r[0] * s[1] - r[1] * s[0]
    qp = (cx - ax, cy - ay)
    if denom == 0:
        cross = qp[0] * r[1] - qp[1] * r[0]
        if cross != 0:
            return None
        # collinear: check interval overlap beyond a single shared point
        def key(p):
            return p[0] * r[0] + p[1] * r[1]

        t0, t1 = 0, key((bx - ax, by - ay))
        u0 = key(qp)
        u1 = key((dx - ax, dy - ay))
        lo, hi = min(u0, u1), max(u0, u1)
        a, b = min(t0, t1), max(t0, t1)
        if hi < a or lo > b:
            return None
        if hi == a:
            return (float(ax + r[0] * 0), float(ay))  # shared single point
        if lo == b:
            return (float(bx), float(by))
        return "overlap"
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        px = ax + t * r[0]
        py = ay + t * r[1]
        return (float(px), float(py))
    return None


def to_svg(geom: Geometry, scale: float = 40.0, margin: float = 20.0) -> str:
    """Deterministic SVG with one path element per edge."""
    ys = [y for p in geom.edge_paths.values() for _, y in p]
    ys += [y for _, y in geom.vertex_pos.values()]
    ylo, yhi = (min(ys), max(ys)) if ys else (0.0, 1.0)
    w = geom.width * scale + 2 * margin
    h = (yhi - ylo + 1) * scale + 2 * margin

    def pt(x, y):
        return f"{x * scale + margin:.1f},{(yhi - y) * scale + margin:.1f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
        f'viewBox="0 0 {w:.0f} {h:.0f}">',
        '<g fill="none" stroke="#1f3552" stroke-width="2">',
    ]
    for e in sorted(geom.edge_paths):
        path = geom.edge_paths[e]
        if not path:
            continue
        d = "M " + " L ".join(pt(x, y) for x, y in path)
        lines.append(f'<path class="edge-{e}" d="{d}"/>')
    lines.append("</g>")
    for v in sorted(geom.vertex_pos):
        x, y = geom.vertex_pos[v]
        px, py = pt(x, y).split(",")
        lines.append(f'<circle class="vertex-{v}" cx="{px}" cy="{py}" r="4" fill="#c0392b"/>')
    lines.append("</svg>")
    return "\n".join(lines)
