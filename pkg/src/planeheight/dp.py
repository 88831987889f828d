"""The polynomial solver: bottom-up dynamic program over spine disks.

Row m holds spine and skew spine disks with m interior vertices that pass
the fat-structure candidate filter.  Each disk's optimal height is the
minimum over its decomposition schematics, with children read from lower
rows; the same-size chain step of Case 2.0 (and the single-vertex double
bend) couple disks within one row and are closed by value iteration.
A top-down reference mode evaluates the schematics without the candidate
filter, for auditing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

from .disks import (
    SpineDisk,
    bubble_descriptor,
    descriptor_problem,
    interior_vertex_count,
    interior_vertices,
    is_vertex_disk,
    make_descriptor,
    rot180,
    split_fan,
    vertex_disk_height,
    whole_tree_descriptor,
)
from .schematics import Schematic, all_schematics
from .sweep import MoveSequence, SweepProblem, replay, rot180_drawing
from .tree import OrderedTree, TreePath, anchor_fan

INF = 10 ** 9


@dataclass
class Entry:
    disk: SpineDisk
    row: int
    height: int = INF
    # evaluation plan: chain-step schematics then the grounding schematic;
    # None for vertex disks
    plan: list | None = None


@dataclass
class DPTable:
    tree: OrderedTree
    entries: dict[bytes, Entry] = field(default_factory=dict)
    rows: dict[int, list[bytes]] = field(default_factory=dict)

    def add(self, d: SpineDisk) -> bytes:
        k = d.key()
        if k not in self.entries:
            row = interior_vertex_count(self.tree, d)
            self.entries[k] = Entry(d, row)
            self.rows.setdefault(row, []).append(k)
        return k

    def resolve(self, d: SpineDisk):
        """(key, flipped) for d or its 180-degree partner, else None."""
        k = d.key()
        if k in self.entries:
            return k, False
        r = rot180(self.tree, d)
        if r is not None:
            rk = r.key()
            if rk in self.entries:
                return rk, True
        return None

    def resolve_best(self, d: SpineDisk):
        """Like resolve, but prefers the form with the smaller height, so
        evaluation and reconstruction agree even when both forms exist."""
        options = []
        k = d.key()
        if k in self.entries:
            options.append((self.entries[k].height, 0, k, False))
        r = rot180(self.tree, d)
        if r is not None and r.key() in self.entries:
            rk = r.key()
            options.append((self.entries[rk].height, 1, rk, True))
        if not options:
            return None
        h, _, key, flip = min(options)
        return key, flip

    def height_of(self, d: SpineDisk) -> int | None:
        got = self.resolve_best(d)
        if got is None:
            return None
        h = self.entries[got[0]].height
        return None if h >= INF else h

    def dump(self):
        for row in sorted(self.rows):
            for k in self.rows[row]:
                e = self.entries[k]
                ground = e.plan[-1] if e.plan else None
                yield {
                    "row": row,
                    "key": k.decode(),
                    "height": None if e.height >= INF else e.height,
                    "case": ground.case if ground else (
                        "vertex-disk" if is_vertex_disk(self.tree, e.disk) else None),
                    "chain": max(0, len(e.plan) - 1) if e.plan else 0,
                    "children": [c.key().decode() for c in ground.children()]
                    if ground else [],
                }


def height_lower_bound(tree: OrderedTree) -> int:
    return max([1] + [ceil(tree.degree(v) / 2) for v in range(tree.n)])


# -- candidate enumeration (the fat-structure filter) -------------------


def iter_paths(tree: OrderedTree):
    for u in range(tree.n):
        yield (u,)
    for u in range(tree.n):
        for v in range(u + 1, tree.n):
            yield tree.path_between(u, v)


def path_anchor_info(tree: OrderedTree, path):
    """fan order, per-anchor root (off-path endpoint) and subtree size."""
    fan = anchor_fan(tree, TreePath(tuple(path)))
    roots, sizes = {}, {}
    for e, v in zip(fan.anchors, fan.anchor_vertex):
        root = tree.edge_other(e, v)
        roots[e] = root
        sizes[e] = tree.subtree_size(e, root)
    return fan, roots, sizes


def exposed_height_from_table(tree, table: DPTable, e: int, root: int):
    return table.height_of(bubble_descriptor(tree, e, root))


def forced_boundary(tree: OrderedTree, path, b: int, split, m: int):
    """B_1 (size-forced boundary edges) or None when infeasible.

    split = (left set, right set) assigning every anchor a side.
    """
    fan, roots, sizes = path_anchor_info(tree, path)
    p = len(path)
    b1 = {e for e in fan.anchors if sizes[e] > m - p}
    left, right = split
    if len(b1) > 2 * b:
        return None
    if len(b1) == 2 * b and (len(b1 & set(left)) > b or len(b1 & set(right)) > b):
        return None
    return b1


def is_light(tree, table: DPTable, e: int, root: int, H: int, b: int) -> bool:
    eh = exposed_height_from_table(tree, table, e, root)
    if eh is None:
        raise RuntimeError(f"bubble entry missing for edge {e}")
    return eh <= H - b + 1


def _fill_options(fan, at_vertex_lights, thr, eh, max_fill):
    """Light boundary choices: one run of exactly-threshold edges plus one
    run of below-threshold edges, both consecutive around one vertex."""
    fills = {frozenset()}
    for v, edges in at_vertex_lights.items():
        e0 = [e for e in edges if eh[e] == thr]
        e1 = [e for e in edges if eh[e] < thr]
        runs0 = _runs(e0, max_fill)
        runs1 = _runs(e1, max_fill)
        for r0 in runs0:
            for r1 in runs1:
                if r0 or r1:
                    s = frozenset(r0) | frozenset(r1)
                    if len(s) == len(r0) + len(r1) and len(s) <= max_fill:
                        fills.add(s)
    return fills


def _runs(lst, cap):
    out = [()]
    for i in range(len(lst)):
        for j in range(i + 1, min(len(lst), i + cap) + 1):
            out.append(tuple(lst[i:j]))
    return out


def enumerate_candidates(tree: OrderedTree, m: int, table: DPTable,
                         height_cap: int):
    """Row-m spine and skew spine disks passing the candidate filter,
    plus every bubble and (at m == n) the whole-tree disks."""
    out: dict[bytes, SpineDisk] = {}

    def emit(d):
        if d is not None:
            out.setdefault(d.key(), d)

    for e in range(tree.n - 1):
        for root in tree.edges[e]:
            if tree.subtree_size(e, root) == m:
                emit(bubble_descriptor(tree, e, root))
    if m == tree.n:
        for v in range(tree.n):
            emit(whole_tree_descriptor(tree, v))

    for path in iter_paths(tree):
        p = len(path)
        if p > m:
            continue
        fan, roots, sizes = path_anchor_info(tree, path)
        anchors = list(fan.anchors)
        if not anchors:
            continue
        small = [e for e in anchors if sizes[e] <= m - p]
        eh = {}
        for e in small:
            eh[e] = exposed_height_from_table(tree, table, e, roots[e])
            if eh[e] is None:
                eh[e] = INF
        big = [e for e in anchors if sizes[e] > m - p]
        small_total = sum(sizes[e] for e in small)
        if small_total < m - p:
            continue
        for b in range(1, height_cap + 1):
            for H in range(b, height_cap + 1):
                thr = H - b + 1
                nonlight = [e for e in small if eh[e] > thr]
                forced = set(big) | set(nonlight)
                for cap_l, cap_r in ((b, b), (b + 1, b), (b, b + 1)):
                    total = cap_l + cap_r
                    if len(forced) > total or total > len(anchors):
                        continue
                    lights_at = {}
                    for e in small:
                        if e in forced:
                            continue
                        lights_at.setdefault(
                            fan.anchor_vertex[anchors.index(e)], []).append(e)
                    for chosen in _fill_options(fan, lights_at, thr, eh,
                                                total - len(forced)):
                        bset = forced | chosen
                        if len(bset) != total:
                            continue
                        inner = sum(sizes[e] for e in small if e not in bset)
                        if inner != m - p:
                            continue
                        cyc = [e for e in anchors if e in bset]
                        for s in range(len(cyc)):
                            rot = cyc[s:] + cyc[:s]
                            right, left = rot[:cap_r], rot[cap_r:]
                            if chosen and (chosen & set(left)) and (
                                    chosen & set(right)):
                                continue
                            if chosen:
                                full = set(left) if not (chosen & set(left)) \
                                    else set(right)
                                if not full <= forced:
                                    continue
                            emit(make_descriptor(
                                tree, path, tuple(reversed(left)), tuple(right)))
    return list(out.values())


def seed_row_one(tree: OrderedTree):
    """Row 1: balanced vertex splits (even degrees) and their skew
    variants (odd degrees), plus leaf bubbles."""
    empty = DPTable(tree)
    return enumerate_candidates(tree, 1, empty, height_cap=max(
        2, height_lower_bound(tree) + 1))


# -- evaluation ---------------------------------------------------------


STEP_CASES = {"2.0-step", "k1-double-bend"}


def eval_schematic(tree, table: DPTable, s: Schematic) -> int | None:
    """max over slabs of pipes + block height; None if a child is missing."""
    worst = 0
    for slab in s.slabs:
        blk = slab.block
        if blk.kind == "bend":
            contrib = 2
        else:
            h = table.height_of(blk.disk)
            if h is None:
                return None
            contrib = h
        worst = max(worst, slab.pipes() + contrib)
    return worst


def _split_step(s: Schematic):
    """(cost, floor, mid disk) of a same-size chain step schematic."""
    cost = floor = 0
    mid = None
    for slab in s.slabs:
        if slab.block.kind == "disk":
            mid = slab.block.disk
            cost = slab.pipes()
        else:
            floor = max(floor, slab.pipes() + 2)
    return cost, floor, mid


def _eval_entry(tree, table: DPTable, d: SpineDisk, eh, step_cap: int):
    """(height, plan): min over ground schematics and virtually unrolled
    same-size chains (Case 2.0 nesting, single-vertex double bends); the
    plan lists the chain's step schematics then the grounding one."""
    best, best_plan = INF, None

    def ground(disk):
        g_best, g_plan = INF, None
        for s in all_schematics(tree, disk, eh=eh):
            if s.case in STEP_CASES:
                continue
            v = eval_schematic(tree, table, s)
            if v is not None and v < g_best:
                g_best, g_plan = v, s
        return g_best, g_plan

    seen = {}
    frontier = [(0, 0, d, [])]
    while frontier:
        nxt = []
        for cost, floor, disk, steps in frontier:
            g, g_plan = ground(disk)
            if g < INF:
                v = max(floor, cost + g)
                if v < best:
                    best, best_plan = v, steps + [g_plan]
            if cost >= step_cap or floor >= best:
                continue
            for s in all_schematics(tree, disk, eh=eh):
                if s.case not in STEP_CASES:
                    continue
                c2, f2, mid = _split_step(s)
                if mid is None:
                    continue
                ncost, nfloor = cost + c2, max(floor, f2 + cost)
                key = mid.key()
                old = seen.get(key)
                if old is not None and old[0] <= ncost and old[1] <= nfloor:
                    continue
                seen[key] = (ncost, nfloor)
                nxt.append((ncost, nfloor, mid, steps + [s]))
        frontier = nxt
    return best, best_plan


def _evaluate_rows(tree: OrderedTree, table: DPTable, m: int, step_cap: int):
    for k in table.rows.get(m, []):
        _evaluate_entry(tree, table, k, step_cap)


def _evaluate_entry(tree: OrderedTree, table: DPTable, k: bytes, step_cap: int):
    def eh(edge, root):
        return table.height_of(bubble_descriptor(tree, edge, root))

    e = table.entries[k]
    if is_vertex_disk(tree, e.disk):
        e.height = vertex_disk_height(tree, e.disk)
        e.plan = None
        return
    e.height, e.plan = _eval_entry(tree, table, e.disk, eh, step_cap)


def eval_case_2_0_chain(tree, table: DPTable, d: SpineDisk,
                        max_steps: int | None = None):
    """Candidate heights from nested same-size Case 2.0 steps of d, one
    per chain, each grounded in a non-chain evaluation."""
    cap = max_steps if max_steps is not None else 4 * (tree.n + 2)

    def eh(edge, root):
        return table.height_of(bubble_descriptor(tree, edge, root))

    heights = []
    frontier = [(0, 0, d)]
    seen = set()
    for _ in range(cap + 1):
        nxt = []
        for cost, floor, disk in frontier:
            g_best = INF
            for s in all_schematics(tree, disk, eh=eh):
                if s.case in STEP_CASES:
                    c2, f2, mid = _split_step(s)
                    if mid is not None and mid.key() not in seen:
                        seen.add(mid.key())
                        nxt.append((cost + c2, max(floor, f2 + cost), mid))
                    continue
                v = eval_schematic(tree, table, s)
                if v is not None:
                    g_best = min(g_best, v)
            if g_best < INF:
                heights.append(max(floor, cost + g_best))
        frontier = nxt
        if not frontier:
            break
    return sorted(set(heights))


# -- solvers ------------------------------------------------------------


@dataclass
class SolveResult:
    height: int
    table: DPTable
    root_key: bytes

    @property
    def root(self) -> Entry:
        return self.table.entries[self.root_key]


def solve_bottomup(tree: OrderedTree, height_cap: int | None = None) -> SolveResult:
    cap = height_lower_bound(tree) if height_cap is None else height_cap
    while True:
        result = _fill(tree, cap)
        if result is not None:
            return result
        cap += 1


def derived_skews(tree: OrderedTree, d: SpineDisk):
    """Skew disks obtained by promoting one internal anchor of a spine
    disk to a boundary edge (each planar side)."""
    if d.is_skew():
        return []
    out = []
    boundary = set(d.boundary())
    sset = set(d.spine)
    inside = interior_vertices(tree, d)
    for v in d.spine:
        for e in tree.rotation[v]:
            w = tree.edge_other(e, v)
            if w in sset or e in boundary or w not in inside:
                continue
            fan = anchor_fan(tree, TreePath(d.spine))
            for left, right in ((set(d.left) | {e}, set(d.right)),
                                (set(d.left), set(d.right) | {e})):
                split = split_fan(fan, frozenset(left), frozenset(right))
                if split is None:
                    continue
                sd = make_descriptor(tree, d.spine, split[0], split[1])
                if sd is not None:
                    out.append(sd)
    return out


def _fill(tree: OrderedTree, cap: int) -> SolveResult | None:
    table = DPTable(tree)
    step_cap = 4 * (cap + 2)
    for m in range(1, tree.n + 1):
        fresh = []
        for d in enumerate_candidates(tree, m, table, cap):
            k = d.key()
            if k not in table.entries:
                table.add(d)
                fresh.append(d)
        late = []
        for d in fresh:
            for sd in derived_skews(tree, d):
                k = sd.key()
                if k not in table.entries:
                    table.add(sd)
                    late.append(k)
        for k in sorted(late, key=lambda k: table.entries[k].row):
            if table.entries[k].row < m:  # rows below m were already evaluated
                _evaluate_entry(tree, table, k, step_cap)
        _evaluate_rows(tree, table, m, step_cap)
    best_key, best = None, INF
    for v in range(tree.n):
        got = table.resolve(whole_tree_descriptor(tree, v))
        if got is None:
            continue
        h = table.entries[got[0]].height
        if h < best:
            best, best_key = h, got[0]
    if best_key is None or best > cap:
        return None
    return SolveResult(best, table, best_key)


def solve_topdown(tree: OrderedTree, max_descriptors: int = 2_000_00) -> SolveResult:
    """Reference mode: memoized evaluation over every reachable descriptor
    (no candidate filter); exponential in general, audit use only."""
    table = DPTable(tree)
    stack = [whole_tree_descriptor(tree, v) for v in range(tree.n)]
    while stack:
        d = stack.pop()
        if table.resolve(d) is not None:
            continue
        table.add(d)
        for s in all_schematics(tree, d):
            for c in s.children():
                if table.resolve(c) is None:
                    stack.append(c)
        if len(table.entries) > max_descriptors:
            raise RuntimeError("top-down descriptor explosion")
    step_cap = 4 * (tree.n + 2)
    for m in sorted(table.rows):
        _evaluate_rows(tree, table, m, step_cap)
    best_key, best = None, INF
    for v in range(tree.n):
        got = table.resolve(whole_tree_descriptor(tree, v))
        if got is not None:
            h = table.entries[got[0]].height
            if h < best:
                best, best_key = h, got[0]
    if best_key is None:
        raise RuntimeError("top-down failed to evaluate the whole tree")
    return SolveResult(best, table, best_key)


def winning_descriptor_keys(tree, table: DPTable, root_key: bytes) -> set[bytes]:
    """Descriptor keys of the winning structure tree below root_key.

    Chain-step intermediates are evaluated virtually (never stored), so
    only grounding-schematic children are collected.
    """
    seen: set[bytes] = set()
    stack = [root_key]
    while stack:
        k = stack.pop()
        if k in seen:
            continue
        seen.add(k)
        e = table.entries[k]
        if not e.plan:
            continue
        for c in e.plan[-1].children():
            got = table.resolve(c)
            if got is not None:
                stack.append(got[0])
    return seen


# -- drawing reconstruction ---------------------------------------------


def reconstruct_drawing(tree: OrderedTree, table: DPTable,
                        root_key: bytes) -> MoveSequence:
    memo: dict[bytes, MoveSequence] = {}

    def realize(s: Schematic, d: SpineDisk, inner) -> MoveSequence:
        """Splice block drawings into the slabs; `inner` supplies the
        drawing of a virtual chain-step child."""
        moves = []
        for slab in s.slabs:
            off = len(slab.above)
            blk = slab.block
            if blk.kind == "bend":
                if blk.left:  # right bend consuming (e, e)
                    moves.append(("R", off))
                else:
                    moves.append(("L", blk.edge, off))
                continue
            if inner is not None and interior_vertex_count(
                    tree, blk.disk) == interior_vertex_count(tree, d):
                sub = inner
            else:
                got = table.resolve_best(blk.disk)
                sub = build(got[0])
                if got[1]:
                    stored = table.entries[got[0]].disk
                    sub = rot180_drawing(descriptor_problem(tree, stored), sub)
            for mv in sub.moves:
                if mv[0] == "V":
                    moves.append((mv[0], mv[1], mv[2], mv[3], mv[4] + off))
                elif mv[0] == "L":
                    moves.append((mv[0], mv[1], mv[2] + off))
                else:
                    moves.append((mv[0], mv[1] + off))
        return MoveSequence(d.left, tuple(moves), d.right)

    def build(key: bytes) -> MoveSequence:
        if key in memo:
            return memo[key]
        entry = table.entries[key]
        d = entry.disk
        if not entry.plan:
            out = _vertex_disk_drawing(tree, d)
        else:
            steps, ground = entry.plan[:-1], entry.plan[-1]
            disks = [d]
            for s in steps:
                _, _, mid = _split_step(s)
                disks.append(mid)
            out = realize(ground, disks[-1], None)
            for s, host in zip(reversed(steps), reversed(disks[:-1])):
                out = realize(s, host, out)
        replay(descriptor_problem(tree, d), out)
        memo[key] = out
        return out

    return build(root_key)


def _vertex_disk_drawing(tree: OrderedTree, d: SpineDisk) -> MoveSequence:
    v = d.spine[0]
    rot = tree.rotation[v]
    deg = len(rot)
    if deg == 0:
        return MoveSequence((), (("V", v, 0, 0, 0),), ())
    want = tuple(reversed(d.left))  # consumed block bottom-to-top
    for start in range(deg):
        if tuple(rot[(start + i) % deg] for i in range(len(want))) == want:
            emitted = tuple(rot[(start + len(want) + i) % deg]
                            for i in range(deg - len(want)))
            if emitted == tuple(d.right):
                return MoveSequence(
                    d.left, (("V", v, start, len(want), 0),), d.right)
    raise RuntimeError("vertex disk orders do not match any rotation arc")
