"""Decomposition schematics for spine and skew spine disks.

Every non-vertex disk decomposes into a horizontal sequence of slabs, each
carrying pipes above and below one block (a child disk or a single bend).
The constructions below instantiate the decomposition cases; the mechanical
assembler derives the pipe and cut orders from the parent boundary orders
and rejects a construction whose cuts do not line up, so an emitted
schematic is always internally consistent.

Case tags: spine disks 1.0.1, 1.0.2, 1.1.1, 1.1.2, 1.2, 1.3 and the
single-vertex double-bend closure; skew disks 2.0 (with its same-size
chain step), 2.1, 2.2, 2.3.  Each case is built in one orientation; the
180-degree rotation supplies the mirrored family.
"""

from __future__ import annotations

from dataclasses import dataclass

from .disks import (
    SpineDisk,
    interior_vertices,
    is_vertex_disk,
    make_descriptor,
    pairing,
    rot180,
    split_fan,
    spine_vertex_of,
)
from .tree import OrderedTree, TreePath, anchor_fan


@dataclass(frozen=True)
class Block:
    kind: str  # "disk" | "bend"
    left: tuple[int, ...]
    right: tuple[int, ...]
    disk: SpineDisk | None = None
    edge: int | None = None


@dataclass(frozen=True)
class Slab:
    above: tuple[int, ...]
    block: Block
    below: tuple[int, ...]

    def pipes(self) -> int:
        return len(self.above) + len(self.below)


@dataclass(frozen=True)
class Schematic:
    case: str
    params: tuple
    slabs: tuple[Slab, ...]

    def children(self):
        return [s.block.disk for s in self.slabs if s.block.kind == "disk"]

    def cut_heights(self, parent: SpineDisk):
        cuts = [len(parent.left)]
        width = len(parent.left)
        for s in self.slabs:
            width += len(s.block.right) - len(s.block.left)
            cuts.append(width)
        return cuts


def disk_block(tree: OrderedTree, spine, left_set, right_set) -> Block | None:
    fan = anchor_fan(tree, TreePath(tuple(spine)))
    split = split_fan(fan, frozenset(left_set), frozenset(right_set))
    if split is None:
        return None
    left, right = split
    d = make_descriptor(tree, spine, left, right)
    if d is None:
        return None
    return Block("disk", left, right, disk=d)


def bend_block(edge: int, side: str) -> Block:
    if side == "R":  # right bend: consumes two adjacent crossings
        return Block("bend", (edge, edge), (), edge=edge)
    return Block("bend", (), (edge, edge), edge=edge)


def assemble(tree: OrderedTree, parent: SpineDisk, case: str, params,
             blocks) -> Schematic | None:
    """Lay out blocks left to right, deriving pipes; None when impossible."""
    if any(b is None for b in blocks):
        return None

    target = list(parent.right)

    def rec(cut, i):
        if i == len(blocks):
            return [] if cut == target else None
        blk = blocks[i]
        want = list(blk.left)
        if want:
            spots = [s for s in range(len(cut) - len(want) + 1)
                     if cut[s : s + len(want)] == want]
        else:
            spots = range(len(cut) + 1)
        for s in spots:
            above, below = cut[:s], cut[s + len(want) :]
            rest = rec(above + list(blk.right) + below, i + 1)
            if rest is not None:
                return [(tuple(above), tuple(below))] + rest
        return None

    placed = rec(list(parent.left), 0)
    if placed is None:
        return None
    slabs = tuple(Slab(a, blk, b) for (a, b), blk in zip(placed, blocks))
    return Schematic(case, params, slabs)


class _Ctx:
    """Per-descriptor helpers shared by the case generators."""

    def __init__(self, tree: OrderedTree, d: SpineDisk):
        self.tree = tree
        self.d = d
        self.eh = None
        self.pairs, self.extra = pairing(tree, d)
        self.spine = d.spine
        self.sset = set(d.spine)
        self.interior = interior_vertices(tree, d)
        self.at: dict[int, list[tuple[int, int]]] = {}
        for l, r, v in self.pairs:
            self.at.setdefault(v, []).append((l, r))
        self.extra_vertex = (
            spine_vertex_of(tree, d, self.extra) if self.extra is not None else None)

    def spine_edge(self, u, v) -> int:
        for e in self.tree.rotation[u]:
            if self.tree.edge_other(e, u) == v:
                return e
        raise AssertionError("not spine neighbors")

    def lefts(self, verts) -> set[int]:
        return {l for v in verts for l, _ in self.at.get(v, [])}

    def rights(self, verts) -> set[int]:
        return {r for v in verts for _, r in self.at.get(v, [])}

    def internal_anchors_at(self, v) -> list[int]:
        """Anchor edges at spine vertex v whose subtree lies inside."""
        out = []
        boundary = set(self.d.boundary())
        for e in self.tree.rotation[v]:
            w = self.tree.edge_other(e, v)
            if w in self.sset or e in boundary:
                continue
            out.append(e)
        return out

    def subtree_of(self, e, away_from) -> frozenset[int]:
        root = self.tree.edge_other(e, away_from)
        return self.tree.subtree_vertices(e, root)

    def bubble_height_guess(self, e, v) -> int:
        root = self.tree.edge_other(e, v)
        if self.eh is not None:
            got = self.eh(e, root)
            if got is not None:
                return got
        return len(self.tree.subtree_vertices(e, root))

    def stack_order(self, run, v, inner_first=False):
        """Stacking order of peeled bubbles: the taller a bubble, the fewer
        pipes should pass over it (exchange-optimal)."""
        order = sorted(run, key=lambda e: -self.bubble_height_guess(e, v))
        return list(reversed(order)) if inner_first else order

    def seg_block(self, seg, extra_left=(), extra_right=()) -> Block | None:
        left = self.lefts(seg) | set(extra_left)
        right = self.rights(seg) | set(extra_right)
        return disk_block(self.tree, tuple(seg), left, right)

    def chain_singles(self, order, lo, hi):
        """Singleton spine blocks for order[lo:hi] (exclusive)."""
        blocks = []
        for i in range(lo, hi):
            u = order[i]
            se_in = self.spine_edge(order[i - 1], u)
            se_out = self.spine_edge(u, order[i + 1])
            blocks.append(self.seg_block((u,), (se_in,), (se_out,)))
        return blocks

    def order_extreme_left_edges(self):
        """Left-boundary edges able to bend over everything (top or bottom
        of the full left order), paired with their spine vertex."""
        out = []
        for e in {self.d.left[0], self.d.left[-1]} if self.d.left else set():
            out.append((e, spine_vertex_of(self.tree, self.d, e)))
        return out


def raw_schematics(tree: OrderedTree, d: SpineDisk, eh=None):
    """Canonical-orientation schematics of one descriptor.

    eh(edge, root) estimates exposed heights (used only to pick the
    value-optimal stacking order of peeled bubbles)."""
    if is_vertex_disk(tree, d):
        return []
    ctx = _Ctx(tree, d)
    ctx.eh = eh
    out = []
    out += _case_peel(ctx)
    if d.is_skew():
        heavy = "L" if len(d.left) > len(d.right) else "R"
        if heavy == "L":
            out += _case_2_0(ctx)
            out += _case_2_1(ctx)
            out += _case_2_2(ctx)
            out += _case_2_3(ctx)
    else:
        out += _case_1_3(ctx)
        out += _case_1_1_2(ctx)
        out += _case_1_2(ctx)
        out += _case_1_0_1(ctx)
        out += _case_1_0_2(ctx)
        out += _case_double_bend(ctx)
    return [s for s in out if s is not None]


def rot180_schematic(tree: OrderedTree, s: Schematic) -> Schematic:
    """Map a schematic of rot180(d) to a schematic of d."""
    slabs = []
    for slab in reversed(s.slabs):
        blk = slab.block
        if blk.kind == "disk":
            nd = rot180(tree, blk.disk)
            nb = Block("disk", tuple(reversed(blk.right)),
                       tuple(reversed(blk.left)), disk=nd)
        else:
            nb = Block("bend", tuple(reversed(blk.right)),
                       tuple(reversed(blk.left)), edge=blk.edge)
        slabs.append(Slab(tuple(reversed(slab.below)), nb,
                          tuple(reversed(slab.above))))
    return Schematic(s.case, ("rot180",) + s.params, tuple(slabs))


def all_schematics(tree: OrderedTree, d: SpineDisk, eh=None):
    """Both orientations, deduplicated by slab structure."""
    out = {}
    for s in raw_schematics(tree, d, eh=eh):
        out.setdefault(s.slabs, s)
    rd = rot180(tree, d)
    if rd is not None:
        for s in raw_schematics(tree, rd, eh=eh):
            rs = rot180_schematic(tree, s)
            out.setdefault(rs.slabs, rs)
    return list(out.values())


# -- spine disk cases -------------------------------------------------


def _ends(spine):
    orders = [tuple(spine)]
    if len(spine) > 1:
        orders.append(tuple(reversed(spine)))
    return orders


def _case_1_3(ctx: _Ctx):
    """Last move is an extreme spine vertex; it splits off as a vertex disk."""
    out = []
    d, tree = ctx.d, ctx.tree
    for order in _ends(d.spine):
        z = order[-1]
        if ctx.internal_anchors_at(z):
            continue
        if len(order) == 1:
            anchors = [e for v in d.spine for e in ctx.internal_anchors_at(v)]
            if len(anchors) != 1:
                continue
            f = anchors[0]
            root = tree.edge_other(f, z)
            blocks = [
                disk_block(tree, (root,), set(), {f}),
                disk_block(tree, (z,), set(d.left) | {f}, set(d.right)),
            ]
            out.append(assemble(tree, d, "1.3", (z, f), blocks))
            continue
        se = ctx.spine_edge(order[-2], z)
        blocks = [ctx.seg_block(order[:1], (), (ctx.spine_edge(order[0], order[1]),))]
        blocks += ctx.chain_singles(order, 1, len(order) - 1)
        blocks.append(
            disk_block(tree, (z,), {se} | ctx.lefts([z]), ctx.rights([z])))
        out.append(assemble(tree, d, "1.3", (z,), blocks))
    return out


def _case_peel(ctx: _Ctx):
    """Peel runs of anchored subtrees at one spine vertex into bubble
    stacks on the two sides, promoting their anchors to the child's
    boundary (covers Case 1.1.1 and the bubble sequences of Figures 8-9
    around one vertex)."""
    out = []
    d, tree = ctx.d, ctx.tree
    diff = len(d.left) - len(d.right)
    for v in d.spine:
        anchors = ctx.internal_anchors_at(v)
        if not anchors:
            continue
        runs = _runs_of(anchors)
        for lr in runs:
            for rr in runs:
                if set(lr) & set(rr) or not (lr or rr):
                    continue
                if abs(diff + len(lr) - len(rr)) > 1:
                    continue
                child = disk_block(tree, d.spine,
                                   set(d.left) | set(lr), set(d.right) | set(rr))
                if child is None:
                    continue
                blocks = [disk_block(tree, (tree.edge_other(g, v),), set(), {g})
                          for g in ctx.stack_order(lr, v)]
                blocks.append(child)
                blocks += [disk_block(tree, (tree.edge_other(f, v),), {f}, set())
                           for f in ctx.stack_order(rr, v, inner_first=True)]
                out.append(assemble(tree, d, "1.1.1", (v, lr, rr), blocks))
    return out


def _runs_of(lst):
    out = []
    for i in range(len(lst)):
        for j in range(i + 1, len(lst) + 1):
            out.append(tuple(lst[i:j]))
    out.append(())
    return out


def _case_1_1_2(ctx: _Ctx):
    """Both extreme moves inside one subtree at a spine end: extend the
    spine into it and bubble both sides of the fork."""
    out = []
    d, tree = ctx.d, ctx.tree
    b = d.b
    for order in _ends(d.spine):
        z = order[-1]
        for f0 in ctx.internal_anchors_at(z):
            root = tree.edge_other(f0, z)
            for u in sorted(tree.subtree_vertices(f0, root)):
                path = tree.path_between(z, u)
                off = [e for e in tree.rotation[u]
                       if tree.edge_other(e, u) not in path]
                for fl in off:
                    for fr in off:
                        if fl == fr:
                            continue
                        if b == 0:
                            mid = disk_block(tree, (u,), {fl}, {fr})
                        else:
                            mid = disk_block(
                                tree, tuple(order) + path[1:],
                                set(d.left) | {fl}, set(d.right) | {fr})
                        bl = disk_block(tree, (tree.edge_other(fl, u),), set(), {fl})
                        br = disk_block(tree, (tree.edge_other(fr, u),), {fr}, set())
                        out.append(assemble(
                            tree, d, "1.1.2", (z, u, fl, fr), [bl, mid, br]))
    return out


def _case_1_2(ctx: _Ctx):
    """Last move is a bend on a spine edge: chain one side, keep the other
    as a skew block that absorbs the bent edge."""
    out = []
    d, tree = ctx.d, ctx.tree
    for order in _ends(d.spine):
        for j in range(len(order) - 1):
            es = ctx.spine_edge(order[j], order[j + 1])
            blocks = []
            if j == 0:
                blocks.append(ctx.seg_block(order[:1], (), (es,)))
            else:
                blocks.append(ctx.seg_block(
                    order[:1], (), (ctx.spine_edge(order[0], order[1]),)))
                blocks += ctx.chain_singles(order, 1, j)
                blocks.append(ctx.seg_block(
                    (order[j],), (ctx.spine_edge(order[j - 1], order[j]),), (es,)))
            blocks.append(ctx.seg_block(order[j + 1 :], (es,), ()))
            out.append(assemble(tree, d, "1.2", (es, order[j]), blocks))
    return out


def _case_1_0_1(ctx: _Ctx):
    """Last move bends a left-boundary edge at a spine extreme; the spine
    chains toward it and the bend splits off at the far right."""
    out = []
    d, tree = ctx.d, ctx.tree
    if len(d.spine) < 2:
        return out
    for e, ve in ctx.order_extreme_left_edges():
        if ve not in (d.spine[0], d.spine[-1]):
            continue
        order = tuple(d.spine) if d.spine[-1] == ve else tuple(reversed(d.spine))
        alpha_side = ctx.rights([ve])
        se = ctx.spine_edge(order[-2], ve)
        blocks = [ctx.seg_block(order[:1], (), (ctx.spine_edge(order[0], order[1]),))]
        blocks += ctx.chain_singles(order, 1, len(order) - 1)
        blocks.append(disk_block(
            tree, (ve,), {se} | (ctx.lefts([ve]) - {e}), ctx.rights([ve]) | {e}))
        blocks.append(bend_block(e, "R"))
        out.append(assemble(tree, d, "1.0.1", (e, ve), blocks))
    return out


def _case_1_0_2(ctx: _Ctx):
    """Bent boundary edge at an extreme whose vertex also holds the first
    move's subtree: bubble that subtree on the left."""
    out = []
    d, tree = ctx.d, ctx.tree
    for e, ve in ctx.order_extreme_left_edges():
        if ve not in (d.spine[0], d.spine[-1]):
            continue
        for f in ctx.internal_anchors_at(ve):
            root = tree.edge_other(f, ve)
            bub = disk_block(tree, (root,), set(), {f})
            mid = disk_block(tree, d.spine,
                             (set(d.left) - {e}) | {f}, set(d.right) | {e})
            out.append(assemble(
                tree, d, "1.0.2", (e, f), [bub, mid, bend_block(e, "R")]))
    return out


def _case_double_bend(ctx: _Ctx):
    """Single-vertex spine disk with both extreme moves bending boundary
    edges: both bends split off, the re-paired middle keeps every vertex."""
    out = []
    d, tree = ctx.d, ctx.tree
    if len(d.spine) != 1 or not d.left or not d.right:
        return out
    v = d.spine[0]
    for er in {d.left[0], d.left[-1]}:
        for el in {d.right[0], d.right[-1]}:
            mid = disk_block(tree, (v,),
                             (set(d.left) - {er}) | {el},
                             (set(d.right) - {el}) | {er})
            out.append(assemble(tree, d, "k1-double-bend", (er, el),
                                [bend_block(el, "L"), mid, bend_block(er, "R")]))
    return out


# -- skew disk cases (canonical: extra boundary edge on the left) ------


def _case_2_0(ctx: _Ctx):
    """Last move bends a left-boundary edge at a spine extreme."""
    out = []
    d, tree = ctx.d, ctx.tree
    w = ctx.extra_vertex
    for e, ve in ctx.order_extreme_left_edges():
        if ve not in (d.spine[0], d.spine[-1]):
            continue
        order = tuple(d.spine) if d.spine[-1] == ve else tuple(reversed(d.spine))
        iw = order.index(w)
        if iw == len(order) - 1:
            # same interior size: the chain step of Case 2.0
            mid = disk_block(tree, d.spine, set(d.left) - {e}, set(d.right) | {e})
            out.append(assemble(tree, d, "2.0-step", (e,),
                                [mid, bend_block(e, "R")]))
            continue
        blocks = [ctx.seg_block(order[: iw + 1], (ctx.extra,),
                                (ctx.spine_edge(order[iw], order[iw + 1]),))]
        blocks += ctx.chain_singles(order, iw + 1, len(order) - 1)
        se = ctx.spine_edge(order[-2], ve)
        blocks.append(disk_block(
            tree, (ve,), {se} | (ctx.lefts([ve]) - {e}), ctx.rights([ve]) | {e}))
        blocks.append(bend_block(e, "R"))
        out.append(assemble(tree, d, "2.0", (e, ve), blocks))
    return out


def _case_2_1(ctx: _Ctx):
    """Last move inside an anchored subtree hanging away from the extra
    edge's vertex: bubble it off to the right, chaining the spine between
    the extra edge and the anchor (the same-vertex variant is a peel)."""
    out = []
    d, tree = ctx.d, ctx.tree
    w = ctx.extra_vertex
    for v in d.spine:
        for f in ctx.internal_anchors_at(v):
            root = tree.edge_other(f, v)
            bub = disk_block(tree, (root,), {f}, set())
            if v == w:
                continue
            order = tuple(d.spine)
            if order.index(w) > order.index(v):
                order = tuple(reversed(order))
            iw, iv = order.index(w), order.index(v)
            blocks = [ctx.seg_block(order[: iw + 1], (ctx.extra,),
                                    (ctx.spine_edge(order[iw], order[iw + 1]),))]
            blocks += ctx.chain_singles(order, iw + 1, iv)
            blocks.append(ctx.seg_block(
                order[iv:], (ctx.spine_edge(order[iv - 1], order[iv]),), (f,)))
            blocks.append(bub)
            out.append(assemble(tree, d, "2.1", (f, v), blocks))
    return out


def _case_2_2(ctx: _Ctx):
    """Last move is a bend on a spine edge (on the extra edge's far side)."""
    out = []
    d, tree = ctx.d, ctx.tree
    w = ctx.extra_vertex
    for order in _ends(d.spine):
        iw = order.index(w)
        for j in range(iw, len(order) - 1):
            es = ctx.spine_edge(order[j], order[j + 1])
            blocks = []
            if j == iw:
                blocks.append(ctx.seg_block(order[: j + 1], (ctx.extra,), (es,)))
            else:
                blocks.append(ctx.seg_block(order[: iw + 1], (ctx.extra,),
                                            (ctx.spine_edge(order[iw], order[iw + 1]),)))
                blocks += ctx.chain_singles(order, iw + 1, j)
                blocks.append(ctx.seg_block(
                    (order[j],), (ctx.spine_edge(order[j - 1], order[j]),), (es,)))
            blocks.append(ctx.seg_block(order[j + 1 :], (es,), ()))
            out.append(assemble(tree, d, "2.2", (es, order[j]), blocks))
    return out


def _case_2_3(ctx: _Ctx):
    """Last move is the far extreme spine vertex."""
    out = []
    d, tree = ctx.d, ctx.tree
    w = ctx.extra_vertex
    if len(d.spine) < 2:
        return out
    for order in _ends(d.spine):
        z = order[-1]
        if z == w or ctx.internal_anchors_at(z):
            continue
        iw = order.index(w)
        blocks = [ctx.seg_block(order[: iw + 1], (ctx.extra,),
                                (ctx.spine_edge(order[iw], order[iw + 1]),))]
        blocks += ctx.chain_singles(order, iw + 1, len(order) - 1)
        se = ctx.spine_edge(order[-2], z)
        blocks.append(disk_block(tree, (z,), {se} | ctx.lefts([z]), ctx.rights([z])))
        out.append(assemble(tree, d, "2.3", (z,), blocks))
    return out
