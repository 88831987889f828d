"""Spine disks, skew spine disks, vertex disks and bubbles.

A descriptor pins down a local disk exactly: the spine path, the left and
right boundary edges top-to-bottom, and for skew disks the extra unpaired
boundary edge with its side.  Everything hanging off the spine that is not
cut by a boundary edge lies inside the disk.

Orientation conventions (fixed across the package): the contracted fan of
the spine is clockwise; splitting it at two points yields the right
boundary arc read top-to-bottom and the left boundary arc read
bottom-to-top.  Paired boundary edges sit at equal positions top-to-bottom
and share their spine vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .sweep import SweepProblem
from .tree import AnchorFan, OrderedTree, TreePath, anchor_fan


@dataclass(frozen=True)
class SpineDisk:
    """Identity of a spine or skew spine disk (a DP table key)."""

    spine: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    skew: tuple[int, str] | None = None  # (edge, "L" or "R")

    @property
    def b(self) -> int:
        """Boundary height of the underlying spine disk."""
        return len(self.right) - (1 if self.skew and self.skew[1] == "R" else 0)

    def boundary(self) -> tuple[int, ...]:
        return self.left + self.right

    def is_skew(self) -> bool:
        return self.skew is not None

    def key(self) -> bytes:
        return repr((self.spine, self.left, self.right, self.skew)).encode()


def rot180(tree: OrderedTree, d: SpineDisk) -> SpineDisk | None:
    """The same disk rotated half a turn: sides swapped, orders reversed."""
    return make_descriptor(tree, d.spine, tuple(reversed(d.right)),
                           tuple(reversed(d.left)))


def _canon_spine(spine) -> tuple[int, ...]:
    spine = tuple(spine)
    rev = tuple(reversed(spine))
    return min(spine, rev)


def _find_extra(tree: OrderedTree, left, right):
    """(extra_edge, side) making the rest an opposite pairing, or None."""
    if len(left) == len(right) + 1:
        heavy, other, side = left, right, "L"
    elif len(right) == len(left) + 1:
        heavy, other, side = right, left, "R"
    else:
        return None
    for i in range(len(heavy)):
        rest = heavy[:i] + heavy[i + 1 :]
        if _pairs_align(tree, rest, other):
            return heavy[i], side
    return None


def _pairs_align(tree: OrderedTree, left, right) -> bool:
    if len(left) != len(right):
        return False
    for a, b in zip(left, right):
        va, vb = tree.edges[a], tree.edges[b]
        if not set(va) & set(vb):
            return False
    return True


def _pair_vertices(tree: OrderedTree, left, right, spine_set):
    out = []
    for a, b in zip(left, right):
        common = (set(tree.edges[a]) & set(tree.edges[b])) & spine_set
        if len(common) != 1:
            return None
        out.append(next(iter(common)))
    return out


def spine_vertex_of(tree: OrderedTree, d: SpineDisk, e: int) -> int:
    """The spine vertex a boundary edge hangs from."""
    a, b = tree.edges[e]
    sp = set(d.spine)
    if a in sp and b in sp:
        raise ValueError(f"edge {e} lies on the spine")
    if a in sp:
        return a
    if b in sp:
        return b
    raise ValueError(f"edge {e} not incident to the spine")


def pairing(tree: OrderedTree, d: SpineDisk):
    """(pairs, extra): pairs = [(left_edge, right_edge, spine_vertex)] top to
    bottom; extra = skew edge or None."""
    left, right = list(d.left), list(d.right)
    if d.skew is not None:
        e, side = d.skew
        (left if side == "L" else right).remove(e)
    verts = _pair_vertices(tree, left, right, set(d.spine))
    if verts is None:
        raise ValueError("descriptor pairing is broken")
    return [(a, b, v) for (a, b), v in zip(zip(left, right), verts)], (
        None if d.skew is None else d.skew[0])


def interior_vertices(tree: OrderedTree, d: SpineDisk) -> frozenset[int]:
    """Component of tree minus the boundary edges containing the spine."""
    blocked = set(d.boundary())
    seen = set(d.spine)
    stack = list(d.spine)
    while stack:
        u = stack.pop()
        for e in tree.rotation[u]:
            if e in blocked:
                continue
            w = tree.edge_other(e, u)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def interior_vertex_count(tree: OrderedTree, d: SpineDisk) -> int:
    return len(interior_vertices(tree, d))


def validate_descriptor(tree: OrderedTree, d: SpineDisk) -> str | None:
    """None if the descriptor satisfies every spine-disk axiom, else the
    name of the first violated one."""
    sp = d.spine
    if not sp or len(set(sp)) != len(sp):
        return "spine-not-a-path"
    spine_edges = set()
    for u, v in zip(sp, sp[1:]):
        try:
            e = next(e for e in tree.rotation[u] if tree.edge_other(e, u) == v)
        except StopIteration:
            return "spine-not-a-path"
        spine_edges.add(e)
    boundary = d.boundary()
    if len(set(boundary)) != len(boundary):
        return "boundary-edge-repeated"
    sset = set(sp)
    for e in boundary:
        if e in spine_edges:
            return "axiom1-boundary-on-spine"
        a, b = tree.edges[e]
        if a not in sset and b not in sset:
            return "axiom1-boundary-not-incident"
    # skew marker consistency
    if d.skew is not None:
        e, side = d.skew
        if side not in ("L", "R"):
            return "skew-side-invalid"
        if e not in (d.left if side == "L" else d.right):
            return "skew-edge-not-on-side"
    left, right = list(d.left), list(d.right)
    if d.skew is not None:
        e, side = d.skew
        (left if side == "L" else right).remove(e)
    if len(left) != len(right):
        return "axiom2-unbalanced-boundary"
    if _pair_vertices(tree, left, right, sset) is None:
        return "axiom2-pairing"
    if len(sp) >= 2:
        for end in (sp[0], sp[-1]):
            if not any(end in tree.edges[e] for e in boundary):
                return "axiom3-bare-extreme"
    if not boundary and len(sp) != 1:
        return "b0-spine-not-a-vertex"
    if boundary:
        fan = anchor_fan(tree, TreePath(sp))
        bset = set(boundary)
        fan_b = [e for e in fan.anchors if e in bset]
        if len(fan_b) != len(boundary):
            return "axiom1-boundary-not-anchor"
        target = list(d.right) + list(reversed(d.left))
        if not _cyclic_equal(fan_b, target):
            return "planarity-boundary-order"
    return None


def _cyclic_equal(a, b) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    n = len(a)
    for s in range(n):
        if all(a[(s + i) % n] == b[i] for i in range(n)):
            return True
    return False


def make_descriptor(tree: OrderedTree, spine, left, right,
                    skew_edge: int | None = None,
                    skew_side: str | None = None) -> SpineDisk | None:
    """Build, normalize and validate a descriptor; None if invalid.

    When the boundary sides are unbalanced and no skew edge is named, the
    canonical extra (first on the heavy side whose removal aligns the
    pairs) is chosen.
    """
    spine = _canon_spine(spine)
    left, right = tuple(left), tuple(right)
    skew = None
    if len(left) != len(right):
        if skew_edge is not None and skew_side is not None:
            skew = (skew_edge, skew_side)
            ok = _try_pairs(tree, left, right, skew)
            if not ok:
                skew_edge = None
        if skew_edge is None:
            found = _find_extra(tree, left, right)
            if found is None:
                return None
            skew = found
    elif skew_edge is not None:
        return None
    d = SpineDisk(spine, left, right, skew)
    if validate_descriptor(tree, d) is not None:
        return None
    return d


def _try_pairs(tree, left, right, skew) -> bool:
    left, right = list(left), list(right)
    e, side = skew
    lst = left if side == "L" else right
    if e not in lst:
        return False
    lst.remove(e)
    return _pairs_align(tree, left, right)


def split_fan(fan: AnchorFan, left_set, right_set):
    """Derive (left_order, right_order) top-to-bottom from boundary sets.

    Returns None unless the two sets occupy complementary contiguous arcs
    of the cyclic fan (internal anchors may interleave freely).
    """
    cyc = [e for e in fan.anchors if e in left_set or e in right_set]
    n = len(cyc)
    if n != len(left_set) + len(right_set):
        return None
    if not right_set or not left_set:
        arc = cyc  # single-sided: any rotation works; pick fan order
        if right_set:
            return (), tuple(arc)
        return tuple(reversed(arc)), ()
    for s in range(n):
        rot = cyc[s:] + cyc[:s]
        k = len(right_set)
        if all(e in right_set for e in rot[:k]) and all(
                e in left_set for e in rot[k:]):
            return tuple(reversed(rot[k:])), tuple(rot[:k])
    return None


def descriptor_problem(tree: OrderedTree, d: SpineDisk) -> SweepProblem:
    """The disk as a sweep problem (for the oracle and reconstruction)."""
    return SweepProblem(tree, d.left, d.right, interior_vertices(tree, d))


def vertex_disk_height(tree: OrderedTree, d: SpineDisk) -> int:
    if interior_vertex_count(tree, d) != 1:
        raise ValueError("not a vertex disk")
    v = d.spine[0]
    if len(d.boundary()) != tree.degree(v):
        raise ValueError("vertex disk has internal anchors")
    return max(len(d.left), len(d.right), 1)


def is_vertex_disk(tree: OrderedTree, d: SpineDisk) -> bool:
    return (len(d.spine) == 1
            and len(d.boundary()) == tree.degree(d.spine[0]))


def bubble_descriptor(tree: OrderedTree, anchor: int, root: int) -> SpineDisk:
    """Canonical bubble: single boundary edge encoded on the right."""
    if root not in tree.edges[anchor]:
        raise ValueError("root must be an endpoint of the anchor edge")
    return SpineDisk((root,), (), (anchor,), (anchor, "R"))


def whole_tree_descriptor(tree: OrderedTree, v: int = 0) -> SpineDisk:
    return SpineDisk((v,), (), (), None)
