"""Ordered (plane) trees: canonical text format and combinatorial queries.

A plane tree is a tree with a fixed clockwise cyclic order of edges around
every vertex.  Vertex ids are the preorder numbering induced by the text
format (root 0, children in rotation order); edge i joins vertex i+1 to its
parent.  All values are immutable after construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field


class TreeParseError(ValueError):
    """Malformed tree text; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class OrderedTree:
    """A rooted plane tree in preorder numbering.

    edges[i] = (parent, child) with child == i + 1.
    rotation[v] lists edge ids clockwise; for a non-root vertex the parent
    edge comes first, for the root the tuple is read cyclically.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...] = field(repr=False)  # parent[0] == -1

    def __post_init__(self):
        if self.n < 1 or len(self.edges) != self.n - 1:
            raise ValueError("vertex/edge count mismatch")

    # -- basic queries -------------------------------------------------

    @property
    def edge_count(self) -> int:
        return self.n - 1

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def edge_other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"edge {e} not incident to vertex {v}")

    def parent_edge(self, v: int) -> int | None:
        return None if v == 0 else v - 1

    def children(self, v: int) -> list[int]:
        rot = self.rotation[v]
        child_edges = rot if v == 0 else rot[1:]
        return [e + 1 for e in child_edges]

    def subtree_size(self, e: int, v: int) -> int:
        """Vertices in the component of tree - e containing `v`."""
        a, b = self.edges[e]
        below = self._sizes_below()[b]
        if v == b:
            return below
        if v == a:
            return self.n - below
        raise ValueError(f"edge {e} not incident to vertex {v}")

    def subtree_vertices(self, e: int, root: int) -> frozenset[int]:
        """Vertex set of the component of tree - e containing `root`."""
        self.edge_other(e, root)  # incidence check
        seen = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for f in self.rotation[u]:
                if u == root and f == e:
                    continue
                w = self.edge_other(f, u)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def path_between(self, u: int, v: int) -> tuple[int, ...]:
        """The unique simple path from u to v, as a vertex tuple."""
        au, av = [u], [v]
        pu, pv = u, v
        seen_u = {u: 0}
        while pu != 0:
            pu = self.parent[pu]
            au.append(pu)
            seen_u[pu] = len(au) - 1
        while pv not in seen_u:
            pv = self.parent[pv]
            av.append(pv)
        return tuple(au[: seen_u[pv]] + av[::-1])

    def _sizes_below(self) -> tuple[int, ...]:
        cached = getattr(self, "_sizes", None)
        if cached is None:
            sizes = [1] * self.n
            for v in range(self.n - 1, 0, -1):
                sizes[self.parent[v]] += sizes[v]
            cached = tuple(sizes)
            object.__setattr__(self, "_sizes", cached)
        return cached

    def __str__(self) -> str:
        return serialize_tree(self)


@dataclass(frozen=True)
class TreePath:
    """A simple path, possibly a single vertex."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices or len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path must be nonempty without repeats")

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class AnchorFan:
    """Anchor edges of a path in contracted clockwise cyclic order."""

    path: TreePath
    anchors: tuple[int, ...]
    anchor_vertex: tuple[int, ...]  # path vertex each anchor hangs from


def parse_tree(text: str) -> OrderedTree:
    """Parse the canonical parenthesis format: vertex ::= '(' vertex* ')'."""
    s = text.strip()
    if not s:
        raise TreeParseError("empty input", 0)
    parents: list[int] = []
    stack: list[int] = []
    count = 0
    for i, ch in enumerate(s):
        if ch == "(":
            parents.append(stack[-1] if stack else -1)
            if count > 0 and not stack:
                raise TreeParseError("multiple roots", i)
            stack.append(count)
            count += 1
        elif ch == ")":
            if not stack:
                raise TreeParseError("unbalanced ')'", i)
            stack.pop()
        elif not ch.isspace():
            raise TreeParseError(f"unexpected character {ch!r}", i)
    if stack:
        raise TreeParseError("unbalanced '('", len(s))
    return _from_parents(parents)


def _from_parents(parents: list[int]) -> OrderedTree:
    n = len(parents)
    edges = tuple((parents[v], v) for v in range(1, n))
    rot: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        if v != 0:
            rot[v].append(v - 1)  # parent edge first
    for v in range(1, n):
        rot[parents[v]].append(v - 1)
    return OrderedTree(n, edges, tuple(tuple(r) for r in rot), tuple(parents))


def serialize_tree(t: OrderedTree) -> str:
    out: list[str] = []

    def emit(v: int):
        out.append("(")
        for c in t.children(v):
            emit(c)
        out.append(")")

    emit(0)
    return "".join(out)


def mirror(t: OrderedTree) -> OrderedTree:
    """Reverse every rotation (reflect the plane); an involution."""
    return mirror_with_maps(t)[0]


def mirror_with_maps(t: OrderedTree) -> tuple[OrderedTree, list[int], list[int]]:
    """Mirror plus the vertex and edge id maps old -> new."""
    order = _preorder_with(t, 0, lambda v: list(reversed(t.children(v))))
    return _renumber(t, order)


def reroot(t: OrderedTree, v: int) -> OrderedTree:
    return reroot_with_maps(t, v)[0]


def reroot_with_maps(t: OrderedTree, v: int) -> tuple[OrderedTree, list[int], list[int]]:
    """Same plane tree re-rooted at v (rotations preserved cyclically).

    The new root's children start at the edge toward the old root, so
    reroot(t, 0) is the identity.
    """
    if not 0 <= v < t.n:
        raise ValueError(f"vertex {v} out of range")
    if v == 0:
        return t, list(range(t.n)), list(range(t.n - 1))

    def kids(u: int) -> list[int]:
        rot = t.rotation[u]
        if u == v:
            toward = _edge_toward(t, v, 0)
            i = rot.index(toward)
            order = rot[i:] + rot[:i]
        else:
            # parent in the new tree = neighbor toward v
            toward = _edge_toward(t, u, v)
            i = rot.index(toward)
            order = rot[i + 1 :] + rot[:i]
        return [t.edge_other(e, u) for e in order]

    order = _preorder_with(t, v, kids)
    return _renumber(t, order)


def _edge_toward(t: OrderedTree, u: int, target: int) -> int:
    """The edge at u on the path from u to target (u != target)."""
    path = t.path_between(u, target)
    w = path[1]
    for e in t.rotation[u]:
        if t.edge_other(e, u) == w:
            return e
    raise AssertionError("no edge toward target")


def _preorder_with(t: OrderedTree, root: int, kids) -> list[int]:
    order: list[int] = []
    stack = [(root, -1)]
    while stack:
        u, par = stack.pop()
        order.append(u)
        stack.extend((w, u) for w in reversed(kids(u)) if w != par)
    return order


def _renumber(t: OrderedTree, order: list[int]) -> tuple[OrderedTree, list[int], list[int]]:
    """Rebuild a tree whose preorder is `order`; returns (tree, vmap, emap)."""
    vmap = [0] * t.n
    for new, old in enumerate(order):
        vmap[old] = new
    parents = [-1] * t.n
    for new, old in enumerate(order):
        if new == 0:
            continue
        # parent of `old` in the new orientation: the neighbor with smaller new id
        best = min(
            (t.edge_other(e, old) for e in t.rotation[old]),
            key=lambda w: vmap[w],
        )
        parents[new] = vmap[best]
    nt = _from_parents(parents)
    emap = [0] * (t.n - 1)
    for e, (a, b) in enumerate(t.edges):
        na, nb = vmap[a], vmap[b]
        child = nb if na < nb else na
        emap[e] = child - 1
    return nt, vmap, emap


def anchor_fan(t: OrderedTree, p: TreePath) -> AnchorFan:
    """Anchor edges of p in contracted clockwise order (boundary walk)."""
    verts = p.vertices
    _check_path(t, verts)
    on_path = set(verts)
    k = len(verts)
    anchors: list[int] = []
    avert: list[int] = []

    def arc(v: int, after: int, until: int):
        """Clockwise anchors at v strictly between edges `after` and `until`."""
        rot = t.rotation[v]
        d = len(rot)
        i = (rot.index(after) + 1) % d
        stop = rot.index(until)
        for _ in range(d):
            if i == stop:
                return
            e = rot[i]
            if t.edge_other(e, v) not in on_path:
                anchors.append(e)
                avert.append(v)
            i = (i + 1) % d

    if k == 1:
        v = verts[0]
        for e in t.rotation[v]:
            anchors.append(e)
            avert.append(v)
        return AnchorFan(p, tuple(anchors), tuple(avert))

    pe = [_edge_between(t, verts[i], verts[i + 1]) for i in range(k - 1)]
    # walk: full circle at p_1, one side across, full circle at p_k, back
    arc(verts[0], pe[0], pe[0])
    for i in range(1, k - 1):
        arc(verts[i], pe[i - 1], pe[i])
    arc(verts[k - 1], pe[k - 2], pe[k - 2])
    for i in range(k - 2, 0, -1):
        arc(verts[i], pe[i], pe[i - 1])
    return AnchorFan(p, tuple(anchors), tuple(avert))


def _edge_between(t: OrderedTree, u: int, v: int) -> int:
    for e in t.rotation[u]:
        if t.edge_other(e, u) == v:
            return e
    raise ValueError(f"vertices {u},{v} not adjacent")


def _check_path(t: OrderedTree, verts: tuple[int, ...]):
    for i in range(len(verts) - 1):
        _edge_between(t, verts[i], verts[i + 1])


def anchored_subtree(t: OrderedTree, p: TreePath, anchor: int) -> tuple[int, frozenset[int]]:
    """(root, vertex set) of the subtree hanging off p via `anchor`."""
    fan = anchor_fan(t, p)
    if anchor not in fan.anchors:
        raise ValueError(f"edge {anchor} is not an anchor of the path")
    v = fan.anchor_vertex[fan.anchors.index(anchor)]
    root = t.edge_other(anchor, v)
    return root, t.subtree_vertices(anchor, root)


def iter_trees(edge_count: int):
    """All rooted ordered trees with the given edge count, as trees.

    Yields Catalan(edge_count) trees in a fixed lexicographic order.
    """
    for s in _iter_words(edge_count):
        yield parse_tree("(" + s + ")")


def _iter_words(m: int):
    # balanced words with m pairs, lexicographic with '(' < ')'
    if m == 0:
        yield ""
        return
    for first in range(1, m + 1):
        for inner in _iter_words(first - 1):
            for rest in _iter_words(m - first):
                yield "(" + inner + ")" + rest


def random_tree(edge_count: int, seed: int) -> OrderedTree:
    """Uniform random rooted ordered tree via the cycle lemma."""
    if edge_count < 0:
        raise ValueError("edge count must be >= 0")
    if edge_count == 0:
        return parse_tree("()")
    rng = random.Random(seed)
    word = [1] * edge_count + [-1] * (edge_count + 1)
    rng.shuffle(word)
    # unique rotation making all proper prefixes nonnegative after dropping
    # the final forced ')': cycle lemma on n ups / n+1 downs
    total, low, low_at = 0, 1, -1
    for i, w in enumerate(word):
        total += w
        if total < low:
            low, low_at = total, i
    rot = word[low_at + 1 :] + word[: low_at + 1]
    body = rot[:-1]  # balanced with m pairs
    text = "(" + "".join("(" if w == 1 else ")" for w in body) + ")"
    return parse_tree(text)


def read_trees(text: str) -> list[OrderedTree]:
    """One tree per line; '#' starts a comment line; blank lines ignored."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_tree(line))
    return out
