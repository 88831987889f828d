"""Exact minimum-height drawings of plane (ordered) trees.

A drawing's height is the largest number of points any vertical line
shares with it.  The package computes optimal heights three ways: a
polynomial dynamic program over spine-disk decompositions, a top-down
reference mode of the same recursion, and a brute-force sweep oracle that
certifies both on small instances.  Drawings are first-class values that
can be replayed, simplified, balanced, rendered to SVG and re-verified
geometrically.
"""

__version__ = "0.1.0"

from .tree import OrderedTree, parse_tree, serialize_tree  # noqa: F401
