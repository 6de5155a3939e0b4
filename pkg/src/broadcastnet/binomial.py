"""Binomial trees and their root-first broadcast schedules.

Vertices are encoded as bitmasks over child orders: the root is mask 0,
and a vertex extends its ancestor's mask by one bit strictly below the
ancestor's lowest set bit.  The subtree hanging below a nonzero mask has
order equal to the mask's lowest set bit, so "largest subtree first" is
just descending bit order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RootNotInformed
from .graph import Graph
from .labels import VertexLabel, pos_string
from .schedule import Call, Schedule


def subtree_order(mask: int, m: int) -> int:
    return m if mask == 0 else (mask & -mask).bit_length() - 1


def parent_mask(mask: int) -> int:
    return mask & (mask - 1)


def children_masks(mask: int, m: int) -> list[int]:
    """Children in decreasing subtree order."""
    limit = subtree_order(mask, m)
    return [mask | (1 << b) for b in range(limit - 1, -1, -1)]


@dataclass
class BinomialTree:
    """B^m rooted at mask 0; 2^m vertices, height m."""

    m: int
    tree_index: int = 1
    parent: dict[int, int | None] = field(default_factory=dict)
    children: dict[int, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.parent:
            for mask in range(1 << self.m):
                self.parent[mask] = parent_mask(mask) if mask else None
                self.children[mask] = children_masks(mask, self.m)

    @property
    def size(self) -> int:
        return 1 << self.m

    @property
    def root(self) -> VertexLabel:
        return self.label(0)

    def order_of(self, mask: int) -> int:
        return subtree_order(mask, self.m)

    def depth(self, mask: int) -> int:
        return bin(mask).count("1")

    def label(self, mask: int) -> VertexLabel:
        return VertexLabel(tree=self.tree_index, pos=pos_string(mask, self.m))

    def mask_of(self, label: VertexLabel) -> int:
        return int(label.pos, 2) if label.pos else 0

    def height(self) -> int:
        return max(self.depth(v) for v in range(self.size))

    def to_graph(self) -> Graph:
        labels = [self.label(mask) for mask in range(self.size)]
        edges = [(self.label(mask), self.label(parent_mask(mask)))
                 for mask in range(1, self.size)]
        return Graph.build(labels, edges)


def build_binomial(m: int, tree_index: int = 1) -> BinomialTree:
    if m < 0:
        raise ValueError("order must be >= 0")
    return BinomialTree(m=m, tree_index=tree_index)


def farthest_leaf(tree: BinomialTree) -> VertexLabel:
    """Deepest leaf, ties broken by always descending into the largest subtree."""
    return tree.label(tree.size - 1)


def binomial_schedule(
    tree: BinomialTree,
    informed: set[VertexLabel] | None = None,
    start_round: int = 1,
    alive: set[int] | None = None,
) -> Schedule:
    """Broadcast the (optionally pruned) tree from its root.

    Every informed vertex calls its largest-order uninformed surviving child
    each round; vertices in ``informed`` are never called but place calls
    from ``start_round`` on.  ``alive`` restricts to a surviving mask set
    (the root must survive).  The returned rounds list covers rounds
    1..start_round-1 with empty rounds, then the tree rounds.
    """
    if informed is not None and tree.root not in informed:
        raise RootNotInformed(f"root of tree {tree.tree_index} must be informed")
    masks = {tree.mask_of(v) for v in informed} if informed else None
    rounds = binomial_rounds_masks(tree.m, masks, alive, tree.tree_index)
    sched = Schedule(originator=tree.root)
    sched.rounds = [[] for _ in range(start_round - 1)] + [
        [(tree.label(a), tree.label(b)) for a, b in calls] for calls in rounds
    ]
    return sched


def binomial_rounds_masks(
    m: int,
    informed: set[int] | None = None,
    alive: set[int] | None = None,
    tree_index: int = 1,
) -> list[list[tuple[int, int]]]:
    """Rounds of (caller mask, callee mask) pairs for the tree broadcast."""
    live = alive if alive is not None else set(range(1 << m))
    done: set[int] = {0}
    if informed:
        done |= informed
    done &= live
    if 0 not in done:
        raise RootNotInformed(f"root of tree {tree_index} must be informed")
    rounds: list[list[tuple[int, int]]] = []
    while True:
        calls: list[tuple[int, int]] = []
        newly: list[int] = []
        for v in sorted(done):
            for c in children_masks(v, m):
                if c in live and c not in done and c not in newly:
                    calls.append((v, c))
                    newly.append(c)
                    break
        if not calls:
            break
        rounds.append(calls)
        done.update(newly)
    assert done == live, "pruned-tree broadcast left vertices uninformed"
    return rounds
