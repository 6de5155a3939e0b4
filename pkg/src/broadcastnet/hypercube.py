"""Hypercube graphs, their canonical decomposition, and dimension-sweep broadcasting.

The decomposition is fixed by coordinates: Q^{m-1} is the half with the top
bit set (this is the first half Q_1); inside the zero half, Q^{m-2} is the
set with the next bit as its highest set bit, and so on down to Q^0 = {1};
the all-zeros corner is the extra dimension-0 block Q^{01}.  Consequently
Q^{01} together with Q^0..Q^{j-1} always induces a j-dimensional subcube.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownVertex
from .graph import Graph
from .labels import VertexLabel
from .schedule import Call, Schedule


@dataclass(frozen=True)
class Hypercube:
    """Q^m over coordinates 0..2^m-1, edges at Hamming distance 1."""

    m: int

    @property
    def size(self) -> int:
        return 1 << self.m

    @property
    def num_edges(self) -> int:
        return self.m * (1 << (self.m - 1)) if self.m else 0

    def coord_string(self, c: int) -> str:
        return format(c, f"0{self.m}b") if self.m else ""

    def label(self, c: int) -> VertexLabel:
        return VertexLabel(tree=None, pos="", cube=self.coord_string(c))

    def coord_of(self, label: VertexLabel) -> int:
        if label.cube is None or len(label.cube) != self.m and self.m > 0:
            raise UnknownVertex(f"{label} is not a coordinate of Q^{self.m}")
        c = int(label.cube, 2) if label.cube else 0
        if not 0 <= c < self.size:
            raise UnknownVertex(f"{label} outside Q^{self.m}")
        return c

    def neighbors(self, c: int) -> list[int]:
        return [c ^ (1 << b) for b in range(self.m)]

    def subcube(self, i: int) -> list[int]:
        """Coordinates of Q^i: highest set bit is i.  Q^{01} is [0]."""
        return list(range(1 << i, 1 << (i + 1)))

    @property
    def corner(self) -> int:
        """The Q^{01} block: the all-zeros coordinate."""
        return 0

    def half(self, first: bool) -> list[int]:
        top = 1 << (self.m - 1)
        return list(range(top, 2 * top)) if first else list(range(top))

    def matched(self, c: int) -> int:
        """Cross-matching partner in the opposite half."""
        return c ^ (1 << (self.m - 1))

    def to_graph(self) -> Graph:
        labels = [self.label(c) for c in range(self.size)]
        edges = [
            (self.label(c), self.label(c ^ (1 << b)))
            for c in range(self.size)
            for b in range(self.m)
            if c < c ^ (1 << b)
        ]
        return Graph.build(labels, edges)


def build_hypercube(m: int) -> Hypercube:
    if m < 0:
        raise ValueError("dimension must be >= 0")
    return Hypercube(m=m)


def sweep_rounds(
    seed: int,
    dims: list[int],
    members: set[int] | None = None,
) -> list[list[tuple[int, int]]]:
    """Dimension sweep from ``seed``: round r doubles along dims[r-1].

    Restricted to ``members`` when given; every informed member calls its
    neighbor along the round's dimension if that neighbor is a member.
    """
    informed = {seed}
    rounds = []
    for b in dims:
        calls = []
        for c in sorted(informed):
            c2 = c ^ (1 << b)
            if c2 not in informed and (members is None or c2 in members):
                calls.append((c, c2))
        rounds.append(calls)
        informed.update(c2 for _, c2 in calls)
    return rounds


def hypercube_schedule(cube: Hypercube, originator: VertexLabel) -> Schedule:
    """Inform all 2^m vertices in exactly m rounds (dimension sweep)."""
    seed = cube.coord_of(originator)
    rounds = sweep_rounds(seed, list(range(cube.m)))
    sched = Schedule(originator=originator)
    sched.rounds = [
        [(cube.label(a), cube.label(b)) for a, b in calls] for calls in rounds
    ]
    return sched
