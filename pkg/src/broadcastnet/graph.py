"""Immutable simple undirected graph over structural vertex labels.

Vertices are kept in canonical order (tree index, position code, cube
coordinate); dense integer ids are their ranks in that order, so exports
are byte-identical across runs.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .errors import UnknownVertex
from .labels import VertexLabel


class Graph:
    """Simple undirected graph; construct via :meth:`build` or :meth:`from_sorted`."""

    __slots__ = ("labels", "_index", "adj", "_edge_count", "t", "k")

    def __init__(
        self,
        labels: tuple[VertexLabel, ...],
        adj: tuple[frozenset[int], ...],
        edge_count: int,
        t: int | None = None,
        k: int | None = None,
    ):
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self.adj = adj
        self._edge_count = edge_count
        self.t = t
        self.k = k

    # -- constructors ------------------------------------------------------

    @classmethod
    def build(
        cls,
        vertices: Iterable[VertexLabel],
        edges: Iterable[tuple[VertexLabel, VertexLabel]],
        t: int | None = None,
        k: int | None = None,
    ) -> "Graph":
        labels = tuple(sorted(set(vertices), key=VertexLabel.sort_key))
        index = {lab: i for i, lab in enumerate(labels)}
        id_edges = set()
        for a, b in edges:
            ia, ib = index[a], index[b]
            if ia == ib:
                raise ValueError(f"self-loop at {a}")
            id_edges.add((min(ia, ib), max(ia, ib)))
        return cls.from_sorted(labels, id_edges, t=t, k=k)

    @classmethod
    def from_sorted(
        cls,
        labels: Sequence[VertexLabel],
        id_edges: Iterable[tuple[int, int]],
        t: int | None = None,
        k: int | None = None,
    ) -> "Graph":
        """Fast path: labels already in canonical order, edges as id pairs."""
        nbrs: list[set[int]] = [set() for _ in labels]
        count = 0
        for a, b in id_edges:
            if b not in nbrs[a]:
                nbrs[a].add(b)
                nbrs[b].add(a)
                count += 1
        return cls(tuple(labels), tuple(frozenset(s) for s in nbrs), count, t=t, k=k)

    # -- queries -----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return self._edge_count

    def __contains__(self, label: VertexLabel) -> bool:
        return label in self._index

    def vertex_id(self, label: VertexLabel) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertex(f"vertex {label} not in graph") from None

    def degree(self, v: VertexLabel) -> int:
        return len(self.adj[self.vertex_id(v)])

    def neighbors(self, v: VertexLabel) -> list[VertexLabel]:
        return [self.labels[i] for i in sorted(self.adj[self.vertex_id(v)])]

    def has_edge(self, a: VertexLabel, b: VertexLabel) -> bool:
        return self.vertex_id(b) in self.adj[self.vertex_id(a)]

    def has_edge_ids(self, ia: int, ib: int) -> bool:
        return ib in self.adj[ia]

    def edge_ids(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in sorted(self.adj[a]) if a < b]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = bytearray(self.n)
        stack = [0]
        seen[0] = 1
        found = 1
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    found += 1
                    stack.append(v)
        return found == self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        obj: dict = {"n": self.n}
        if self.t is not None:
            obj["t"] = self.t
        if self.k is not None:
            obj["k"] = self.k
        obj["vertices"] = [lab.to_json(i) for i, lab in enumerate(self.labels)]
        obj["edges"] = self.edge_ids()
        return json.dumps(obj, separators=(",", ":"), sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, data: str) -> "Graph":
        obj = json.loads(data)
        labels = [VertexLabel.from_json(v) for v in sorted(obj["vertices"], key=lambda v: v["id"])]
        return cls.from_sorted(labels, [tuple(e) for e in obj["edges"]],
                               t=obj.get("t"), k=obj.get("k"))

    def to_edgelist(self) -> str:
        return "".join(f"{a} {b}\n" for a, b in self.edge_ids())

    @classmethod
    def from_edgelist(cls, data: str, n: int | None = None) -> "Graph":
        """Rebuild from "id id" lines; labels are not recoverable from this format."""
        edges = []
        top = -1
        for line in data.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            a, b = (int(x) for x in line.split())
            edges.append((min(a, b), max(a, b)))
            top = max(top, a, b)
        count = n if n is not None else top + 1
        labels = [VertexLabel(tree=i + 1) for i in range(count)]
        return cls.from_sorted(labels, edges)

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for i, lab in enumerate(self.labels):
            text = str(lab)
            if lab.cube is not None:
                text += f" [{lab.cube}]"
            lines.append(f'  {i} [label="{text}"];')
        for a, b in self.edge_ids():
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def export(self, fmt: str) -> bytes:
        """Serialize deterministically; ``fmt`` is one of dot, json, edgelist."""
        if fmt == "json":
            return self.to_json().encode()
        if fmt == "dot":
            return self.to_dot().encode()
        if fmt == "edgelist":
            return self.to_edgelist().encode()
        raise ValueError(f"unknown export format: {fmt}")


def degree(g: Graph, v: VertexLabel) -> int:
    return g.degree(v)


def is_connected(g: Graph) -> bool:
    return g.is_connected()


def export(g: Graph, fmt: str) -> bytes:
    return g.export(fmt)
