"""Undirected network graphs with hop-count distance queries.

Nodes carry arbitrary string names mapped to dense integer ids in
insertion order; edges get stable integer ids. Distances are unweighted
hop counts; the distance from a node to an edge is the larger of the
distances to the edge's two endpoints. Unreachable elements are at
distance infinity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import InputError

INFINITY = float("inf")

TargetKind = Literal["node", "edge"]


@dataclass(frozen=True, order=True)
class Target:
    """A monitored element: a node or an edge of the network graph.

    Targets order by (kind, id), which fixes the canonical indexing
    used everywhere downstream.
    """

    kind: TargetKind
    id: int


class NetworkGraph:
    """Immutable undirected graph.

    Rejects self-loops, duplicate edges, duplicate node names, and
    edges over unknown nodes. Safe for concurrent reads after
    construction.
    """

    __slots__ = ("_names", "_ids", "_adj", "_edges", "_edge_ids")

    def __init__(self, names: Sequence[str], edges: Iterable[tuple[str, str]]):
        self._names: tuple[str, ...] = tuple(names)
        self._ids: dict[str, int] = {}
        for i, name in enumerate(self._names):
            if name in self._ids:
                raise InputError(f"duplicate node name: {name!r}")
            self._ids[name] = i
        adj: list[list[int]] = [[] for _ in self._names]
        edge_list: list[tuple[int, int]] = []
        edge_ids: dict[tuple[int, int], int] = {}
        for a, b in edges:
            u, v = self.node_id(a), self.node_id(b)
            if u == v:
                raise InputError(f"self-loop on node {a!r}")
            key = (min(u, v), max(u, v))
            if key in edge_ids:
                raise InputError(f"duplicate edge {a!r}-{b!r}")
            edge_ids[key] = len(edge_list)
            edge_list.append(key)
            adj[u].append(v)
            adj[v].append(u)
        self._adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(nbrs)) for nbrs in adj
        )
        self._edges: tuple[tuple[int, int], ...] = tuple(edge_list)
        self._edge_ids = edge_ids

    @property
    def node_count(self) -> int:
        return len(self._names)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def node_id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise InputError(f"unknown node name: {name!r}") from None

    def node_name(self, node: int) -> str:
        self._check_node(node)
        return self._names[node]

    def neighbors(self, node: int) -> tuple[int, ...]:
        self._check_node(node)
        return self._adj[node]

    def degree(self, node: int) -> int:
        return len(self.neighbors(node))

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def edge_endpoints(self, edge: int) -> tuple[int, int]:
        if not 0 <= edge < len(self._edges):
            raise InputError(f"unknown edge id: {edge}")
        return self._edges[edge]

    def edge_id(self, u: int, v: int) -> int:
        self._check_node(u)
        self._check_node(v)
        key = (min(u, v), max(u, v))
        try:
            return self._edge_ids[key]
        except KeyError:
            raise InputError(
                f"no edge between {self._names[u]!r} and {self._names[v]!r}"
            ) from None

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_ids

    def edge_name(self, edge: int) -> tuple[str, str]:
        u, v = self.edge_endpoints(edge)
        return self._names[u], self._names[v]

    def _check_node(self, node: int) -> None:
        if not 0 <= node < len(self._names):
            raise InputError(f"unknown node id: {node}")

    def check_target(self, target: Target) -> None:
        if target.kind == "node":
            self._check_node(target.id)
        elif target.kind == "edge":
            self.edge_endpoints(target.id)
        else:
            raise InputError(f"unknown target kind: {target.kind!r}")

    def __repr__(self) -> str:
        return f"NetworkGraph(n={self.node_count}, m={self.edge_count})"


def bfs_distances(g: NetworkGraph, source: int) -> list[int | float]:
    """Hop count from source to every node, INFINITY where unreachable."""
    g._check_node(source)
    dist: list[int | float] = [INFINITY] * g.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u] + 1
        for v in g.neighbors(u):
            if dist[v] == INFINITY:
                dist[v] = d
                queue.append(v)
    return dist


def node_edge_distance(g: NetworkGraph, u: int, e: int) -> int | float:
    """Distance from node u to edge e: max over the two endpoint distances."""
    a, b = g.edge_endpoints(e)
    dist = bfs_distances(g, u)
    return max(dist[a], dist[b])


def target_distance(
    target: Target, dist: Sequence[int | float], g: NetworkGraph
) -> int | float:
    """Distance to a target given a precomputed source distance array."""
    if target.kind == "node":
        return dist[target.id]
    a, b = g.edge_endpoints(target.id)
    return max(dist[a], dist[b])


def covered_targets(
    g: NetworkGraph, u: int, range_limit: int, targets: Iterable[Target]
) -> set[Target]:
    """Targets within graph distance range_limit of node u."""
    if not isinstance(range_limit, int) or range_limit < 0:
        raise InputError(f"range must be a non-negative integer, got {range_limit!r}")
    for t in targets:
        g.check_target(t)
    dist = bfs_distances(g, u)
    return {t for t in targets if target_distance(t, dist, g) <= range_limit}


def all_node_targets(g: NetworkGraph) -> list[Target]:
    return [Target("node", i) for i in range(g.node_count)]


def all_edge_targets(g: NetworkGraph) -> list[Target]:
    return [Target("edge", i) for i in range(g.edge_count)]


def target_key(target: Target, g: NetworkGraph) -> str:
    """Stable text key echoing original names: `n:a` or `e:a-b`.

    Edge endpoint names are ordered lexicographically so the key does
    not depend on node insertion order.
    """
    if target.kind == "node":
        return f"n:{g.node_name(target.id)}"
    a, b = sorted(g.edge_name(target.id))
    return f"e:{a}-{b}"
