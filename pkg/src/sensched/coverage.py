"""Bipartite coverage graphs linking device locations to what they monitor.

Detection mode: one Y vertex per target, adjacent to every device within
range. Isolation mode: one Y vertex per unordered target pair, adjacent
to a device iff the device covers exactly one of the two targets (a
device seeing both, or neither, cannot tell them apart).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import InputError
from .graph import NetworkGraph, Target, bfs_distances, target_distance, target_key

Objective = Literal["detection", "isolation"]

PAIR_WARN_THRESHOLD = 5_000_000


@dataclass(frozen=True, order=True)
class TargetPair:
    """Unordered pair of distinct targets, stored in canonical order."""

    first: Target
    second: Target

    @staticmethod
    def of(a: Target, b: Target) -> "TargetPair":
        if a == b:
            raise InputError("a target pair needs two distinct targets")
        return TargetPair(min(a, b), max(a, b))


@dataclass(frozen=True)
class CoverageGraph:
    """Immutable bipartite graph between devices (X) and Y elements.

    X is the sorted set of device node ids; Y is the canonically sorted
    target list (detection) or every target pair (isolation). adj maps
    each x index to the y indices it covers; rev is the transpose.
    """

    objective: Objective
    x_nodes: tuple[int, ...]
    x_names: tuple[str, ...]
    y_items: tuple[Target | TargetPair, ...]
    y_keys: tuple[str, ...]
    adj: tuple[frozenset[int], ...]
    rev: tuple[frozenset[int], ...]

    @property
    def n_x(self) -> int:
        return len(self.x_nodes)

    @property
    def n_y(self) -> int:
        return len(self.y_items)

    def __repr__(self) -> str:
        return (
            f"CoverageGraph({self.objective}, |X|={self.n_x}, |Y|={self.n_y}, "
            f"edges={sum(len(a) for a in self.adj)})"
        )


def _canonical_targets(g: NetworkGraph, targets: Iterable[Target]) -> list[Target]:
    out = sorted(set(targets))
    for t in out:
        g.check_target(t)
    return out


def _device_cover_sets(
    g: NetworkGraph, sensors: Iterable[int], targets: Sequence[Target], range_limit: int
) -> tuple[list[int], list[set[int]]]:
    """Per device, the set of covered target indices (one BFS per device)."""
    if not isinstance(range_limit, int) or range_limit < 0:
        raise InputError(f"range must be a non-negative integer, got {range_limit!r}")
    xs = sorted(set(sensors))
    if not xs:
        raise InputError("sensor set must not be empty")
    for x in xs:
        g._check_node(x)
    covers: list[set[int]] = []
    for x in xs:
        dist = bfs_distances(g, x)
        covers.append(
            {j for j, t in enumerate(targets) if target_distance(t, dist, g) <= range_limit}
        )
    return xs, covers


def _reverse(adj: Sequence[frozenset[int]], n_y: int) -> tuple[frozenset[int], ...]:
    rev: list[set[int]] = [set() for _ in range(n_y)]
    for xi, ys in enumerate(adj):
        for y in ys:
            rev[y].add(xi)
    return tuple(frozenset(s) for s in rev)


def build_detection(
    g: NetworkGraph,
    sensors: Iterable[int],
    targets: Iterable[Target],
    range_limit: int,
) -> CoverageGraph:
    """Coverage graph for the detection objective: x ~ y iff x covers y."""
    y_targets = _canonical_targets(g, targets)
    if not y_targets:
        raise InputError("target set must not be empty")
    xs, covers = _device_cover_sets(g, sensors, y_targets, range_limit)
    adj = tuple(frozenset(c) for c in covers)
    return CoverageGraph(
        objective="detection",
        x_nodes=tuple(xs),
        x_names=tuple(g.node_name(x) for x in xs),
        y_items=tuple(y_targets),
        y_keys=tuple(target_key(t, g) for t in y_targets),
        adj=adj,
        rev=_reverse(adj, len(y_targets)),
    )


def build_isolation(
    g: NetworkGraph,
    sensors: Iterable[int],
    targets: Iterable[Target],
    range_limit: int,
    pair_warn_threshold: int = PAIR_WARN_THRESHOLD,
) -> CoverageGraph:
    """Coverage graph for the isolation objective over all target pairs.

    x ~ (a, b) iff x covers exactly one of a, b. Y is materialized in
    full: all C(m, 2) pairs, including pairs no device can separate.
    """
    y_targets = _canonical_targets(g, targets)
    if len(y_targets) < 2:
        raise InputError("isolation needs at least 2 targets")
    m = len(y_targets)
    n_pairs = m * (m - 1) // 2
    if n_pairs > pair_warn_threshold:
        warnings.warn(
            f"isolation materializes {n_pairs} target pairs "
            f"(threshold {pair_warn_threshold}); expect high memory use",
            RuntimeWarning,
            stacklevel=2,
        )
    xs, covers = _device_cover_sets(g, sensors, y_targets, range_limit)

    pairs: list[TargetPair] = []
    keys: list[str] = []
    for i in range(m):
        key_i = target_key(y_targets[i], g)
        for j in range(i + 1, m):
            pairs.append(TargetPair(y_targets[i], y_targets[j]))
            keys.append(f"{key_i}|{target_key(y_targets[j], g)}")

    adj_sets: list[set[int]] = [set() for _ in xs]
    for xi, cov in enumerate(covers):
        y_index = 0
        for i in range(m):
            ci = i in cov
            for j in range(i + 1, m):
                if ci != (j in cov):
                    adj_sets[xi].add(y_index)
                y_index += 1
    adj = tuple(frozenset(s) for s in adj_sets)
    return CoverageGraph(
        objective="isolation",
        x_nodes=tuple(xs),
        x_names=tuple(g.node_name(x) for x in xs),
        y_items=tuple(pairs),
        y_keys=tuple(keys),
        adj=adj,
        rev=_reverse(adj, n_pairs),
    )


def restrict_x(cov: CoverageGraph, x_indices: Iterable[int]) -> CoverageGraph:
    """Sub-coverage keeping only the given device indices (Y unchanged)."""
    keep = sorted(set(x_indices))
    for xi in keep:
        if not 0 <= xi < cov.n_x:
            raise InputError(f"unknown device index: {xi}")
    if not keep:
        raise InputError("cannot restrict to an empty device set")
    adj = tuple(cov.adj[xi] for xi in keep)
    return CoverageGraph(
        objective=cov.objective,
        x_nodes=tuple(cov.x_nodes[xi] for xi in keep),
        x_names=tuple(cov.x_names[xi] for xi in keep),
        y_items=cov.y_items,
        y_keys=cov.y_keys,
        adj=adj,
        rev=_reverse(adj, cov.n_y),
    )


def to_adjacency_text(cov: CoverageGraph) -> str:
    """Canonical one-line-per-device adjacency listing for golden files."""
    lines = []
    for xi in range(cov.n_x):
        keys = ",".join(cov.y_keys[y] for y in sorted(cov.adj[xi]))
        lines.append(f"{cov.x_names[xi]}: {keys}".rstrip())
    return "\n".join(lines) + "\n"
