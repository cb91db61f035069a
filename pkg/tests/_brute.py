"""Independent brute-force reference implementations for tests.

Everything here is written straight from definitions with no shared
code paths into the package (aside from plain data access), so that
package results can be checked against a second route.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

INF = float("inf")


def floyd_warshall(g) -> list[list[float]]:
    n = g.node_count
    dist = [[INF] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = 0
    for u, v in g.edges:
        dist[u][v] = dist[v][u] = 1
    for mid in range(n):
        drow = dist[mid]
        for i in range(n):
            dim = dist[i][mid]
            if dim == INF:
                continue
            row = dist[i]
            for j in range(n):
                alt = dim + drow[j]
                if alt < row[j]:
                    row[j] = alt
    return dist


def brute_target_distance(g, dist_row, target) -> float:
    if target.kind == "node":
        return dist_row[target.id]
    u, v = g.edge_endpoints(target.id)
    return max(dist_row[u], dist_row[v])


def brute_covered(g, device: int, range_limit: int, targets) -> set:
    dist = floyd_warshall(g)[device]
    return {t for t in targets if brute_target_distance(g, dist, t) <= range_limit}


def brute_potential(cov, label_sets) -> int:
    """Sum over y of the number of distinct labels among its neighbors."""
    total = 0
    for y in range(cov.n_y):
        labels = set()
        for xi in range(cov.n_x):
            if y in cov.adj[xi]:
                labels |= set(label_sets[xi])
        total += len(labels)
    return total


def brute_slot_potential(cov, label_sets, k) -> int:
    """Sum over slots of the number of y covered by that slot's actives."""
    total = 0
    for j in range(k):
        covered = set()
        for xi in range(cov.n_x):
            if j in label_sets[xi]:
                covered |= set(cov.adj[xi])
        total += len(covered)
    return total


def brute_score(cov, label_sets, k) -> Fraction:
    return Fraction(brute_potential(cov, label_sets), k * cov.n_y)


def brute_best_labeling(cov, k, sigma) -> tuple[Fraction, list]:
    """Exhaustive optimum over exactly-sigma labelings via itertools.product."""
    actions = list(combinations(range(k), sigma))
    best = -1
    winners = []
    for assignment in product(actions, repeat=cov.n_x):
        phi = brute_potential(cov, assignment)
        if phi > best:
            best = phi
            winners = [assignment]
        elif phi == best:
            winners.append(assignment)
    return Fraction(best, k * cov.n_y), winners


def brute_max_cut(g) -> int:
    n = g.node_count
    best = 0
    for size in range(n + 1):
        for side in combinations(range(n), size):
            side_set = set(side)
            cut = sum(1 for u, v in g.edges if (u in side_set) != (v in side_set))
            best = max(best, cut)
    return best


def brute_is_dominating(g, nodes) -> bool:
    chosen = set(nodes)
    if not chosen:
        return g.node_count == 0
    return all(
        v in chosen or any(u in chosen for u in g.neighbors(v))
        for v in range(g.node_count)
    )


def brute_max_disjoint_dominating(g, upper: int = 5) -> int:
    """Largest number of pairwise-disjoint dominating sets (tiny graphs)."""
    n = g.node_count
    best = 0
    for t in range(1, upper + 1):
        if _can_partition(g, t):
            best = t
        else:
            break
    return best


def _can_partition(g, t: int) -> bool:
    n = g.node_count
    for assignment in product(range(t), repeat=n):
        classes = [set() for _ in range(t)]
        for v, c in enumerate(assignment):
            classes[c].add(v)
        if all(brute_is_dominating(g, c) for c in classes):
            return True
    return False
