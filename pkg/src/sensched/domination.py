"""Complete-coverage lifetime maximization via dominating sets.

With a device on every node, range 1, and all nodes as targets, a slot
keeps the whole graph covered iff its active set is dominating. Disjoint
dominating sets give a lifetime of sigma times the partition size;
non-disjoint label assignments (every label present in every closed
neighborhood) can do strictly better, and are searched for here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal

from .coverage import build_detection
from .errors import InputError, SearchSpaceError
from .game import BlllParams, blll_schedule
from .graph import NetworkGraph, all_node_targets
from .schedule import Labeling, ProblemInstance
from .seeds import derive_rng, derive_seed


def closed_neighborhood(g: NetworkGraph, v: int) -> frozenset[int]:
    return frozenset(g.neighbors(v)) | {v}


def is_dominating(g: NetworkGraph, nodes: Iterable[int]) -> bool:
    """True iff every node is in the set or adjacent to it."""
    chosen = set(nodes)
    for v in chosen:
        g._check_node(v)
    if not chosen and g.node_count > 0:
        return False
    covered = set(chosen)
    for v in chosen:
        covered.update(g.neighbors(v))
    return len(covered) == g.node_count


@dataclass(frozen=True)
class DomaticPartition:
    """Pairwise-disjoint dominating sets; their union is the vertex set."""

    sets: tuple[frozenset[int], ...]


def _greedy_dominating_set(
    g: NetworkGraph, candidates: set[int], rng
) -> frozenset[int] | None:
    """Greedy set cover over closed neighborhoods, or None if impossible."""
    uncovered = set(range(g.node_count))
    chosen: set[int] = set()
    pool = set(candidates)
    while uncovered:
        best_gain = 0
        ties: list[int] = []
        for v in sorted(pool):
            gain = len(closed_neighborhood(g, v) & uncovered)
            if gain > best_gain:
                best_gain = gain
                ties = [v]
            elif gain == best_gain and gain > 0:
                ties.append(v)
        if not ties:
            return None
        pick = ties[0] if rng is None else ties[rng.randrange(len(ties))]
        chosen.add(pick)
        pool.discard(pick)
        uncovered -= closed_neighborhood(g, pick)
    return frozenset(chosen)


def greedy_domatic_partition(g: NetworkGraph, seed: int | None = None) -> DomaticPartition:
    """Extract disjoint dominating sets greedily until the rest cannot dominate.

    Leftover nodes that are not in any extracted set are merged into the
    last set (which keeps it dominating and makes the partition total).
    Returns at least one set on a non-empty graph; sizes are a lower
    bound on the domatic number, not the exact value.
    """
    if g.node_count == 0:
        return DomaticPartition(())
    rng = derive_rng(seed, "domatic-tiebreak") if seed is not None else None
    remaining = set(range(g.node_count))
    sets: list[frozenset[int]] = []
    while remaining:
        dom = _greedy_dominating_set(g, remaining, rng)
        if dom is None:
            break
        sets.append(dom)
        remaining -= dom
    if not sets:
        # the full vertex set always dominates
        sets = [frozenset(range(g.node_count))]
        remaining = set()
    if remaining:
        sets[-1] = sets[-1] | remaining
    partition = DomaticPartition(tuple(sets))
    validate_partition(g, partition)
    return partition


def validate_partition(g: NetworkGraph, dp: DomaticPartition) -> None:
    seen: set[int] = set()
    for i, s in enumerate(dp.sets):
        if seen & s:
            raise InputError(f"partition sets overlap at set {i}")
        seen |= s
        if not is_dominating(g, s):
            raise InputError(f"set {i} is not dominating")
    if seen != set(range(g.node_count)):
        raise InputError("partition does not cover every node")


def domatic_number_exact(g: NetworkGraph, node_limit: int = 12) -> int:
    """Exact domatic number by backtracking; tiny graphs only."""
    n = g.node_count
    if n > node_limit:
        raise SearchSpaceError(f"{n} nodes exceeds exact-domatic limit {node_limit}")
    if n == 0:
        return 0
    closed = [closed_neighborhood(g, v) for v in range(n)]
    upper = min(len(c) for c in closed)  # min degree + 1

    def feasible(t: int) -> bool:
        classes: list[set[int]] = [set() for _ in range(t)]

        def dominated_possible(c: int, frontier: int) -> bool:
            # every node must stay reachable from class c via members
            # already placed in c or nodes not yet assigned
            usable = classes[c] | set(range(frontier, n))
            return all(closed[w] & usable for w in range(n))

        def walk(v: int) -> bool:
            if v == n:
                return all(is_dominating(g, classes[c]) for c in range(t))
            for c in range(t):
                classes[c].add(v)
                if all(dominated_possible(c2, v + 1) for c2 in range(t)):
                    if walk(v + 1):
                        return True
                classes[c].discard(v)
            return False

        return walk(0)

    t = 1
    while t < upper and feasible(t + 1):
        t += 1
    return t


@dataclass(frozen=True)
class KSigmaConfig:
    """Exactly sigma distinct labels from 1..k per node (stored 0-based)."""

    k: int
    sigma: int
    labels: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class ConfigCheck:
    ok: bool
    violations: tuple[tuple[int, int], ...]  # (node, 1-based label)


def verify_config(g: NetworkGraph, cfg: KSigmaConfig) -> ConfigCheck:
    """Check that every label reaches every closed neighborhood.

    Malformed assignments (wrong set size, labels out of range, wrong
    node count) raise InputError; constraint misses are returned as
    (node, label) violations.
    """
    if len(cfg.labels) != g.node_count:
        raise InputError(
            f"config has {len(cfg.labels)} nodes, graph has {g.node_count}"
        )
    if not 1 <= cfg.sigma <= cfg.k:
        raise InputError(f"need 1 <= sigma <= k, got sigma={cfg.sigma}, k={cfg.k}")
    for v, labs in enumerate(cfg.labels):
        if len(labs) != cfg.sigma:
            raise InputError(
                f"node {g.node_name(v)} has {len(labs)} labels, expected {cfg.sigma}"
            )
        for lab in labs:
            if not 0 <= lab < cfg.k:
                raise InputError(
                    f"node {g.node_name(v)} label {lab + 1} outside 1..{cfg.k}"
                )
    violations: list[tuple[int, int]] = []
    for v in range(g.node_count):
        available: set[int] = set(cfg.labels[v])
        for u in g.neighbors(v):
            available |= cfg.labels[u]
        for lab in range(cfg.k):
            if lab not in available:
                violations.append((v, lab + 1))
    return ConfigCheck(ok=not violations, violations=tuple(violations))


def _config_from_partition(dp: DomaticPartition, k: int, sigma: int) -> KSigmaConfig:
    """Block construction: set i supplies labels (i-1)*sigma+1 .. i*sigma.

    Works for any k <= sigma * len(sets): full blocks go to the first
    k // sigma sets, the next set takes the k % sigma leftover labels
    padded with low labels, and later sets reuse the first block.
    """
    q, r = divmod(k, sigma)
    labels_by_set: list[frozenset[int]] = []
    for i, _ in enumerate(dp.sets):
        if i < q:
            block = frozenset(range(i * sigma, (i + 1) * sigma))
        elif i == q and r > 0:
            block = frozenset(range(q * sigma, q * sigma + r)) | frozenset(
                range(sigma - r)
            )
        else:
            block = frozenset(range(sigma))
        labels_by_set.append(block)
    node_labels: dict[int, frozenset[int]] = {}
    for block, nodes in zip(labels_by_set, dp.sets):
        for v in nodes:
            node_labels[v] = block
    n = len(node_labels)
    return KSigmaConfig(
        k=k, sigma=sigma, labels=tuple(node_labels[v] for v in range(n))
    )


def config_from_domatic(
    g: NetworkGraph, dp: DomaticPartition, sigma: int
) -> KSigmaConfig:
    """Lifetime sigma * #sets: each set holds one block of sigma labels."""
    if sigma < 1:
        raise InputError("sigma must be >= 1")
    validate_partition(g, dp)
    cfg = _config_from_partition(dp, sigma * len(dp.sets), sigma)
    check = verify_config(g, cfg)
    assert check.ok, "block construction over a valid partition cannot fail"
    return cfg


SearchStatus = Literal["found", "nonexistent", "exhausted"]


@dataclass(frozen=True)
class ConfigSearchResult:
    status: SearchStatus
    config: KSigmaConfig | None
    method: str
    detail: str


def config_instance(g: NetworkGraph, k: int, sigma: int) -> ProblemInstance:
    """Scheduling instance whose perfect score means a valid configuration.

    Devices on every node, every node a target, range 1: a device covers
    exactly its closed neighborhood, so full coverage in all k slots is
    the configuration property.
    """
    cov = build_detection(g, range(g.node_count), all_node_targets(g), 1)
    return ProblemInstance(cov, k=k, sigma=sigma)


def config_as_labeling(cfg: KSigmaConfig) -> Labeling:
    return Labeling(cfg.labels)


def _exhaustive_config_search(
    g: NetworkGraph, k: int, sigma: int, expansion_cap: int
) -> tuple[bool, KSigmaConfig | None, bool]:
    """Backtracking over per-node label sets.

    Returns (completed, config, found). A node's constraint is checked
    as soon as its whole closed neighborhood is assigned. If the
    expansion cap trips, completed is False and nothing is proven.
    """
    n = g.node_count
    actions = list(combinations(range(k), sigma))
    closed = [closed_neighborhood(g, v) for v in range(n)]
    # nodes whose closed neighborhood is fully assigned once v is set
    ready_after = [[u for u in range(n) if v == max(closed[u])] for v in range(n)]
    assignment: list[frozenset[int]] = [frozenset()] * n
    expansions = 0

    def constraint_ok(u: int) -> bool:
        available: set[int] = set()
        for w in closed[u]:
            available |= assignment[w]
        return len(available) == k

    def walk(v: int) -> bool | None:
        nonlocal expansions
        if v == n:
            return True
        for action in actions:
            expansions += 1
            if expansions > expansion_cap:
                return None
            assignment[v] = frozenset(action)
            if all(constraint_ok(u) for u in ready_after[v]):
                result = walk(v + 1)
                if result:
                    return True
                if result is None:
                    return None
        assignment[v] = frozenset()
        return False

    result = walk(0)
    if result is True:
        cfg = KSigmaConfig(k=k, sigma=sigma, labels=tuple(assignment))
        return True, cfg, True
    return (result is False), None, False


def search_config(
    g: NetworkGraph,
    k: int,
    sigma: int,
    budget: int = 200_000,
    seed: int = 0,
    exhaustive_bound: int = 64,
    exhaustive_expansion_cap: int = 2_000_000,
    epsilon: float = 0.015,
) -> ConfigSearchResult:
    """Find a (k, sigma)-configuration or report why none was found.

    Order of attack: necessary-condition prechecks (proven nonexistent),
    the constructive path through a greedy domatic partition (covers any
    k up to sigma times the partition size), exhaustive backtracking
    when n * C(k, sigma) is within exhaustive_bound (completion proves
    nonexistence), then stochastic label search in chains until the
    iteration budget runs out. `exhausted` never claims nonexistence.
    """
    if g.node_count == 0:
        raise InputError("empty graph")
    if not 1 <= sigma <= k:
        raise InputError(f"need 1 <= sigma <= k, got sigma={sigma}, k={k}")

    # every label must appear in the closed neighborhood of a
    # minimum-degree node, which holds at most sigma * (deg + 1) labels
    cap = sigma * (g.min_degree() + 1)
    if k > cap:
        return ConfigSearchResult(
            status="nonexistent",
            config=None,
            method="precheck",
            detail=(
                f"a minimum-degree node sees at most {cap} labels "
                f"in its closed neighborhood; k={k} cannot be satisfied"
            ),
        )

    dp = greedy_domatic_partition(g)
    if k <= sigma * len(dp.sets):
        cfg = _config_from_partition(dp, k, sigma)
        check = verify_config(g, cfg)
        assert check.ok
        return ConfigSearchResult(
            status="found",
            config=cfg,
            method="constructive",
            detail=f"from a {len(dp.sets)}-set greedy domatic partition",
        )

    if g.node_count * math.comb(k, sigma) <= exhaustive_bound:
        completed, cfg, found = _exhaustive_config_search(
            g, k, sigma, exhaustive_expansion_cap
        )
        if found:
            check = verify_config(g, cfg)
            assert check.ok
            return ConfigSearchResult(
                status="found", config=cfg, method="exhaustive", detail="by enumeration"
            )
        if completed:
            return ConfigSearchResult(
                status="nonexistent",
                config=None,
                method="exhaustive",
                detail="full enumeration found no valid assignment",
            )

    inst = config_instance(g, k, sigma)
    target = g.node_count * k
    chain_iters = min(budget, 20_000)
    used = 0
    chain = 0
    while used < budget:
        iters = min(chain_iters, budget - used)
        params = BlllParams(
            epsilon=epsilon,
            iterations=iters,
            seed=derive_seed(seed, "config-search", chain),
            trace_stride=max(1, iters // 100),
            stop_at_potential=target,
        )
        result = blll_schedule(inst, params)
        used += result.trace[-1][0]
        chain += 1
        if result.best_potential >= target:
            cfg = KSigmaConfig(k=k, sigma=sigma, labels=result.best_labeling.by_x)
            check = verify_config(g, cfg)
            assert check.ok
            return ConfigSearchResult(
                status="found",
                config=cfg,
                method="stochastic",
                detail=f"chain {chain} after {used} iterations",
            )
    return ConfigSearchResult(
        status="exhausted",
        config=None,
        method="stochastic",
        detail=f"no configuration within {budget} iterations",
    )
