"""Random graph generators and the closed-form analysis of random scheduling.

When every node hosts a device, is itself a target, and activates in a
uniform random sigma-subset of the k slots, the expected coverage score
has a closed form on random geometric and Erdos-Renyi graphs:

    geometric:   1 - ((k - sigma) / k) * exp(-sigma * density * pi * r^2 / k)
    Erdos-Renyi: 1 - ((k - sigma) / k) * exp(-sigma * n * p / k)

Both treat neighbor counts as Poisson and activations as independent,
so on finite graphs they are approximations; simulate_random_schedule
measures the actual value for comparison.
"""

from __future__ import annotations

import math
import statistics
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .coverage import build_detection
from .errors import InputError
from .graph import NetworkGraph, all_node_targets
from .schedule import Labeling, ProblemInstance, score
from .seeds import derive_rng


@dataclass(frozen=True)
class GeometricGraphSpec:
    """Uniform points in an area_side x area_side square; edges within radius.

    With torus=True, distances wrap around both axes, which removes
    boundary effects and makes the Poisson degree assumption exact in
    expectation.
    """

    n: int
    area_side: float
    radius: float
    seed: int = 0
    torus: bool = False

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("n must be >= 0")
        if self.area_side <= 0 or self.radius <= 0:
            raise InputError("area_side and radius must be positive")

    @property
    def density(self) -> float:
        return self.n / (self.area_side * self.area_side)


@dataclass(frozen=True)
class ErdosRenyiSpec:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("n must be >= 0")
        if not 0.0 <= self.p <= 1.0:
            raise InputError(f"p must be in [0, 1], got {self.p}")


def gen_geometric(
    spec: GeometricGraphSpec,
) -> tuple[NetworkGraph, tuple[tuple[float, float], ...]]:
    """Sample a geometric graph; returns the graph and node coordinates."""
    rng = derive_rng(spec.seed, "geometric")
    side = spec.area_side
    coords = [(rng.uniform(0, side), rng.uniform(0, side)) for _ in range(spec.n)]
    r2 = spec.radius * spec.radius
    edges = []
    for i in range(spec.n):
        xi, yi = coords[i]
        for j in range(i + 1, spec.n):
            dx = abs(xi - coords[j][0])
            dy = abs(yi - coords[j][1])
            if spec.torus:
                dx = min(dx, side - dx)
                dy = min(dy, side - dy)
            if dx * dx + dy * dy <= r2:
                edges.append((str(i), str(j)))
    g = NetworkGraph([str(i) for i in range(spec.n)], edges)
    return g, tuple(coords)


def gen_erdos_renyi(spec: ErdosRenyiSpec) -> NetworkGraph:
    """Each unordered node pair is an edge independently with probability p."""
    rng = derive_rng(spec.seed, "erdos-renyi")
    edges = [
        (str(i), str(j))
        for i in range(spec.n)
        for j in range(i + 1, spec.n)
        if rng.random() < spec.p
    ]
    return NetworkGraph([str(i) for i in range(spec.n)], edges)


def gen_connected_gnm(n: int, m: int, seed: int = 0) -> NetworkGraph:
    """Connected graph with exactly n nodes and m edges.

    A random spanning tree takes the first n-1 edges; the rest are drawn
    uniformly from the remaining node pairs. Used for synthetic
    stand-ins when a real network of a given size is not distributable.
    """
    if n < 1:
        raise InputError("n must be >= 1")
    max_edges = n * (n - 1) // 2
    if not n - 1 <= m <= max_edges:
        raise InputError(f"need n-1 <= m <= {max_edges} for a connected graph, got {m}")
    rng = derive_rng(seed, "connected-gnm")
    order = list(range(n))
    rng.shuffle(order)
    edge_set: set[tuple[int, int]] = set()
    for idx in range(1, n):
        u = order[idx]
        v = order[rng.randrange(idx)]
        edge_set.add((min(u, v), max(u, v)))
    while len(edge_set) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edge_set.add((min(u, v), max(u, v)))
    names = [str(i) for i in range(n)]
    edges = [(names[u], names[v]) for u, v in sorted(edge_set)]
    return NetworkGraph(names, edges)


def _check_k_sigma(k: int, sigma: int) -> None:
    if k < 1:
        raise InputError("k must be >= 1")
    if not 1 <= sigma <= k:
        raise InputError(f"need 1 <= sigma <= k, got sigma={sigma}, k={k}")


def closed_form_geometric(k: int, sigma: int, density: float, radius: float) -> float:
    """Expected random-scheduling score on a geometric graph."""
    _check_k_sigma(k, sigma)
    if density <= 0 or radius <= 0:
        raise InputError("density and radius must be positive")
    mean_degree = density * math.pi * radius * radius
    return 1.0 - ((k - sigma) / k) * math.exp(-sigma * mean_degree / k)


def closed_form_er(k: int, sigma: int, n: int, p: float) -> float:
    """Expected random-scheduling score on an Erdos-Renyi graph."""
    _check_k_sigma(k, sigma)
    if n < 0:
        raise InputError("n must be >= 0")
    if not 0.0 <= p <= 1.0:
        raise InputError(f"p must be in [0, 1], got {p}")
    return 1.0 - ((k - sigma) / k) * math.exp(-sigma * n * p / k)


@dataclass(frozen=True)
class RandomScheduleStats:
    mean: float
    stderr: float
    trials: int
    mean_fraction: Fraction


_SIM_CONTEXT: tuple[ProblemInstance, int] | None = None


def _sim_init(inst: ProblemInstance, seed: int) -> None:
    global _SIM_CONTEXT
    _SIM_CONTEXT = (inst, seed)


def _sim_trial(trial: int) -> Fraction:
    assert _SIM_CONTEXT is not None
    inst, seed = _SIM_CONTEXT
    rng = derive_rng(seed, "trial", trial)
    k, sigma = inst.k, inst.sigma
    labeling = Labeling(
        tuple(
            frozenset(rng.sample(range(k), sigma))
            for _ in range(inst.coverage.n_x)
        )
    )
    return score(inst, labeling).score


def simulate_random_schedule(
    g: NetworkGraph,
    k: int,
    sigma: int,
    range_limit: int = 1,
    trials: int = 100,
    seed: int = 0,
    workers: int = 1,
) -> RandomScheduleStats:
    """Empirical score of uniform random sigma-of-k activation.

    Every node hosts a device and is a target. Each trial draws an
    independent uniform sigma-subset per node; trial seeds derive from
    (seed, trial index), so results do not depend on worker count. The
    closed forms assume range 1; other ranges run but are flagged.
    """
    _check_k_sigma(k, sigma)
    if trials < 1:
        raise InputError("trials must be >= 1")
    if range_limit != 1:
        warnings.warn(
            "closed-form predictions assume range 1; "
            f"simulating with range {range_limit} anyway",
            RuntimeWarning,
            stacklevel=2,
        )
    cov = build_detection(g, range(g.node_count), all_node_targets(g), range_limit)
    inst = ProblemInstance(cov, k=k, sigma=sigma)

    if workers <= 1:
        _sim_init(inst, seed)
        samples = [_sim_trial(t) for t in range(trials)]
    else:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_sim_init, initargs=(inst, seed)
        ) as pool:
            samples = list(pool.map(_sim_trial, range(trials), chunksize=8))

    total = sum(samples, Fraction(0))
    mean_fraction = total / trials
    floats = [float(s) for s in samples]
    stderr = (
        statistics.stdev(floats) / math.sqrt(trials) if trials > 1 else 0.0
    )
    return RandomScheduleStats(
        mean=float(mean_fraction),
        stderr=stderr,
        trials=trials,
        mean_fraction=mean_fraction,
    )
