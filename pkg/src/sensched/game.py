"""Potential-game view of the labeling problem and its stochastic solvers.

Players are devices; an action is an exactly-sigma set of slot labels
(plus a location in placement mode). The global objective (the game's
potential) is the number of covered (slot, Y-element) pairs; a player's
utility is the number of such pairs for which it is the sole provider.
A unilateral change in any player's action moves utility and potential
by exactly the same integer amount, which is what lets noisy
best-response dynamics climb the global objective.

The solver is binary log-linear learning: repeatedly pick a random
player and a random trial action, then switch with probability
b^U(trial) / (b^U(trial) + b^U(current)) where b = 1/epsilon > 1, so
higher-utility actions are favored and the noise epsilon occasionally
accepts downhill moves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random
from typing import Callable

from .coverage import CoverageGraph, restrict_x
from .errors import InputError
from .schedule import Labeling, ProblemInstance
from .seeds import derive_rng


@dataclass(frozen=True)
class BlllParams:
    """Knobs for a binary log-linear learning run.

    raw_epsilon_rule selects the acceptance ratio with epsilon itself as
    the base (which favors lower-utility actions for epsilon < 1);
    the default uses 1/epsilon. stop_at_potential lets callers that
    know the global maximum (the configuration search) end a chain as
    soon as it is reached; the default is a fixed iteration budget.
    """

    epsilon: float = 0.015
    iterations: int = 20_000
    seed: int = 0
    trace_stride: int = 1
    audit_interval: int = 1000
    raw_epsilon_rule: bool = False
    uniform_proposal_limit: int = 1_000_000
    stop_at_potential: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise InputError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.iterations < 0:
            raise InputError("iterations must be >= 0")
        if self.trace_stride < 1:
            raise InputError("trace_stride must be >= 1")

    def log_base(self) -> float:
        return math.log(self.epsilon) if self.raw_epsilon_rule else -math.log(self.epsilon)


class GameState:
    """Mutable game position with incrementally maintained counters.

    counts[y][lab] is the number of active providers of slot lab for Y
    element y; phi is the number of nonzero entries, kept in lockstep
    with every move. In placement mode each player additionally owns a
    distinct site (an index into the candidate coverage's X side).
    """

    def __init__(
        self,
        cov: CoverageGraph,
        k: int,
        sigma: int,
        actions: list[frozenset[int]],
        sites: list[int] | None = None,
    ):
        self.cov = cov
        self.k = k
        self.sigma = sigma
        if sites is None:
            if len(actions) != cov.n_x:
                raise InputError("need one action per device")
        else:
            if len(sites) != len(actions):
                raise InputError("need one site per player")
            if len(set(sites)) != len(sites):
                raise InputError("players must occupy distinct sites")
            for s in sites:
                if not 0 <= s < cov.n_x:
                    raise InputError(f"unknown site index: {s}")
        for a in actions:
            self._check_action(a)
        self.actions = list(actions)
        self.sites = list(sites) if sites is not None else None
        self.counts = [[0] * k for _ in range(cov.n_y)]
        self.phi = 0
        for player, action in enumerate(self.actions):
            self._add(self.site(player), action)

    def _check_action(self, action: frozenset[int]) -> None:
        if len(action) != self.sigma:
            raise InputError(f"action must hold exactly {self.sigma} labels")
        for lab in action:
            if not 0 <= lab < self.k:
                raise InputError(f"label {lab} outside 0..{self.k - 1}")

    @property
    def n_players(self) -> int:
        return len(self.actions)

    def site(self, player: int) -> int:
        return player if self.sites is None else self.sites[player]

    def _add(self, x: int, labels: frozenset[int]) -> None:
        counts = self.counts
        for y in self.cov.adj[x]:
            row = counts[y]
            for lab in labels:
                row[lab] += 1
                if row[lab] == 1:
                    self.phi += 1

    def _remove(self, x: int, labels: frozenset[int]) -> None:
        counts = self.counts
        for y in self.cov.adj[x]:
            row = counts[y]
            for lab in labels:
                row[lab] -= 1
                if row[lab] == 0:
                    self.phi -= 1

    def utility(self, player: int) -> int:
        """Covered (slot, y) pairs this player alone provides."""
        counts = self.counts
        total = 0
        for y in self.cov.adj[self.site(player)]:
            row = counts[y]
            for lab in self.actions[player]:
                if row[lab] == 1:
                    total += 1
        return total

    def move(
        self, player: int, labels: frozenset[int], site: int | None = None
    ) -> None:
        """Unilateral deviation: replace the player's action (and site)."""
        self._check_action(labels)
        new_site = self.site(player) if site is None else site
        if self.sites is None and new_site != player:
            raise InputError("fixed-location game: players cannot move site")
        if self.sites is not None and new_site != self.sites[player]:
            if new_site in self.sites:
                raise InputError(f"site {new_site} already occupied")
            if not 0 <= new_site < self.cov.n_x:
                raise InputError(f"unknown site index: {new_site}")
        self._remove(self.site(player), self.actions[player])
        if self.sites is not None:
            self.sites[player] = new_site
        self.actions[player] = labels
        self._add(new_site, labels)

    def recount(self) -> int:
        """Potential recomputed from scratch (audit path)."""
        fresh = [[0] * self.k for _ in range(self.cov.n_y)]
        for player, action in enumerate(self.actions):
            for y in self.cov.adj[self.site(player)]:
                row = fresh[y]
                for lab in action:
                    row[lab] += 1
        assert fresh == self.counts, "incremental counters diverged from recount"
        return sum(1 for row in fresh for c in row if c > 0)

    def labeling(self) -> Labeling:
        if self.sites is not None:
            raise InputError("placement games map to labelings via placement()")
        return Labeling(tuple(self.actions))

    def placement(self) -> tuple[tuple[int, ...], Labeling]:
        """Sorted occupied sites and the labeling aligned to that order."""
        if self.sites is None:
            raise InputError("not a placement game")
        ordered = sorted(zip(self.sites, self.actions))
        return tuple(s for s, _ in ordered), Labeling(tuple(a for _, a in ordered))


def random_state(cov: CoverageGraph, k: int, sigma: int, rng: Random) -> GameState:
    """Every device draws a uniform exactly-sigma label set."""
    actions = [frozenset(rng.sample(range(k), sigma)) for _ in range(cov.n_x)]
    return GameState(cov, k, sigma, actions)


def random_placement_state(
    cov: CoverageGraph, k: int, sigma: int, device_count: int, rng: Random
) -> GameState:
    """Uniform random distinct sites plus uniform label sets."""
    if device_count > cov.n_x:
        raise InputError(
            f"cannot place {device_count} devices on {cov.n_x} candidate sites"
        )
    if device_count < 1:
        raise InputError("device_count must be >= 1")
    sites = rng.sample(range(cov.n_x), device_count)
    actions = [frozenset(rng.sample(range(k), sigma)) for _ in range(device_count)]
    return GameState(cov, k, sigma, actions, sites=sites)


def potential(state: GameState) -> int:
    """Global objective: covered Y elements summed over slots.

    Evaluated fresh from the slot sets and checked against the
    label-set form maintained in the counters; the two are equal for
    every state.
    """
    by_slot = 0
    for lab in range(state.k):
        seen: set[int] = set()
        for player, action in enumerate(state.actions):
            if lab in action:
                seen |= state.cov.adj[state.site(player)]
        by_slot += len(seen)
    assert by_slot == state.phi, "slot-form potential diverged from counters"
    return by_slot


def utility(state: GameState, player: int) -> int:
    """Labels this player alone makes available to its covered Y elements."""
    if not 0 <= player < state.n_players:
        raise InputError(f"unknown player: {player}")
    return state.utility(player)


def check_potential_identity(
    state: GameState,
    player: int,
    labels: frozenset[int],
    site: int | None = None,
) -> tuple[int, int]:
    """Apply a unilateral deviation, measure (dU, dPhi), and revert.

    Both deltas come from full recounts around the move, so this is an
    executable check that utility changes track the potential exactly.
    """
    if not 0 <= player < state.n_players:
        raise InputError(f"unknown player: {player}")
    old_labels = state.actions[player]
    old_site = state.site(player)
    u_before = state.utility(player)
    phi_before = state.recount()
    assert phi_before == state.phi
    state.move(player, labels, site=site)
    u_after = state.utility(player)
    phi_after = state.recount()
    assert phi_after == state.phi
    state.move(player, old_labels, site=old_site)
    assert state.phi == phi_before
    return u_after - u_before, phi_after - phi_before


def _accept_probability(u_new: int, u_cur: int, log_base: float) -> float:
    x = (u_new - u_cur) * log_base
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def _propose_action(
    rng: Random, k: int, sigma: int, current: frozenset[int], uniform_limit: int
) -> frozenset[int]:
    n_actions = math.comb(k, sigma)
    if n_actions == 1:
        return current
    if n_actions <= uniform_limit:
        while True:
            cand = frozenset(rng.sample(range(k), sigma))
            if cand != current:
                return cand
    # large action space: uniform single-label swap
    inside = sorted(current)
    outside = sorted(set(range(k)) - current)
    drop = inside[rng.randrange(len(inside))]
    add = outside[rng.randrange(len(outside))]
    return (current - {drop}) | {add}


@dataclass(frozen=True)
class BlllResult:
    labeling: Labeling
    best_labeling: Labeling
    final_potential: int
    best_potential: int
    trace: tuple[tuple[int, int], ...]
    accepted: int


@dataclass(frozen=True)
class PlacementResult:
    sites: tuple[int, ...]
    labeling: Labeling
    best_sites: tuple[int, ...]
    best_labeling: Labeling
    final_potential: int
    best_potential: int
    trace: tuple[tuple[int, int], ...]
    accepted: int

    def best_coverage(self, cov: CoverageGraph) -> CoverageGraph:
        return restrict_x(cov, self.best_sites)


def _run_chain(
    state: GameState,
    params: BlllParams,
    rng: Random,
    propose: Callable[[Random, GameState, int], tuple[int, frozenset[int]]],
) -> tuple[list[tuple[int, int]], int, int, tuple]:
    """Shared BLLL loop; propose() returns (site, labels) trials."""
    log_base = params.log_base()
    trace: list[tuple[int, int]] = [(0, state.phi)]
    best_phi = state.phi
    best_snapshot = (list(state.sites) if state.sites is not None else None,
                     list(state.actions))
    accepted = 0
    for i in range(1, params.iterations + 1):
        player = rng.randrange(state.n_players)
        old_labels = state.actions[player]
        old_site = state.site(player)
        new_site, new_labels = propose(rng, state, player)

        state._remove(old_site, old_labels)
        adj = state.cov.adj
        counts = state.counts
        u_cur = sum(
            1 for y in adj[old_site] for lab in old_labels if counts[y][lab] == 0
        )
        u_new = sum(
            1 for y in adj[new_site] for lab in new_labels if counts[y][lab] == 0
        )
        if rng.random() < _accept_probability(u_new, u_cur, log_base):
            if state.sites is not None:
                state.sites[player] = new_site
            state.actions[player] = new_labels
            state._add(new_site, new_labels)
            accepted += 1
            if params.audit_interval and accepted % params.audit_interval == 0:
                state.recount()
        else:
            state._add(old_site, old_labels)

        if state.phi > best_phi:
            best_phi = state.phi
            best_snapshot = (
                list(state.sites) if state.sites is not None else None,
                list(state.actions),
            )
        if i % params.trace_stride == 0 or i == params.iterations:
            trace.append((i, state.phi))
        if params.stop_at_potential is not None and state.phi >= params.stop_at_potential:
            if trace[-1][0] != i:
                trace.append((i, state.phi))
            break
    return trace, best_phi, accepted, best_snapshot


def blll_schedule(inst: ProblemInstance, params: BlllParams | None = None) -> BlllResult:
    """Binary log-linear learning over exactly-sigma labelings.

    Reproducible given the seed; the trace holds (iteration, potential)
    pairs at the configured stride, and the best state seen anywhere in
    the chain is returned alongside the final one.
    """
    params = params or BlllParams()
    cov = inst.coverage
    rng = derive_rng(params.seed, "blll-schedule")
    state = random_state(cov, inst.k, inst.sigma, rng)

    def propose(r: Random, st: GameState, player: int) -> tuple[int, frozenset[int]]:
        return player, _propose_action(
            r, st.k, st.sigma, st.actions[player], params.uniform_proposal_limit
        )

    trace, best_phi, accepted, (_, best_actions) = _run_chain(
        state, params, rng, propose
    )
    return BlllResult(
        labeling=state.labeling(),
        best_labeling=Labeling(tuple(best_actions)),
        final_potential=state.phi,
        best_potential=best_phi,
        trace=tuple(trace),
        accepted=accepted,
    )


def blll_place_and_schedule(
    inst: ProblemInstance, device_count: int, params: BlllParams | None = None
) -> PlacementResult:
    """Joint site selection and scheduling for a fixed device count.

    inst.coverage must span every candidate site. A trial move draws a
    site uniformly from the unoccupied candidates plus the player's own
    site, together with a fresh uniform label set.
    """
    params = params or BlllParams()
    cov = inst.coverage
    rng = derive_rng(params.seed, "blll-placement")
    state = random_placement_state(cov, inst.k, inst.sigma, device_count, rng)

    def propose(r: Random, st: GameState, player: int) -> tuple[int, frozenset[int]]:
        occupied = set(st.sites)
        occupied.discard(st.sites[player])
        candidates = [s for s in range(cov.n_x) if s not in occupied]
        new_site = candidates[r.randrange(len(candidates))]
        new_labels = frozenset(r.sample(range(st.k), st.sigma))
        return new_site, new_labels

    trace, best_phi, accepted, (best_sites, best_actions) = _run_chain(
        state, params, rng, propose
    )
    sites, labeling = state.placement()
    ordered = sorted(zip(best_sites, best_actions))
    return PlacementResult(
        sites=sites,
        labeling=labeling,
        best_sites=tuple(s for s, _ in ordered),
        best_labeling=Labeling(tuple(a for _, a in ordered)),
        final_potential=state.phi,
        best_potential=best_phi,
        trace=tuple(trace),
        accepted=accepted,
    )


def greedy_max_coverage_placement(cov: CoverageGraph, device_count: int) -> tuple[int, ...]:
    """Classic greedy maximum-coverage site pick (ties to the lowest index)."""
    if device_count > cov.n_x:
        raise InputError(
            f"cannot place {device_count} devices on {cov.n_x} candidate sites"
        )
    if device_count < 1:
        raise InputError("device_count must be >= 1")
    chosen: list[int] = []
    covered: set[int] = set()
    remaining = set(range(cov.n_x))
    for _ in range(device_count):
        best_x = -1
        best_gain = -1
        for x in sorted(remaining):
            gain = len(cov.adj[x] - covered)
            if gain > best_gain:
                best_gain = gain
                best_x = x
        chosen.append(best_x)
        remaining.discard(best_x)
        covered |= cov.adj[best_x]
    return tuple(sorted(chosen))
