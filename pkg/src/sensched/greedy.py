"""Greedy label assignment: one best (device, slot) pick at a time.

Each iteration adds the label that most increases the number of newly
covered (slot, Y-element) pairs, until every device holds exactly sigma
labels. Zero-gain picks still happen near the end; they are assigned in
lexicographic order so results stay deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .schedule import Labeling, ProblemInstance
from .seeds import derive_rng


@dataclass(frozen=True)
class GreedyPick:
    iteration: int
    x: int
    label: int
    gain: int
    objective: int


@dataclass(frozen=True)
class GreedyResult:
    labeling: Labeling
    trace: tuple[GreedyPick, ...]
    objective: int


def greedy_schedule(inst: ProblemInstance, seed: int | None = None) -> GreedyResult:
    """Run the greedy heuristic to a full exactly-sigma labeling.

    Ties between equal-gain (device, slot) pairs break on the lowest
    (device index, slot) by default; passing a seed switches to uniform
    random tie-breaking for variance studies.
    """
    cov = inst.coverage
    k, sigma = inst.k, inst.sigma
    rng = derive_rng(seed, "greedy-tiebreak") if seed is not None else None

    # counts[y][lab] = number of active providers of slot `lab` for y
    counts = [[0] * k for _ in range(cov.n_y)]
    labels: list[set[int]] = [set() for _ in range(cov.n_x)]
    objective = 0
    trace: list[GreedyPick] = []

    total_picks = cov.n_x * sigma
    for iteration in range(1, total_picks + 1):
        best_gain = -1
        best: tuple[int, int] | None = None
        ties: list[tuple[int, int]] = []
        for xi in range(cov.n_x):
            if len(labels[xi]) >= sigma:
                continue
            nbrs = cov.adj[xi]
            for lab in range(k):
                if lab in labels[xi]:
                    continue
                gain = sum(1 for y in nbrs if counts[y][lab] == 0)
                if gain > best_gain:
                    best_gain = gain
                    best = (xi, lab)
                    if rng is not None:
                        ties = [(xi, lab)]
                elif rng is not None and gain == best_gain:
                    ties.append((xi, lab))
        assert best is not None
        if rng is not None and len(ties) > 1:
            best = ties[rng.randrange(len(ties))]
        xi, lab = best
        labels[xi].add(lab)
        for y in cov.adj[xi]:
            counts[y][lab] += 1
        objective += best_gain
        trace.append(GreedyPick(iteration, xi, lab, best_gain, objective))

    return GreedyResult(
        labeling=Labeling(tuple(frozenset(s) for s in labels)),
        trace=tuple(trace),
        objective=objective,
    )
