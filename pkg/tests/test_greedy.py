from fractions import Fraction

from sensched.coverage import build_detection
from sensched.graph import all_edge_targets
from sensched.greedy import greedy_schedule
from sensched.oracle import exact_optimal_schedule
from sensched.schedule import ProblemInstance, score
from sensched.seeds import derive_rng
from sensched.verify import random_instance


def test_path_fixture_reaches_optimum(path4_instance):
    result = greedy_schedule(path4_instance)
    assert score(path4_instance, result.labeling).score == Fraction(2, 3)
    assert exact_optimal_schedule(path4_instance).best_score == Fraction(2, 3)


def test_single_slot_forces_label_one(path4):
    cov = build_detection(path4, [1, 2], all_edge_targets(path4), 1)
    inst = ProblemInstance(cov, k=1, sigma=1)
    result = greedy_schedule(inst)
    assert all(labels == frozenset({0}) for labels in result.labeling.by_x)
    covered = set().union(*(cov.adj[i] for i in range(cov.n_x)))
    assert score(inst, result.labeling).score == Fraction(len(covered), cov.n_y)


def test_sigma_equals_k_saturates(path4):
    cov = build_detection(path4, [1, 2], all_edge_targets(path4), 1)
    inst = ProblemInstance(cov, k=3, sigma=3)
    result = greedy_schedule(inst)
    assert all(labels == frozenset({0, 1, 2}) for labels in result.labeling.by_x)
    coverable = sum(1 for y in range(cov.n_y) if cov.rev[y])
    assert score(inst, result.labeling).score == Fraction(coverable, cov.n_y)


def test_every_device_ends_with_sigma_labels():
    rng = derive_rng(21, "greedy-full")
    for _ in range(15):
        inst = random_instance(rng)
        result = greedy_schedule(inst)
        assert all(len(labels) == inst.sigma for labels in result.labeling.by_x)


def test_objective_non_decreasing_along_trace():
    rng = derive_rng(22, "greedy-trace")
    for _ in range(10):
        inst = random_instance(rng)
        result = greedy_schedule(inst)
        values = [pick.objective for pick in result.trace]
        assert values == sorted(values)
        assert values[-1] == result.objective
        assert values[-1] == score(inst, result.labeling).potential
        assert len(result.trace) == inst.coverage.n_x * inst.sigma


def test_never_beats_oracle():
    rng = derive_rng(23, "greedy-vs-oracle")
    checked = 0
    while checked < 10:
        inst = random_instance(rng, max_nodes=6, max_k=4)
        import math

        if math.comb(inst.k, inst.sigma) ** inst.coverage.n_x > 50_000:
            continue
        checked += 1
        best = exact_optimal_schedule(inst, max_optima=1)
        got = greedy_schedule(inst)
        assert got.objective <= best.best_potential


def test_deterministic_without_seed(path4_instance):
    a = greedy_schedule(path4_instance)
    b = greedy_schedule(path4_instance)
    assert a == b


def test_seeded_tie_break_reproducible():
    rng = derive_rng(24, "greedy-seeded")
    inst = random_instance(rng)
    a = greedy_schedule(inst, seed=5)
    b = greedy_schedule(inst, seed=5)
    assert a == b
    # a different seed may pick different ties but must score the same or not;
    # only validity is required
    c = greedy_schedule(inst, seed=6)
    assert all(len(labels) == inst.sigma for labels in c.labeling.by_x)
