import pytest

from sensched.coverage import build_detection
from sensched.graph import NetworkGraph, all_edge_targets, all_node_targets
from sensched.schedule import ProblemInstance


@pytest.fixture
def path4():
    return NetworkGraph(["1", "2", "3", "4"], [("1", "2"), ("2", "3"), ("3", "4")])


@pytest.fixture
def path4_instance(path4):
    cov = build_detection(path4, [1, 2], all_edge_targets(path4), 1)
    return ProblemInstance(cov, k=2, sigma=1)


@pytest.fixture
def star5():
    return NetworkGraph(
        ["c", "l1", "l2", "l3", "l4"],
        [("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")],
    )


@pytest.fixture
def triangle():
    return NetworkGraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def k4():
    names = list("abcd")
    edges = [(a, b) for i, a in enumerate(names) for b in names[i + 1 :]]
    return NetworkGraph(names, edges)


@pytest.fixture
def c4():
    return NetworkGraph(
        ["0", "1", "2", "3"], [("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")]
    )


@pytest.fixture
def petersen():
    names = [str(i) for i in range(10)]
    edges = (
        [(str(i), str((i + 1) % 5)) for i in range(5)]
        + [(str(i), str(i + 5)) for i in range(5)]
        + [(str(5 + i), str(5 + (i + 2) % 5)) for i in range(5)]
    )
    return NetworkGraph(names, edges)


def star_placement_instance(star):
    cov = build_detection(star, range(5), all_node_targets(star), 1)
    return ProblemInstance(cov, k=1, sigma=1)
