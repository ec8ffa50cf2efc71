import random

import networkx as nx
import pytest

from randic.constructions import (
    broken_windmill,
    complete,
    corona_k1,
    cycle,
    generalized_windmill,
    path,
    random_connected_graph,
    random_graph,
    sparse_counterexample,
    star,
)
from randic.graph import Graph, GraphError, remove_vertices
from randic.matching import (
    MatchingResult,
    augment_from,
    avoidable_vertices,
    matching_number,
    matching_oracle,
    max_mate,
    max_matching,
)


@pytest.mark.parametrize(
    "g, expected",
    [
        (Graph.empty(0), 0),
        (Graph.empty(3), 0),
        (path(2), 1),
        (path(5), 2),
        (cycle(5), 2),
        (cycle(6), 3),
        (star(7), 1),
        (complete(7), 3),
    ],
)
def test_small_values(g, expected):
    assert matching_number(g) == expected
    assert matching_oracle(g) == expected


def test_blossom_needed():
    # two triangles joined by a path: greedy from the wrong side needs a blossom
    g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)])
    assert matching_number(g) == 4


def test_result_is_valid_matching():
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng.randint(1, 12), rng.random(), rng)
        m = max_matching(g)
        assert m.is_valid_for(g)
        assert MatchingResult.from_mate(m.mate(g.n)) == m


def test_against_networkx():
    rng = random.Random(5)
    for _ in range(300):
        g = random_graph(rng.randint(1, 25), rng.random() * 0.4, rng)
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        assert matching_number(g) == len(nx.max_weight_matching(h, maxcardinality=True))


def test_oracle_refuses_large():
    with pytest.raises(GraphError):
        matching_oracle(path(15))


def test_paper_families():
    for a in range(7):
        for b in range(7):
            if a + b:
                assert matching_number(broken_windmill(a, b)) == a + b
    for k in range(1, 11):
        for r in range(0, k // 2 + 1):
            if k > r:
                assert matching_number(generalized_windmill(k, r)) == k
    for a in range(1, 5):
        for b in range(1, 5):
            assert matching_number(sparse_counterexample(a, b)) == a + b
    rng = random.Random(1)
    for _ in range(50):
        h = random_graph(rng.randint(1, 8), 0.5, rng)
        assert matching_number(corona_k1(h)) == h.n


def test_avoidable_matches_deletion():
    rng = random.Random(11)
    for _ in range(300):
        g = random_connected_graph(rng.randint(2, 11), rng.randint(0, 6), rng)
        mate = max_mate(g.adjacency())
        alpha = matching_number(g)
        avoid = avoidable_vertices(g.adjacency(), mate)
        for v in range(g.n):
            same = matching_oracle(remove_vertices(g, [v])) == alpha
            assert (v in avoid) == same


def test_avoidable_rejects_non_maximum():
    g = path(4)
    with pytest.raises(ValueError):
        avoidable_vertices(g.adjacency(), [-1, 2, 1, -1])


def test_augment_from():
    g = path(4)
    mate = [-1, 2, 1, -1]
    assert augment_from(g.adjacency(), mate, 0)
    assert mate == [1, 0, 3, 2]
    with pytest.raises(ValueError):
        augment_from(g.adjacency(), mate, 0)


def test_warm_start():
    g = cycle(7)
    assert sum(v != -1 for v in max_mate(g.adjacency(), [1, 0] + [-1] * 5)) == 6
