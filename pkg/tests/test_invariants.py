import math
import random

import pytest

from randic.constructions import (
    broken_windmill,
    complete,
    complete_bipartite,
    corona_k1,
    cycle,
    path,
    random_graph,
    star,
    wheel,
)
from randic.graph import Graph, GraphError
from randic.invariants import (
    close,
    degree_histogram,
    edge_weight,
    excess,
    general_randic_index,
    is_corona_of_two_regular,
    k_core,
    max_degree,
    max_induced_average_degree,
    min_degree,
    nearly_perfect_local_terms,
    randic_index,
    subcubic_randic_decomposition,
)
from randic.matching import max_matching


def test_randic_examples():
    assert randic_index(path(2)) == 1.0
    assert close(randic_index(star(5)), 2.0)
    assert close(randic_index(cycle(7)), 3.5)
    assert close(randic_index(complete(6)), 3.0)
    assert close(randic_index(complete_bipartite(2, 8)), 16 / 4)
    assert randic_index(Graph.empty(4)) == 0.0


def test_edge_weight():
    g = star(5)
    assert edge_weight(g, 0, 1) == 0.5
    with pytest.raises(GraphError):
        edge_weight(g, 1, 2)


def test_general_index_specialises():
    rng = random.Random(2)
    for _ in range(50):
        g = random_graph(rng.randint(1, 10), 0.5, rng)
        assert close(general_randic_index(g, -0.5), randic_index(g))
        assert general_randic_index(g, 0) == g.m
        # a = 1 is the second Zagreb index
        assert general_randic_index(g, 1) == sum(len(g.adjacency()[u]) * len(g.adjacency()[v]) for u, v in g.edges())


def test_degree_stats():
    g = broken_windmill(3, 2)
    assert excess(g) == 3
    assert (min_degree(g), max_degree(g)) == (1, 8)
    assert degree_histogram(g) == {8: 1, 2: 8, 1: 2}
    assert excess(path(6)) == 0 and excess(cycle(6)) == 1


def test_k_core():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (5, 6)])
    core, kept = k_core(g, 2)
    assert kept == [0, 1, 2] and core == cycle(3)
    assert k_core(g, 0)[1] == list(range(7))
    assert k_core(g, 3)[1] == []
    w, kept = k_core(wheel(6), 3)
    assert kept == list(range(6))


def test_k_core_is_maximal():
    rng = random.Random(4)
    for _ in range(100):
        g = random_graph(rng.randint(1, 10), rng.random(), rng)
        for k in range(4):
            core, kept = k_core(g, k)
            assert min_degree(core) >= k or core.n == 0
            # brute force: no larger subset has min degree >= k
            for mask in range(1 << g.n):
                s = [v for v in range(g.n) if mask >> v & 1]
                if len(s) > len(kept):
                    sub = [len(g.adjacency()[v] & set(s)) for v in s]
                    assert min(sub) < k


def test_mad():
    assert max_induced_average_degree(complete(5)) == 4.0
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5)])
    assert max_induced_average_degree(g) == 2.0
    assert max_induced_average_degree(Graph.empty(3)) == 0.0
    with pytest.raises(GraphError):
        max_induced_average_degree(path(21))


def test_nearly_perfect_terms_sum_below_R():
    rng = random.Random(9)
    seen = 0
    for _ in range(300):
        g = random_graph(rng.randint(2, 11), 0.5, rng)
        m = max_matching(g)
        if m.size != g.n // 2:
            with pytest.raises(GraphError):
                nearly_perfect_local_terms(g, m)
            continue
        seen += 1
        assert math.fsum(nearly_perfect_local_terms(g, m)) <= randic_index(g) + 1e-12
    assert seen > 50


def test_subcubic_decomposition():
    g = corona_k1(cycle(5))
    assert close(subcubic_randic_decomposition(g), randic_index(g))
    with pytest.raises(GraphError, match="maximum degree"):
        subcubic_randic_decomposition(star(5))
    with pytest.raises(GraphError, match="degree-2 neighbour"):
        subcubic_randic_decomposition(cycle(5))
    with pytest.raises(GraphError, match="not adjacent to a degree-3"):
        subcubic_randic_decomposition(path(3))
    with pytest.raises(GraphError, match="share neighbour"):
        subcubic_randic_decomposition(star(4))


def test_subcubic_decomposition_matches_R_when_applicable():
    rng = random.Random(10)
    checked = 0
    for _ in range(3000):
        g = random_graph(rng.randint(2, 10), 0.35, rng)
        try:
            value = subcubic_randic_decomposition(g)
        except GraphError:
            continue
        checked += 1
        assert close(value, randic_index(g))
    assert checked > 20


def test_corona_test():
    assert is_corona_of_two_regular(corona_k1(cycle(4)))
    assert is_corona_of_two_regular(Graph.empty(2))
    assert not is_corona_of_two_regular(corona_k1(path(4)))
    assert not is_corona_of_two_regular(cycle(4))
