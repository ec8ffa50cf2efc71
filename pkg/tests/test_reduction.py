import math
import random

import pytest

from randic.constructions import corona_k1, cycle, path, random_connected_graph, random_tree, star
from randic.graph import Graph, GraphError, disjoint_union, is_connected, remove_vertices
from randic.invariants import close, excess
from randic.matching import matching_oracle
from randic.reduction import (
    Rule,
    core_survives,
    display_two_gap,
    lemma_excess_bound_check,
    leaf_hypothesis,
    leaves_per_core_vertex_ok,
    reduction_step,
    run_reduction,
    strip_leaves_at_degree3,
)


def test_path_trace():
    t = run_reduction(path(7))
    assert [s.rule for s in t.steps] == [Rule.LEAF_SAME_MATCHING, Rule.LEAF_DEGREE_TWO_NEIGHBOR,
                                         Rule.LEAF_DEGREE_TWO_NEIGHBOR]
    assert t.final_graph == path(2)
    assert t.r == 3
    text = t.to_text().splitlines()
    assert text[0].startswith("# n=7 m=6 ex=0")
    assert text[1].split("\t")[:3] == ["0", "i", "0"]
    assert text[-1].startswith("# final n=2")


def test_cycle_is_terminal():
    t = run_reduction(cycle(6))
    assert t.r == 0 and t.final_graph == cycle(6)
    assert reduction_step(cycle(6)) is None


def test_rejects_disconnected():
    with pytest.raises(GraphError):
        run_reduction(disjoint_union(path(2), path(2)))


def test_replay_and_records():
    rng = random.Random(4)
    g = random_connected_graph(18, 4, rng)
    t = run_reduction(g)
    assert t.replay() == t.final_graph
    assert [r["step"] for r in t.records()] == list(range(t.r))
    assert all(0 <= v < g.n for r in t.records() for v in r["removed"])


def test_rule_i_really_keeps_matching():
    rng = random.Random(8)
    for _ in range(60):
        g = random_connected_graph(rng.randint(3, 12), rng.randint(0, 4), rng)
        t = run_reduction(g)
        cur = g
        for step in t.steps:
            nxt = remove_vertices(cur, step.removed)
            assert matching_oracle(cur) - matching_oracle(nxt) == step.delta_alpha
            cur = nxt


def test_step_bounds_and_telescoping():
    rng = random.Random(15)
    for _ in range(100):
        g = random_connected_graph(rng.randint(2, 30), rng.randint(0, 5), rng)
        n = g.n
        t = run_reduction(g)
        for s in t.steps:
            if s.rule is Rule.LEAF_SAME_MATCHING:
                assert s.delta_R > 1 / (2 * math.sqrt(n))
            else:
                assert s.delta_R > 1 / math.sqrt(2) + 1 / (4 * math.sqrt(n))
        assert close(t.initial_R - t.final_R, math.fsum(s.delta_R for s in t.steps))
        assert t.initial_alpha - t.final_alpha == sum(s.rule is Rule.LEAF_DEGREE_TWO_NEIGHBOR for s in t.steps)
        assert excess(t.final_graph) == excess(g)
        assert is_connected(t.final_graph)
        assert display_two_gap(t) >= -1e-9
        assert core_survives(t)
        assert leaves_per_core_vertex_ok(t)


def test_trees_end_small():
    rng = random.Random(2)
    for n in range(1, 60):
        t = run_reduction(random_tree(n, rng))
        assert t.final_graph.n <= 2


def test_star_reduces_to_edge():
    t = run_reduction(star(9))
    assert t.final_graph == path(2)
    assert all(s.rule is Rule.LEAF_SAME_MATCHING for s in t.steps)


def test_leaf_hypothesis_and_stripping():
    g = corona_k1(cycle(4))
    h = strip_leaves_at_degree3(g)
    assert h == cycle(4)
    assert leaf_hypothesis(cycle(5))
    assert not leaf_hypothesis(g)
    # two leaves on the same degree-4 vertex
    k = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)])
    assert not leaf_hypothesis(k)


def test_final_graph_structure():
    rng = random.Random(31)
    for _ in range(150):
        g = random_connected_graph(rng.randint(4, 30), rng.randint(1, 4), rng)
        t = run_reduction(g)
        h = strip_leaves_at_degree3(t.final_graph)
        assert leaf_hypothesis(h)
        assert 2 * h.n >= t.final_graph.n


def test_lemma_excess_bound():
    for h in (cycle(6), corona_k1(cycle(5)), Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 4)])):
        rep = lemma_excess_bound_check(h)
        if rep.hypothesis_held:
            assert rep.bound_held
    assert lemma_excess_bound_check(cycle(6)).hypothesis_held
    assert not lemma_excess_bound_check(path(3)).hypothesis_held
