import random

import networkx as nx
import pytest

from randic import graph6
from randic.constructions import random_graph
from randic.graph import Graph


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_known_strings():
    assert graph6.encode(Graph.from_edges(2, [(0, 1)])) == "A_"
    assert graph6.encode(Graph.empty(0)) == "?"
    assert graph6.encode(Graph.empty(1)) == "@"


@pytest.mark.parametrize("n", [0, 1, 2, 5, 13, 62, 63, 64, 100])
def test_matches_networkx(n):
    rng = random.Random(n)
    g = random_graph(n, 0.3, rng)
    ours = graph6.encode(g)
    theirs = nx.to_graph6_bytes(_nx(g), header=False).decode().strip()
    assert ours == theirs
    assert graph6.decode(ours) == g


def test_large_size_prefix():
    g = Graph.from_edges(300, [(0, 299), (5, 6)])
    s = graph6.encode(g)
    assert s.startswith("~")
    assert graph6.decode(s) == g


def test_header_and_bytes():
    assert graph6.decode(">>graph6<<A_") == graph6.decode(b"A_")


@pytest.mark.parametrize("bad", ["", "A", "A_x", ":Fa@x^", "&C_", "A`", "\x7f"])
def test_rejects_malformed(bad):
    with pytest.raises(graph6.Graph6Error):
        graph6.decode(bad)


def test_read_lines_reports_line_numbers():
    items = list(graph6.read_lines(["A_\n", "\n", "bogus\n", "CF\n"]))
    assert [i for i, _ in items] == [1, 3, 4]
    assert isinstance(items[1][1], graph6.Graph6Error)
    assert isinstance(items[2][1], Graph)
