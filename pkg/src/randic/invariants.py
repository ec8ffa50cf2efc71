"""Degree-based indices and related graph invariants."""

from __future__ import annotations

import math
from collections import Counter

from .graph import Graph, GraphError, induced_subgraph_with_map
from .matching import MatchingResult, matching_number, matching_oracle, max_matching

__all__ = [
    "EPS",
    "MAD_MAX_N",
    "MatchingResult",
    "close",
    "degree_histogram",
    "edge_weight",
    "excess",
    "general_randic_index",
    "is_corona_of_two_regular",
    "k_core",
    "matching_number",
    "matching_oracle",
    "max_degree",
    "max_induced_average_degree",
    "max_matching",
    "min_degree",
    "nearly_perfect_local_terms",
    "randic_index",
    "subcubic_randic_decomposition",
]

EPS = 1e-9
MAD_MAX_N = 20


def close(x: float, y: float, tol: float = EPS) -> bool:
    """Equality up to ``tol`` relative to ``max(1, |x|, |y|)``."""
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def edge_weight(g: Graph, u: int, v: int) -> float:
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    adj = g.adjacency()
    return 1.0 / math.sqrt(len(adj[u]) * len(adj[v]))


def randic_index(g: Graph) -> float:
    adj = g.adjacency()
    # fsum is correctly rounded, so the value does not depend on the labelling
    return math.fsum(1.0 / math.sqrt(len(adj[u]) * len(adj[v])) for u, v in g.edges())


def general_randic_index(g: Graph, a: float) -> float:
    adj = g.adjacency()
    return math.fsum((len(adj[u]) * len(adj[v])) ** a for u, v in g.edges())


def excess(g: Graph) -> int:
    """Cyclomatic number ``|E| - |V| + 1`` (meaningful for connected graphs)."""
    return g.m - g.n + 1


def degree_histogram(g: Graph) -> Counter[int]:
    return Counter(g.degrees())


def min_degree(g: Graph) -> int:
    return min(g.degrees(), default=0)


def max_degree(g: Graph) -> int:
    return max(g.degrees(), default=0)


def k_core(g: Graph, k: int) -> tuple[Graph, list[int]]:
    """Largest induced subgraph of minimum degree ``>= k``, with its vertex map.

    Returns ``(core, kept)`` where ``kept[i]`` is the id in ``g`` of vertex
    ``i`` of the core.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    adj = g.adjacency()
    deg = g.degrees()
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] < k]
    for v in stack:
        alive[v] = False
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] < k:
                    alive[u] = False
                    stack.append(u)
    return induced_subgraph_with_map(g, (v for v in range(g.n) if alive[v]))


def max_induced_average_degree(g: Graph) -> float:
    """Maximum of ``2|E(<S>)|/|S|`` over non-empty vertex subsets ``S`` (``n <= 20``)."""
    n = g.n
    if n > MAD_MAX_N:
        raise GraphError(f"max_induced_average_degree refuses n={n} > {MAD_MAX_N}")
    if n == 0:
        return 0.0
    nbr = [0] * n
    for v, nbrs in enumerate(g.adjacency()):
        for u in nbrs:
            nbr[v] |= 1 << u
    # edges[S] = edges[S - v] + |N(v) & (S - v)| with v the lowest member of S
    edges = [0] * (1 << n)
    best_num, best_den = 0, 1
    for s in range(1, 1 << n):
        low = s & -s
        rest = s ^ low
        e = edges[rest] + (nbr[low.bit_length() - 1] & rest).bit_count()
        edges[s] = e
        size = s.bit_count()
        if e * best_den > best_num * size:
            best_num, best_den = e, size
    return 2 * best_num / best_den


def nearly_perfect_local_terms(g: Graph, m: MatchingResult) -> list[float]:
    """Per matching edge ``u_i v_i``: its weight plus half the weights of the other
    edges at ``u_i`` and at ``v_i``.  Their sum never exceeds ``R(g)``."""
    if not m.is_valid_for(g):
        raise GraphError("not a matching of this graph")
    if m.size != g.n // 2:
        raise GraphError(f"matching of size {m.size} is not nearly perfect for n={g.n}")
    adj = g.adjacency()

    def w(x: int, y: int) -> float:
        return 1.0 / math.sqrt(len(adj[x]) * len(adj[y]))

    terms = []
    for u, v in sorted(m.edges):
        side_u = math.fsum(w(u, x) for x in adj[u] if x != v)
        side_v = math.fsum(w(v, x) for x in adj[v] if x != u)
        terms.append(w(u, v) + 0.5 * side_u + 0.5 * side_v)
    return terms


def subcubic_randic_decomposition(g: Graph) -> float:
    """``R`` from the degree counts alone, valid for the restricted subcubic graphs.

    Requires max degree <= 3, every pendant vertex adjacent to a degree-3
    vertex, no two adjacent degree-2 vertices, and no two pendant vertices
    with a common neighbour.  Then every edge weight is fixed by the degree
    of its endpoints' class, giving
    ``a1/sqrt(3) + 2*a2/sqrt(6) + (m - a1 - 2*a2)/3``.
    """
    adj = g.adjacency()
    deg = g.degrees()
    if any(d > 3 for d in deg):
        raise GraphError("precondition failed: maximum degree exceeds 3")
    seen_anchor: set[int] = set()
    for v, d in enumerate(deg):
        if d == 1:
            (u,) = adj[v]
            if deg[u] != 3:
                raise GraphError(f"precondition failed: pendant vertex {v} is not adjacent to a degree-3 vertex")
            if u in seen_anchor:
                raise GraphError(f"precondition failed: two pendant vertices share neighbour {u}")
            seen_anchor.add(u)
        elif d == 2:
            if any(deg[u] == 2 for u in adj[v]):
                raise GraphError(f"precondition failed: degree-2 vertex {v} has a degree-2 neighbour")
    hist = Counter(deg)
    a1, a2 = hist[1], hist[2]
    return a1 / math.sqrt(3) + 2 * a2 / math.sqrt(6) + (g.m - a1 - 2 * a2) / 3


def is_corona_of_two_regular(g: Graph) -> bool:
    """True iff ``g`` minus isolated vertices is ``H o K1`` for a 2-regular ``H``.

    Equivalently: every non-isolated vertex has degree 1 or 3, every leaf
    hangs off a degree-3 vertex, and every degree-3 vertex carries exactly
    one leaf.  The graph with no edges counts (``H`` empty).
    """
    adj = g.adjacency()
    deg = g.degrees()
    for v, d in enumerate(deg):
        if d == 1:
            (u,) = adj[v]
            if deg[u] != 3:
                return False
        elif d == 3:
            if sum(1 for u in adj[v] if deg[u] == 1) != 1:
                return False
        elif d != 0:
            return False
    return True

