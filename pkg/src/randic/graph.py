"""Immutable simple undirected graphs on vertex ids ``0..n-1``.

Every edit returns a new :class:`Graph`.  Deletions compact the surviving
vertices in increasing order; the ``*_with_map`` variants also return the
list ``kept`` with ``kept[new_id] == old_id`` so callers can chase vertices
across a sequence of edits.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


class GraphError(ValueError):
    """Raised for malformed graphs or invalid vertex/edge arguments."""


class Graph:
    """A simple undirected graph stored as per-vertex neighbour sets."""

    __slots__ = ("_adj", "_m", "_hash")

    def __init__(self, adjacency: Iterable[Iterable[int]]):
        adj = tuple(frozenset(nbrs) for nbrs in adjacency)
        n = len(adj)
        total = 0
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                if not isinstance(u, int) or not 0 <= u < n:
                    raise GraphError(f"vertex {v} has out-of-range neighbour {u!r}")
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if v not in adj[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
            total += len(nbrs)
        self._adj = adj
        self._m = total // 2
        self._hash: int | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls.from_edges(n, ())

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return len(self._adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return tuple(sorted(self._adj[v]))

    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nbrs in enumerate(self._adj):
            for v in sorted(nbrs):
                if u < v:
                    yield u, v

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self._adj]

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < len(self._adj):
            raise GraphError(f"vertex id {v!r} out of range for n={len(self._adj)}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._adj)
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def degree(g: Graph, v: int) -> int:
    g._check_vertex(v)
    return len(g.adjacency()[v])


def _validate_set(g: Graph, s: Iterable[int]) -> set[int]:
    members = set(s)
    for v in members:
        g._check_vertex(v)
    return members


def induced_subgraph_with_map(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    kept = sorted(_validate_set(g, s))
    new_id = {old: new for new, old in enumerate(kept)}
    adj = g.adjacency()
    sub = Graph(
        [new_id[u] for u in adj[old] if u in new_id] for old in kept
    )
    return sub, kept


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    return induced_subgraph_with_map(g, s)[0]


def remove_vertices_with_map(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    drop = _validate_set(g, s)
    return induced_subgraph_with_map(g, (v for v in range(g.n) if v not in drop))


def remove_vertices(g: Graph, s: Iterable[int]) -> Graph:
    return remove_vertices_with_map(g, s)[0]


def subdivide_edge(g: Graph, u: int, v: int) -> Graph:
    """Replace edge ``uv`` by a path ``u - w - v`` through a new vertex ``w = n``."""
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    w = g.n
    adj = [set(nbrs) for nbrs in g.adjacency()]
    adj[u].discard(v)
    adj[v].discard(u)
    adj[u].add(w)
    adj[v].add(w)
    adj.append({u, v})
    return Graph(adj)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(
        list(g.adjacency()) + [[u + shift for u in nbrs] for nbrs in h.adjacency()]
    )


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them."""
    shift = g.n
    left = set(range(shift))
    right = set(range(shift, shift + h.n))
    adj = [set(nbrs) | right for nbrs in g.adjacency()]
    adj += [{u + shift for u in nbrs} | left for nbrs in h.adjacency()]
    return Graph(adj)


def components(g: Graph) -> list[list[int]]:
    adj = g.adjacency()
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    """True for graphs with exactly one component (the null graph is not connected)."""
    return g.n > 0 and len(components(g)) == 1


def isolated_vertices(g: Graph) -> list[int]:
    return [v for v, nbrs in enumerate(g.adjacency()) if not nbrs]


def relabel(g: Graph, order: list[int]) -> Graph:
    """Return the graph whose vertex ``i`` is vertex ``order[i]`` of ``g``."""
    if sorted(order) != list(range(g.n)):
        raise GraphError("order must be a permutation of the vertex ids")
    pos = {old: new for new, old in enumerate(order)}
    adj = g.adjacency()
    return Graph([pos[u] for u in adj[old]] for old in order)


# Packed upper-triangular bitmasks.  Pair (i, j), i < j, sits at graph6
# position q = j*(j-1)/2 + i and is stored at bit (C(n,2) - 1 - q), so integer
# order of masks agrees with lexicographic order of graph6 strings at fixed n.

def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def to_mask(g: Graph) -> int:
    top = pair_count(g.n) - 1
    mask = 0
    for i, j in g.edges():
        mask |= 1 << (top - (j * (j - 1) // 2 + i))
    return mask


def from_mask(n: int, mask: int) -> Graph:
    top = pair_count(n) - 1
    if mask < 0 or mask >> (top + 1):
        raise GraphError(f"mask {mask} out of range for n={n}")
    edges = []
    q = 0
    for j in range(1, n):
        for i in range(j):
            if mask >> (top - q) & 1:
                edges.append((i, j))
            q += 1
    return Graph.from_edges(n, edges)
