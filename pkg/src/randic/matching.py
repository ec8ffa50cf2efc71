"""Maximum cardinality matching in general graphs.

:func:`max_matching` is Edmonds' blossom algorithm in the O(V^3) form that
grows one alternating tree per exposed vertex and contracts odd cycles by
relabelling their base.  :func:`matching_oracle` is an unrelated brute-force
recursion used to cross-check it on small graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph, GraphError

ORACLE_MAX_N = 14


@dataclass(frozen=True)
class MatchingResult:
    edges: frozenset[tuple[int, int]]
    size: int

    @classmethod
    def from_mate(cls, mate: list[int]) -> MatchingResult:
        edges = frozenset((v, u) for v, u in enumerate(mate) if u > v)
        return cls(edges, len(edges))

    def mate(self, n: int) -> list[int]:
        out = [-1] * n
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out

    def is_valid_for(self, g: Graph) -> bool:
        seen: set[int] = set()
        for u, v in self.edges:
            if not g.has_edge(u, v) or u in seen or v in seen:
                return False
            seen.update((u, v))
        return len(self.edges) == self.size


class _Forest:
    """Alternating forest state for one search (single root or all exposed roots)."""

    def __init__(self, adj, mate):
        n = len(adj)
        self.adj = adj
        self.mate = mate
        self.parent = [-1] * n
        self.base = list(range(n))
        self.outer = [False] * n
        self.queue: deque[int] = deque()

    def add_root(self, r: int) -> None:
        self.outer[r] = True
        self.queue.append(r)

    def _lca(self, a: int, b: int) -> int:
        mate, parent, base = self.mate, self.parent, self.base
        on_path = set()
        while True:
            a = base[a]
            on_path.add(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in on_path:
                return b
            if mate[b] == -1:
                return -1  # b's tree has a different root
            b = parent[mate[b]]

    def _mark_path(self, v: int, b: int, child: int, in_blossom: set[int]) -> None:
        mate, parent, base = self.mate, self.parent, self.base
        while base[v] != b:
            in_blossom.add(base[v])
            in_blossom.add(base[mate[v]])
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def grow(self) -> int:
        """Run the search until the queue empties.

        Returns an exposed vertex ending an augmenting path from a single
        root, or -1.  With several roots, an edge joining two different
        trees means the matching was not maximum and raises.
        """
        adj, mate, parent, base, outer = self.adj, self.mate, self.parent, self.base, self.outer
        queue = self.queue
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if (mate[to] == -1 and outer[to]) or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = self._lca(v, to)
                    if cur == -1:
                        raise ValueError("augmenting path between trees: matching is not maximum")
                    in_blossom: set[int] = set()
                    self._mark_path(v, cur, to, in_blossom)
                    self._mark_path(to, cur, v, in_blossom)
                    for i in range(len(adj)):
                        if base[i] in in_blossom:
                            base[i] = cur
                            if not outer[i]:
                                outer[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to
                    outer[mate[to]] = True
                    queue.append(mate[to])
        return -1

    def augment(self, end: int) -> None:
        mate, parent = self.mate, self.parent
        v = end
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = nxt


def augment_from(adj, mate: list[int], root: int) -> bool:
    """Try to augment ``mate`` in place along a path starting at exposed ``root``."""
    if mate[root] != -1:
        raise ValueError(f"vertex {root} is already matched")
    forest = _Forest(adj, mate)
    forest.add_root(root)
    end = forest.grow()
    if end == -1:
        return False
    forest.augment(end)
    return True


def _greedy(adj) -> list[int]:
    mate = [-1] * len(adj)
    for v in sorted(range(len(adj)), key=lambda x: len(adj[x])):
        if mate[v] != -1:
            continue
        for u in sorted(adj[v], key=lambda x: len(adj[x])):
            if mate[u] == -1:
                mate[v] = u
                mate[u] = v
                break
    return mate


def max_mate(adj, initial: list[int] | None = None) -> list[int]:
    """Mate array of a maximum matching; ``initial`` (if given) is a valid warm start."""
    mate = list(initial) if initial is not None else _greedy(adj)
    for v in range(len(adj)):
        if mate[v] == -1 and adj[v]:
            augment_from(adj, mate, v)
    return mate


def max_matching(g: Graph) -> MatchingResult:
    return MatchingResult.from_mate(max_mate(g.adjacency()))


def matching_number(g: Graph) -> int:
    return max_matching(g).size


def avoidable_vertices(adj, mate: list[int]) -> set[int]:
    """Vertices missed by at least one maximum matching.

    ``mate`` must be maximum.  These are the even (outer) vertices of the
    alternating forest grown from every exposed vertex at once, so
    ``v`` is returned iff removing ``v`` leaves the matching number unchanged.
    """
    forest = _Forest(adj, list(mate))
    for v in range(len(adj)):
        if mate[v] == -1:
            forest.add_root(v)
    if forest.grow() != -1:
        raise ValueError("exposed vertex reachable from another root: matching is not maximum")
    return {v for v, is_outer in enumerate(forest.outer) if is_outer}


def matching_oracle(g: Graph) -> int:
    """Exact matching number by include/exclude branching (``n <= 14``).

    Branches on the lowest vertex that still has an edge: either it stays
    unmatched and is deleted, or it is matched to one of its neighbours.
    """
    if g.n > ORACLE_MAX_N:
        raise GraphError(f"matching_oracle refuses n={g.n} > {ORACLE_MAX_N}")
    nbr = [0] * g.n
    for v, nbrs in enumerate(g.adjacency()):
        for u in nbrs:
            nbr[v] |= 1 << u

    def solve(alive: int) -> int:
        v = 0
        rest = alive
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if nbr[v] & alive:
                break
            rest ^= low
        else:
            return 0
        without_v = alive & ~(1 << v)
        best = solve(without_v)
        choices = nbr[v] & alive
        while choices:
            low = choices & -choices
            best = max(best, 1 + solve(without_v & ~low))
            choices ^= low
        return best

    return solve((1 << g.n) - 1)
