"""Canonical labelling for small graphs.

Colour refinement (1-dimensional Weisfeiler-Leman) followed by
individualisation of one vertex at a time; every discrete leaf of the search
tree gives a relabelling, and the smallest resulting graph6 bit string is
the canonical form.  Branches on twin vertices (``N(x) - y == N(y) - x``)
are equivalent under the transposition ``(x y)``, so only one twin per class
is tried.
"""

from __future__ import annotations

from .graph import Graph, GraphError, relabel
from . import graph6

CANON_MAX_N = 12


def _refine(nbr: list[int], colors: list[int]) -> list[int]:
    n = len(nbr)
    while True:
        sigs = []
        for v in range(n):
            x = nbr[v]
            around = []
            while x:
                low = x & -x
                around.append(colors[low.bit_length() - 1])
                x ^= low
            around.sort()
            sigs.append((colors[v], tuple(around)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _code(nbr: list[int], order: list[int]) -> int:
    # graph6 bit order, first bit most significant
    code = 0
    for j in range(1, len(order)):
        row = nbr[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    return code


def canonical_order(g: Graph) -> list[int]:
    """A vertex order whose relabelling is the same for all isomorphic inputs."""
    n = g.n
    if n > CANON_MAX_N:
        raise GraphError(f"canonical_form refuses n={n} > {CANON_MAX_N}")
    nbr = [0] * n
    for v, nbrs in enumerate(g.adjacency()):
        for u in nbrs:
            nbr[v] |= 1 << u
    best_code: int | None = None
    best_order: list[int] = list(range(n))

    def search(colors: list[int]) -> None:
        nonlocal best_code, best_order
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = sorted(range(n), key=colors.__getitem__)
            code = _code(nbr, order)
            if best_code is None or code < best_code:
                best_code, best_order = code, order
            return
        tried: list[int] = []
        for v in target:
            if any((nbr[v] & ~(1 << t)) == (nbr[t] & ~(1 << v)) for t in tried):
                continue
            tried.append(v)
            child = [2 * c + (0 if u == v else 1) if c == colors[v] else 2 * c for u, c in enumerate(colors)]
            search(_refine(nbr, child))

    search(_refine(nbr, [bin(x).count("1") for x in nbr]))
    return best_order


def canonical_graph(g: Graph) -> Graph:
    return relabel(g, canonical_order(g))


def canonical_form(g: Graph) -> bytes:
    """graph6 bytes of the canonical relabelling; equal iff the graphs are isomorphic."""
    return graph6.encode(canonical_graph(g)).encode("ascii")
