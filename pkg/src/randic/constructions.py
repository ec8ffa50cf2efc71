"""Named graph families with fixed vertex layouts and their closed-form Randić values.

Layouts (stable, so graph6 goldens and traces are reproducible):

* ``star(n)``: centre 0, leaves ``1..n-1``.
* ``complete_bipartite(p, q)``: first class ``0..p-1``, second ``p..p+q-1``.
* ``broken_windmill(a, b)``: hub 0, then pairs ``(1,2), (3,4), ...``; the
  first ``a`` pairs are triangles with the hub, the last ``b`` pairs hang
  from the hub by their first vertex.
* ``generalized_windmill(k, r)``: odd class ``0..2r`` (the hubs), then the
  ``k - r`` matched pairs of the even class.  ``Wm(k, 0)`` is therefore
  identical, not just isomorphic, to ``BW(k, 0)``.
* ``corona_k1(h)``: the pendant of vertex ``v`` is ``h.n + v``.
* ``sparse_counterexample(a, b)``: ``K_{a,b}`` with the ``a`` side first,
  then one leaf per vertex of the ``b`` side, then ``2b`` leaves per vertex
  of the ``a`` side.
* ``join_edges_empty(l, r)``: the ``l`` edges ``(0,1), (2,3), ...`` then the
  ``r - 1`` independent vertices.
"""

from __future__ import annotations

import enum
import math
import random
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .graph import Graph, GraphError, disjoint_union, join

SQRT2 = math.sqrt(2.0)
SQRT8 = math.sqrt(8.0)


def star(n: int) -> Graph:
    if n < 1:
        raise GraphError("star needs n >= 1")
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise GraphError("complete_bipartite needs p, q >= 1")
    return Graph.from_edges(p + q, [(u, p + v) for u in range(p) for v in range(q)])


def empty(n: int) -> Graph:
    if n < 0:
        raise GraphError("empty graph needs n >= 0")
    return Graph.empty(n)


def wheel(n: int) -> Graph:
    """Hub 0 joined to the cycle ``1..n-1`` (``n >= 4``)."""
    if n < 4:
        raise GraphError("wheel needs n >= 4")
    rim = n - 1
    edges = [(0, v) for v in range(1, n)]
    edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return Graph.from_edges(n, edges)


def grid(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise GraphError("grid needs p, q >= 1")
    edges = []
    for i in range(p):
        for j in range(q):
            v = i * q + j
            if j + 1 < q:
                edges.append((v, v + 1))
            if i + 1 < p:
                edges.append((v, v + q))
    return Graph.from_edges(p * q, edges)


def broken_windmill(a: int, b: int) -> Graph:
    if a < 0 or b < 0 or a + b < 1:
        raise GraphError("broken_windmill needs a, b >= 0 and a + b >= 1")
    n = 2 * (a + b) + 1
    edges = []
    for i in range(a + b):
        x, y = 2 * i + 1, 2 * i + 2
        edges.append((x, y))
        edges.append((0, x))
        if i < a:
            edges.append((0, y))
    return Graph.from_edges(n, edges)


def bw_randic_closed_form(a: int, b: int) -> float:
    if a < 0 or b < 0 or a + b < 1:
        raise GraphError("needs a, b >= 0 and a + b >= 1")
    return a / 2 + b / SQRT2 + math.sqrt(2 * a + b) / SQRT2


def bw_threshold_value(n: int) -> float:
    """Lower bound on ``a`` above which ``R(BW(a, b)) < (a + b)/sqrt(2)`` at ``n = 2a + 2b + 1``."""
    c = 3 + SQRT8
    return c + math.sqrt(c * n + 14 + 5 * SQRT8)


def bw_violation_threshold(n: int) -> int:
    """Smallest integer ``a`` strictly above :func:`bw_threshold_value` for odd ``n``.

    Raises when the matching ``b = (n - 1)/2 - a`` would be negative.
    """
    if n < 3 or n % 2 == 0:
        raise GraphError("n must be odd and >= 3")
    a = math.floor(bw_threshold_value(n)) + 1
    if (n - 1) // 2 - a < 0:
        raise GraphError(f"no valid b at n={n}: threshold forces a={a} > {(n - 1) // 2}")
    return a


def generalized_windmill(k: int, r: int) -> Graph:
    """``K_{2(k-r), 2r+1}`` plus a perfect matching on the even class."""
    if not k > r >= 0:
        raise GraphError("generalized_windmill needs k > r >= 0")
    hubs = 2 * r + 1
    n = 2 * k + 1
    edges = []
    for i in range(k - r):
        x, y = hubs + 2 * i, hubs + 2 * i + 1
        edges.append((x, y))
        for h in range(hubs):
            edges.append((h, x))
            edges.append((h, y))
    return Graph.from_edges(n, edges)


def windmill(k: int) -> Graph:
    """``k`` triangles sharing one vertex."""
    return generalized_windmill(k, 0)


def gw_randic_closed_form(k: int, r: int) -> float:
    if not k > r >= 0:
        raise GraphError("needs k > r >= 0")
    return (k - r) / (2 * r + 2) + (2 * r + 1) * (2 * k - 2 * r) / math.sqrt(
        (2 * r + 2) * (2 * k - 2 * r)
    )


def windmill_hub_count(k: int) -> int:
    """The ``r = floor((k/4)^(1/3))`` that makes ``Wm(k, r)`` nearly optimal."""
    r = round((k / 4) ** (1 / 3))
    # correct floating cube-root error at exact cubes
    while 4 * r**3 > k:
        r -= 1
    while 4 * (r + 1) ** 3 <= k:
        r += 1
    return r


def windmill_ratio_trend(k_max: int) -> np.ndarray:
    """``R(Wm(k, r_k)) / (2k)^(2/3)`` for ``k = 1..k_max`` with ``r_k = windmill_hub_count(k)``.

    Vectorised closed form; entry ``i`` belongs to ``k = i + 1``.
    """
    k = np.arange(1, k_max + 1, dtype=np.int64)
    r = np.floor(np.cbrt(k / 4.0)).astype(np.int64)
    r -= 4 * r**3 > k
    r += 4 * (r + 1) ** 3 <= k
    kf, rf = k.astype(float), r.astype(float)
    R = (kf - rf) / (2 * rf + 2) + (2 * rf + 1) * (2 * kf - 2 * rf) / np.sqrt(
        (2 * rf + 2) * (2 * kf - 2 * rf)
    )
    return R / (2 * kf) ** (2 / 3)


def corona_k1(h: Graph) -> Graph:
    n = h.n
    edges = list(h.edges()) + [(v, n + v) for v in range(n)]
    return Graph.from_edges(2 * n, edges)


def sparse_counterexample(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("sparse_counterexample needs a, b >= 1")
    edges = [(x, a + y) for x in range(a) for y in range(b)]
    nxt = a + b
    for y in range(b):
        edges.append((a + y, nxt))
        nxt += 1
    for x in range(a):
        for _ in range(2 * b):
            edges.append((x, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def sparse_counterexample_closed_form(a: int, b: int) -> float:
    return b / math.sqrt(a + 1) + a * b / math.sqrt(3 * b * (a + 1)) + 2 * a * b / math.sqrt(3 * b)


def sparse_counterexample_smallest_b(a: int, b_max: int = 10**6) -> int | None:
    """Smallest ``b <= b_max`` with ``R <= alpha'/sqrt(a)`` for the sparse family at this ``a``.

    Scans the closed form (``alpha' = a + b``); ``None`` if no ``b`` in range works.
    """
    for b in range(1, b_max + 1):
        if sparse_counterexample_closed_form(a, b) <= (a + b) / math.sqrt(a):
            return b
    return None


def join_edges_empty(l: int, r: int) -> Graph:
    if l < 1 or r < 2:
        raise GraphError("join_edges_empty needs l >= 1 and r >= 2")
    edges = Graph.from_edges(2 * l, [(2 * i, 2 * i + 1) for i in range(l)])
    return join(edges, Graph.empty(r - 1))


def join_edges_empty_closed_form(l: int, r: int) -> float:
    # matched vertices have degree r, the r-1 others degree 2l
    return l / r + 2 * l * (r - 1) / math.sqrt(2 * l * r)


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree via a random Prüfer sequence."""
    if n < 1:
        raise GraphError("tree needs n >= 1")
    if n <= 2:
        return path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for v in seq:
        deg[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if deg[u] == 1)
        edges.append((leaf, v))
        deg[leaf] -= 1
        deg[v] -= 1
    u, w = (x for x in range(n) if deg[x] == 1)
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, extra_edges: int, rng: random.Random) -> Graph:
    """A random tree plus up to ``extra_edges`` further random edges."""
    tree = random_tree(n, rng)
    present = set(tree.edges())
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
    rng.shuffle(missing)
    return Graph.from_edges(n, list(present) + missing[:extra_edges])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


class Family(enum.Enum):
    STAR = "star"
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    EMPTY = "empty"
    WHEEL = "wheel"
    GRID = "grid"
    BROKEN_WINDMILL = "bw"
    WINDMILL = "windmill"
    GENERALIZED_WINDMILL = "gw"
    CORONA_K1 = "corona_k1"
    SPARSE_COUNTEREXAMPLE = "sparse_counterexample"
    JOIN_EDGES_EMPTY = "join_edges_empty"
    DISJOINT_UNION = "union"


_ALIASES = {
    "k": "complete",
    "broken_windmill": "bw",
    "generalized_windmill": "gw",
    "wm": "gw",
}

_ARITY = {
    Family.STAR: (int,),
    Family.PATH: (int,),
    Family.CYCLE: (int,),
    Family.COMPLETE: (int,),
    Family.COMPLETE_BIPARTITE: (int, int),
    Family.EMPTY: (int,),
    Family.WHEEL: (int,),
    Family.GRID: (int, int),
    Family.BROKEN_WINDMILL: (int, int),
    Family.WINDMILL: (int,),
    Family.GENERALIZED_WINDMILL: (int, int),
    Family.CORONA_K1: ("spec",),
    Family.SPARSE_COUNTEREXAMPLE: (int, int),
    Family.JOIN_EDGES_EMPTY: (int, int),
    Family.DISJOINT_UNION: ("spec", "spec"),
}

Param = Union[int, "ConstructionSpec"]


@dataclass(frozen=True)
class ConstructionSpec:
    family: Family
    params: tuple[Param, ...]

    def __str__(self) -> str:
        return f"{self.family.value}({','.join(str(p) for p in self.params)})"


class SpecError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def parse_spec(text: str) -> ConstructionSpec:
    """Parse ``family(p1,p2,...)``; parameters are integers or nested specs."""
    tokens = [(m.group(1), m.group(2), m.group(3)) for m in _TOKEN.finditer(text.strip())]
    tokens = [t for t in tokens if any(t)]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, None)

    def expect(ch: str) -> None:
        nonlocal pos
        if peek()[2] != ch:
            raise SpecError(f"expected {ch!r} in {text!r}")
        pos += 1

    def parse_item() -> Param:
        nonlocal pos
        num, name, _ = peek()
        if num is not None:
            pos += 1
            return int(num)
        if name is None:
            raise SpecError(f"unexpected token in {text!r}")
        pos += 1
        key = _ALIASES.get(name.lower(), name.lower())
        try:
            family = Family(key)
        except ValueError:
            raise SpecError(f"unknown family {name!r}") from None
        expect("(")
        params: list[Param] = []
        if peek()[2] != ")":
            params.append(parse_item())
            while peek()[2] == ",":
                pos += 1
                params.append(parse_item())
        expect(")")
        kinds = _ARITY[family]
        if len(params) != len(kinds):
            raise SpecError(f"{family.value} takes {len(kinds)} parameter(s), got {len(params)}")
        for kind, p in zip(kinds, params):
            if (kind is int) != isinstance(p, int):
                raise SpecError(f"bad parameter {p} for {family.value}")
        return ConstructionSpec(family, tuple(params))

    spec = parse_item()
    if not isinstance(spec, ConstructionSpec) or pos != len(tokens):
        raise SpecError(f"could not parse construction spec {text!r}")
    return spec


_BUILDERS = {
    Family.STAR: star,
    Family.PATH: path,
    Family.CYCLE: cycle,
    Family.COMPLETE: complete,
    Family.COMPLETE_BIPARTITE: complete_bipartite,
    Family.EMPTY: empty,
    Family.WHEEL: wheel,
    Family.GRID: grid,
    Family.BROKEN_WINDMILL: broken_windmill,
    Family.WINDMILL: windmill,
    Family.GENERALIZED_WINDMILL: generalized_windmill,
    Family.CORONA_K1: corona_k1,
    Family.SPARSE_COUNTEREXAMPLE: sparse_counterexample,
    Family.JOIN_EDGES_EMPTY: join_edges_empty,
    Family.DISJOINT_UNION: disjoint_union,
}


def build(spec: ConstructionSpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    args = [build(p) if isinstance(p, ConstructionSpec) else p for p in spec.params]
    return _BUILDERS[spec.family](*args)


def closed_form(spec: ConstructionSpec | str) -> float | None:
    """Closed-form Randić index for families that have one, else ``None``."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    f, p = spec.family, spec.params
    if f is Family.BROKEN_WINDMILL:
        return bw_randic_closed_form(*p)
    if f is Family.GENERALIZED_WINDMILL:
        return gw_randic_closed_form(*p)
    if f is Family.WINDMILL:
        return gw_randic_closed_form(p[0], 0)
    if f is Family.SPARSE_COUNTEREXAMPLE:
        return sparse_counterexample_closed_form(*p)
    if f is Family.JOIN_EDGES_EMPTY:
        return join_edges_empty_closed_form(*p)
    if f is Family.STAR:
        return math.sqrt(p[0] - 1)
    if f is Family.CYCLE or (f is Family.COMPLETE and p[0] >= 2):
        return p[0] / 2
    if f is Family.PATH and p[0] >= 3:
        return p[0] / 2 + SQRT2 - 1.5
    if f is Family.CORONA_K1 and p[0].family is Family.CYCLE:
        # h pendant edges of weight 1/sqrt3 and h cycle edges of weight 1/3
        return p[0].params[0] * (1 / math.sqrt(3) + 1 / 3)
    if f is Family.DISJOINT_UNION:
        parts = [closed_form(q) for q in p]
        return None if None in parts else sum(parts)
    return None
