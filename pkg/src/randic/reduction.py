"""Leaf-stripping reduction towards the 2-core, with a per-step ledger.

Starting from a connected graph ``G_0`` the reduction repeatedly

* (i) deletes a leaf whose removal keeps the matching number, or, failing that,
* (ii) deletes a leaf together with its degree-2 neighbour,

and stops when neither applies.  Every step removes as many edges as
vertices, so the excess is constant along the trace.  Each step's drop in
``R`` is certified against the lower bounds ``1/(2 sqrt n)`` for (i) and
``1/sqrt(2) + 1/(4 sqrt n)`` for (ii), with ``n = |G_0|``.

Ties are broken by lowest vertex id so traces are deterministic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

from .bounds import BoundReport, _basics, _report
from .graph import Graph, GraphError, is_connected, remove_vertices_with_map
from .invariants import EPS, excess, k_core, randic_index
from .matching import augment_from, avoidable_vertices, max_mate

SQRT2 = math.sqrt(2.0)


class Rule(enum.Enum):
    LEAF_SAME_MATCHING = "i"
    LEAF_DEGREE_TWO_NEIGHBOR = "ii"


class LedgerViolation(AssertionError):
    """A reduction step broke one of the certified inequalities."""


@dataclass(frozen=True)
class ReductionStep:
    rule: Rule
    removed: tuple[int, ...]
    removed_original: tuple[int, ...]
    delta_R: float
    delta_alpha: int
    n_at_step: int


@dataclass
class ReductionTrace:
    initial: Graph
    steps: list[ReductionStep]
    final_graph: Graph
    final_map: list[int]
    initial_R: float
    final_R: float
    initial_alpha: int
    final_alpha: int
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def r(self) -> int:
        return len(self.steps)

    def replay(self) -> Graph:
        """Re-apply the recorded deletions to the initial graph."""
        g = self.initial
        for step in self.steps:
            g, _ = remove_vertices_with_map(g, step.removed)
        return g

    def to_text(self) -> str:
        lines = [
            f"# n={self.initial.n} m={self.initial.m} ex={excess(self.initial)} "
            f"R={self.initial_R:.12f} alpha={self.initial_alpha}"
        ]
        for i, s in enumerate(self.steps):
            removed = ",".join(str(v) for v in s.removed_original)
            lines.append(f"{i}\t{s.rule.value}\t{removed}\t{s.delta_R:.12f}\t{s.delta_alpha}")
        lines.append(
            f"# final n={self.final_graph.n} R={self.final_R:.12f} alpha={self.final_alpha}"
        )
        return "\n".join(lines) + "\n"

    def records(self) -> list[dict[str, Any]]:
        return [
            {
                "step": i,
                "rule": s.rule.value,
                "removed": list(s.removed_original),
                "delta_R": s.delta_R,
                "delta_alpha": s.delta_alpha,
                "n_at_step": s.n_at_step,
            }
            for i, s in enumerate(self.steps)
        ]


def _leaves(g: Graph) -> list[int]:
    return [v for v, nbrs in enumerate(g.adjacency()) if len(nbrs) == 1]


def _choose(g: Graph, mate: list[int]) -> tuple[Rule, tuple[int, ...]] | None:
    adj = g.adjacency()
    leaves = _leaves(g)
    if not leaves:
        return None
    avoidable = avoidable_vertices(adj, mate)
    for u in leaves:
        if u in avoidable:
            return Rule.LEAF_SAME_MATCHING, (u,)
    for u in leaves:
        (v,) = adj[u]
        if len(adj[v]) == 2:
            return Rule.LEAF_DEGREE_TWO_NEIGHBOR, (u, v)
    return None


def reduction_step(g: Graph) -> tuple[Rule, tuple[int, ...]] | None:
    """The rule and vertices the next step would delete, or ``None`` at a terminal graph."""
    return _choose(g, max_mate(g.adjacency()))


def run_reduction(g: Graph, check: bool = True) -> ReductionTrace:
    """Reduce a connected graph until neither rule applies.

    With ``check`` the per-step bounds, constant excess and (for trees) the
    two-vertex terminal size are asserted, raising :class:`LedgerViolation`.
    """
    if not is_connected(g):
        raise GraphError("run_reduction needs a connected graph")
    n0 = g.n
    root_n = math.sqrt(n0)
    ex0 = excess(g)
    cur = g
    cur_map = list(range(n0))
    mate = max_mate(cur.adjacency())
    alpha = sum(1 for v in mate if v != -1) // 2
    R = randic_index(cur)
    alpha0, R0 = alpha, R
    steps: list[ReductionStep] = []
    while True:
        choice = _choose(cur, mate)
        if choice is None:
            break
        rule, removed = choice
        nxt, kept = remove_vertices_with_map(cur, removed)
        pos = {old: new for new, old in enumerate(kept)}
        gone = set(removed)
        new_mate = [-1] * nxt.n
        for old in kept:
            partner = mate[old]
            if partner != -1 and partner not in gone:
                new_mate[pos[old]] = pos[partner]
        if rule is Rule.LEAF_SAME_MATCHING and mate[removed[0]] != -1:
            # the removed leaf was matched; its neighbour is now exposed and
            # must reach an augmenting path because the leaf was avoidable
            (v,) = cur.adjacency()[removed[0]]
            if not augment_from(nxt.adjacency(), new_mate, pos[v]):
                raise LedgerViolation("avoidable leaf but no augmenting path after deletion")
        new_alpha = sum(1 for v in new_mate if v != -1) // 2
        new_R = randic_index(nxt)
        step = ReductionStep(
            rule=rule,
            removed=removed,
            removed_original=tuple(cur_map[v] for v in removed),
            delta_R=R - new_R,
            delta_alpha=alpha - new_alpha,
            n_at_step=cur.n,
        )
        if check:
            _check_step(step, root_n, ex0, nxt)
        steps.append(step)
        cur_map = [cur_map[old] for old in kept]
        cur, mate, alpha, R = nxt, new_mate, new_alpha, new_R
    trace = ReductionTrace(g, steps, cur, cur_map, R0, R, alpha0, alpha)
    if check and ex0 == 0 and cur.n > 2:
        raise LedgerViolation(f"tree reduced to {cur.n} > 2 vertices")
    return trace


def _check_step(step: ReductionStep, root_n: float, ex0: int, nxt: Graph) -> None:
    if excess(nxt) != ex0:
        raise LedgerViolation(f"excess changed to {excess(nxt)} from {ex0}")
    if step.rule is Rule.LEAF_SAME_MATCHING:
        if step.delta_alpha != 0 or not step.delta_R > 1 / (2 * root_n):
            raise LedgerViolation(f"rule (i) bound violated: {step}")
    else:
        if step.delta_alpha != 1 or not step.delta_R > 1 / SQRT2 + 1 / (4 * root_n):
            raise LedgerViolation(f"rule (ii) bound violated: {step}")


def display_two_gap(trace: ReductionTrace) -> float:
    """``R(G) - [alpha'(G)/sqrt2 + R(G_r) - alpha'(G_r)/sqrt2 + (n - |G_r|)/(8 sqrt n)]``.

    Non-negative whenever every step obeys its bound.
    """
    n = trace.initial.n
    rhs = (
        trace.initial_alpha / SQRT2
        + trace.final_R
        - trace.final_alpha / SQRT2
        + (n - trace.final_graph.n) / (8 * math.sqrt(n))
    )
    return trace.initial_R - rhs


def core_survives(trace: ReductionTrace) -> bool:
    """Every vertex of the initial 2-core is still present in the final graph."""
    _, core_vertices = k_core(trace.initial, 2)
    return set(core_vertices) <= set(trace.final_map)


def leaves_per_core_vertex_ok(trace: ReductionTrace) -> bool:
    """The final graph has at most one leaf at each vertex of the initial 2-core."""
    _, core_vertices = k_core(trace.initial, 2)
    core = set(core_vertices)
    final = trace.final_graph
    adj = final.adjacency()
    fmap = trace.final_map
    count: dict[int, int] = {}
    for v, nbrs in enumerate(adj):
        if len(nbrs) == 1:
            (u,) = nbrs
            if fmap[u] in core:
                count[u] = count.get(u, 0) + 1
    return all(c <= 1 for c in count.values())


def strip_leaves_at_degree3(g: Graph) -> Graph:
    """Delete every leaf whose neighbour has degree exactly 3 in ``g``."""
    adj = g.adjacency()
    drop = [v for v, nbrs in enumerate(adj) if len(nbrs) == 1 and len(adj[next(iter(nbrs))]) == 3]
    return remove_vertices_with_map(g, drop)[0]


def leaf_hypothesis(h: Graph) -> bool:
    """Every leaf is adjacent to a vertex of degree >= 4, and no two leaves share it."""
    adj = h.adjacency()
    anchors: set[int] = set()
    for nbrs in adj:
        if len(nbrs) == 1:
            (u,) = nbrs
            if len(adj[u]) < 4 or u in anchors:
                return False
            anchors.add(u)
    return True


def lemma_excess_bound_check(h: Graph, tol: float = EPS) -> BoundReport:
    """``R(H) >= (n - 7k)/2`` with ``|E(H)| = n + k``, under :func:`leaf_hypothesis`."""
    b = _basics(h)
    hyp = is_connected(h) and leaf_hypothesis(h)
    k = h.m - h.n
    note = "" if hyp else "hypothesis-not-met"
    return _report("leaf_excess", b, hyp, b.R, (h.n - 7 * k) / 2, tol, note=note)
