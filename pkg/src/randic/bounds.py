"""Lower bounds on the Randić index, one checker per result.

Every checker returns a :class:`BoundReport` that keeps the hypothesis
separate from the claim: a claim failing where its hypothesis does not hold
is "out of scope", not a counterexample.  Claims are normalised to
``lhs >= rhs``; strict claims are accepted as ``lhs > rhs - tol``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any

from . import graph6
from .graph import Graph, GraphError, components, is_connected
from .invariants import (
    EPS,
    MAD_MAX_N,
    close,
    excess,
    is_corona_of_two_regular,
    matching_number,
    max_degree,
    max_induced_average_degree,
    min_degree,
    randic_index,
)

log = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
SUBCUBIC_CONSTANT = 1 / math.sqrt(3) + 1 / 3

BOUND_IDS = (
    "tree",
    "small_excess",
    "subcubic",
    "o_shi",
    "bollobas_erdos",
    "high_low",
    "hereditary",
    "near_perfect",
)

CSV_COLUMNS = (
    "bound_id", "graph6", "n", "m", "alpha", "R",
    "lhs", "rhs", "slack", "hypothesis", "holds", "equality",
)


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    hypothesis_held: bool
    bound_held: bool
    lhs: float
    rhs: float
    equality: bool
    graph6: str = ""
    n: int = 0
    m: int = 0
    alpha: int = 0
    R: float = 0.0
    note: str = ""
    details: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def certificate(self) -> str | None:
        """graph6 of the input when it refutes the claim under its hypothesis."""
        return self.graph6 if self.hypothesis_held and not self.bound_held else None

    def row(self) -> dict[str, Any]:
        return {
            "bound_id": self.bound_id,
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "alpha": self.alpha,
            "R": self.R,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "hypothesis": self.hypothesis_held,
            "holds": self.bound_held,
            "equality": self.equality,
        }


@dataclass(frozen=True)
class HighLowCertificate:
    r: int
    high: frozenset[int]
    low: frozenset[int]
    ell: int
    slack_terms: dict[int, int]

    @property
    def slack_total(self) -> int:
        return sum(self.slack_terms.values())


@dataclass(frozen=True)
class _Basics:
    g6: str
    n: int
    m: int
    alpha: int
    R: float


def _basics(g: Graph) -> _Basics:
    return _Basics(graph6.encode(g), g.n, g.m, matching_number(g), randic_index(g))


def _report(
    bound_id: str,
    b: _Basics,
    hypothesis: bool,
    lhs: float,
    rhs: float,
    tol: float,
    strict: bool = False,
    note: str = "",
    details: dict[str, Any] | None = None,
) -> BoundReport:
    # strict claims get the same floating allowance; no exact ties occur there
    held = lhs > rhs - tol if strict else lhs >= rhs - tol
    return BoundReport(
        bound_id=bound_id,
        hypothesis_held=hypothesis,
        bound_held=held,
        lhs=lhs,
        rhs=rhs,
        equality=close(lhs, rhs, tol),
        graph6=b.g6,
        n=b.n,
        m=b.m,
        alpha=b.alpha,
        R=b.R,
        note=note,
        details=details or {},
    )


def check_tree_bound(g: Graph, tol: float = EPS, basics: _Basics | None = None) -> BoundReport:
    """``R > alpha'/sqrt(2)`` for forests and graphs whose components are unicyclic."""
    b = basics or _basics(g)
    adj = g.adjacency()
    hyp = True
    for comp in components(g):
        comp_edges = sum(len(adj[v]) for v in comp) // 2
        if comp_edges > len(comp):
            hyp = False
            break
    return _report("tree", b, hyp, b.R, b.alpha / SQRT2, tol, strict=True)


def check_small_excess(g: Graph, tol: float = EPS, basics: _Basics | None = None) -> BoundReport:
    """``R > alpha'/sqrt(2)`` for connected graphs with ``ex <= sqrt(n)/28``."""
    b = basics or _basics(g)
    note = ""
    if not is_connected(g):
        hyp = False
        note = "disconnected input"
    else:
        ex = excess(g)
        root_n = math.sqrt(g.n)
        hyp = 28 * ex <= root_n
        if not hyp and 28 * (ex - 1) <= root_n:
            note = "between hypotheses: 28(ex-1) <= sqrt(n) < 28 ex"
            log.info("%s: %s", b.g6, note)
    return _report("small_excess", b, hyp, b.R, b.alpha / SQRT2, tol, strict=True, note=note)


def check_subcubic(
    g: Graph,
    tol: float = EPS,
    constant: float = SUBCUBIC_CONSTANT,
    basics: _Basics | None = None,
) -> BoundReport:
    """``R >= (1/sqrt(3) + 1/3) alpha'`` when max degree <= 3.

    ``details["corona"]`` records the structural test for the equality case
    (``g`` minus isolated vertices is ``H o K1`` with ``H`` 2-regular).
    """
    b = basics or _basics(g)
    hyp = max_degree(g) <= 3
    return _report(
        "subcubic", b, hyp, b.R, constant * b.alpha, tol,
        details={"corona": is_corona_of_two_regular(g)},
    )


def check_o_shi(g: Graph, tol: float = EPS, basics: _Basics | None = None) -> BoundReport:
    """``R >= sqrt(delta*Delta)/(delta + Delta) * n`` for graphs without isolated vertices."""
    b = basics or _basics(g)
    lo, hi = min_degree(g), max_degree(g)
    hyp = g.n > 0 and lo >= 1
    rhs = math.sqrt(lo * hi) / (lo + hi) * g.n if hyp else 0.0
    return _report("o_shi", b, hyp, b.R, rhs, tol, note="" if hyp else "isolated vertices")


def bollobas_erdos_rhs(m: int) -> float:
    return 2 * m / (math.sqrt(8 * m + 1) - 1) if m else 0.0


def check_bollobas_erdos(g: Graph, tol: float = EPS, basics: _Basics | None = None) -> BoundReport:
    """``R >= 2m/(sqrt(8m + 1) - 1)`` for graphs without isolated vertices."""
    b = basics or _basics(g)
    hyp = min_degree(g) >= 1
    return _report("bollobas_erdos", b, hyp, b.R, bollobas_erdos_rhs(g.m), tol)


def high_low_certificate(g: Graph, r: int) -> HighLowCertificate:
    adj = g.adjacency()
    high = frozenset(v for v in range(g.n) if len(adj[v]) > r)
    low = frozenset(range(g.n)) - high
    ell = sum(1 for u, v in g.edges() if u in low and v in low)
    slack_terms = {u: r + 1 - len(adj[u] & high) for u in sorted(high)}
    return HighLowCertificate(r, high, low, ell, slack_terms)


def check_high_low(
    g: Graph, r: int, tol: float = EPS, basics: _Basics | None = None
) -> tuple[BoundReport, HighLowCertificate]:
    """``R >= alpha'/sqrt(r(r+1))`` when the vertices of degree > r induce average degree <= r."""
    if r < 1:
        raise GraphError("r must be a positive integer")
    b = basics or _basics(g)
    cert = high_low_certificate(g, r)
    adj = g.adjacency()
    inner_degree_sum = sum(len(adj[u] & cert.high) for u in cert.high)
    hyp = inner_degree_sum <= r * len(cert.high)
    rep = _report(
        f"high_low:{r}", b, hyp, b.R, b.alpha / math.sqrt(r * (r + 1)), tol,
        details={"r": r, "high": len(cert.high), "ell": cert.ell},
    )
    return rep, cert


def check_hereditary_class(
    g: Graph, r: int, tol: float = EPS, basics: _Basics | None = None
) -> BoundReport:
    """``R >= alpha'/sqrt(r(r+1))`` when every induced subgraph has average degree <= r."""
    if g.n > MAD_MAX_N:
        raise GraphError(f"hereditary-class check refuses n={g.n} > {MAD_MAX_N}")
    b = basics or _basics(g)
    mad = max_induced_average_degree(g)
    hyp = mad <= r + 1e-12
    return _report(
        f"hereditary:{r}", b, hyp, b.R, b.alpha / math.sqrt(r * (r + 1)), tol,
        details={"r": r, "max_induced_average_degree": mad},
    )


def near_perfect_lower_bound(k: int | float) -> float:
    return 1.5 * k ** (2 / 3) - math.sqrt(k / 2)


def check_near_perfect(g: Graph, tol: float = EPS, basics: _Basics | None = None) -> BoundReport:
    """``R >= 3k^(2/3)/2 - sqrt(k/2)`` when the maximum matching leaves at most one vertex."""
    b = basics or _basics(g)
    hyp = b.alpha == g.n // 2
    return _report("near_perfect", b, hyp, b.R, near_perfect_lower_bound(b.alpha), tol)


def conjecture_ratio(g: Graph) -> float:
    """``R / alpha'^(2/3)``."""
    k = matching_number(g)
    if k == 0:
        raise GraphError("matching number is 0: ratio undefined")
    return randic_index(g) / k ** (2 / 3)


HIGH_LOW_RS = (1, 2, 3, 4, 5, 6)


def run_all_checks(
    g: Graph,
    tol: float = EPS,
    subcubic_constant: float = SUBCUBIC_CONSTANT,
    high_low_rs: tuple[int, ...] = HIGH_LOW_RS,
    hereditary_rs: tuple[int, ...] = HIGH_LOW_RS,
) -> list[BoundReport]:
    b = _basics(g)
    out = [
        check_tree_bound(g, tol, b),
        check_small_excess(g, tol, b),
        check_subcubic(g, tol, subcubic_constant, b),
        check_o_shi(g, tol, b),
        check_bollobas_erdos(g, tol, b),
    ]
    out += [check_high_low(g, r, tol, b)[0] for r in high_low_rs]
    if g.n <= MAD_MAX_N:
        out += [check_hereditary_class(g, r, tol, b) for r in hereditary_rs]
    out.append(check_near_perfect(g, tol, b))
    return out


def run_check(g: Graph, bound_id: str, tol: float = EPS, **kw: Any) -> list[BoundReport]:
    """Run one named check; ``high_low``/``hereditary`` accept ``:r`` or run r = 1..6."""
    name, _, arg = bound_id.partition(":")
    rs = (int(arg),) if arg else HIGH_LOW_RS
    if name == "tree":
        return [check_tree_bound(g, tol)]
    if name == "small_excess":
        return [check_small_excess(g, tol)]
    if name == "subcubic":
        return [check_subcubic(g, tol, kw.get("subcubic_constant", SUBCUBIC_CONSTANT))]
    if name == "o_shi":
        return [check_o_shi(g, tol)]
    if name == "bollobas_erdos":
        return [check_bollobas_erdos(g, tol)]
    if name == "high_low":
        b = _basics(g)
        return [check_high_low(g, r, tol, b)[0] for r in rs]
    if name == "hereditary":
        b = _basics(g)
        return [check_hereditary_class(g, r, tol, b) for r in rs]
    if name == "near_perfect":
        return [check_near_perfect(g, tol)]
    if name == "all":
        return run_all_checks(g, tol, kw.get("subcubic_constant", SUBCUBIC_CONSTANT))
    raise KeyError(f"unknown bound id {bound_id!r}")


def reports_to_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        row = rep.row()
        w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def reports_to_json(reports: list[BoundReport]) -> str:
    return json.dumps([rep.row() for rep in reports], indent=1)


def _fmt(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.12f}"
    return str(x)

