"""Exhaustive small-graph search: bound certification and minimum Randić index per matching number.

Two enumeration strategies:

* labelled masks (:func:`run_scan`): every upper-triangular edge mask for
  ``n <= 8`` is visited by the compiled kernel in ``randic._kernel``.  The
  mask space of each ``n`` is cut into contiguous shards that are processed
  independently and merged deterministically, so results do not depend on
  the shard or worker count.
* isomorphism classes (:func:`representatives`): one canonical graph per
  class, grown vertex by vertex and deduplicated with
  :func:`randic.canonical.canonical_form`.

Scopes never contain graphs with isolated vertices, so enumeration starts
at ``n = 2``.  All scopes except ``all_no_isolated`` are restricted to
connected graphs.
"""

from __future__ import annotations

import csv
import io
import math
import re
import sys
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from . import _kernel as K
from . import graph6
from .bounds import SUBCUBIC_CONSTANT, BoundReport, run_all_checks
from .canonical import canonical_form, canonical_graph
from .graph import Graph, GraphError, from_mask, is_connected, pair_count
from .invariants import EPS, excess, max_degree, min_degree
from .matching import matching_number

FULL_SCAN_MAX_N = K.KERNEL_MAX_N
DEDUP_MAX_N = 9
EQ_MASK_CAPACITY = 1 << 16

SCOPES = K.SCOPE_NAMES


@dataclass(frozen=True)
class Scope:
    name: str
    excess_cap: int = 0

    def __str__(self) -> str:
        return f"excess_le({self.excess_cap})" if self.name == "excess_le" else self.name

    @property
    def index(self) -> int:
        return SCOPES.index(self.name)


_SCOPE_RE = re.compile(r"^excess_le(?:\((\d+)\)|:(\d+))$")


def parse_scope(text: str | Scope) -> Scope:
    if isinstance(text, Scope):
        return text
    t = text.strip()
    m = _SCOPE_RE.match(t)
    if m:
        return Scope("excess_le", int(m.group(1) or m.group(2)))
    if t in SCOPES and t != "excess_le":
        return Scope(t)
    raise ValueError(f"unknown scope {text!r}; expected one of {', '.join(SCOPES[:-1])}, excess_le(e)")


def in_scope(g: Graph, scope: Scope, alpha: int | None = None) -> bool:
    if g.n == 0 or min_degree(g) == 0:
        return False
    if scope.name == "all_no_isolated":
        return True
    if not is_connected(g):
        return False
    if scope.name == "connected":
        return True
    if scope.name == "trees":
        return g.m == g.n - 1
    if scope.name == "subcubic":
        return max_degree(g) <= 3
    if scope.name == "nearly_perfect":
        return (matching_number(g) if alpha is None else alpha) == g.n // 2
    if scope.name == "excess_le":
        return excess(g) <= scope.excess_cap
    raise ValueError(f"unknown scope {scope}")


@dataclass(frozen=True)
class EnumerationShard:
    n: int
    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo


def make_shards(n: int, count: int) -> list[EnumerationShard]:
    """Split the ``2^C(n,2)`` masks for ``n`` into ``count`` contiguous half-open ranges."""
    if count < 1:
        raise ValueError("shard count must be >= 1")
    total = 1 << pair_count(n)
    cuts = [total * i // count for i in range(count + 1)]
    return [EnumerationShard(n, cuts[i], cuts[i + 1]) for i in range(count) if cuts[i] < cuts[i + 1]]


def _check_cap(n_max: int) -> None:
    if n_max > FULL_SCAN_MAX_N:
        raise GraphError(
            f"labelled scans are capped at n <= {FULL_SCAN_MAX_N} "
            f"(n={n_max} has 2^{pair_count(n_max)} masks); use dedup=True "
            f"for n <= {DEDUP_MAX_N}"
        )


@dataclass
class ShardResult:
    shard: EnumerationShard
    counts: np.ndarray
    hyp_count: np.ndarray
    held_count: np.ndarray
    eq_count: np.ndarray
    first_fail: np.ndarray
    best_R: np.ndarray
    best_mask: np.ndarray
    eq_masks: np.ndarray


def scan_shard(
    shard: EnumerationShard,
    tol: float = EPS,
    subcubic_constant: float = SUBCUBIC_CONSTANT,
    excess_cap: int = 0,
) -> ShardResult:
    _check_cap(shard.n)
    pi, pj = K.pair_tables(shard.n)
    counts = np.zeros(5, dtype=np.int64)
    hyp = np.zeros(K.N_CHECKS, dtype=np.int64)
    held = np.zeros(K.N_CHECKS, dtype=np.int64)
    eq = np.zeros(K.N_CHECKS, dtype=np.int64)
    first_fail = np.full(K.N_CHECKS, -1, dtype=np.int64)
    best_R = np.full((K.N_SCOPES, K.KMAX + 1), np.inf)
    best_mask = np.full((K.N_SCOPES, K.KMAX + 1), -1, dtype=np.int64)
    eq_masks = np.zeros(EQ_MASK_CAPACITY, dtype=np.int64)
    K.scan(
        shard.n, shard.lo, shard.hi, tol, subcubic_constant, excess_cap,
        pi, pj, K.POPCOUNT, K.WEIGHTS,
        counts, hyp, held, eq, first_fail, best_R, best_mask, eq_masks,
    )
    stored = min(int(counts[4]), EQ_MASK_CAPACITY)
    return ShardResult(shard, counts, hyp, held, eq, first_fail, best_R, best_mask, eq_masks[:stored].copy())


def _scan_task(args: tuple) -> ShardResult:
    return scan_shard(*args)


@dataclass
class CheckTally:
    name: str
    hypothesis: int = 0
    held: int = 0
    equality: int = 0
    certificates: list[str] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return self.hypothesis - self.held


@dataclass
class ScanResult:
    n_max: int
    shards: int
    masks: int = 0
    no_isolated: int = 0
    connected_by_n: dict[int, int] = field(default_factory=dict)
    checks: dict[str, CheckTally] = field(default_factory=dict)
    corona_mismatches: int = 0
    subcubic_equalities: int = 0
    subcubic_equality_masks: list[tuple[int, int]] = field(default_factory=list)
    # (scope index, k) -> (R, witness graph6)
    minima: dict[tuple[int, int], tuple[float, str]] = field(default_factory=dict)

    @property
    def certificates(self) -> list[tuple[str, str]]:
        return [(name, g6) for name, t in self.checks.items() for g6 in t.certificates]


def run_scan(
    n_max: int,
    shards: int = 1,
    workers: int | None = None,
    tol: float = EPS,
    subcubic_constant: float = SUBCUBIC_CONSTANT,
    excess_cap: int = 0,
    n_min: int = 2,
    progress: bool | TextIO = False,
) -> ScanResult:
    """Scan every labelled graph with ``n_min <= n <= n_max`` vertices.

    ``progress`` (``True`` for standard error, or a stream) receives one line per shard.
    """
    _check_cap(n_max)
    log = (sys.stderr if progress is True else progress) or None
    tasks = []
    for n in range(max(n_min, 2), n_max + 1):
        for sh in make_shards(n, shards):
            tasks.append((sh, tol, subcubic_constant, excess_cap))
    if workers is None:
        workers = shards
    results: list[ShardResult] = []
    if workers <= 1:
        for i, t in enumerate(tasks):
            results.append(_scan_task(t))
            if log:
                print(f"[scan] shard {i + 1}/{len(tasks)} n={t[0].n} done", file=log)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, res in enumerate(pool.map(_scan_task, tasks)):
                results.append(res)
                if log:
                    print(f"[scan] shard {i + 1}/{len(tasks)} n={res.shard.n} done", file=log)
    return merge_results(results, n_max, shards)


def merge_results(results: list[ShardResult], n_max: int, shards: int) -> ScanResult:
    """Associative, order-independent merge of shard results."""
    out = ScanResult(n_max=n_max, shards=shards)
    out.checks = {name: CheckTally(name) for name in K.CHECK_NAMES}
    fails: dict[str, set[str]] = {name: set() for name in K.CHECK_NAMES}
    for res in sorted(results, key=lambda r: (r.shard.n, r.shard.lo)):
        n = res.shard.n
        out.masks += int(res.counts[0])
        out.no_isolated += int(res.counts[1])
        out.connected_by_n[n] = out.connected_by_n.get(n, 0) + int(res.counts[2])
        out.corona_mismatches += int(res.counts[3])
        out.subcubic_equalities += int(res.counts[4])
        out.subcubic_equality_masks += [(n, int(m)) for m in res.eq_masks]
        for c, name in enumerate(K.CHECK_NAMES):
            t = out.checks[name]
            t.hypothesis += int(res.hyp_count[c])
            t.held += int(res.held_count[c])
            t.equality += int(res.eq_count[c])
            if res.first_fail[c] >= 0:
                fails[name].add(graph6.encode(from_mask(n, int(res.first_fail[c]))))
        for s in range(K.N_SCOPES):
            for k in range(1, K.KMAX + 1):
                if res.best_mask[s, k] < 0:
                    continue
                cand = (float(res.best_R[s, k]), graph6.encode(from_mask(n, int(res.best_mask[s, k]))))
                cur = out.minima.get((s, k))
                if cur is None or cand < cur:
                    out.minima[(s, k)] = cand
    for name, g6s in fails.items():
        out.checks[name].certificates = sorted(g6s)
    return out


@dataclass(frozen=True)
class SearchRecord:
    k: int
    best_R: float
    witness: str
    scope: str
    n_max: int

    @property
    def ratio(self) -> float:
        return self.best_R * self.k ** (-2 / 3)


def records_from_scan(scan: ScanResult, scope: Scope | str) -> list[SearchRecord]:
    sc = parse_scope(scope)
    out = []
    for k in range(1, K.KMAX + 1):
        hit = scan.minima.get((sc.index, k))
        if hit is not None:
            out.append(SearchRecord(k, hit[0], hit[1], str(sc), scan.n_max))
    return out


def min_randic_by_matching(
    n_max: int,
    scope: Scope | str = "connected",
    shards: int = 1,
    workers: int | None = None,
    progress: bool | TextIO = False,
) -> list[SearchRecord]:
    """Minimum ``R`` for each matching number ``k >= 1`` over the scope at ``n <= n_max``."""
    sc = parse_scope(scope)
    scan = run_scan(n_max, shards, workers, excess_cap=sc.excess_cap, progress=progress)
    return records_from_scan(scan, sc)


SEARCH_CSV_COLUMNS = ("k", "scope", "n_max", "best_R", "ratio", "witness")


def records_to_csv(records: list[SearchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SEARCH_CSV_COLUMNS)
    for r in records:
        w.writerow([r.k, r.scope, r.n_max, f"{r.best_R:.12f}", f"{r.ratio:.12f}", r.witness])
    return buf.getvalue()


@dataclass
class CertificationReport:
    n_max: int
    scan: ScanResult
    equality_classes: list[str]

    @property
    def certificates(self) -> list[tuple[str, str]]:
        return self.scan.certificates

    @property
    def ok(self) -> bool:
        return not self.certificates and self.scan.corona_mismatches == 0

    def summary(self) -> str:
        lines = [f"certified labelled connected graphs with 2 <= n <= {self.n_max}"]
        for n, c in sorted(self.scan.connected_by_n.items()):
            lines.append(f"  n={n}: {c} connected labelled graphs")
        for t in self.scan.checks.values():
            lines.append(
                f"  {t.name:<15} hypothesis={t.hypothesis:<11} held={t.held:<11} "
                f"equality={t.equality:<9} failures={t.failures}"
            )
        lines.append(f"  subcubic equality classes: {' '.join(self.equality_classes) or '-'}")
        lines.append(f"  corona structure mismatches: {self.scan.corona_mismatches}")
        lines.append(f"{len(self.certificates)} counterexamples")
        for name, g6 in self.certificates:
            lines.append(f"  counterexample {name}: {g6}")
        return "\n".join(lines) + "\n"


def certify_all_bounds(
    n_max: int,
    shards: int = 4,
    workers: int | None = None,
    tol: float = EPS,
    subcubic_constant: float = SUBCUBIC_CONSTANT,
    progress: bool | TextIO = False,
) -> CertificationReport:
    """Run every bound check on every labelled connected graph with ``n <= n_max``."""
    scan = run_scan(n_max, shards, workers, tol, subcubic_constant, progress=progress)
    classes = sorted({
        canonical_form(from_mask(n, m)).decode() for n, m in scan.subcubic_equality_masks
    }, key=lambda s: (len(s), s))
    return CertificationReport(n_max, scan, classes)


def certify_representatives(
    graphs: list[Graph],
    tol: float = EPS,
    subcubic_constant: float = SUBCUBIC_CONSTANT,
) -> list[BoundReport]:
    """Run the full Python checker set over ``graphs``; returns only the counterexamples."""
    bad = []
    for g in graphs:
        for rep in run_all_checks(g, tol, subcubic_constant):
            if rep.certificate is not None:
                bad.append(rep)
    return bad


def _augment(graphs: list[Graph], connected: bool) -> list[Graph]:
    seen: dict[bytes, Graph] = {}
    for g in graphs:
        n = g.n
        base = [set(nbrs) for nbrs in g.adjacency()]
        for subset in range(1 if connected else 0, 1 << n):
            adj = [set(b) for b in base] + [set()]
            for v in range(n):
                if subset >> v & 1:
                    adj[v].add(n)
                    adj[n].add(v)
            h = Graph(adj)
            key = canonical_form(h)
            if key not in seen:
                seen[key] = h
    return [canonical_graph(seen[k]) for k in sorted(seen, key=lambda b: (len(b), b))]


_REPS_CACHE: dict[tuple[int, bool], list[Graph]] = {}


def representatives(n: int, connected: bool = True) -> list[Graph]:
    """One canonical graph per isomorphism class on ``n`` vertices.

    Built by adding a vertex to every class on ``n - 1`` vertices (a connected
    graph always has a vertex whose deletion leaves it connected).
    """
    if n > DEDUP_MAX_N:
        raise GraphError(f"isomorphism-class enumeration capped at n <= {DEDUP_MAX_N}")
    key = (n, connected)
    if key not in _REPS_CACHE:
        if n <= 1:
            _REPS_CACHE[key] = [Graph.empty(n)]
        else:
            _REPS_CACHE[key] = _augment(representatives(n - 1, connected), connected)
    return _REPS_CACHE[key]


@dataclass(frozen=True)
class EnumerationStats:
    n: int
    scope: str
    dedup: bool
    examined: int
    visited: int


def iter_graphs(n: int, scope: Scope | str = "connected", dedup: bool = False,
                shard: EnumerationShard | None = None) -> Iterator[Graph]:
    sc = parse_scope(scope)
    if dedup:
        pool: list[Graph] = representatives(n, connected=sc.name != "all_no_isolated")
        for g in pool:
            if in_scope(g, sc):
                yield g
        return
    _check_cap(n)
    rng = range(shard.lo, shard.hi) if shard is not None else range(1 << pair_count(n))
    for mask in rng:
        g = from_mask(n, mask)
        if in_scope(g, sc):
            yield g


def enumerate_graphs(
    n: int,
    scope: Scope | str,
    visitor: Callable[[Graph], object],
    dedup: bool = False,
    shard: EnumerationShard | None = None,
) -> EnumerationStats:
    """Call ``visitor`` on every graph on ``n`` vertices in ``scope``.

    Without ``dedup`` labelled graphs are visited (``n <= 8``); with it one
    representative per isomorphism class (``n <= 9``).
    """
    sc = parse_scope(scope)
    visited = 0
    if dedup:
        examined = len(representatives(n, connected=sc.name != "all_no_isolated"))
    else:
        examined = len(shard) if shard is not None else 1 << pair_count(n)
    for g in iter_graphs(n, sc, dedup, shard):
        visitor(g)
        visited += 1
    return EnumerationStats(n, str(sc), dedup, examined, visited)


def ratio(best_R: float, k: int) -> float:
    return best_R / k ** (2 / 3) if k else math.nan
