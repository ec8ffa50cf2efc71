"""Compiled scan over packed edge masks of all labelled graphs on ``n <= 8`` vertices.

Masks use the layout of :func:`randic.graph.to_mask` (graph6 bit order,
first pair most significant), so scanning masks upwards visits graphs in
graph6 lexicographic order and the first minimum seen is the
lexicographically smallest witness.

The Randić index is summed from a table of degree-pair counts in a fixed
order, so isomorphic graphs give bit-identical values.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

KERNEL_MAX_N = 8
KMAX = KERNEL_MAX_N // 2

CHECK_NAMES = (
    "tree",
    "small_excess",
    "subcubic",
    "o_shi",
    "bollobas_erdos",
    "high_low:1",
    "high_low:2",
    "high_low:3",
    "high_low:4",
    "high_low:5",
    "high_low:6",
    "near_perfect",
)
N_CHECKS = len(CHECK_NAMES)
C_TREE, C_EXCESS, C_SUBCUBIC, C_OSHI, C_BE = 0, 1, 2, 3, 4
C_HL0 = 5
C_NEAR = 11

SCOPE_NAMES = ("connected", "all_no_isolated", "trees", "subcubic", "nearly_perfect", "excess_le")
N_SCOPES = len(SCOPE_NAMES)


def pair_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    pi, pj = [], []
    for j in range(1, n):
        for i in range(j):
            pi.append(i)
            pj.append(j)
    return np.array(pi, dtype=np.int64), np.array(pj, dtype=np.int64)


def _weight_table() -> np.ndarray:
    w = np.zeros((KERNEL_MAX_N + 1, KERNEL_MAX_N + 1))
    for a in range(1, KERNEL_MAX_N + 1):
        for b in range(1, KERNEL_MAX_N + 1):
            w[a, b] = 1.0 / math.sqrt(a * b)
    return w


POPCOUNT = np.array([bin(x).count("1") for x in range(1 << KERNEL_MAX_N)], dtype=np.int64)
WEIGHTS = _weight_table()


@njit(cache=True)
def _decode(mask, n, npairs, pi, pj, adj):
    for v in range(n):
        adj[v] = 0
    for q in range(npairs):
        if (mask >> (npairs - 1 - q)) & 1:
            i = pi[q]
            j = pj[q]
            adj[i] |= 1 << j
            adj[j] |= 1 << i


@njit(cache=True)
def _connected(adj, n):
    seen = 1
    frontier = 1
    full = (1 << n) - 1
    while frontier:
        nxt = 0
        for v in range(n):
            if (frontier >> v) & 1:
                nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == full


@njit(cache=True)
def _mm(adj, n, best, pop):
    # Branch on the lowest live vertex with a live neighbour: match it to each
    # such neighbour, or drop it.  Iterative because numba's disk cache cannot
    # reload recursive functions.
    st_rest = np.zeros(KERNEL_MAX_N + 2, dtype=np.int64)
    st_cur = np.zeros(KERNEL_MAX_N + 2, dtype=np.int64)
    st_choices = np.zeros(KERNEL_MAX_N + 2, dtype=np.int64)
    st_dropped = np.zeros(KERNEL_MAX_N + 2, dtype=np.bool_)
    full = n // 2
    sp = 0
    alive = (1 << n) - 1
    cur = 0
    while True:
        # enter node (alive, cur)
        v = -1
        active = 0
        for x in range(n):
            if (alive >> x) & 1 and adj[x] & alive:
                active |= 1 << x
                if v == -1:
                    v = x
        if v == -1:
            if cur > best:
                best = cur
                if best == full:
                    return best
        elif cur + pop[active] // 2 > best:
            rest = alive & ~(1 << v)
            st_rest[sp] = rest
            st_cur[sp] = cur
            st_choices[sp] = adj[v] & rest
            st_dropped[sp] = False
            sp += 1
        # pick next child
        while sp > 0:
            t = sp - 1
            ch = st_choices[t]
            if ch:
                low = ch & -ch
                st_choices[t] = ch ^ low
                alive = st_rest[t] & ~low
                cur = st_cur[t] + 1
                break
            if not st_dropped[t]:
                st_dropped[t] = True
                alive = st_rest[t]
                cur = st_cur[t]
                break
            sp -= 1
        if sp == 0:
            return best


@njit(cache=True)
def _matching_number(adj, n, pop):
    # greedy start, then exact pruned search
    used = 0
    size = 0
    for v in range(n):
        if (used >> v) & 1:
            continue
        free = adj[v] & ~used
        if free:
            for u in range(n):
                if (free >> u) & 1:
                    used |= (1 << u) | (1 << v)
                    size += 1
                    break
    if size == n // 2:
        return size
    return _mm(adj, n, size, pop)


@njit(cache=True)
def _randic(adj, deg, n, cnt, weights):
    for a in range(KERNEL_MAX_N + 1):
        for b in range(KERNEL_MAX_N + 1):
            cnt[a, b] = 0
    for v in range(n):
        for u in range(v + 1, n):
            if (adj[v] >> u) & 1:
                a = deg[v]
                b = deg[u]
                if a <= b:
                    cnt[a, b] += 1
                else:
                    cnt[b, a] += 1
    total = 0.0
    for a in range(1, KERNEL_MAX_N + 1):
        for b in range(a, KERNEL_MAX_N + 1):
            if cnt[a, b]:
                total += cnt[a, b] * weights[a, b]
    return total


@njit(cache=True)
def _close(x, y, tol):
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


@njit(cache=True)
def _corona_two_regular(adj, deg, n):
    for v in range(n):
        d = deg[v]
        if d == 1:
            for u in range(n):
                if (adj[v] >> u) & 1 and deg[u] != 3:
                    return False
        elif d == 3:
            leaves = 0
            for u in range(n):
                if (adj[v] >> u) & 1 and deg[u] == 1:
                    leaves += 1
            if leaves != 1:
                return False
        elif d != 0:
            return False
    return True


@njit(cache=True)
def _checks(adj, deg, n, m, R, alpha, tol, c_sub, hyp, held, eq):
    """Fill per-check hypothesis / claim / equality flags for a connected graph.

    Returns the corona structural test result (meaningful for subcubic inputs).
    """
    lo = n
    hi = 0
    for v in range(n):
        if deg[v] < lo:
            lo = deg[v]
        if deg[v] > hi:
            hi = deg[v]
    ex = m - n + 1
    sqrt2 = math.sqrt(2.0)

    rhs = alpha / sqrt2
    hyp[C_TREE] = m <= n
    held[C_TREE] = R > rhs - tol
    eq[C_TREE] = _close(R, rhs, tol)
    hyp[C_EXCESS] = 28.0 * ex <= math.sqrt(n)
    held[C_EXCESS] = R > rhs - tol
    eq[C_EXCESS] = eq[C_TREE]

    rhs = c_sub * alpha
    hyp[C_SUBCUBIC] = hi <= 3
    held[C_SUBCUBIC] = R >= rhs - tol
    eq[C_SUBCUBIC] = _close(R, rhs, tol)

    rhs = math.sqrt(lo * hi) / (lo + hi) * n
    hyp[C_OSHI] = lo >= 1
    held[C_OSHI] = R >= rhs - tol
    eq[C_OSHI] = _close(R, rhs, tol)

    rhs = 2.0 * m / (math.sqrt(8.0 * m + 1.0) - 1.0)
    hyp[C_BE] = lo >= 1
    held[C_BE] = R >= rhs - tol
    eq[C_BE] = _close(R, rhs, tol)

    for r in range(1, 7):
        high = 0
        nh = 0
        for v in range(n):
            if deg[v] > r:
                high |= 1 << v
                nh += 1
        inner = 0
        for v in range(n):
            if (high >> v) & 1:
                x = adj[v] & high
                while x:
                    inner += 1
                    x &= x - 1
        c = C_HL0 + r - 1
        rhs = alpha / math.sqrt(r * (r + 1.0))
        hyp[c] = inner <= r * nh
        held[c] = R >= rhs - tol
        eq[c] = _close(R, rhs, tol)

    rhs = 1.5 * alpha ** (2.0 / 3.0) - math.sqrt(alpha / 2.0)
    hyp[C_NEAR] = alpha == n // 2
    held[C_NEAR] = R >= rhs - tol
    eq[C_NEAR] = _close(R, rhs, tol)

    if hi <= 3:
        return _corona_two_regular(adj, deg, n)
    return False


@njit(cache=True)
def evaluate_mask(n, mask, tol, c_sub, pi, pj, pop, weights, hyp, held, eq):
    """Analyse one mask.  Returns ``(no_isolated, connected, m, R, alpha, corona)``."""
    npairs = n * (n - 1) // 2
    adj = np.zeros(n, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    cnt = np.zeros((KERNEL_MAX_N + 1, KERNEL_MAX_N + 1), dtype=np.int64)
    _decode(mask, n, npairs, pi, pj, adj)
    m = 0
    no_iso = True
    for v in range(n):
        deg[v] = pop[adj[v]]
        m += deg[v]
        if deg[v] == 0:
            no_iso = False
    m //= 2
    R = _randic(adj, deg, n, cnt, weights)
    alpha = _matching_number(adj, n, pop)
    conn = _connected(adj, n) if n > 0 else False
    corona = False
    if conn:
        corona = _checks(adj, deg, n, m, R, alpha, tol, c_sub, hyp, held, eq)
    return no_iso, conn, m, R, alpha, corona


@njit(cache=True)
def scan(n, lo, hi, tol, c_sub, excess_cap, pi, pj, pop, weights,
         counts, hyp_count, held_count, eq_count, first_fail,
         best_R, best_mask, eq_masks):
    """Scan masks ``lo <= mask < hi`` for graphs on ``n`` vertices.

    ``counts`` = [masks, no_isolated, connected, corona_mismatch, subcubic_equalities].
    ``best_R[s, k]`` / ``best_mask[s, k]`` hold the per-scope minimum for
    matching number ``k``; ``eq_masks`` collects subcubic equality masks
    (up to its length).
    """
    npairs = n * (n - 1) // 2
    adj = np.zeros(n, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    cnt = np.zeros((KERNEL_MAX_N + 1, KERNEL_MAX_N + 1), dtype=np.int64)
    hyp = np.zeros(N_CHECKS, dtype=np.bool_)
    held = np.zeros(N_CHECKS, dtype=np.bool_)
    eq = np.zeros(N_CHECKS, dtype=np.bool_)
    scope = np.zeros(N_SCOPES, dtype=np.bool_)
    for mask in range(lo, hi):
        counts[0] += 1
        _decode(mask, n, npairs, pi, pj, adj)
        isolated = False
        m = 0
        for v in range(n):
            d = pop[adj[v]]
            deg[v] = d
            m += d
            if d == 0:
                isolated = True
        if isolated:
            continue
        counts[1] += 1
        m //= 2
        conn = _connected(adj, n)
        R = _randic(adj, deg, n, cnt, weights)
        alpha = _matching_number(adj, n, pop)

        scope[1] = True
        scope[0] = conn
        hi_deg = 0
        for v in range(n):
            if deg[v] > hi_deg:
                hi_deg = deg[v]
        scope[2] = conn and m == n - 1
        scope[3] = conn and hi_deg <= 3
        scope[4] = conn and alpha == n // 2
        scope[5] = conn and m - n + 1 <= excess_cap
        for s in range(N_SCOPES):
            if scope[s] and R < best_R[s, alpha]:
                best_R[s, alpha] = R
                best_mask[s, alpha] = mask

        if not conn:
            continue
        counts[2] += 1
        corona = _checks(adj, deg, n, m, R, alpha, tol, c_sub, hyp, held, eq)
        for c in range(N_CHECKS):
            if hyp[c]:
                hyp_count[c] += 1
                if held[c]:
                    held_count[c] += 1
                elif first_fail[c] < 0:
                    first_fail[c] = mask
                if eq[c]:
                    eq_count[c] += 1
        if hyp[C_SUBCUBIC]:
            if eq[C_SUBCUBIC] != corona:
                counts[3] += 1
            if eq[C_SUBCUBIC]:
                if counts[4] < eq_masks.shape[0]:
                    eq_masks[counts[4]] = mask
                counts[4] += 1
