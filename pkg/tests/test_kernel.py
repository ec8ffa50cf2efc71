"""The compiled scan must agree with the Python bounds module graph by graph."""

import random

import numpy as np
import pytest

from randic import _kernel as K
from randic.bounds import SUBCUBIC_CONSTANT, run_all_checks
from randic.graph import from_mask, is_connected, pair_count, relabel, to_mask
from randic.invariants import close, min_degree, randic_index
from randic.matching import matching_number

CHECK_IDS = list(K.CHECK_NAMES)


def _kernel_eval(n, mask):
    pi, pj = K.pair_tables(n)
    hyp = np.zeros(K.N_CHECKS, dtype=np.bool_)
    held, eq = hyp.copy(), hyp.copy()
    out = K.evaluate_mask(n, mask, 1e-9, SUBCUBIC_CONSTANT, pi, pj, K.POPCOUNT, K.WEIGHTS, hyp, held, eq)
    return out, hyp, held, eq


def _compare(n, mask):
    g = from_mask(n, mask)
    (no_iso, conn, m, R, alpha, corona), hyp, held, eq = _kernel_eval(n, mask)
    assert no_iso == (min_degree(g) >= 1)
    assert conn == is_connected(g)
    assert m == g.m
    assert alpha == matching_number(g)
    assert close(R, randic_index(g), 1e-12)
    if not conn:
        return
    reports = {r.bound_id: r for r in run_all_checks(g)}
    for c, name in enumerate(CHECK_IDS):
        rep = reports[name]
        assert hyp[c] == rep.hypothesis_held, (name, g)
        assert held[c] == rep.bound_held, (name, g)
        assert eq[c] == rep.equality, (name, g)
    if max(g.degrees()) <= 3:
        assert corona == reports["subcubic"].details["corona"]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_every_mask(n):
    for mask in range(1 << pair_count(n)):
        _compare(n, mask)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_sampled_masks(n):
    rng = random.Random(n)
    for _ in range(600):
        _compare(n, rng.getrandbits(pair_count(n)))


def test_randic_bit_identical_on_isomorphic_copies():
    rng = random.Random(1)
    n = 7
    for _ in range(200):
        mask = rng.getrandbits(pair_count(n))
        g = from_mask(n, mask)
        order = list(range(n))
        rng.shuffle(order)
        other = to_mask(relabel(g, order))
        assert _kernel_eval(n, mask)[0][3] == _kernel_eval(n, other)[0][3]
