"""Shared test utilities: dyadic grids and brute-force oracles."""

from itertools import permutations

import numpy as np

from maxplus_bscs import tropical as tp

# Snapping test inputs to a dyadic lattice keeps every max-plus sum exactly
# representable, so "exact" assertions are independent of float summation
# order.  CYCLE_GRID additionally keeps cycle means exact under division by
# any cycle length up to 5 (15/len scales to an integer times a power of 2).
DY = 2.0 ** -10
CYCLE_GRID = 15.0 * 2.0 ** -14


def snap(a, grid=DY):
    return np.round(np.asarray(a, dtype=float) / grid) * grid


def rand_matrix(rng, n, lo=-5.0, hi=5.0, zero_prob=0.0, grid=None):
    a = rng.uniform(lo, hi, (n, n))
    if grid is not None:
        a = snap(a, grid)
    if zero_prob > 0:
        a = np.where(rng.random((n, n)) < zero_prob, tp.ZERO, a)
    return a


def cycle_mean_bruteforce(a):
    """Max mean weight over all elementary cycles, by direct enumeration.

    Every cyclic vertex sequence is visited once (anchored at its smallest
    vertex); usable up to n ~ 7.
    """
    n = a.shape[0]
    best = tp.ZERO
    for r in range(1, n + 1):
        for nodes in permutations(range(n), r):
            if nodes[0] != min(nodes):
                continue
            weight = 0.0
            for i in range(r):
                edge = a[nodes[i], nodes[(i + 1) % r]]
                if edge == tp.ZERO:
                    break
                weight += edge
            else:
                best = max(best, weight / r)
    return best


def fixpoint_iterate(a, b, start, max_iter=20000):
    """Iterate z <- a z (+) b until it stops changing; error if it never does."""
    z = np.array(start, dtype=float)
    for _ in range(max_iter):
        nxt = np.maximum(tp.matvec(a, z), b)
        if np.array_equal(nxt, z):
            return z
        z = nxt
    raise AssertionError("fixed-point iteration did not converge")
