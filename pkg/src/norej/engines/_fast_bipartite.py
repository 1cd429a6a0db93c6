"""Compiled whole-run kernels for the bipartite engines at large n.

The per-step optimal matching M^v is maintained incrementally: each arrival
adds one column to a dense assignment state and re-optimizes with a single
shortest-augmenting-path pass over slot duals (Jonker-Volgenant row
augmentation).  The maintained matching is weight-optimal for every prefix,
so the arriving vertex's partner in it is a valid l(e^v); among tied optima
the selection may depend on insertion order, unlike the canonical from
scratch solver (generator weights carry 12 significant decimals, which makes
decision-relevant ties vanishingly rare on the generic families this path
serves).

Randomness is fed as a presampled word array consumed in the documented
order: one word per uniform pick, index into the id-sorted candidate set.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_INF = 1e18


@njit(cache=True, inline="always")
def _pick_avail(flags, m, word):
    """Index of the (word % m)-th set flag, by ascending id."""
    r = word % np.uint64(m)
    cnt = np.uint64(0)
    for u in range(flags.shape[0]):
        if flags[u]:
            if cnt == r:
                return u
            cnt += np.uint64(1)
    return -1


@njit(cache=True)
def _augment_row(i, nsl, cost, vdual, match_sl, match_on, d, pred, scanned):
    """JV row augmentation: insert row i, re-optimize, in min-cost duals."""
    for s in range(nsl):
        d[s] = cost[i, s] - vdual[s]
        pred[s] = i
        scanned[s] = False
    sink = -1
    mu = 0.0
    while sink < 0:
        best = _INF
        sbest = -1
        for s in range(nsl):
            if not scanned[s] and d[s] < best:
                best = d[s]
                sbest = s
        mu = best
        scanned[sbest] = True
        if match_sl[sbest] < 0:
            sink = sbest
        else:
            i2 = match_sl[sbest]
            base = mu - cost[i2, sbest] + vdual[sbest]
            for s in range(nsl):
                if not scanned[s]:
                    nd = base + cost[i2, s] - vdual[s]
                    if nd < d[s]:
                        d[s] = nd
                        pred[s] = i2
    for s in range(nsl):
        if scanned[s]:
            vdual[s] += d[s] - mu
    # trace the alternating path back to row i
    s = sink
    while True:
        i2 = pred[s]
        match_sl[s] = i2
        s_prev = match_on[i2]
        match_on[i2] = s
        if i2 == i:
            break
        s = s_prev
    return sink


@njit(cache=True)
def run_bipartite_fast(weights, cap, order, words, k):
    """Shared Alg1/Alg2 loop; cap is the uniform offline capacity (1 or 2).

    Returns (total, ev_w, success, decision, partner, pool_after, nwords):
    per-step arrays indexed by arrival step - 1.  decision codes:
    0 explore-random, 1 matched-ev, 2 random-match.  success is 1/0 for
    steps with a computed e^v, -1 otherwise.
    """
    n_off, n = weights.shape
    nsl = n_off * cap
    residual = np.full(n_off, cap, dtype=np.int64)
    in_pool = np.ones(n_off, dtype=np.bool_)       # L_a (alg2); avail (alg1)
    pool_n = n_off

    cost = np.empty((n, nsl), dtype=np.float64)    # filled per arrival
    vdual = np.zeros(nsl, dtype=np.float64)
    match_sl = np.full(nsl, -1, dtype=np.int64)
    match_on = np.full(n, -1, dtype=np.int64)
    d = np.empty(nsl, dtype=np.float64)
    pred = np.empty(nsl, dtype=np.int64)
    scanned = np.empty(nsl, dtype=np.bool_)

    ev_w = np.full(n, np.nan, dtype=np.float64)
    success = np.full(n, -1, dtype=np.int8)
    decision = np.zeros(n, dtype=np.int8)
    partner = np.zeros(n, dtype=np.int64)
    pool_after = np.full(n, -1, dtype=np.int64)

    total = 0.0
    nw = 0
    inserted = 0                                   # arrivals present in M^v state

    for v in range(1, n + 1):
        vid = int(order[v - 1])                    # 1-based online id
        row = vid - 1
        u = -1
        if v < k:
            pu = _pick_avail(in_pool, pool_n, words[nw])
            nw += 1
            u = pu
            decision[v - 1] = 0
        else:
            # bring the assignment state up to date with arrivals 1..v
            while inserted < v:
                rid = int(order[inserted]) - 1
                for s in range(nsl):
                    cost[rid, s] = -weights[s // cap, rid]
                _augment_row(rid, nsl, cost, vdual, match_sl, match_on,
                             d, pred, scanned)
                inserted += 1
            ev_slot = match_on[row]
            ev_u = ev_slot // cap
            ev_w[v - 1] = weights[ev_u, row]
            if residual[ev_u] > 0:
                u = ev_u
                success[v - 1] = 1
                decision[v - 1] = 1
            else:
                success[v - 1] = 0
                pu = _pick_avail(in_pool, pool_n, words[nw])
                nw += 1
                u = pu
                decision[v - 1] = 2
        residual[u] -= 1
        if in_pool[u]:
            in_pool[u] = False
            pool_n -= 1
        total += weights[u, row]
        partner[v - 1] = u + 1
        if pool_n == 0:
            for x in range(n_off):
                if residual[x] > 0:
                    in_pool[x] = True
                    pool_n += 1
        pool_after[v - 1] = pool_n
    return total, ev_w, success, decision, partner, pool_after, nw
