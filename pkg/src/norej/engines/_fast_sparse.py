"""Compiled whole-run kernels for instances with small nonzero support.

Families whose weight matrices are mostly zeros (zero, single-heavy-edge,
rank-decay after 12-decimal rounding) make the per-step optimal matching
cheap and massively tied.  These kernels use a canonical, arrival-order
independent tie rule: an exact solve restricted to the nonzero support,
completed by pairing the leftover vertices consecutively in ascending id
order (bipartite: filling leftover capacity slots in offline id order).
The completion is weight-neutral, so every M^v attains the true optimum.

Exchangeability of the arriving vertex within the observed set, which the
competitive analysis relies on, is preserved because the rule never looks
at arrival order.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ..solvers._blossom import _mwm_dense_run
from ._fast_bipartite import _augment_row


@njit(cache=True)
def _insort(arr, m, x):
    pos = m
    while pos > 0 and arr[pos - 1] > x:
        arr[pos] = arr[pos - 1]
        pos -= 1
    arr[pos] = x
    return m + 1


@njit(cache=True)
def _rank_of(arr, m, x):
    lo = 0
    hi = m
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def run_general_sparse(n, sup_i, sup_j, sup_w, W, order, words):  # noqa: C901
    """Alg3 on a sparse-support instance; same outputs as run_general_fast."""
    k_e = (6 * n) // 17
    ns = len(sup_i)

    ev_w = np.full(n, np.nan, dtype=np.float64)
    success = np.full(n, -1, dtype=np.int8)
    decision = np.zeros(n, dtype=np.int8)
    partner = np.zeros(n, dtype=np.int64)
    pool_after = np.full(n, -1, dtype=np.int64)

    # support vertices, compact indexing
    sv_mark = np.zeros(n, dtype=np.int64)
    for e in range(ns):
        sv_mark[sup_i[e]] = 1
        sv_mark[sup_j[e]] = 1
    sv_ids = np.empty(n, dtype=np.int64)
    nsv = 0
    for v in range(n):
        if sv_mark[v]:
            sv_mark[v] = nsv + 1          # 1-based compact index
            sv_ids[nsv] = v
            nsv += 1
    subW = np.zeros((nsv, nsv), dtype=np.float64)
    for e in range(ns):
        a = sv_mark[sup_i[e]] - 1
        b = sv_mark[sup_j[e]] - 1
        subW[a, b] = sup_w[e]
        subW[b, a] = sup_w[e]

    present = np.empty(n, dtype=np.int64)      # sorted arrived 0-based ids
    npres = 0
    arrived = np.zeros(n, dtype=np.bool_)
    waiting = np.zeros(n, dtype=np.bool_)
    nwait = 0
    mate_s = np.full(n, -1, dtype=np.int64)    # support-matching partner
    matched_ids = np.empty(nsv + 1, dtype=np.int64)
    sub_act = np.empty(nsv, dtype=np.int64)

    total = 0.0
    nw = 0
    k_s = n
    ks_locked = False

    for v in range(1, n + 1):
        vix = int(order[v - 1]) - 1
        arrived[vix] = True
        npres = _insort(present, npres, vix)
        if v <= k_e:
            waiting[vix] = True
            nwait += 1
            decision[v - 1] = 0
            pool_after[v - 1] = nwait
            continue
        if not ks_locked and nwait == n + 1 - v:
            k_s = v - 1
            ks_locked = True
        if v == 1:
            waiting[vix] = True
            nwait += 1
            decision[v - 1] = 3
            pool_after[v - 1] = nwait
            continue

        v_r = -1
        if v % 2 == 1:
            r = np.int64(words[nw] % np.uint64(v - 1))
            nw += 1
            rv = _rank_of(present, npres, vix)
            if r >= rv:
                r += 1                      # skip vid itself
            v_r = present[r]

        # canonical matching on the support among present-minus-v_r vertices
        nsub = 0
        for si in range(nsv):
            u = sv_ids[si]
            if arrived[u] and u != v_r:
                sub_act[nsub] = si
                nsub += 1
        lv = -1
        nmat = 0
        if nsub >= 2 and ns > 0:
            cw = np.empty((nsub, nsub), dtype=np.float64)
            for a in range(nsub):
                for b in range(nsub):
                    cw[a, b] = subW[sub_act[a], sub_act[b]]
            mm, _dv, _np_ = _mwm_dense_run(cw, False, 16 * nsub + 256)
            for a in range(nsub):
                if mm[a] >= 0:
                    ida = sv_ids[sub_act[a]]
                    idb = sv_ids[sub_act[mm[a]]]
                    mate_s[ida] = idb
                    if ida < idb:
                        matched_ids[nmat] = ida
                        nmat += 1
                        matched_ids[nmat] = idb
                        nmat += 1
                else:
                    mate_s[sv_ids[sub_act[a]]] = -1
            # sort matched ids (tiny insertion sort)
            for a in range(1, nmat):
                x = matched_ids[a]
                bpos = a
                while bpos > 0 and matched_ids[bpos - 1] > x:
                    matched_ids[bpos] = matched_ids[bpos - 1]
                    bpos -= 1
                matched_ids[bpos] = x
            if arrived[vix] and mate_s[vix] >= 0 and vix != v_r:
                lv = mate_s[vix]

        if lv < 0:
            # leftover pool: present minus v_r minus support-matched ids,
            # paired consecutively; find vid's rank and its mate's id
            rk = _rank_of(present, npres, vix)
            below = rk
            if v_r >= 0 and v_r < vix:
                below -= 1
            for a in range(nmat):
                if matched_ids[a] < vix:
                    below -= 1
                else:
                    break
            want = below + 1 if below % 2 == 0 else below - 1
            # want-th element of the leftover pool
            cnt = -1
            for pi in range(npres):
                u = present[pi]
                if u == v_r:
                    continue
                skip = False
                for a in range(nmat):
                    if matched_ids[a] == u:
                        skip = True
                        break
                    if matched_ids[a] > u:
                        break
                if skip:
                    continue
                cnt += 1
                if cnt == want:
                    lv = u
                    break
        ev_w[v - 1] = W[vix, lv]

        if waiting[lv]:
            waiting[lv] = False
            nwait -= 1
            total += W[vix, lv]
            success[v - 1] = 1
            decision[v - 1] = 1
            partner[v - 1] = lv + 1
        elif nwait < n + 1 - v:
            waiting[vix] = True
            nwait += 1
            success[v - 1] = 0
            decision[v - 1] = 3
        else:
            r = np.int64(words[nw] % np.uint64(nwait))
            nw += 1
            pk = -1
            cnt = 0
            for u in range(n):
                if waiting[u]:
                    if cnt == r:
                        pk = u
                        break
                    cnt += 1
            waiting[pk] = False
            nwait -= 1
            total += W[vix, pk]
            success[v - 1] = 0
            decision[v - 1] = 4
            partner[v - 1] = pk + 1
        pool_after[v - 1] = nwait

    return total, ev_w, success, decision, partner, pool_after, k_s, nw, 0


@njit(cache=True)
def run_bipartite_sparse(n_off, cap, k, sup_u, sup_v, weights, order, words):  # noqa: C901
    """Alg1/Alg2 on a sparse-support instance; outputs as run_bipartite_fast.

    The canonical M^v solves the support assignment exactly (support online
    vertices inserted in ascending id order into a fresh dual state) and
    fills the leftover online vertices into the remaining capacity slots in
    offline id order.
    """
    n = len(order)
    ns = len(sup_u)

    # compact support index spaces
    off_mark = np.zeros(n_off, dtype=np.int64)
    on_mark = np.zeros(n, dtype=np.int64)
    for e in range(ns):
        off_mark[sup_u[e]] = 1
        on_mark[sup_v[e]] = 1
    off_ids = np.empty(n_off, dtype=np.int64)
    noff_s = 0
    for u in range(n_off):
        if off_mark[u]:
            off_mark[u] = noff_s + 1
            off_ids[noff_s] = u
            noff_s += 1
    on_ids = np.empty(n, dtype=np.int64)
    non_s = 0
    for v in range(n):
        if on_mark[v]:
            on_mark[v] = non_s + 1
            on_ids[non_s] = v
            non_s += 1
    nsl = noff_s * cap
    supW = np.zeros((non_s, noff_s), dtype=np.float64)
    for e in range(ns):
        supW[on_mark[sup_v[e]] - 1, off_mark[sup_u[e]] - 1] = weights[sup_u[e], sup_v[e]]

    residual = np.full(n_off, cap, dtype=np.int64)
    in_pool = np.ones(n_off, dtype=np.bool_)
    pool_n = n_off
    arrived = np.zeros(n, dtype=np.bool_)
    present = np.empty(n, dtype=np.int64)
    npres = 0

    cost = np.empty((non_s + 1, nsl + 1), dtype=np.float64)
    vdual = np.empty(nsl + 1, dtype=np.float64)
    match_sl = np.empty(nsl + 1, dtype=np.int64)
    match_on = np.empty(non_s + 1, dtype=np.int64)
    dbuf = np.empty(nsl + 1, dtype=np.float64)
    pred = np.empty(nsl + 1, dtype=np.int64)
    scanned = np.empty(nsl + 1, dtype=np.bool_)
    sup_mate = np.full(n, -1, dtype=np.int64)   # online id -> offline id in M_s
    used_s = np.empty(n_off, dtype=np.int64)
    matched_on = np.empty(non_s + 1, dtype=np.int64)

    ev_w = np.full(n, np.nan, dtype=np.float64)
    success = np.full(n, -1, dtype=np.int8)
    decision = np.zeros(n, dtype=np.int8)
    partner = np.zeros(n, dtype=np.int64)
    pool_after = np.full(n, -1, dtype=np.int64)

    total = 0.0
    nw = 0

    for v in range(1, n + 1):
        vix = int(order[v - 1]) - 1
        arrived[vix] = True
        npres = _insort(present, npres, vix)
        u = -1
        if v < k:
            r = np.int64(words[nw] % np.uint64(pool_n))
            nw += 1
            cnt = 0
            for x in range(n_off):
                if in_pool[x]:
                    if cnt == r:
                        u = x
                        break
                    cnt += 1
            decision[v - 1] = 0
        else:
            # canonical sparse M^v: support assignment + ordered zero fill
            nmat = 0
            if ns > 0:
                for s in range(nsl):
                    vdual[s] = 0.0
                    match_sl[s] = -1
                for oi in range(non_s):
                    ov = on_ids[oi]
                    if arrived[ov]:
                        for s in range(nsl):
                            cost[oi, s] = -supW[oi, s // cap]
                        match_on[oi] = -1
                        _augment_row(oi, nsl, cost, vdual, match_sl, match_on,
                                     dbuf, pred, scanned)
                for x in range(n_off):
                    used_s[x] = 0
                for oi in range(non_s):
                    ov = on_ids[oi]
                    if arrived[ov]:
                        sl = match_on[oi]
                        uo = off_ids[sl // cap]
                        if supW[oi, sl // cap] > 0.0:
                            sup_mate[ov] = uo
                            used_s[uo] += 1
                            matched_on[nmat] = ov
                            nmat += 1
                        else:
                            sup_mate[ov] = -1
            # sort matched online ids
            for a in range(1, nmat):
                x = matched_on[a]
                b = a
                while b > 0 and matched_on[b - 1] > x:
                    matched_on[b] = matched_on[b - 1]
                    b -= 1
                matched_on[b] = x

            ev_u = sup_mate[vix]
            if ev_u < 0:
                # leftover rank of vid among present-minus-support-matched
                rk = _rank_of(present, npres, vix)
                for a in range(nmat):
                    if matched_on[a] < vix:
                        rk -= 1
                    else:
                        break
                # walk offline ids consuming leftover capacity
                acc = 0
                for x in range(n_off):
                    free_here = cap - (used_s[x] if ns > 0 else 0)
                    if acc + free_here > rk:
                        ev_u = x
                        break
                    acc += free_here
            ev_w[v - 1] = weights[ev_u, vix]
            if residual[ev_u] > 0:
                u = ev_u
                success[v - 1] = 1
                decision[v - 1] = 1
            else:
                success[v - 1] = 0
                r = np.int64(words[nw] % np.uint64(pool_n))
                nw += 1
                cnt = 0
                for x in range(n_off):
                    if in_pool[x]:
                        if cnt == r:
                            u = x
                            break
                        cnt += 1
                decision[v - 1] = 2
        residual[u] -= 1
        if in_pool[u]:
            in_pool[u] = False
            pool_n -= 1
        total += weights[u, vix]
        partner[v - 1] = u + 1
        if pool_n == 0:
            for x in range(n_off):
                if residual[x] > 0:
                    in_pool[x] = True
                    pool_n += 1
        pool_after[v - 1] = pool_n
    return total, ev_w, success, decision, partner, pool_after, nw
