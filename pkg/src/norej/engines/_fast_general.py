"""Compiled whole-run kernel for the general engine at large n.

Maintains the per-step optimal perfect matching M^v warm across arrivals
instead of solving from scratch: the blossom primal-dual state (matching,
vertex and blossom duals, nested blossom forest) persists, each arrival is
inserted with a dual-feasible potential, and a single augmentation stage
restores a perfect matching.  Removing the odd-step hold-out vertex v_r
dissolves the blossoms containing it with the standard dual repair (members
gain the dissolved dual; the one matched edge crossing each dissolved
positive-dual blossom loses tightness and is unmatched, then stages
re-augment).  Weak duality certifies optimality after every step, so the
maintained matching is exact; among tied optima the selection may depend on
insertion order, unlike the canonical solver (ties are vanishingly rare on
the generic families this path serves; degenerate families are routed to
the canonical sparse kernel instead).

The blossom machinery mirrors solvers._blossom; the two are differentially
tested against each other step by step.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_FREE = 0
_S = 1
_T = 2


@njit(cache=True)
def run_general_fast(W, order, words, qcap):  # noqa: C901
    """Alg3 loop with warm incremental M^v.

    Returns (total, ev_w, success, decision, partner, pool_after, k_s,
    nwords, status): per-step arrays indexed by arrival step - 1; decision
    codes 1 matched-ev, 2 random(unused), 3 kept-waiting, 4 forced-match,
    0 exploration wait; pool_after = |A| after the step; status 0 ok,
    1 scan-queue overflow (retry with larger qcap), 2 internal failure
    (caller must fall back to the reference engine).
    """
    n = W.shape[0]
    k_e = (6 * n) // 17

    ev_w = np.full(n, np.nan, dtype=np.float64)
    success = np.full(n, -1, dtype=np.int8)
    decision = np.zeros(n, dtype=np.int8)
    partner = np.zeros(n, dtype=np.int64)
    pool_after = np.full(n, -1, dtype=np.int64)

    nedge = n * (n - 1) // 2
    edge_i = np.empty(nedge, dtype=np.int64)
    edge_j = np.empty(nedge, dtype=np.int64)
    edge_w = np.empty(nedge, dtype=np.float64)
    rowoff = np.empty(n, dtype=np.int64)
    k = 0
    for i in range(n):
        rowoff[i] = k - i - 1
        for j in range(i + 1, n):
            edge_i[k] = i
            edge_j[k] = j
            edge_w[k] = W[i, j]
            k += 1

    active = np.zeros(n, dtype=np.bool_)
    act_list = np.empty(n, dtype=np.int64)      # ascending ids
    nact = np.zeros(1, dtype=np.int64)
    mate = np.full(n, -1, dtype=np.int64)
    label = np.zeros(2 * n, dtype=np.int64)
    labelend = np.full(2 * n, -1, dtype=np.int64)
    inblossom = np.arange(n, dtype=np.int64)
    blossomparent = np.full(2 * n, -1, dtype=np.int64)
    blossombase = np.full(2 * n, -1, dtype=np.int64)
    bestedge = np.full(2 * n, -1, dtype=np.int64)
    bestslack = np.zeros(2 * n, dtype=np.float64)   # live slack of bestedge
    dualvar = np.zeros(2 * n, dtype=np.float64)
    astamp = np.full((n, n), -1, dtype=np.int64)
    stamp = np.zeros(1, dtype=np.int64)

    queue = np.empty(qcap, dtype=np.int64)
    cnts = np.zeros(4, dtype=np.int64)          # [qtail, nunused, overflow, qhead]
    pending = np.full(n, -1, dtype=np.int64)    # stage stamp when queued

    childs = np.full((n + 1, n + 1), -1, dtype=np.int64)
    nchilds = np.zeros(n + 1, dtype=np.int64)
    endps = np.full((n + 1, n + 1), -1, dtype=np.int64)
    bbe = np.full((n + 1, n), -1, dtype=np.int64)
    nbbe = np.full(n + 1, -1, dtype=np.int64)
    unused = np.empty(n + 1, dtype=np.int64)
    for t in range(n):
        unused[t] = 2 * n - 1 - t
    cnts[1] = n
    alive_bl = np.empty(n + 1, dtype=np.int64)
    alive_pos = np.full(2 * n, -1, dtype=np.int64)
    nalive = np.zeros(1, dtype=np.int64)

    leafbuf = np.empty(n, dtype=np.int64)
    leafbuf2 = np.empty(n, dtype=np.int64)
    lstack = np.empty(2 * n, dtype=np.int64)
    scanpath = np.empty(2 * n, dtype=np.int64)
    rotbuf = np.empty(n + 1, dtype=np.int64)
    rotbuf2 = np.empty(n + 1, dtype=np.int64)
    augstack = np.empty((2 * n + 4, 2), dtype=np.int64)
    expstack = np.empty(2 * n + 4, dtype=np.int64)
    bet = np.empty(2 * n, dtype=np.int64)

    def crow(b):
        return b - n

    def bl_add(b):
        alive_pos[b] = nalive[0]
        alive_bl[nalive[0]] = b
        nalive[0] += 1

    def bl_remove(b):
        last = alive_bl[nalive[0] - 1]
        alive_bl[alive_pos[b]] = last
        alive_pos[last] = alive_pos[b]
        alive_pos[b] = -1
        nalive[0] -= 1

    def slack(e):
        return dualvar[edge_i[e]] + dualvar[edge_j[e]] - 2.0 * edge_w[e]

    def endpoint(p):
        if p & 1:
            return edge_j[p >> 1]
        return edge_i[p >> 1]

    def eid(a, b):
        if a < b:
            return rowoff[a] + b
        return rowoff[b] + a

    def allow_eid(e):
        i = edge_i[e]
        j = edge_j[e]
        astamp[i, j] = stamp[0]
        astamp[j, i] = stamp[0]

    def push(v):
        if pending[v] == stamp[0]:
            return
        if cnts[0] >= qcap:
            cnts[2] = 1
            return
        pending[v] = stamp[0]
        queue[cnts[0]] = v
        cnts[0] += 1

    def blossom_leaves(b, out):
        if b < n:
            out[0] = b
            return 1
        cnt = 0
        top = 0
        lstack[top] = b
        top += 1
        while top > 0:
            top -= 1
            x = lstack[top]
            if x < n:
                out[cnt] = x
                cnt += 1
            else:
                for t in range(nchilds[crow(x)]):
                    lstack[top] = childs[crow(x), t]
                    top += 1
        return cnt

    def assign_label(w, t, p):
        while True:
            b = inblossom[w]
            label[w] = t
            label[b] = t
            labelend[w] = p
            labelend[b] = p
            bestedge[w] = -1
            bestedge[b] = -1
            if t == _S:
                cnt = blossom_leaves(b, leafbuf)
                for ii in range(cnt):
                    push(leafbuf[ii])
                return
            base = blossombase[b]
            w = endpoint(mate[base])
            p = mate[base] ^ 1
            t = _S

    def scan_blossom(v, w):
        npath = 0
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            scanpath[npath] = b
            npath += 1
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint(labelend[b])
                b = inblossom[v]
                v = endpoint(labelend[b])
            if w != -1:
                tmp = v
                v = w
                w = tmp
        for ii in range(npath):
            label[scanpath[ii]] = _S
        return base

    def add_blossom(base, e):
        v = edge_i[e]
        w = edge_j[e]
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = unused[cnts[1] - 1]
        cnts[1] -= 1
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        npath = 0
        while bv != bb:
            blossomparent[bv] = b
            rotbuf[npath] = bv
            rotbuf2[npath] = labelend[bv]
            npath += 1
            v = endpoint(labelend[bv])
            bv = inblossom[v]
        rotbuf[npath] = bb
        npath += 1
        br = crow(b)
        for ii in range(npath):
            childs[br, ii] = rotbuf[npath - 1 - ii]
        for ii in range(npath - 1):
            endps[br, ii] = rotbuf2[npath - 2 - ii]
        endps[br, npath - 1] = 2 * e
        nc = npath
        while bw != bb:
            blossomparent[bw] = b
            childs[br, nc] = bw
            endps[br, nc] = labelend[bw] ^ 1
            nc += 1
            w = endpoint(labelend[bw])
            bw = inblossom[w]
        nchilds[br] = nc
        for ci in range(nc):
            if childs[br, ci] >= n:
                bl_remove(childs[br, ci])
        bl_add(b)
        label[b] = _S
        labelend[b] = labelend[bb]
        dualvar[b] = 0.0
        cnt = blossom_leaves(b, leafbuf)
        for ii in range(cnt):
            if label[inblossom[leafbuf[ii]]] == _T:
                push(leafbuf[ii])
            inblossom[leafbuf[ii]] = b
        for ii in range(2 * n):
            bet[ii] = -1
        for ci in range(nc):
            cb = childs[br, ci]
            if cb < n or nbbe[crow(cb)] < 0:
                lcnt = blossom_leaves(cb, leafbuf2)
                for li in range(lcnt):
                    lv = leafbuf2[li]
                    for oi in range(nact[0]):
                        ov = act_list[oi]
                        if ov == lv:
                            continue
                        ke = eid(lv, ov)
                        bj = inblossom[ov]
                        if bj != b and label[bj] == _S:
                            if bet[bj] == -1 or slack(ke) < slack(bet[bj]):
                                bet[bj] = ke
            else:
                cr = crow(cb)
                for li in range(nbbe[cr]):
                    ke = bbe[cr, li]
                    jv = edge_j[ke]
                    if inblossom[jv] == b:
                        jv = edge_i[ke]
                    bj = inblossom[jv]
                    if bj != b and label[bj] == _S:
                        if bet[bj] == -1 or slack(ke) < slack(bet[bj]):
                            bet[bj] = ke
            if cb >= n:
                nbbe[crow(cb)] = -1
            bestedge[cb] = -1
        cnt2 = 0
        for bj in range(2 * n):
            if bet[bj] != -1:
                bbe[br, cnt2] = bet[bj]
                cnt2 += 1
        nbbe[br] = cnt2
        bestedge[b] = -1
        for li in range(cnt2):
            if bestedge[b] == -1 or slack(bbe[br, li]) < bestslack[b]:
                bestedge[b] = bbe[br, li]
                bestslack[b] = slack(bbe[br, li])

    def augment_blossom(b0, v0):
        top = 0
        augstack[top, 0] = b0
        augstack[top, 1] = v0
        top += 1
        while top > 0:
            top -= 1
            b = augstack[top, 0]
            v = augstack[top, 1]
            chainlen = 0
            cur = b
            while True:
                expstack[chainlen] = cur
                chainlen += 1
                t = v
                while blossomparent[t] != cur:
                    t = blossomparent[t]
                br = crow(cur)
                nc = nchilds[br]
                i0 = 0
                for ci in range(nc):
                    if childs[br, ci] == t:
                        i0 = ci
                        break
                if i0 & 1:
                    j = i0 - nc
                    jstep = 1
                    endptrick = 0
                else:
                    j = i0
                    jstep = -1
                    endptrick = 1
                while j != 0:
                    j += jstep
                    tt = childs[br, j % nc]
                    p = endps[br, (j - endptrick) % nc] ^ endptrick
                    if tt >= n:
                        augstack[top, 0] = tt
                        augstack[top, 1] = endpoint(p)
                        top += 1
                    j += jstep
                    tt = childs[br, j % nc]
                    if tt >= n:
                        augstack[top, 0] = tt
                        augstack[top, 1] = endpoint(p ^ 1)
                        top += 1
                    mate[endpoint(p)] = p ^ 1
                    mate[endpoint(p ^ 1)] = p
                for ci in range(nc):
                    rotbuf[ci] = childs[br, (i0 + ci) % nc]
                    rotbuf2[ci] = endps[br, (i0 + ci) % nc]
                for ci in range(nc):
                    childs[br, ci] = rotbuf[ci]
                    endps[br, ci] = rotbuf2[ci]
                if t < n:
                    break
                cur = t
            for ii in range(chainlen - 1, -1, -1):
                c = expstack[ii]
                blossombase[c] = blossombase[childs[crow(c), 0]]

    def augment_matching(e):
        for side in range(2):
            if side == 0:
                s = edge_i[e]
                p = 2 * e + 1
            else:
                s = edge_j[e]
                p = 2 * e
            while True:
                bs = inblossom[s]
                if bs >= n:
                    augment_blossom(bs, s)
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint(labelend[bs])
                bt = inblossom[t]
                s = endpoint(labelend[bt])
                j = endpoint(labelend[bt] ^ 1)
                if bt >= n:
                    augment_blossom(bt, j)
                mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    def expand_blossom(b0, endstage):
        top = 0
        expstack[top] = b0
        top += 1
        while top > 0:
            top -= 1
            b = expstack[top]
            br = crow(b)
            for ci in range(nchilds[br]):
                s = childs[br, ci]
                blossomparent[s] = -1
                if s < n:
                    inblossom[s] = s
                elif endstage and dualvar[s] == 0.0:
                    expstack[top] = s
                    top += 1
                else:
                    bl_add(s)
                    cnt = blossom_leaves(s, leafbuf)
                    for ii in range(cnt):
                        inblossom[leafbuf[ii]] = s
            if alive_pos[b] >= 0:
                # nested zero-dual children dissolved in the same pass were
                # never exposed as top-level entries
                bl_remove(b)
            if (not endstage) and label[b] == _T:
                entrychild = inblossom[endpoint(labelend[b] ^ 1)]
                nc = nchilds[br]
                j = 0
                for ci in range(nc):
                    if childs[br, ci] == entrychild:
                        j = ci
                        break
                if j & 1:
                    j -= nc
                    jstep = 1
                    endptrick = 0
                else:
                    jstep = -1
                    endptrick = 1
                p = labelend[b]
                while j != 0:
                    label[endpoint(p ^ 1)] = _FREE
                    label[endpoint(endps[br, (j - endptrick) % nc] ^ endptrick ^ 1)] = _FREE
                    assign_label(endpoint(p ^ 1), _T, p)
                    allow_eid(endps[br, (j - endptrick) % nc] >> 1)
                    j += jstep
                    p = endps[br, (j - endptrick) % nc] ^ endptrick
                    allow_eid(p >> 1)
                    j += jstep
                bv = childs[br, 0]
                label[endpoint(p ^ 1)] = _T
                label[bv] = _T
                labelend[endpoint(p ^ 1)] = p
                labelend[bv] = p
                bestedge[bv] = -1
                j += jstep
                while childs[br, j % nc] != entrychild:
                    bv = childs[br, j % nc]
                    if label[bv] == _S:
                        j += jstep
                        continue
                    cnt = blossom_leaves(bv, leafbuf)
                    vfound = -1
                    for ii in range(cnt):
                        if label[leafbuf[ii]] != _FREE:
                            vfound = leafbuf[ii]
                            break
                    if vfound >= 0:
                        label[vfound] = _FREE
                        label[endpoint(mate[blossombase[bv]])] = _FREE
                        assign_label(vfound, _T, labelend[vfound])
                    j += jstep
            label[b] = _FREE
            labelend[b] = -1
            nchilds[br] = 0
            blossombase[b] = -1
            nbbe[br] = -1
            bestedge[b] = -1
            unused[cnts[1]] = b
            cnts[1] += 1

    def run_stage():
        """One augmentation attempt; 1 on success, 0 if none possible."""
        stamp[0] += 1
        for ii in range(2 * n):
            label[ii] = _FREE
            bestedge[ii] = -1
        for ii in range(n + 1):
            nbbe[ii] = -1
        cnts[0] = 0
        cnts[3] = 0
        for vi in range(nact[0]):
            v = act_list[vi]
            if mate[v] == -1 and label[inblossom[v]] == _FREE:
                assign_label(v, _S, -1)
        augmented = False
        while cnts[2] == 0:
            while cnts[3] < cnts[0] and not augmented and cnts[2] == 0:
                v = queue[cnts[3]]
                cnts[3] += 1
                pending[v] = -1
                dv_v = dualvar[v]
                Wv = W[v]
                Sv = astamp[v]
                cur = stamp[0]
                for oi in range(nact[0]):
                    w = act_list[oi]
                    if w == v:
                        continue
                    bw = inblossom[w]
                    if inblossom[v] == bw:
                        continue
                    eslack = 0.0
                    isallowed = Sv[w] == cur
                    if not isallowed:
                        eslack = dv_v + dualvar[w] - 2.0 * Wv[w]
                        if eslack <= 0.0:
                            Sv[w] = cur
                            astamp[w, v] = cur
                            isallowed = True
                    if isallowed:
                        e = eid(v, w)
                        if v < w:
                            p = 2 * e + 1
                        else:
                            p = 2 * e
                        lw = label[bw]
                        if lw == _FREE:
                            assign_label(w, _T, p ^ 1)
                        elif lw == _S:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, e)
                            else:
                                augment_matching(e)
                                augmented = True
                                break
                        elif label[w] == _FREE:
                            label[w] = _T
                            labelend[w] = p ^ 1
                    elif label[bw] == _S:
                        b = inblossom[v]
                        if bestedge[b] == -1 or eslack < bestslack[b]:
                            bestedge[b] = eid(v, w)
                            bestslack[b] = eslack
                    elif label[w] == _FREE:
                        if bestedge[w] == -1 or eslack < bestslack[w]:
                            bestedge[w] = eid(v, w)
                            bestslack[w] = eslack

            if augmented or cnts[2] != 0:
                break

            deltatype = -1
            delta = 0.0
            deltaedge = -1
            deltablossom = -1
            for vi in range(nact[0]):
                v = act_list[vi]
                if label[inblossom[v]] == _FREE and bestedge[v] != -1:
                    d = bestslack[v]
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = bestedge[v]
                elif inblossom[v] == v and label[v] == _S and bestedge[v] != -1:
                    d = bestslack[v] / 2.0
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[v]
            for bi in range(nalive[0]):
                b = alive_bl[bi]
                if label[b] == _S and bestedge[b] != -1:
                    d = bestslack[b] / 2.0
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[b]
                elif (label[b] == _T
                        and (deltatype == -1 or dualvar[b] < delta)):
                    delta = dualvar[b]
                    deltatype = 4
                    deltablossom = b
            if deltatype == -1:
                # no direction left: cannot happen on a complete active
                # subgraph with free vertices; treated as internal failure
                return 0

            for vi in range(nact[0]):
                v = act_list[vi]
                lab = label[inblossom[v]]
                if lab == _S:
                    dualvar[v] -= delta
                    if inblossom[v] == v and bestedge[v] != -1:
                        bestslack[v] -= 2.0 * delta
                elif lab == _T:
                    dualvar[v] += delta
                elif bestedge[v] != -1:
                    # free vertex: its best edge comes from the S side
                    bestslack[v] -= delta
            for bi in range(nalive[0]):
                b = alive_bl[bi]
                if label[b] == _S:
                    dualvar[b] += delta
                    if bestedge[b] != -1:
                        bestslack[b] -= 2.0 * delta
                elif label[b] == _T:
                    dualvar[b] -= delta

            if deltatype == 2:
                allow_eid(deltaedge)
                i = edge_i[deltaedge]
                if label[inblossom[i]] == _FREE:
                    i = edge_j[deltaedge]
                push(i)
            elif deltatype == 3:
                allow_eid(deltaedge)
                push(edge_i[deltaedge])
            else:
                expand_blossom(deltablossom, False)

        if not augmented:
            return 0
        ii = 0
        while ii < nalive[0]:
            b = alive_bl[ii]
            if label[b] == _S and dualvar[b] == 0.0:
                expand_blossom(b, True)
                # list mutated in place; re-examine the same slot
                continue
            ii += 1
        return 1

    def insert_vertex(v):
        active[v] = True
        pos = nact[0]
        while pos > 0 and act_list[pos - 1] > v:
            act_list[pos] = act_list[pos - 1]
            pos -= 1
        act_list[pos] = v
        nact[0] += 1
        mate[v] = -1
        inblossom[v] = v
        blossomparent[v] = -1
        blossombase[v] = v
        label[v] = _FREE
        labelend[v] = -1
        bestedge[v] = -1
        best = -1e300
        found = False
        for ui in range(nact[0]):
            u = act_list[ui]
            if u != v:
                c = 2.0 * W[v, u] - dualvar[u]
                if c > best:
                    best = c
                    found = True
        dualvar[v] = best if found else 0.0

    def delete_vertex(v):
        """Deactivate v, dissolving the blossoms that contain it.

        Dissolving a positive-dual blossom adds its dual to every member
        (interior reduced costs are preserved exactly); the one matched edge
        crossing the blossom at its base loses tightness and is unmatched.
        Zero-dual levels dissolve for free.
        """
        while inblossom[v] >= n:
            b = inblossom[v]
            zb = dualvar[b]
            cnt = blossom_leaves(b, leafbuf2)
            if zb != 0.0:
                for ii in range(cnt):
                    dualvar[leafbuf2[ii]] += zb
                base = blossombase[b]
                if mate[base] >= 0:
                    pb = endpoint(mate[base])
                    mate[pb] = -1
                    mate[base] = -1
            br = crow(b)
            for ci in range(nchilds[br]):
                s = childs[br, ci]
                blossomparent[s] = -1
                if s < n:
                    inblossom[s] = s
                else:
                    bl_add(s)
                    c2 = blossom_leaves(s, leafbuf)
                    for ii in range(c2):
                        inblossom[leafbuf[ii]] = s
            bl_remove(b)
            label[b] = _FREE
            labelend[b] = -1
            nchilds[br] = 0
            blossombase[b] = -1
            nbbe[br] = -1
            bestedge[b] = -1
            unused[cnts[1]] = b
            cnts[1] += 1
        if mate[v] >= 0:
            pv = endpoint(mate[v])
            mate[pv] = -1
            mate[v] = -1
        active[v] = False
        pos = 0
        while act_list[pos] != v:
            pos += 1
        nact[0] -= 1
        while pos < nact[0]:
            act_list[pos] = act_list[pos + 1]
            pos += 1

    def restore_perfect():
        nfree = 0
        for vi in range(nact[0]):
            if mate[act_list[vi]] == -1:
                nfree += 1
        while nfree >= 2:
            if run_stage() == 0:
                return 0
            if cnts[2] != 0:
                return 0
            nfree -= 2
        return 1

    # ------------------------------------------------------------------
    # Alg3 step loop
    # ------------------------------------------------------------------
    arrived = np.zeros(n, dtype=np.bool_)
    waiting = np.zeros(n, dtype=np.bool_)
    nwait = 0
    total = 0.0
    nw = 0
    k_s = n
    ks_locked = False
    cur_removed = -1
    built = False

    for v in range(1, n + 1):
        vix = int(order[v - 1]) - 1
        arrived[vix] = True
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
            # only possible when k_e == 0: nothing observed yet, keep waiting
            waiting[vix] = True
            nwait += 1
            decision[v - 1] = 3
            pool_after[v - 1] = nwait
            continue

        # maintain the warm optimal matching for tilde-V
        if v % 2 == 0:
            if not built:
                for u in range(n):
                    if arrived[u]:
                        insert_vertex(u)
                built = True
            else:
                insert_vertex(cur_removed)
                insert_vertex(vix)
            cur_removed = -1
        else:
            r = np.int64(words[nw] % np.uint64(v - 1))
            nw += 1
            v_r = -1
            cnt = 0
            for u in range(n):
                if arrived[u] and u != vix:
                    if cnt == r:
                        v_r = u
                        break
                    cnt += 1
            if not built:
                for u in range(n):
                    if arrived[u] and u != v_r:
                        insert_vertex(u)
                built = True
            else:
                insert_vertex(vix)
                delete_vertex(v_r)
            cur_removed = v_r

        if restore_perfect() == 0:
            status = 1 if cnts[2] != 0 else 2
            return (total, ev_w, success, decision, partner, pool_after,
                    k_s, nw, status)

        lp = endpoint(mate[vix])
        ev_w[v - 1] = W[vix, lp]
        if waiting[lp]:
            waiting[lp] = False
            nwait -= 1
            total += W[vix, lp]
            success[v - 1] = 1
            decision[v - 1] = 1
            partner[v - 1] = lp + 1
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
