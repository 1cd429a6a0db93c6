"""Maximum-weight matching on dense general graphs (blossom algorithm).

Flat-array port of the classic Galil/van-Rantwijk primal-dual scheme,
specialized to complete graphs given as dense weight matrices and compiled
with numba.  With ``maxcardinality=True`` the result is a maximum-weight
matching among maximum-cardinality matchings; on a complete graph with an
even vertex count that is the maximum-weight perfect matching.

Vertices are 0..nv-1, pseudo-blossoms nv..2*nv-1.  Edge k joins
edge_i[k] < edge_j[k]; endpoint pointers encode (edge, side) as 2*k / 2*k+1.
Recursive routines of the reference implementation (label propagation,
blossom augmentation, blossom expansion) are converted to explicit loops and
work stacks; their call-order independence is what makes that sound: each
deferred sub-blossom task only touches state interior to that sub-blossom.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_FREE = 0
_S = 1
_T = 2


@njit(cache=True)
def _mwm_dense_run(W, maxcardinality, qcap):  # noqa: C901
    """One attempt at the matching with a fixed scan-queue capacity.

    Returns (mate_vertex, dualvar_vertex, n_pos_blossoms): partner of each
    vertex or -1; final vertex duals (in doubled-slack convention, i.e.
    slack(i,j) = dv[i] + dv[j] - 2*w(i,j)); and the number of surviving
    blossoms with positive dual.  n_pos_blossoms == 0 means the vertex duals
    alone certify optimality; -1 signals queue overflow (caller retries with
    a larger queue).
    """
    nv = W.shape[0]
    mate_out = np.full(nv, -1, dtype=np.int64)
    if nv < 2:
        return mate_out, np.zeros(nv, dtype=np.float64), 0

    nedge = nv * (nv - 1) // 2
    edge_i = np.empty(nedge, dtype=np.int64)
    edge_j = np.empty(nedge, dtype=np.int64)
    edge_w = np.empty(nedge, dtype=np.float64)
    rowoff = np.empty(nv, dtype=np.int64)
    k = 0
    for i in range(nv):
        rowoff[i] = k - i - 1  # edge id of (i, j) is rowoff[i] + j for i < j
        for j in range(i + 1, nv):
            edge_i[k] = i
            edge_j[k] = j
            edge_w[k] = W[i, j]
            k += 1

    maxweight = 0.0
    for k in range(nedge):
        if edge_w[k] > maxweight:
            maxweight = edge_w[k]

    mate = np.full(nv, -1, dtype=np.int64)              # remote endpoint ptr
    label = np.zeros(2 * nv, dtype=np.int64)
    labelend = np.full(2 * nv, -1, dtype=np.int64)
    inblossom = np.arange(nv, dtype=np.int64)
    blossomparent = np.full(2 * nv, -1, dtype=np.int64)
    blossombase = np.full(2 * nv, -1, dtype=np.int64)
    blossombase[:nv] = np.arange(nv, dtype=np.int64)
    bestedge = np.full(2 * nv, -1, dtype=np.int64)
    dualvar = np.zeros(2 * nv, dtype=np.float64)
    dualvar[:nv] = maxweight
    allowedge = np.zeros(nedge, dtype=np.bool_)

    queue = np.empty(qcap, dtype=np.int64)
    cnts = np.zeros(3, dtype=np.int64)                  # [qtail, nunused, overflow]

    childs = np.full((nv + 1, nv + 1), -1, dtype=np.int64)   # blossom b -> row b-nv
    nchilds = np.zeros(nv + 1, dtype=np.int64)
    endps = np.full((nv + 1, nv + 1), -1, dtype=np.int64)
    bbe = np.full((nv + 1, nv), -1, dtype=np.int64)     # best-edge lists
    nbbe = np.full(nv + 1, -1, dtype=np.int64)          # -1 = not tracked
    unused = np.empty(nv + 1, dtype=np.int64)
    for t in range(nv):
        unused[t] = 2 * nv - 1 - t
    cnts[1] = nv

    leafbuf = np.empty(nv, dtype=np.int64)
    leafbuf2 = np.empty(nv, dtype=np.int64)
    lstack = np.empty(2 * nv, dtype=np.int64)
    scanpath = np.empty(2 * nv, dtype=np.int64)
    rotbuf = np.empty(nv + 1, dtype=np.int64)
    rotbuf2 = np.empty(nv + 1, dtype=np.int64)
    augstack = np.empty((2 * nv + 4, 2), dtype=np.int64)
    expstack = np.empty(2 * nv + 4, dtype=np.int64)
    bet = np.empty(2 * nv, dtype=np.int64)

    def crow(b):
        return b - nv

    def slack(k):
        return dualvar[edge_i[k]] + dualvar[edge_j[k]] - 2.0 * edge_w[k]

    def endpoint(p):
        if p & 1:
            return edge_j[p >> 1]
        return edge_i[p >> 1]

    def eid(a, b):
        if a < b:
            return rowoff[a] + b
        return rowoff[b] + a

    def push(v):
        if cnts[0] >= qcap:
            cnts[2] = 1
            return
        queue[cnts[0]] = v
        cnts[0] += 1

    def blossom_leaves(b, out):
        if b < nv:
            out[0] = b
            return 1
        cnt = 0
        top = 0
        lstack[top] = b
        top += 1
        while top > 0:
            top -= 1
            x = lstack[top]
            if x < nv:
                out[cnt] = x
                cnt += 1
            else:
                for t in range(nchilds[crow(x)]):
                    lstack[top] = childs[crow(x), t]
                    top += 1
        return cnt

    def assign_label(w, t, p):
        # iterative: labelling T immediately relabels the base's mate as S
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

    def add_blossom(base, k):
        v = edge_i[k]
        w = edge_j[k]
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
        endps[br, npath - 1] = 2 * k
        nc = npath
        while bw != bb:
            blossomparent[bw] = b
            childs[br, nc] = bw
            endps[br, nc] = labelend[bw] ^ 1
            nc += 1
            w = endpoint(labelend[bw])
            bw = inblossom[w]
        nchilds[br] = nc
        label[b] = _S
        labelend[b] = labelend[bb]
        dualvar[b] = 0.0
        cnt = blossom_leaves(b, leafbuf)
        for ii in range(cnt):
            if label[inblossom[leafbuf[ii]]] == _T:
                push(leafbuf[ii])
            inblossom[leafbuf[ii]] = b
        # merge the children's best-edge lists
        for ii in range(2 * nv):
            bet[ii] = -1
        for ci in range(nc):
            cb = childs[br, ci]
            if cb < nv or nbbe[crow(cb)] < 0:
                lcnt = blossom_leaves(cb, leafbuf2)
                for li in range(lcnt):
                    lv = leafbuf2[li]
                    for ov in range(nv):
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
            if cb >= nv:
                nbbe[crow(cb)] = -1
            bestedge[cb] = -1
        cnt2 = 0
        for bj in range(2 * nv):
            if bet[bj] != -1:
                bbe[br, cnt2] = bet[bj]
                cnt2 += 1
        nbbe[br] = cnt2
        bestedge[b] = -1
        for li in range(cnt2):
            if bestedge[b] == -1 or slack(bbe[br, li]) < slack(bestedge[b]):
                bestedge[b] = bbe[br, li]

    def augment_blossom(b0, v0):
        # Tasks (B, X) re-root blossom B at vertex X.  Sibling sub-blossom
        # tasks raised along a walk are independent of each other and of the
        # ancestor chain, so they can be deferred to a LIFO; only the chain
        # of entry children needs bottom-up base propagation at the end.
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
                expstack[chainlen] = cur      # reuse as chain scratch
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
                    if tt >= nv:
                        augstack[top, 0] = tt
                        augstack[top, 1] = endpoint(p)
                        top += 1
                    j += jstep
                    tt = childs[br, j % nc]
                    if tt >= nv:
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
                if t < nv:
                    break
                cur = t
            for ii in range(chainlen - 1, -1, -1):
                c = expstack[ii]
                blossombase[c] = blossombase[childs[crow(c), 0]]

    def augment_matching(k):
        for side in range(2):
            if side == 0:
                s = edge_i[k]
                p = 2 * k + 1
            else:
                s = edge_j[k]
                p = 2 * k
            while True:
                bs = inblossom[s]
                if bs >= nv:
                    augment_blossom(bs, s)
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint(labelend[bs])
                bt = inblossom[t]
                s = endpoint(labelend[bt])
                j = endpoint(labelend[bt] ^ 1)
                if bt >= nv:
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
                if s < nv:
                    inblossom[s] = s
                elif endstage and dualvar[s] == 0.0:
                    expstack[top] = s
                    top += 1
                else:
                    cnt = blossom_leaves(s, leafbuf)
                    for ii in range(cnt):
                        inblossom[leafbuf[ii]] = s
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
                    allowedge[endps[br, (j - endptrick) % nc] >> 1] = True
                    j += jstep
                    p = endps[br, (j - endptrick) % nc] ^ endptrick
                    allowedge[p >> 1] = True
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

    # ------------------------------------------------------------------
    # main loop: one stage per augmentation
    # ------------------------------------------------------------------
    for _stage in range(nv):
        for ii in range(2 * nv):
            label[ii] = _FREE
        for ii in range(2 * nv):
            bestedge[ii] = -1
        for ii in range(nv + 1):
            nbbe[ii] = -1
        for ii in range(nedge):
            allowedge[ii] = False
        cnts[0] = 0
        for v in range(nv):
            if mate[v] == -1 and label[inblossom[v]] == _FREE:
                assign_label(v, _S, -1)

        augmented = False
        while cnts[2] == 0:
            while cnts[0] > 0 and not augmented and cnts[2] == 0:
                cnts[0] -= 1
                v = queue[cnts[0]]
                for ov in range(nv):
                    if ov == v:
                        continue
                    if inblossom[v] == inblossom[ov]:
                        continue
                    k = eid(v, ov)
                    kslack = 0.0
                    if not allowedge[k]:
                        kslack = slack(k)
                        if kslack <= 0.0:
                            allowedge[k] = True
                    if v < ov:
                        p = 2 * k + 1
                    else:
                        p = 2 * k
                    w = ov
                    if allowedge[k]:
                        lw = label[inblossom[w]]
                        if lw == _FREE:
                            assign_label(w, _T, p ^ 1)
                        elif lw == _S:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, k)
                            else:
                                augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == _FREE:
                            label[w] = _T
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == _S:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == _FREE:
                        if bestedge[w] == -1 or kslack < slack(bestedge[w]):
                            bestedge[w] = k

            if augmented:
                break

            # dual update
            deltatype = -1
            delta = 0.0
            deltaedge = -1
            deltablossom = -1
            if not maxcardinality:
                deltatype = 1
                delta = dualvar[0]
                for v in range(1, nv):
                    if dualvar[v] < delta:
                        delta = dualvar[v]
                if delta < 0.0:
                    delta = 0.0
            for v in range(nv):
                if label[inblossom[v]] == _FREE and bestedge[v] != -1:
                    d = slack(bestedge[v])
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = bestedge[v]
            for b in range(2 * nv):
                if (blossomparent[b] == -1 and label[b] == _S
                        and (b < nv or blossombase[b] >= 0) and bestedge[b] != -1):
                    d = slack(bestedge[b]) / 2.0
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[b]
            for b in range(nv, 2 * nv):
                if (blossombase[b] >= 0 and blossomparent[b] == -1
                        and label[b] == _T
                        and (deltatype == -1 or dualvar[b] < delta)):
                    delta = dualvar[b]
                    deltatype = 4
                    deltablossom = b
            if deltatype == -1:
                deltatype = 1
                delta = dualvar[0]
                for v in range(1, nv):
                    if dualvar[v] < delta:
                        delta = dualvar[v]
                if delta < 0.0:
                    delta = 0.0

            for v in range(nv):
                lab = label[inblossom[v]]
                if lab == _S:
                    dualvar[v] -= delta
                elif lab == _T:
                    dualvar[v] += delta
            # blossom duals move by +-delta: consistent with delta4 reading
            # dualvar[b] directly and expansion firing at exactly zero
            for b in range(nv, 2 * nv):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == _S:
                        dualvar[b] += delta
                    elif label[b] == _T:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2:
                allowedge[deltaedge] = True
                i = edge_i[deltaedge]
                if label[inblossom[i]] == _FREE:
                    i = edge_j[deltaedge]
                push(i)
            elif deltatype == 3:
                allowedge[deltaedge] = True
                push(edge_i[deltaedge])
            else:
                expand_blossom(deltablossom, False)

        if not augmented or cnts[2] != 0:
            break

        # end of stage: expand unlabeled blossoms whose dual dropped to zero
        for b in range(nv, 2 * nv):
            if (blossomparent[b] == -1 and blossombase[b] >= 0
                    and label[b] == _S and dualvar[b] == 0.0):
                expand_blossom(b, True)

    if cnts[2] != 0:
        return mate_out, dualvar[:nv].copy(), -1
    n_pos = 0
    for b in range(nv, 2 * nv):
        if blossombase[b] >= 0 and blossomparent[b] == -1 and dualvar[b] > 1e-12:
            n_pos += 1
    for v in range(nv):
        if mate[v] >= 0:
            mate_out[v] = endpoint(mate[v])
    return mate_out, dualvar[:nv].copy(), n_pos


def mwm_dense(W, maxcardinality):
    """Maximum-weight matching with automatic scan-queue growth."""
    nv = W.shape[0]
    qcap = 16 * nv + 256
    while True:
        mate, dual, npos = _mwm_dense_run(W, maxcardinality, qcap)
        if npos >= 0:
            return mate, dual, npos
        qcap *= 8
        if qcap > 10**9:
            raise RuntimeError("blossom scan queue growth diverged")
