"""Per-trial execution with automatic engine selection.

Three interchangeable implementations produce identical decision sequences
on tie-free instances and identical invariants everywhere:

* ``reference``: the step-by-step engines with canonical from-scratch
  solvers (used at small n; the contract bearer);
* ``sparse``: compiled kernels with the canonical support+fill rule (used
  at large n when the weight matrix has a small nonzero support, where tie
  handling must stay arrival-order independent);
* ``dense``: compiled kernels with warm incrementally-maintained optimal
  matchings (used at large n on generic weights).

The selection is a pure function of (algorithm, instance), so repeated runs
of one configuration always take the same path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..instances import BipartiteInstance, Instance, sample_arrival_order
from ..rng import trial_stream
from . import dispatch
from ._fast_bipartite import run_bipartite_fast
from ._fast_general import run_general_fast
from ._fast_sparse import run_bipartite_sparse, run_general_sparse
from .types import (
    FORCED_MATCH,
    KEPT_WAITING,
    MATCHED_EV,
    PHASE_EXPLORE,
    RANDOM_MATCH,
)

SMALL_N = 120
SPARSE_MAX_EDGES = 64

_DECISION_CODE = {
    RANDOM_MATCH: 2,
    MATCHED_EV: 1,
    KEPT_WAITING: 3,
    FORCED_MATCH: 4,
}


@dataclass
class TrialData:
    """Flat per-trial record consumed by the analysis harness."""

    total: float
    ev_w: np.ndarray
    success: np.ndarray
    decision: np.ndarray
    pool_after: np.ndarray
    partner: np.ndarray | None = None
    k_s: int | None = None
    branch: str | None = None
    rv_total: float | None = None
    mu_total: float | None = None


def _support_edges(inst: Instance):
    if isinstance(inst, BipartiteInstance):
        uu, vv = np.nonzero(inst.weights)
        return uu, vv
    uu, vv = np.nonzero(np.triu(inst.weights, 1))
    return uu, vv


def choose_impl(alg: str, inst: Instance) -> str:
    if alg == "alg4":
        return "reference"
    n = dispatch.online_size(inst)
    if n <= SMALL_N:
        return "reference"
    uu, _ = _support_edges(inst)
    if len(uu) <= SPARSE_MAX_EDGES:
        return "sparse"
    return "dense"


def _from_result(res) -> TrialData:
    n = len(res.trace)
    ev_w = np.full(n, np.nan)
    success = np.full(n, -1, dtype=np.int8)
    decision = np.zeros(n, dtype=np.int8)
    pool_after = np.full(n, -1, dtype=np.int64)
    partner = np.zeros(n, dtype=np.int64)
    for i, ts in enumerate(res.trace):
        if ts.ev_weight is not None:
            ev_w[i] = ts.ev_weight
            success[i] = 1 if ts.decision == MATCHED_EV else 0
        if ts.phase == PHASE_EXPLORE:
            decision[i] = 0
        else:
            decision[i] = _DECISION_CODE[ts.decision]
        pool_after[i] = ts.pool_size
        partner[i] = ts.partner if ts.partner is not None else 0
    return TrialData(total=res.total, ev_w=ev_w, success=success,
                     decision=decision, pool_after=pool_after, partner=partner,
                     k_s=res.k_s, branch=res.branch, rv_total=res.rv_total,
                     mu_total=res.mu_total)


def run_trial(alg: str, inst: Instance, master_seed: int, trial: int,
              impl: str = "auto") -> TrialData:
    """One seeded trial; arrival permutation first, then step randomness."""
    dispatch.check_kind(alg, inst)
    if impl == "auto":
        impl = choose_impl(alg, inst)
    stream = trial_stream(master_seed, trial)
    n = dispatch.online_size(inst)

    if impl == "reference":
        res = dispatch.run_algorithm(alg, inst, stream)
        return _from_result(res)

    order = sample_arrival_order(n, stream)
    words = stream.take(2 * n + 8)

    if alg in ("alg1", "alg2"):
        cap = 1 if alg == "alg1" else 2
        k = (21 * n) // 100 if alg == "alg1" else n // 4
        if impl == "dense":
            total, ev_w, success, decision, partner, pool, _nw = \
                run_bipartite_fast(inst.weights, cap, order.order, words, k)
        else:
            uu, vv = _support_edges(inst)
            total, ev_w, success, decision, partner, pool, _nw = \
                run_bipartite_sparse(inst.n_offline, cap, k, uu, vv,
                                     inst.weights, order.order, words)
        return TrialData(total=float(total), ev_w=ev_w, success=success,
                         decision=decision, pool_after=pool, partner=partner)

    # alg3
    if impl == "dense":
        qcap = 16 * n + 4096
        while True:
            out = run_general_fast(inst.weights, order.order, words, qcap)
            status = out[-1]
            if status == 0:
                break
            if status == 1:
                qcap *= 8
                continue
            # internal failure: fall back to the reference engine
            stream2 = trial_stream(master_seed, trial)
            res = dispatch.run_algorithm(alg, inst, stream2)
            return _from_result(res)
    else:
        uu, vv = _support_edges(inst)
        sup_w = inst.weights[uu, vv]
        out = run_general_sparse(n, uu, vv, sup_w, inst.weights,
                                 order.order, words)
    total, ev_w, success, decision, partner, pool, k_s, _nw, _status = out
    return TrialData(total=float(total), ev_w=ev_w, success=success,
                     decision=decision, pool_after=pool, partner=partner,
                     k_s=int(k_s))
