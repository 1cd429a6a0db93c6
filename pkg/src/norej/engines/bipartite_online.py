"""Online capacitated bipartite matching with no rejections.

Two explore-then-exploit engines over offline vertices of capacity 1
(``run_alg1``, exploration ends at floor(21n/100)) and capacity 2
(``run_alg2``, exploration ends at floor(n/4), with the random-match pool
L_a preventing any offline vertex from being exhausted by random matches
before every vertex is matched once).

Per-step optimal matchings are recomputed from scratch through the
canonical solver; uniform picks draw one word and index the candidate set
sorted by vertex id.
"""

from __future__ import annotations

import numpy as np

from ..errors import InstanceKindMismatch, OddN
from ..instances import ArrivalOrder, BipartiteInstance
from ..rng import RandomStream
from ..solvers.bipartite import opt_bipartite_capacitated
from ..solvers.matching import Matching
from .types import (
    MATCHED_EV,
    PHASE_EXPLOIT,
    PHASE_EXPLORE,
    RANDOM_MATCH,
    OnlineRunResult,
    TraceStep,
)


def _pick(stream: RandomStream, candidates: list[int]) -> int:
    """Uniform choice over id-sorted candidates, consuming one word."""
    return candidates[stream.index(len(candidates))]


def run_alg1(inst: BipartiteInstance, order: ArrivalOrder,
             stream: RandomStream) -> OnlineRunResult:
    if not np.all(inst.capacities == 1):
        raise InstanceKindMismatch("run_alg1 needs all offline capacities = 1")
    n = inst.n_online
    if order.n != n:
        raise InstanceKindMismatch("arrival order size does not match instance")
    k = (21 * n) // 100
    residual = inst.capacities.astype(np.int64).copy()
    edges: list[tuple[int, int]] = []
    trace: list[TraceStep] = []
    arrived: list[int] = []
    solver_calls = 0

    for v in range(1, n + 1):
        vid = int(order.order[v - 1])
        arrived.append(vid)
        ev_partner = None
        ev_weight = None
        if v < k:
            phase = PHASE_EXPLORE
            u = _pick(stream, [x for x in range(1, inst.n_offline + 1) if residual[x - 1] > 0])
            decision = RANDOM_MATCH
        else:
            phase = PHASE_EXPLOIT
            mv = opt_bipartite_capacitated(inst, arrived)
            solver_calls += 1
            ev_partner = mv.online_partner(vid)
            ev_weight = float(inst.weights[ev_partner - 1, vid - 1])
            if residual[ev_partner - 1] > 0:
                u = ev_partner
                decision = MATCHED_EV
            else:
                u = _pick(stream, [x for x in range(1, inst.n_offline + 1) if residual[x - 1] > 0])
                decision = RANDOM_MATCH
        residual[u - 1] -= 1
        assert residual[u - 1] >= 0
        edges.append((u, vid))
        trace.append(TraceStep(v, vid, phase, ev_partner, ev_weight, decision, u, -1))

    weight = float(sum(inst.weights[u - 1, x - 1] for u, x in edges))
    matching = Matching(edges=tuple(sorted(edges)), weight=weight)
    matching.check_bipartite(inst)
    assert len(matching.edges) == n
    return OnlineRunResult(algorithm="alg1", total=weight, matching=matching,
                           trace=trace, solver_calls=solver_calls)


def run_alg2(inst: BipartiteInstance, order: ArrivalOrder,
             stream: RandomStream) -> OnlineRunResult:
    if not np.all(inst.capacities == 2):
        raise InstanceKindMismatch("run_alg2 needs all offline capacities = 2")
    n = inst.n_online
    if n % 2 == 1:
        raise OddN("run_alg2 needs an even online vertex count")
    if order.n != n:
        raise InstanceKindMismatch("arrival order size does not match instance")
    k = n // 4
    residual = inst.capacities.astype(np.int64).copy()
    pool = set(range(1, inst.n_offline + 1))            # L_a
    edges: list[tuple[int, int]] = []
    trace: list[TraceStep] = []
    arrived: list[int] = []
    solver_calls = 0

    for v in range(1, n + 1):
        vid = int(order.order[v - 1])
        arrived.append(vid)
        ev_partner = None
        ev_weight = None
        if v < k:
            phase = PHASE_EXPLORE
            u = _pick(stream, sorted(pool))
            decision = RANDOM_MATCH
        else:
            phase = PHASE_EXPLOIT
            mv = opt_bipartite_capacitated(inst, arrived)
            solver_calls += 1
            ev_partner = mv.online_partner(vid)
            ev_weight = float(inst.weights[ev_partner - 1, vid - 1])
            if residual[ev_partner - 1] > 0:
                u = ev_partner
                decision = MATCHED_EV
            else:
                u = _pick(stream, sorted(pool))
                decision = RANDOM_MATCH
        residual[u - 1] -= 1
        assert residual[u - 1] >= 0
        pool.discard(u)
        edges.append((u, vid))
        if not pool:
            remaining = [x for x in range(1, inst.n_offline + 1) if residual[x - 1] > 0]
            if remaining:
                pool = set(remaining)
        trace.append(TraceStep(v, vid, phase, ev_partner, ev_weight, decision, u,
                               len(pool)))

    weight = float(sum(inst.weights[u - 1, x - 1] for u, x in edges))
    matching = Matching(edges=tuple(sorted(edges)), weight=weight)
    matching.check_bipartite(inst)
    assert len(matching.edges) == n
    return OnlineRunResult(algorithm="alg2", total=weight, matching=matching,
                           trace=trace, solver_calls=solver_calls)
