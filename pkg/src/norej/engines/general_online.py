"""Online general matching with no rejections (three-phase engine).

Exploration keeps the first floor(6n/17) arrivals waiting.  In the selective
phase the arriving vertex is matched when its partner in the locally optimal
perfect matching is a waiting vertex, and kept waiting otherwise.  Once the
waiting set is as large as the number of future arrivals, waiting is no
longer possible and failures fall through to forced random matches.

On odd steps one uniformly chosen observed vertex is left out of the solve
so the arriving vertex is guaranteed a partner in M^v.
"""

from __future__ import annotations

from ..errors import InstanceKindMismatch, OddN
from ..instances import ArrivalOrder, GeneralInstance
from ..rng import RandomStream
from ..solvers.general import opt_general_perfect
from ..solvers.matching import Matching
from .types import (
    FORCED_MATCH,
    KEPT_WAITING,
    MATCHED_EV,
    PHASE_EXPLORE,
    PHASE_FORCED,
    PHASE_SELECTIVE,
    OnlineRunResult,
    TraceStep,
)


def run_alg3(inst: GeneralInstance, order: ArrivalOrder,
             stream: RandomStream) -> OnlineRunResult:
    n = inst.n
    if n % 2 == 1 and not inst.allow_odd:
        raise OddN("run_alg3 needs even n unless odd-mode is enabled")
    if order.n != n:
        raise InstanceKindMismatch("arrival order size does not match instance")
    k_e = (6 * n) // 17

    waiting: set[int] = set()
    arrived: list[int] = []
    edges: list[tuple[int, int]] = []
    trace: list[TraceStep] = []
    solver_calls = 0
    k_s = n  # last selective step; n means the forced phase never started

    for v in range(1, n + 1):
        vid = int(order.order[v - 1])
        arrived.append(vid)
        if v <= k_e:
            waiting.add(vid)
            trace.append(TraceStep(v, vid, PHASE_EXPLORE, None, None,
                                   KEPT_WAITING, None, len(waiting)))
            continue

        # forced phase is structural: it begins once the waiting room is full
        if len(waiting) == n + 1 - v and k_s == n:
            k_s = v - 1
        phase = PHASE_SELECTIVE if v <= k_s else PHASE_FORCED

        if len(arrived) == 1:
            # odd first step with nothing else observed: no matching exists,
            # the gate always permits waiting here
            waiting.add(vid)
            trace.append(TraceStep(v, vid, phase, None, None,
                                   KEPT_WAITING, None, len(waiting)))
            continue

        if v % 2 == 0:
            tilde = arrived
        else:
            others = sorted(x for x in arrived if x != vid)
            v_r = others[stream.index(len(others))]
            tilde = [x for x in arrived if x != v_r]
        mv = opt_general_perfect(inst, tilde)
        solver_calls += 1
        ev_partner = mv.partner_of(vid)
        ev_weight = float(inst.weights[ev_partner - 1, vid - 1])

        if ev_partner in waiting:
            waiting.discard(ev_partner)
            edges.append((min(vid, ev_partner), max(vid, ev_partner)))
            decision = MATCHED_EV
            partner = ev_partner
        elif len(waiting) < n + 1 - v:
            waiting.add(vid)
            decision = KEPT_WAITING
            partner = None
        else:
            partner = sorted(waiting)[stream.index(len(waiting))]
            waiting.discard(partner)
            edges.append((min(vid, partner), max(vid, partner)))
            decision = FORCED_MATCH
        assert len(waiting) <= n - v + (n % 2), "waiting-set gate violated"
        trace.append(TraceStep(v, vid, phase, ev_partner, ev_weight,
                               decision, partner, len(waiting)))

    if inst.allow_odd and n % 2 == 1:
        assert len(waiting) <= 1
    else:
        assert not waiting, "no-rejection violated: vertices left waiting"
    weight = float(sum(inst.weights[a - 1, b - 1] for a, b in edges))
    matching = Matching(edges=tuple(sorted(edges)), weight=weight)
    matching.check_general(inst)
    return OnlineRunResult(algorithm="alg3", total=weight, matching=matching,
                           trace=trace, k_s=k_s, solver_calls=solver_calls)
