"""Online roommate matching: randomized split into the two subproblems.

With probability 0.58 the engine runs the capacity-2 bipartite engine on the
room valuations (persons are assigned to rooms; roommate pairs are whoever
shares a room).  Otherwise it runs the general engine on the mutual
utilities; every waiting person immediately occupies the lowest-index free
room and matched partners join the waiting partner's room.

The reported utility is the full realized welfare of the allocation (room
valuations of both occupants plus the pair's mutual utility for every room)
regardless of branch; the per-component sums are reported alongside.
"""

from __future__ import annotations

from ..errors import InstanceKindMismatch
from ..instances import Allocation, ArrivalOrder, RoommateInstance, decompose_roommate
from ..rng import RandomStream
from .bipartite_online import run_alg2
from .general_online import run_alg3
from .types import KEPT_WAITING, OnlineRunResult

BRANCH_P = 0.58
BRANCH_RV = "room-valuation"
BRANCH_MU = "mutual-utility"


def _finish(inst: RoommateInstance, tuples: list[tuple[int, int, int]],
            inner: OnlineRunResult, branch: str, r: float) -> OnlineRunResult:
    tuples_t = tuple(sorted(tuples))
    rv_total = sum(inst.room_valuations[p1 - 1, room - 1]
                   + inst.room_valuations[p2 - 1, room - 1]
                   for room, p1, p2 in tuples_t)
    mu_total = sum(inst.mutual_utilities[p1 - 1, p2 - 1]
                   for _room, p1, p2 in tuples_t)
    total = float(rv_total + mu_total)
    alloc = Allocation(tuples=tuples_t, utility=total).validate(inst)
    return OnlineRunResult(
        algorithm="alg4", total=total, allocation=alloc, trace=inner.trace,
        k_s=inner.k_s, branch=branch, branch_r=r,
        rv_total=float(rv_total), mu_total=float(mu_total),
        solver_calls=inner.solver_calls)


def run_alg4(inst: RoommateInstance, order: ArrivalOrder,
             stream: RandomStream) -> OnlineRunResult:
    if order.n != inst.n:
        raise InstanceKindMismatch("arrival order size does not match instance")
    bip, gen = decompose_roommate(inst)
    r = stream.uniform01()

    if r <= BRANCH_P:
        inner = run_alg2(bip, order, stream)
        by_room: dict[int, list[int]] = {}
        for room, person in inner.matching.edges:
            by_room.setdefault(room, []).append(person)
        tuples = [(room, min(ps), max(ps)) for room, ps in by_room.items()
                  if len(ps) == 2]
        assert len(tuples) == inst.m, "every room must end with two occupants"
        return _finish(inst, tuples, inner, BRANCH_RV, r)

    inner = run_alg3(gen, order, stream)
    room_of: dict[int, int] = {}
    free_rooms = list(range(1, inst.m + 1))
    pair_room: dict[tuple[int, int], int] = {}
    occupied = 0
    for ts in inner.trace:
        if ts.decision == KEPT_WAITING:
            room = free_rooms.pop(0)
            room_of[ts.vertex] = room
            occupied += 1
        else:
            room = room_of[ts.partner]
            pair = (min(ts.vertex, ts.partner), max(ts.vertex, ts.partner))
            pair_room[pair] = room
        assert occupied <= inst.m, "more rooms opened than exist"
    tuples = [(room, a, b) for (a, b), room in pair_room.items()]
    return _finish(inst, tuples, inner, BRANCH_MU, r)
