"""Exhaustive reference oracles, independent of the production solvers."""

from __future__ import annotations

from collections.abc import Iterable
from itertools import permutations

import numpy as np

from ..errors import SizeLimitExceeded
from ..instances import (
    Allocation,
    BipartiteInstance,
    GeneralInstance,
    Instance,
    RoommateInstance,
)

_BRUTE_CAP = 10
_ROOMMATE_CAP = 12


def _perfect_pairings(items: tuple[int, ...]):
    """Yield every perfect pairing of items ((k-1)!! of them)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for i, partner in enumerate(rest):
        head = (first, partner)
        remaining = rest[:i] + rest[i + 1:]
        for tail in _perfect_pairings(remaining):
            yield (head,) + tail


def brute_force_matching(inst: Instance, subset: Iterable[int]) -> float:
    """Maximum weight over all perfect-on-subset matchings, by enumeration."""
    ids = sorted(set(int(v) for v in subset))
    if len(ids) > _BRUTE_CAP:
        raise SizeLimitExceeded(f"brute force capped at {_BRUTE_CAP} vertices")

    if isinstance(inst, GeneralInstance):
        if len(ids) % 2 == 1:
            raise SizeLimitExceeded("general brute force needs an even subset")
        best = -np.inf
        for pairing in _perfect_pairings(tuple(ids)):
            w = sum(inst.weights[a - 1, b - 1] for a, b in pairing)
            best = max(best, w)
        return float(best) if ids else 0.0

    if isinstance(inst, BipartiteInstance):
        # assign every online vertex in ids to an offline vertex, exhaustively
        caps0 = tuple(int(c) for c in inst.capacities)
        n_off = inst.n_offline
        best = -np.inf

        def rec(pos: int, caps: tuple[int, ...], acc: float) -> None:
            nonlocal best
            if pos == len(ids):
                best = max(best, acc)
                return
            v = ids[pos]
            for u in range(n_off):
                if caps[u] > 0:
                    rec(pos + 1,
                        caps[:u] + (caps[u] - 1,) + caps[u + 1:],
                        acc + inst.weights[u, v - 1])

        rec(0, caps0, 0.0)
        if best == -np.inf:
            raise SizeLimitExceeded("subset exceeds total offline capacity")
        return float(best)

    raise SizeLimitExceeded(f"unsupported instance kind {inst.kind!r}")


def opt_roommate_bruteforce(inst: RoommateInstance) -> Allocation:
    """Optimal room allocation by full enumeration (pairings x room orders).

    The room-order sweep per pairing is evaluated with one vectorized lookup;
    every allocation is still examined.
    """
    if inst.n > _ROOMMATE_CAP:
        raise SizeLimitExceeded(f"roommate brute force capped at n={_ROOMMATE_CAP}")
    m = inst.m
    persons = tuple(range(1, inst.n + 1))
    perm_arr = np.array(list(permutations(range(m))), dtype=np.int64)  # (m!, m)
    pair_idx = np.arange(m)

    best_util = -np.inf
    best_tuples: tuple[tuple[int, int, int], ...] = ()
    for pairing in _perfect_pairings(persons):
        mu = sum(inst.mutual_utilities[a - 1, b - 1] for a, b in pairing)
        pr = np.array([
            inst.room_valuations[p1 - 1] + inst.room_valuations[p2 - 1]
            for p1, p2 in pairing])                       # (m pairs, m rooms)
        totals = pr[pair_idx, perm_arr].sum(axis=1) + mu  # (m!,)
        k = int(np.argmax(totals))
        if totals[k] > best_util:
            best_util = float(totals[k])
            best_tuples = tuple(
                (int(r) + 1, p1, p2)
                for (p1, p2), r in zip(pairing, perm_arr[k]))
    alloc = Allocation(tuples=best_tuples, utility=best_util)
    return alloc.validate(inst)


def opt_roommate_upper_bound(inst: RoommateInstance) -> float:
    """OPT_RV + OPT_MU, a certified upper bound on the optimal welfare."""
    from .bipartite import opt_bipartite_capacitated
    from .general import opt_general_perfect
    from ..instances import decompose_roommate

    bip, gen = decompose_roommate(inst)
    opt_rv = opt_bipartite_capacitated(bip, range(1, bip.n_online + 1)).weight
    opt_mu = opt_general_perfect(gen, range(1, gen.n + 1)).weight
    return opt_rv + opt_mu
