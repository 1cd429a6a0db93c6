"""Exact maximum-weight capacitated bipartite matching.

Capacities in {1, 2} are handled by splitting each offline vertex into unit
slots and solving the rectangular assignment problem.  The solver runs on
the id-sorted subset with the fixed tie-breaking perturbation, so its
output (including tie resolution) is a pure function of the unordered
participating vertex set and the weights, never of arrival order or prior
calls.  The reported weight is recomputed from the unperturbed weights.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import SubsetTooLarge
from ..instances import BipartiteInstance
from .matching import Matching
from .perturb import perturb_bipartite


def opt_bipartite_capacitated(inst: BipartiteInstance,
                              online_subset: Iterable[int]) -> Matching:
    """Maximum-weight matching on G(L, R') that matches every vertex of R'.

    Such a matching always attains the unconstrained maximum weight because
    the graph is complete and weights are nonnegative.
    """
    subset = np.array(sorted(set(int(v) for v in online_subset)), dtype=np.int64)
    if len(subset) == 0:
        return Matching(edges=(), weight=0.0)
    if subset[0] < 1 or subset[-1] > inst.n_online:
        raise SubsetTooLarge(f"online ids must lie in 1..{inst.n_online}")

    caps = inst.capacities
    slot_owner = np.repeat(np.arange(1, inst.n_offline + 1), caps)
    if len(subset) > len(slot_owner):
        raise SubsetTooLarge(
            f"|R'| = {len(subset)} exceeds total capacity {len(slot_owner)}")

    profit = inst.weights[slot_owner - 1][:, subset - 1].T  # rows R', cols slots
    seeded = perturb_bipartite(profit.T, slot_owner, subset).T
    rows, cols = linear_sum_assignment(seeded, maximize=True)

    edges = sorted(
        (int(slot_owner[c]), int(subset[r])) for r, c in zip(rows, cols))
    weight = float(profit[rows, cols].sum())
    return Matching(edges=tuple(edges), weight=weight)
