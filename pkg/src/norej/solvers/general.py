"""Exact maximum-weight perfect matching on vertex subsets of a general instance.

The solver runs on the id-sorted subset, so its output (including tie
resolution) is a pure function of the unordered participating vertex set and
the weights.  Perfect matchings exist and attain the unconstrained maximum
weight because the graph is complete and weights are nonnegative.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from ..errors import OddSubset, SubsetTooLarge
from ..instances import GeneralInstance
from ._blossom import mwm_dense
from .matching import Matching
from .perturb import perturb_general


def opt_general_perfect(inst: GeneralInstance,
                        vertex_subset: Iterable[int]) -> Matching:
    subset = np.array(sorted(set(int(v) for v in vertex_subset)), dtype=np.int64)
    if len(subset) % 2 == 1:
        raise OddSubset(f"perfect matching needs an even subset, got {len(subset)}")
    if len(subset) == 0:
        return Matching(edges=(), weight=0.0)
    if subset[0] < 1 or subset[-1] > inst.n:
        raise SubsetTooLarge(f"vertex ids must lie in 1..{inst.n}")

    sub = np.ascontiguousarray(inst.weights[np.ix_(subset - 1, subset - 1)])
    seeded = perturb_general(sub, subset)
    mate, _dual, _npos = mwm_dense(seeded, True)

    edges = []
    weight = 0.0
    for a in range(len(subset)):
        b = mate[a]
        if b > a:
            edges.append((int(subset[a]), int(subset[b])))
            weight += sub[a, b]
    if len(edges) * 2 != len(subset):
        raise AssertionError("blossom solver returned a non-perfect matching")
    return Matching(edges=tuple(sorted(edges)), weight=float(weight))
