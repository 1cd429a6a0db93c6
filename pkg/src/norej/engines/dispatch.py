"""Algorithm ids, instance compatibility checks, and one-call trial runs."""

from __future__ import annotations

import numpy as np

from ..errors import InstanceKindMismatch
from ..instances import (
    ArrivalOrder,
    BipartiteInstance,
    GeneralInstance,
    Instance,
    RoommateInstance,
    sample_arrival_order,
)
from ..rng import RandomStream
from .bipartite_online import run_alg1, run_alg2
from .general_online import run_alg3
from .roommate_online import run_alg4
from .types import OnlineRunResult

ALGORITHMS = ("alg1", "alg2", "alg3", "alg4")


def check_kind(alg: str, inst: Instance) -> None:
    ok = (
        (alg == "alg1" and isinstance(inst, BipartiteInstance)
         and bool(np.all(inst.capacities == 1)))
        or (alg == "alg2" and isinstance(inst, BipartiteInstance)
            and bool(np.all(inst.capacities == 2)))
        or (alg == "alg3" and isinstance(inst, GeneralInstance))
        or (alg == "alg4" and isinstance(inst, RoommateInstance))
    )
    if not ok:
        raise InstanceKindMismatch(f"{alg} cannot run on this {inst.kind} instance")


def online_size(inst: Instance) -> int:
    if isinstance(inst, BipartiteInstance):
        return inst.n_online
    return inst.n


def run_algorithm(alg: str, inst: Instance, stream: RandomStream,
                  order: ArrivalOrder | None = None) -> OnlineRunResult:
    """Run one trial: arrival permutation drawn first, then step randomness."""
    check_kind(alg, inst)
    if order is None:
        order = sample_arrival_order(online_size(inst), stream)
    if alg == "alg1":
        return run_alg1(inst, order, stream)
    if alg == "alg2":
        return run_alg2(inst, order, stream)
    if alg == "alg3":
        return run_alg3(inst, order, stream)
    return run_alg4(inst, order, stream)
