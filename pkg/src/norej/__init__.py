"""No-rejection online matching in the random-arrival model.

Library and CLI for four no-rejection online matching engines (capacity-1
and capacity-2 bipartite, general, roommate), exact offline solvers used
both per step and as optimum oracles, seedable instance families, and a
Monte Carlo harness that verifies the per-step guarantees and the
competitive-ratio constants the engines were designed around.
"""

from .instances import (
    Allocation,
    ArrivalOrder,
    BipartiteInstance,
    GeneralInstance,
    RoommateInstance,
    decompose_roommate,
    sample_arrival_order,
    validate_instance,
)
from .generators import FamilySpec, gen_instance
from .rng import RandomStream, trial_stream

__all__ = [
    "Allocation",
    "ArrivalOrder",
    "BipartiteInstance",
    "GeneralInstance",
    "RoommateInstance",
    "FamilySpec",
    "RandomStream",
    "decompose_roommate",
    "gen_instance",
    "sample_arrival_order",
    "trial_stream",
    "validate_instance",
]

__version__ = "0.1.0"
