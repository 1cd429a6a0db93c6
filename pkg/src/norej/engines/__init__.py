"""Step-driven no-rejection online matching engines."""

from .types import OnlineRunResult, TraceStep
from .bipartite_online import run_alg1, run_alg2
from .general_online import run_alg3
from .roommate_online import run_alg4
from .dispatch import run_algorithm, ALGORITHMS

__all__ = [
    "OnlineRunResult",
    "TraceStep",
    "run_alg1",
    "run_alg2",
    "run_alg3",
    "run_alg4",
    "run_algorithm",
    "ALGORITHMS",
]
