"""Run results and per-step trace records."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..instances import Allocation
from ..solvers.matching import Matching

# decision labels used in traces
MATCHED_EV = "matched-ev"
RANDOM_MATCH = "random-match"
KEPT_WAITING = "kept-waiting"
FORCED_MATCH = "forced-match"

PHASE_EXPLORE = "explore"
PHASE_EXPLOIT = "exploit"
PHASE_SELECTIVE = "selective"
PHASE_FORCED = "forced"


@dataclass(frozen=True)
class TraceStep:
    """One arrival: what was computed, what was decided, state afterwards.

    ``ev_partner``/``ev_weight`` describe the locally optimal edge for the
    arriving vertex when one was computed (None during exploration and for
    the tiny-n waiting special case).  ``pool_size`` is |A| for general
    matching and |L_a| for capacity-2 bipartite, -1 where not applicable.
    """

    step: int
    vertex: int
    phase: str
    ev_partner: int | None
    ev_weight: float | None
    decision: str
    partner: int | None
    pool_size: int

    def to_record(self) -> dict:
        return {
            "step": self.step,
            "vertex": self.vertex,
            "phase": self.phase,
            "ev_partner": self.ev_partner,
            "ev_weight": self.ev_weight,
            "decision": self.decision,
            "partner": self.partner,
            "pool_size": self.pool_size,
        }


@dataclass
class OnlineRunResult:
    algorithm: str
    total: float
    matching: Matching | None = None
    allocation: Allocation | None = None
    trace: list[TraceStep] = field(default_factory=list)
    k_s: int | None = None              # alg3: last step of the selective phase
    branch: str | None = None           # alg4: chosen subproblem
    branch_r: float | None = None       # alg4: the uniform draw
    rv_total: float | None = None       # alg4: room-valuation component
    mu_total: float | None = None       # alg4: mutual-utility component
    solver_calls: int = 0
