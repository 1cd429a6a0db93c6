"""Problem instances, arrival orders, and the roommate decomposition.

Three instance kinds share one convention: vertex ids are dense 1-based
integers, weights are dense float64 matrices indexed by id (0-based
internally).  Instances are immutable after validation and safe to share
across concurrent simulation workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AsymmetricWeights,
    CapacityMismatch,
    DimensionMismatch,
    NegativeWeight,
    OddN,
    SchemaError,
    UnsupportedCapacity,
)
from .rng import RandomStream


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


def _check_finite_nonnegative(w: np.ndarray) -> None:
    if not np.all(np.isfinite(w)):
        raise NegativeWeight("weights must be finite")
    if np.any(w < 0):
        raise NegativeWeight("weights must be nonnegative")


@dataclass(frozen=True)
class BipartiteInstance:
    """Offline vertices with capacities in {1,2}; online vertices arrive."""

    n_online: int
    capacities: np.ndarray          # (n_offline,) int64, values in {1,2}
    weights: np.ndarray             # (n_offline, n_online) float64
    kind: str = field(default="bipartite", init=False)

    @property
    def n_offline(self) -> int:
        return len(self.capacities)

    def validate(self) -> "BipartiteInstance":
        if self.weights.ndim != 2 or self.weights.shape != (self.n_offline, self.n_online):
            raise DimensionMismatch(
                f"weights shape {self.weights.shape} != "
                f"({self.n_offline}, {self.n_online})")
        caps = np.asarray(self.capacities)
        if caps.ndim != 1 or len(caps) == 0:
            raise DimensionMismatch("capacities must be a nonempty vector")
        if np.any((caps != 1) & (caps != 2)):
            raise UnsupportedCapacity("offline capacities must be 1 or 2")
        if int(caps.sum()) != self.n_online:
            raise CapacityMismatch(
                f"sum of capacities {int(caps.sum())} != n_online {self.n_online}")
        _check_finite_nonnegative(self.weights)
        return self


@dataclass(frozen=True)
class GeneralInstance:
    """All vertices arrive online; complete graph with symmetric weights."""

    n: int
    weights: np.ndarray             # (n, n) float64, symmetric, zero diagonal
    allow_odd: bool = False
    kind: str = field(default="general", init=False)

    def validate(self) -> "GeneralInstance":
        if self.weights.ndim != 2 or self.weights.shape != (self.n, self.n):
            raise DimensionMismatch(
                f"weights shape {self.weights.shape} != ({self.n}, {self.n})")
        if self.n % 2 == 1 and not self.allow_odd:
            raise OddN("odd vertex count requires odd-mode")
        if not np.array_equal(self.weights, self.weights.T):
            raise AsymmetricWeights("weight matrix must be symmetric")
        if np.any(np.diagonal(self.weights) != 0.0):
            raise AsymmetricWeights("diagonal must be zero")
        _check_finite_nonnegative(self.weights)
        return self


@dataclass(frozen=True)
class RoommateInstance:
    """m rooms with 2 beds each; n = 2m persons arrive online."""

    m: int
    room_valuations: np.ndarray     # (n, m) float64, RV(person, room)
    mutual_utilities: np.ndarray    # (n, n) float64, symmetric, zero diagonal
    kind: str = field(default="roommate", init=False)

    @property
    def n(self) -> int:
        return 2 * self.m

    def validate(self) -> "RoommateInstance":
        n = self.n
        if self.room_valuations.shape != (n, self.m):
            raise DimensionMismatch(
                f"room_valuations shape {self.room_valuations.shape} != ({n}, {self.m})")
        if self.mutual_utilities.shape != (n, n):
            raise DimensionMismatch(
                f"mutual_utilities shape {self.mutual_utilities.shape} != ({n}, {n})")
        if not np.array_equal(self.mutual_utilities, self.mutual_utilities.T):
            raise AsymmetricWeights("mutual utilities must be symmetric")
        if np.any(np.diagonal(self.mutual_utilities) != 0.0):
            raise AsymmetricWeights("mutual-utility diagonal must be zero")
        _check_finite_nonnegative(self.room_valuations)
        _check_finite_nonnegative(self.mutual_utilities)
        return self


Instance = BipartiteInstance | GeneralInstance | RoommateInstance


@dataclass(frozen=True)
class ArrivalOrder:
    """Permutation of online-vertex ids; position i is arrival step i+1."""

    order: np.ndarray               # (n,) int64, 1-based ids

    @property
    def n(self) -> int:
        return len(self.order)

    def validate(self) -> "ArrivalOrder":
        n = self.n
        if sorted(self.order.tolist()) != list(range(1, n + 1)):
            raise DimensionMismatch("arrival order must be a permutation of 1..n")
        return self


@dataclass(frozen=True)
class Allocation:
    """Room allocation: m tuples (room, person, person) plus total utility."""

    tuples: tuple[tuple[int, int, int], ...]    # 1-based (room, p1, p2)
    utility: float

    def validate(self, inst: RoommateInstance) -> "Allocation":
        rooms = [t[0] for t in self.tuples]
        persons = [p for t in self.tuples for p in t[1:]]
        if sorted(rooms) != list(range(1, inst.m + 1)):
            raise DimensionMismatch("every room must appear exactly once")
        if sorted(persons) != list(range(1, inst.n + 1)):
            raise DimensionMismatch("every person must appear exactly once")
        if abs(self.utility - allocation_utility(inst, self.tuples)) > 1e-9:
            raise DimensionMismatch("stored utility disagrees with tuples")
        return self


def allocation_utility(inst: RoommateInstance,
                       tuples: tuple[tuple[int, int, int], ...]) -> float:
    total = 0.0
    for room, p1, p2 in tuples:
        total += (inst.room_valuations[p1 - 1, room - 1]
                  + inst.room_valuations[p2 - 1, room - 1]
                  + inst.mutual_utilities[p1 - 1, p2 - 1])
    return total


def validate_instance(raw: dict) -> Instance:
    """Build and validate an instance from parsed file data.

    Raises the specific validation error (CapacityMismatch, NegativeWeight,
    AsymmetricWeights, OddN, DimensionMismatch, UnsupportedCapacity) on the
    first violated model constraint.
    """
    kind = raw.get("kind")
    if kind == "bipartite":
        caps = np.ascontiguousarray(raw["capacities"], dtype=np.int64)
        caps.setflags(write=False)
        inst: Instance = BipartiteInstance(
            n_online=int(raw["n"]),
            capacities=caps,
            weights=_freeze(np.asarray(raw["weights"], dtype=np.float64)),
        )
    elif kind == "general":
        inst = GeneralInstance(
            n=int(raw["n"]),
            weights=_freeze(np.asarray(raw["weights"], dtype=np.float64)),
            allow_odd=bool(raw.get("odd_mode", False)),
        )
    elif kind == "roommate":
        n = int(raw["n"])
        if n % 2 == 1:
            raise OddN("roommate instances need an even person count")
        inst = RoommateInstance(
            m=n // 2,
            room_valuations=_freeze(np.asarray(raw["room_valuations"], dtype=np.float64)),
            mutual_utilities=_freeze(np.asarray(raw["mutual_utilities"], dtype=np.float64)),
        )
    else:
        raise SchemaError(f"unknown instance kind {kind!r}")
    return inst.validate()


def sample_arrival_order(n: int, stream: RandomStream) -> ArrivalOrder:
    """Uniform arrival permutation; deterministic given the stream state."""
    if n < 1:
        raise DimensionMismatch("n must be >= 1")
    return ArrivalOrder(order=stream.permutation(n))


def decompose_roommate(inst: RoommateInstance) -> tuple[BipartiteInstance, GeneralInstance]:
    """Split a roommate instance into its two matching subproblems.

    Rooms become capacity-2 offline vertices weighted by the room valuations;
    persons become the vertices of a general instance weighted by the mutual
    utilities.  Entries are carried over bit-for-bit.
    """
    bip = BipartiteInstance(
        n_online=inst.n,
        capacities=np.full(inst.m, 2, dtype=np.int64),
        weights=_freeze(inst.room_valuations.T.copy()),
    ).validate()
    gen = GeneralInstance(n=inst.n, weights=_freeze(inst.mutual_utilities.copy())).validate()
    return bip, gen
