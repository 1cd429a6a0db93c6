"""Matching value type shared by the bipartite and general solvers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..instances import BipartiteInstance, GeneralInstance


@dataclass(frozen=True)
class Matching:
    """Edge set plus total weight.

    Bipartite edges are (offline id, online id); general edges are vertex
    pairs stored with the smaller id first.  Edges are sorted, so equal
    matchings compare equal.
    """

    edges: tuple[tuple[int, int], ...]
    weight: float

    def partner_of(self, v: int) -> int | None:
        """Partner of vertex v in a general matching (id space is shared)."""
        for a, b in self.edges:
            if b == v:
                return a
            if a == v:
                return b
        return None

    def online_partner(self, v: int) -> int | None:
        """Offline partner of online vertex v in a bipartite matching."""
        for a, b in self.edges:
            if b == v:
                return a
        return None

    def check_bipartite(self, inst: BipartiteInstance) -> None:
        used = np.zeros(inst.n_offline + 1, dtype=np.int64)
        seen_online: set[int] = set()
        total = 0.0
        for u, v in self.edges:
            used[u] += 1
            assert v not in seen_online, f"online vertex {v} matched twice"
            seen_online.add(v)
            total += inst.weights[u - 1, v - 1]
        for u in range(1, inst.n_offline + 1):
            assert used[u] <= inst.capacities[u - 1], f"capacity exceeded at {u}"
        assert abs(total - self.weight) <= 1e-9, "stored weight disagrees with edges"

    def check_general(self, inst: GeneralInstance) -> None:
        seen: set[int] = set()
        total = 0.0
        for a, b in self.edges:
            assert a < b, "general edges must be stored (min, max)"
            assert a not in seen and b not in seen, "vertex matched twice"
            seen.update((a, b))
            total += inst.weights[a - 1, b - 1]
        assert abs(total - self.weight) <= 1e-9, "stored weight disagrees with edges"
